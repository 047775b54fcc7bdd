#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nlgf/bits.hpp"
#include "nlgf/gf2p.hpp"
#include "nlgf/rational.hpp"
#include "nlgf/rng.hpp"

namespace nlgf {

/// Vector in F_{2^p}^m, stored as p*m public-coordinate bits.
class Vec2pm {
  public:
    Vec2pm() = default;
    Vec2pm(FieldPtr ctx, int m) : ctx_(std::move(ctx)), m_(m), bits_(ctx_->p() * m) {}
    Vec2pm(FieldPtr ctx, int m, BitVec bits) : ctx_(std::move(ctx)), m_(m), bits_(std::move(bits)) {
        if (bits_.size() != ctx_->p() * m_) throw std::invalid_argument("vec2pm: bit width");
    }

    const FieldPtr& field() const { return ctx_; }
    int m() const { return m_; }
    int p() const { return ctx_->p(); }
    const BitVec& bits() const { return bits_; }

    FieldElem coord(int i) const {
        return ctx_->from_coords(uint32_t(bits_.slice_u64(i * p(), p())));
    }
    void set_coord(int i, FieldElem e) {
        for (int b = 0; b < p(); ++b) bits_.set(i * p() + b, (e.coords() >> b) & 1);
    }

    friend Vec2pm operator+(const Vec2pm& a, const Vec2pm& b) {
        return Vec2pm(a.ctx_, a.m_, a.bits_ ^ b.bits_);
    }
    friend bool operator==(const Vec2pm& a, const Vec2pm& b) { return a.bits_ == b.bits_; }

    /// Coordinate-wise field scaling c * v.
    Vec2pm scaled(FieldElem c) const {
        Vec2pm r(ctx_, m_);
        for (int i = 0; i < m_; ++i) r.set_coord(i, ctx_->mul(c, coord(i)));
        return r;
    }

  private:
    FieldPtr ctx_;
    int m_ = 0;
    BitVec bits_;
};

/// F_2 subspace of a fixed ambient bit space, kept in reduced row echelon form.
class Subspace {
  public:
    Subspace() = default;

    static Subspace from_vectors(int ambient, const std::vector<BitVec>& vecs);
    static Subspace zero(int ambient);
    static Subspace full(int ambient);
    static Subspace span_canonical(int ambient, std::vector<int> indices);

    int ambient() const { return ambient_; }
    int dim() const { return basis_.rows(); }
    const BitMatrix& basis() const { return basis_; }
    const std::vector<int>& pivots() const { return pivots_; }
    bool canonical() const { return canonical_; }
    /// Canonical index set; only valid when canonical().
    const std::vector<int>& indices() const { return indices_; }

    bool contains(const BitVec& v) const;
    bool contains(const Subspace& w) const;

    /// All 2^dim elements (dim <= 24).
    std::vector<BitVec> elements() const;

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
    }

  private:
    int ambient_ = 0;
    BitMatrix basis_;
    std::vector<int> pivots_;
    bool canonical_ = false;
    std::vector<int> indices_;
};

/// Complement of W inside canonical-basis V spanned by the non-pivot
/// canonical vectors of a Gaussian elimination; deterministic in W.
Subspace canonical_complement(const Subspace& w, const Subspace& v);

/// Kernel of the map within V: {x in V : M x = 0}.
Subspace kernel(const BitMatrix& m, const Subspace& v);

/// {u in V : u.w = 0 for all w in W}.
Subspace orth(const Subspace& w, const Subspace& v);

/// Unique split v = a + b with a in U, b in W (U ⊕ W must cover v's span).
std::pair<BitVec, BitVec> decompose(const BitVec& v, const Subspace& u, const Subspace& w);

/// The projection onto (ker(M)^⊥)^C along ker(M)^⊥, as a matrix on ambient
/// coordinates. V must be a canonical-basis subspace.
BitMatrix proj_perp(const BitMatrix& m, const Subspace& v);

/// Canonical representation (v, offset) of the affine line {u + t v}. The
/// offset is the span(v)^C-component of u, so any point on the line maps to
/// the same pair. v must be nonzero.
std::pair<Vec2pm, Vec2pm> canon_line(const Vec2pm& u, const Vec2pm& v);

/// span(v)^C-component of u; v == 0 yields u itself (degenerate line).
Vec2pm null_dir(const Vec2pm& u, const Vec2pm& v);

/// Keep entries with index > j (above) or <= j (below); the two are
/// complementary. Valid j: 0..n.
BitVec zero_out_string(const BitVec& s, int j, bool above);
Vec2pm zero_out_field(const Vec2pm& s, int j, bool above);

// ---------------------------------------------------------------------------

/// Leveled function on ambient F_2 coordinates: disjoint canonical registers,
/// a fixed matrix on register 0, and per-level matrices selected by the output
/// of the earlier levels.
class CLFunction {
  public:
    using Rule = std::function<BitMatrix(const BitVec& prefix)>;

    CLFunction() = default;
    CLFunction(int ambient, std::vector<std::vector<int>> regs, BitMatrix level0);

    int ambient() const { return ambient_; }
    int levels() const { return 1 + int(rules_.size()); }
    const std::vector<std::vector<int>>& registers() const { return regs_; }
    const BitMatrix& level0() const { return level0_; }

    void add_level(Rule rule, std::string name);
    /// Matrix applied at level j when the joined output so far is `prefix`.
    BitMatrix level_map(int j, const BitVec& prefix) const;
    const std::string& rule_name(int j) const { return names_[j - 1]; }

    BitVec eval(const BitVec& s) const;
    Vec2pm eval(const Vec2pm& s) const;

    /// Identity (or zero) function with the given registers.
    static CLFunction diagonal(int ambient, const std::vector<std::vector<int>>& regs, bool ident);

  private:
    int ambient_ = 0;
    std::vector<std::vector<int>> regs_;
    BitMatrix level0_;
    std::vector<Rule> rules_;
    std::vector<std::string> names_;
};

using CLPtr = std::shared_ptr<const CLFunction>;
/// Selector for the second stage of a series composition, keyed by the full
/// output of the first stage.
using CLFamily = std::function<CLPtr(const BitVec& firstOut)>;

/// First levels from `first`; remaining levels chosen by `second(firstOut)`
/// acting on a fresh ambient block of `secondAmbient` bits.
CLFunction series_compose(const CLFunction& first, const CLFamily& second, int secondLevels,
                          int secondAmbient, const std::vector<std::vector<int>>& secondRegs,
                          const std::string& name);

/// Level-wise direct sum of two functions with equal level counts.
CLFunction parallel_compose(const CLFunction& a, const CLFunction& b);

// ---------------------------------------------------------------------------

/// Question-pair sampler (L^A(s), L^B(s)) over a uniform seed.
struct CLDist {
    CLFunction la, lb;

    int ambient() const { return la.ambient(); }
    CLDist() = default;
    CLDist(CLFunction a, CLFunction b);
};

struct CLSample {
    BitVec x, y, seed;
};

CLSample sample_cl(const CLDist& d, Rng& rng);

/// Vertex-labelled family of CL functions sampled through a question graph.
struct TypedCLDist {
    int t = 0;                              // vertex count
    std::vector<std::pair<int, int>> edges; // undirected, may include (v,v)
    std::vector<CLFunction> funcs;          // one per vertex, shared registers

    int ambient() const { return funcs.at(0).ambient(); }
    bool has_edge(int u, int v) const;
    BitVec neigh(int v) const;
    /// Ordered edge list: self loops once, cross edges both ways.
    std::vector<std::pair<int, int>> ordered_edges() const;
    void validate() const;
};

struct TypedSample {
    int va = 0, vb = 0;
    BitVec xa, xb, seed;
};

/// Rejection sampling per the question graph; bounded attempts.
TypedSample sample_typed(const TypedCLDist& d, Rng& rng);

/// Exact dyadic law of a CL distribution; key is the question pair.
std::map<std::pair<BitVec, BitVec>, int64_t> enumerate_cl(const CLDist& d, int max_bits = 20);

using TypedKey = std::pair<std::pair<int, BitVec>, std::pair<int, BitVec>>;

/// Exact law of a typed distribution over ((v,x),(u,y)); denominator is
/// ordered_edges * 2 * 2^ambient.
std::map<TypedKey, int64_t> enumerate_typed(const TypedCLDist& d, int64_t* denom,
                                            int max_bits = 20);

// ---------------------------------------------------------------------------

/// Coordinate layout of a detyped distribution's selector block.
struct DetypeLayout {
    int p = 0, t = 0;
    int vbits = 0;     // bits encoding a vertex id
    int lt_bits = 0;   // p * ceil(vbits / p)
    int amb1 = 0;      // selector block width = 2*lt_bits + 4*t
    int inner_amb = 0; // original ambient width

    int s0() const { return 0; }
    int s1() const { return lt_bits; }
    int s2() const { return lt_bits + t; }
    int s3() const { return 2 * lt_bits + t; }
    int s4() const { return 2 * lt_bits + 2 * t; }
    int s5() const { return 2 * lt_bits + 3 * t; }
};

/// A plain CL distribution simulating a typed one; conditioning on the
/// non-trivial seeds reproduces the typed law exactly.
struct Detyped {
    CLDist dist;
    DetypeLayout layout;
    std::shared_ptr<const TypedCLDist> inner; // padded copy

    bool is_nontrivial_seed(const BitVec& s) const;
    /// Junk-tolerant parse of one side's question into (vertex, inner content).
    std::optional<std::pair<int, BitVec>> parse_output(const BitVec& x) const;
    /// Law of the parsed question pair conditioned on non-trivial seeds.
    std::map<TypedKey, int64_t> enumerate_conditioned(int64_t* denom) const;
    /// Non-trivial seed fraction (exact when the seed space fits in 62 bits).
    double nontrivial_fraction(int64_t* count = nullptr, int64_t* total = nullptr) const;
};

/// Builds the simulating CL distribution; pads the vertex set with self-loop
/// vertices until p divides it.
Detyped detype(const TypedCLDist& d, int p);

} // namespace nlgf
