#include "nlgf/clspace.hpp"

#include <algorithm>
#include <cmath>

namespace nlgf {

// --- Subspace ---------------------------------------------------------------

Subspace Subspace::from_vectors(int ambient, const std::vector<BitVec>& vecs) {
    Subspace s;
    s.ambient_ = ambient;
    BitMatrix m(int(vecs.size()), ambient);
    for (size_t i = 0; i < vecs.size(); ++i) m.row(int(i)) = vecs[i];
    s.pivots_ = m.rref();
    s.basis_ = m;
    // canonical iff each basis row is a unit vector
    s.canonical_ = true;
    for (int i = 0; i < s.basis_.rows() && s.canonical_; ++i) {
        int cnt = 0;
        for (int j = 0; j < ambient; ++j) cnt += s.basis_.get(i, j);
        if (cnt != 1) s.canonical_ = false;
    }
    if (s.canonical_) s.indices_ = s.pivots_;
    return s;
}

Subspace Subspace::zero(int ambient) { return from_vectors(ambient, {}); }

Subspace Subspace::full(int ambient) {
    std::vector<int> idx(ambient);
    for (int i = 0; i < ambient; ++i) idx[i] = i;
    return span_canonical(ambient, idx);
}

Subspace Subspace::span_canonical(int ambient, std::vector<int> indices) {
    std::sort(indices.begin(), indices.end());
    std::vector<BitVec> vecs;
    for (int i : indices) {
        BitVec v(ambient);
        v.set(i, true);
        vecs.push_back(v);
    }
    return from_vectors(ambient, vecs);
}

bool Subspace::contains(const BitVec& v) const {
    BitVec r = v;
    for (int i = 0; i < basis_.rows(); ++i)
        if (r.get(pivots_[i])) r ^= basis_.row(i);
    return r.is_zero();
}

bool Subspace::contains(const Subspace& w) const {
    for (int i = 0; i < w.basis_.rows(); ++i)
        if (!contains(w.basis_.row(i))) return false;
    return true;
}

std::vector<BitVec> Subspace::elements() const {
    if (dim() > 24) throw CapacityError("subspace: too large to enumerate");
    std::vector<BitVec> out;
    out.reserve(size_t(1) << dim());
    for (uint64_t mask = 0; mask < (uint64_t{1} << dim()); ++mask) {
        BitVec v(ambient_);
        for (int i = 0; i < dim(); ++i)
            if ((mask >> i) & 1) v ^= basis_.row(i);
        out.push_back(v);
    }
    return out;
}

Subspace canonical_complement(const Subspace& w, const Subspace& v) {
    if (!v.canonical()) throw std::invalid_argument("complement: V not canonical");
    if (!v.contains(w)) throw std::invalid_argument("complement: W not inside V");
    const std::vector<int>& idx = v.indices();
    // express W in V-local coordinates and find pivot positions
    BitMatrix local(w.dim(), int(idx.size()));
    for (int i = 0; i < w.dim(); ++i) local.row(i) = w.basis().row(i).gather(idx);
    std::vector<int> piv = local.rref();
    std::vector<bool> is_piv(idx.size(), false);
    for (int p : piv) is_piv[size_t(p)] = true;
    std::vector<int> keep;
    for (size_t j = 0; j < idx.size(); ++j)
        if (!is_piv[j]) keep.push_back(idx[j]);
    return Subspace::span_canonical(v.ambient(), keep);
}

namespace {

// solve A c = target where columns of A are the given vectors
std::optional<BitVec> solve_combination(const std::vector<BitVec>& cols, const BitVec& target,
                                        int ambient) {
    int n = int(cols.size());
    BitMatrix aug(ambient, n + 1);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < ambient; ++i) aug.set(i, j, cols[j].get(i));
    for (int i = 0; i < ambient; ++i) aug.set(i, n, target.get(i));
    std::vector<int> piv = aug.rref();
    BitVec c(n);
    for (size_t r = 0; r < piv.size(); ++r) {
        if (piv[r] == n) return std::nullopt; // inconsistent
        c.set(piv[r], aug.get(int(r), n));
    }
    return c;
}

} // namespace

Subspace kernel(const BitMatrix& m, const Subspace& v) {
    // nullspace of the map c -> M (sum c_i b_i) over the basis coefficients
    int d = v.dim();
    std::vector<BitVec> images;
    for (int i = 0; i < d; ++i) images.push_back(m.apply(v.basis().row(i)));
    BitMatrix sys(v.ambient(), d);
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < v.ambient(); ++i) sys.set(i, j, images[j].get(i));
    std::vector<int> piv = sys.rref();
    std::vector<bool> is_piv(d, false);
    for (int p : piv) is_piv[size_t(p)] = true;
    std::vector<BitVec> out;
    for (int f = 0; f < d; ++f) {
        if (is_piv[f]) continue;
        // back-substitute the free coefficient f
        BitVec coeff(d);
        coeff.set(f, true);
        for (size_t r = 0; r < piv.size(); ++r)
            if (sys.get(int(r), f)) coeff.set(piv[r], true);
        BitVec vec(v.ambient());
        for (int i = 0; i < d; ++i)
            if (coeff.get(i)) vec ^= v.basis().row(i);
        out.push_back(vec);
    }
    return Subspace::from_vectors(v.ambient(), out);
}

Subspace orth(const Subspace& w, const Subspace& v) {
    // constraints: dot(u, w_j) = 0 for u = sum c_i v_i
    int d = v.dim();
    BitMatrix sys(w.dim(), d);
    for (int r = 0; r < w.dim(); ++r)
        for (int j = 0; j < d; ++j) sys.set(r, j, dot(w.basis().row(r), v.basis().row(j)));
    std::vector<int> piv = sys.rref();
    std::vector<bool> is_piv(d, false);
    for (int p : piv) is_piv[size_t(p)] = true;
    std::vector<BitVec> out;
    for (int f = 0; f < d; ++f) {
        if (is_piv[f]) continue;
        BitVec coeff(d);
        coeff.set(f, true);
        for (size_t r = 0; r < piv.size(); ++r)
            if (sys.get(int(r), f)) coeff.set(piv[r], true);
        BitVec vec(v.ambient());
        for (int i = 0; i < d; ++i)
            if (coeff.get(i)) vec ^= v.basis().row(i);
        out.push_back(vec);
    }
    return Subspace::from_vectors(v.ambient(), out);
}

std::pair<BitVec, BitVec> decompose(const BitVec& v, const Subspace& u, const Subspace& w) {
    std::vector<BitVec> cols;
    for (int i = 0; i < u.dim(); ++i) cols.push_back(u.basis().row(i));
    for (int i = 0; i < w.dim(); ++i) cols.push_back(w.basis().row(i));
    auto c = solve_combination(cols, v, v.size());
    if (!c) throw std::invalid_argument("decompose: vector outside U + W");
    BitVec a(v.size()), b(v.size());
    for (int i = 0; i < u.dim(); ++i)
        if (c->get(i)) a ^= u.basis().row(i);
    for (int i = 0; i < w.dim(); ++i)
        if (c->get(u.dim() + i)) b ^= w.basis().row(i);
    return {a, b};
}

BitMatrix proj_perp(const BitMatrix& m, const Subspace& v) {
    if (!v.canonical()) throw std::invalid_argument("proj_perp: V not canonical");
    Subspace ker = kernel(m, v);
    Subspace kperp = orth(ker, v);
    Subspace comp = canonical_complement(kperp, v);
    int n = v.ambient();
    BitMatrix out(n, n);
    for (int c : v.indices()) {
        BitVec e(n);
        e.set(c, true);
        auto [a, b] = decompose(e, kperp, comp);
        (void)a;
        for (int i = 0; i < n; ++i)
            if (b.get(i)) out.set(i, c, true);
    }
    return out;
}

Vec2pm null_dir(const Vec2pm& u, const Vec2pm& v) {
    if (v.bits().is_zero()) return u;
    const FieldPtr& F = u.field();
    int n = u.bits().size();
    std::vector<BitVec> span_basis;
    for (int i = 0; i < F->p(); ++i) span_basis.push_back(v.scaled(F->basis(i)).bits());
    Subspace sp = Subspace::from_vectors(n, span_basis);
    Subspace comp = canonical_complement(sp, Subspace::full(n));
    auto [a, b] = decompose(u.bits(), sp, comp);
    (void)a;
    return Vec2pm(F, u.m(), b);
}

std::pair<Vec2pm, Vec2pm> canon_line(const Vec2pm& u, const Vec2pm& v) {
    if (v.bits().is_zero()) throw std::invalid_argument("canon_line: zero direction");
    return {v, null_dir(u, v)};
}

BitVec zero_out_string(const BitVec& s, int j, bool above) {
    if (j < 0 || j > s.size()) throw std::invalid_argument("zero_out: index");
    BitVec r(s.size());
    for (int i = 0; i < s.size(); ++i)
        if (above ? i > j : i <= j) r.set(i, s.get(i));
    return r;
}

Vec2pm zero_out_field(const Vec2pm& s, int j, bool above) {
    if (j < 0 || j > s.m()) throw std::invalid_argument("zero_out: index");
    Vec2pm r(s.field(), s.m());
    for (int i = 0; i < s.m(); ++i)
        if (above ? i > j : i <= j) r.set_coord(i, s.coord(i));
    return r;
}

// --- CLFunction --------------------------------------------------------------

CLFunction::CLFunction(int ambient, std::vector<std::vector<int>> regs, BitMatrix level0)
    : ambient_(ambient), regs_(std::move(regs)), level0_(std::move(level0)) {
    std::vector<bool> seen(static_cast<size_t>(ambient), false);
    int covered = 0;
    for (auto& r : regs_)
        for (int i : r) {
            if (i < 0 || i >= ambient || seen[size_t(i)])
                throw std::invalid_argument("cl: registers must partition the ambient space");
            seen[size_t(i)] = true;
            ++covered;
        }
    if (covered != ambient) throw std::invalid_argument("cl: registers must cover the ambient space");
    if (level0_.rows() != int(regs_[0].size()) || level0_.cols() != int(regs_[0].size()))
        throw std::invalid_argument("cl: level-0 shape");
}

void CLFunction::add_level(Rule rule, std::string name) {
    if (1 + int(rules_.size()) >= int(regs_.size()))
        throw std::invalid_argument("cl: more levels than registers");
    rules_.push_back(std::move(rule));
    names_.push_back(std::move(name));
}

BitMatrix CLFunction::level_map(int j, const BitVec& prefix) const {
    if (j == 0) return level0_;
    return rules_[size_t(j - 1)](prefix);
}

BitVec CLFunction::eval(const BitVec& s) const {
    if (s.size() != ambient_) throw std::domain_error("cl: seed outside the ambient space");
    BitVec prefix(ambient_);
    for (int j = 0; j < levels(); ++j) {
        BitVec local = s.gather(regs_[size_t(j)]);
        BitMatrix m = (j == 0) ? level0_ : rules_[size_t(j - 1)](prefix);
        prefix.scatter(regs_[size_t(j)], m.apply(local));
    }
    return prefix;
}

Vec2pm CLFunction::eval(const Vec2pm& s) const {
    return Vec2pm(s.field(), s.m(), eval(s.bits()));
}

CLFunction CLFunction::diagonal(int ambient, const std::vector<std::vector<int>>& regs,
                                bool ident) {
    BitMatrix l0 = ident ? BitMatrix::identity(int(regs[0].size()))
                         : BitMatrix::zero(int(regs[0].size()));
    CLFunction f(ambient, regs, l0);
    for (size_t j = 1; j < regs.size(); ++j) {
        int sz = int(regs[j].size());
        BitMatrix m = ident ? BitMatrix::identity(sz) : BitMatrix::zero(sz);
        f.add_level([m](const BitVec&) { return m; }, ident ? "identity" : "zero");
    }
    return f;
}

CLFunction series_compose(const CLFunction& first, const CLFamily& second, int secondLevels,
                          int secondAmbient, const std::vector<std::vector<int>>& secondRegs,
                          const std::string& name) {
    int amb1 = first.ambient();
    int ambient = amb1 + secondAmbient;
    std::vector<std::vector<int>> regs = first.registers();
    for (const auto& r : secondRegs) {
        std::vector<int> shifted;
        for (int i : r) shifted.push_back(i + amb1);
        regs.push_back(shifted);
    }
    auto firstCopy = std::make_shared<CLFunction>(first);
    CLFunction owned(ambient, regs, first.level0());
    for (int j = 1; j < firstCopy->levels(); ++j) {
        owned.add_level(
            [firstCopy, j, amb1](const BitVec& prefix) {
                return firstCopy->level_map(j, prefix.slice(0, amb1));
            },
            name + ".first");
    }
    for (int j = 0; j < secondLevels; ++j) {
        owned.add_level(
            [second, j, amb1, secondAmbient](const BitVec& prefix) {
                CLPtr inner = second(prefix.slice(0, amb1));
                return inner->level_map(j, prefix.slice(amb1, secondAmbient));
            },
            name + ".second");
    }
    return owned;
}

CLFunction parallel_compose(const CLFunction& a, const CLFunction& b) {
    if (a.levels() != b.levels())
        throw std::invalid_argument("parallel compose: level counts differ");
    int ambA = a.ambient();
    int ambient = ambA + b.ambient();
    std::vector<std::vector<int>> regs;
    for (size_t j = 0; j < a.registers().size(); ++j) {
        std::vector<int> r = a.registers()[j];
        for (int i : b.registers()[j]) r.push_back(i + ambA);
        regs.push_back(r);
    }
    auto blockdiag = [](const BitMatrix& x, const BitMatrix& y) {
        BitMatrix m(x.rows() + y.rows(), x.cols() + y.cols());
        for (int i = 0; i < x.rows(); ++i)
            for (int j = 0; j < x.cols(); ++j)
                if (x.get(i, j)) m.set(i, j, true);
        for (int i = 0; i < y.rows(); ++i)
            for (int j = 0; j < y.cols(); ++j)
                if (y.get(i, j)) m.set(x.rows() + i, x.cols() + j, true);
        return m;
    };
    CLFunction out(ambient, regs, blockdiag(a.level0(), b.level0()));
    auto ca = std::make_shared<CLFunction>(a);
    auto cb = std::make_shared<CLFunction>(b);
    for (int j = 1; j < a.levels(); ++j) {
        out.add_level(
            [ca, cb, j, ambA, blockdiag](const BitVec& prefix) {
                BitMatrix ma = ca->level_map(j, prefix.slice(0, ambA));
                BitMatrix mb = cb->level_map(j, prefix.slice(ambA, cb->ambient()));
                return blockdiag(ma, mb);
            },
            "parallel");
    }
    return out;
}

// --- distributions -----------------------------------------------------------

CLDist::CLDist(CLFunction a, CLFunction b) : la(std::move(a)), lb(std::move(b)) {
    if (la.ambient() != lb.ambient() || la.registers() != lb.registers())
        throw std::invalid_argument("cl dist: the two functions must share registers");
}

CLSample sample_cl(const CLDist& d, Rng& rng) {
    int n = d.ambient();
    BitVec s(n);
    for (int i = 0; i < n; ++i) s.set(i, rng.next_bit());
    return {d.la.eval(s), d.lb.eval(s), s};
}

bool TypedCLDist::has_edge(int u, int v) const {
    for (auto& e : edges)
        if ((e.first == u && e.second == v) || (e.first == v && e.second == u)) return true;
    return false;
}

BitVec TypedCLDist::neigh(int v) const {
    BitVec n(t);
    for (int u = 0; u < t; ++u)
        if (has_edge(v, u)) n.set(u, true);
    return n;
}

std::vector<std::pair<int, int>> TypedCLDist::ordered_edges() const {
    std::vector<std::pair<int, int>> out;
    for (auto& e : edges) {
        out.push_back(e);
        if (e.first != e.second) out.push_back({e.second, e.first});
    }
    std::sort(out.begin(), out.end());
    return out;
}

void TypedCLDist::validate() const {
    if (edges.empty()) throw std::invalid_argument("typed dist: edge set must be non-empty");
    if (int(funcs.size()) != t) throw std::invalid_argument("typed dist: one function per vertex");
    for (auto& e : edges)
        if (e.first < 0 || e.first >= t || e.second < 0 || e.second >= t)
            throw std::invalid_argument("typed dist: edge endpoint out of range");
    for (const auto& f : funcs)
        if (f.registers() != funcs[0].registers())
            throw std::invalid_argument("typed dist: functions must share registers");
}

TypedSample sample_typed(const TypedCLDist& d, Rng& rng) {
    d.validate();
    int v0 = -1, v1 = -1;
    for (int attempt = 0; attempt < 1000000; ++attempt) {
        int a = int(rng.next_below(uint64_t(d.t)));
        int b = int(rng.next_below(uint64_t(d.t)));
        if (d.has_edge(a, b)) {
            v0 = a;
            v1 = b;
            break;
        }
    }
    if (v0 < 0) throw CapacityError("typed dist: rejection sampling exhausted");
    int n = d.ambient();
    BitVec s(n);
    for (int i = 0; i < n; ++i) s.set(i, rng.next_bit());
    bool b = rng.next_bit();
    int va = b ? v1 : v0;
    int vb = b ? v0 : v1;
    return {va, vb, d.funcs[size_t(va)].eval(s), d.funcs[size_t(vb)].eval(s), s};
}

std::map<std::pair<BitVec, BitVec>, int64_t> enumerate_cl(const CLDist& d, int max_bits) {
    int n = d.ambient();
    if (n > max_bits) throw CapacityError("enumerate: seed space too large");
    std::map<std::pair<BitVec, BitVec>, int64_t> out;
    for (uint64_t w = 0; w < (uint64_t{1} << n); ++w) {
        BitVec s = BitVec::from_u64(n, w);
        out[{d.la.eval(s), d.lb.eval(s)}] += 1;
    }
    return out;
}

std::map<TypedKey, int64_t> enumerate_typed(const TypedCLDist& d, int64_t* denom, int max_bits) {
    d.validate();
    int n = d.ambient();
    if (n > max_bits) throw CapacityError("enumerate: seed space too large");
    auto eo = d.ordered_edges();
    std::map<TypedKey, int64_t> out;
    for (auto& [v0, v1] : eo) {
        for (uint64_t w = 0; w < (uint64_t{1} << n); ++w) {
            BitVec s = BitVec::from_u64(n, w);
            BitVec x0 = d.funcs[size_t(v0)].eval(s);
            BitVec x1 = d.funcs[size_t(v1)].eval(s);
            // both values of the order flip
            out[{{v0, x0}, {v1, x1}}] += 1;
            out[{{v1, x1}, {v0, x0}}] += 1;
        }
    }
    if (denom) *denom = int64_t(eo.size()) * 2 * (int64_t{1} << n);
    return out;
}

// --- detyping ----------------------------------------------------------------

namespace {

int ceil_log2(int t) {
    int b = 0;
    while ((1 << b) < t) ++b;
    return b;
}

// selector level-1 matrix on (x4,x5): A keeps x4 and masks x5 to coordinate v,
// B swaps the blocks and masks what lands in the x5 slot
BitMatrix selector_level1(int t, int v, bool sideA) {
    BitMatrix m(2 * t, 2 * t);
    if (sideA) {
        for (int i = 0; i < t; ++i) m.set(i, i, true); // x4 kept
        m.set(t + v, t + v, true);                     // (x5)_v
    } else {
        for (int i = 0; i < t; ++i) m.set(i, t + i, true); // x4 slot <- x5
        m.set(t + v, v, true);                             // x5 slot <- (x4)_v
    }
    return m;
}

} // namespace

Detyped detype(const TypedCLDist& input, int p) {
    input.validate();
    auto padded = std::make_shared<TypedCLDist>(input);
    while (padded->t % p != 0) {
        int w = padded->t++;
        padded->edges.push_back({w, w});
        padded->funcs.push_back(CLFunction::diagonal(
            input.ambient(), input.funcs[0].registers(), false));
    }

    DetypeLayout lay;
    lay.p = p;
    lay.t = padded->t;
    lay.vbits = ceil_log2(padded->t);
    lay.lt_bits = p * ((lay.vbits + p - 1) / p);
    lay.amb1 = 2 * lay.lt_bits + 4 * padded->t;
    lay.inner_amb = input.ambient();

    int t = lay.t;
    int regs0 = 2 * lay.lt_bits + 2 * t;
    std::vector<int> reg0(regs0), reg1(2 * t);
    for (int i = 0; i < regs0; ++i) reg0[i] = i;
    for (int i = 0; i < 2 * t; ++i) reg1[i] = regs0 + i;

    auto make_selector = [&](bool sideA) {
        BitMatrix l0(regs0, regs0);
        if (sideA) {
            for (int i = 0; i < lay.lt_bits + t; ++i) l0.set(i, i, true);
        } else {
            for (int i = 0; i < lay.lt_bits + t; ++i) l0.set(i, lay.lt_bits + t + i, true);
        }
        CLFunction f(lay.amb1, {reg0, reg1}, l0);
        DetypeLayout L = lay;
        auto inner = padded;
        f.add_level(
            [L, inner, sideA, t](const BitVec& prefix) {
                // slots x0,x1 of the prefix hold this side's vertex and
                // neighbour-string candidates
                int v = int(prefix.slice_u64(L.s0(), L.vbits));
                if (L.vbits == 0) v = 0;
                if (v < t && prefix.slice(L.s1(), t) == inner->neigh(v))
                    return selector_level1(t, v, sideA);
                return BitMatrix::zero(2 * t);
            },
            "detype.select");
        return f;
    };

    CLFunction la1 = make_selector(true);
    CLFunction lb1 = make_selector(false);

    auto zeroInner = std::make_shared<CLFunction>(
        CLFunction::diagonal(input.ambient(), input.funcs[0].registers(), false));
    std::vector<CLPtr> innerPtrs;
    for (const auto& f : padded->funcs) innerPtrs.push_back(std::make_shared<CLFunction>(f));

    DetypeLayout L = lay;
    auto inner = padded;
    CLFamily family = [L, inner, innerPtrs, zeroInner, t](const BitVec& view) -> CLPtr {
        int v = int(view.slice_u64(L.s0(), L.vbits));
        if (L.vbits == 0) v = 0;
        if (v >= t) return zeroInner;
        BitVec nb = inner->neigh(v);
        if (view.slice(L.s1(), t) == nb && view.slice(L.s4(), t) == nb && view.get(L.s5() + v))
            return innerPtrs[size_t(v)];
        return zeroInner;
    };

    int k = input.funcs[0].levels();
    const auto& innerRegs = input.funcs[0].registers();
    Detyped out;
    out.layout = lay;
    out.inner = padded;
    out.dist = CLDist(series_compose(la1, family, k, input.ambient(), innerRegs, "detype.A"),
                      series_compose(lb1, family, k, input.ambient(), innerRegs, "detype.B"));
    return out;
}

bool Detyped::is_nontrivial_seed(const BitVec& s) const {
    const DetypeLayout& L = layout;
    int t = L.t;
    int v0 = int(s.slice_u64(L.s0(), L.vbits));
    int v1 = int(s.slice_u64(L.s2(), L.vbits));
    if (L.vbits == 0) v0 = v1 = 0;
    if (v0 >= t || v1 >= t || !inner->has_edge(v0, v1)) return false;
    BitVec n0 = inner->neigh(v0), n1 = inner->neigh(v1);
    return s.slice(L.s1(), t) == n0 && s.slice(L.s4(), t) == n0 && s.slice(L.s3(), t) == n1 &&
           s.slice(L.s5(), t) == n1;
}

std::optional<std::pair<int, BitVec>> Detyped::parse_output(const BitVec& x) const {
    const DetypeLayout& L = layout;
    int t = L.t;
    int v = int(x.slice_u64(L.s0(), L.vbits));
    if (L.vbits == 0) v = 0;
    if (v >= t) return std::nullopt;
    BitVec nb = inner->neigh(v);
    if (x.slice(L.s1(), t) != nb) return std::nullopt;
    if (!x.slice(L.s2(), L.lt_bits).is_zero() || !x.slice(L.s3(), t).is_zero())
        return std::nullopt;
    if (x.slice(L.s4(), t) != nb) return std::nullopt;
    BitVec ind(t);
    ind.set(v, true);
    if (x.slice(L.s5(), t) != ind) return std::nullopt;
    return std::make_pair(v, x.slice(L.amb1, L.inner_amb));
}

std::map<TypedKey, int64_t> Detyped::enumerate_conditioned(int64_t* denom) const {
    const DetypeLayout& L = layout;
    int freebits = L.lt_bits - L.vbits;
    int innerN = L.inner_amb;
    if (innerN > 20) throw CapacityError("detype: inner seed space too large");
    std::map<TypedKey, int64_t> out;
    int64_t total = 0;
    auto eo = inner->ordered_edges();
    for (auto& [v0, v1] : eo) {
        BitVec n0 = inner->neigh(v0), n1 = inner->neigh(v1);
        for (uint64_t f0 = 0; f0 < (uint64_t{1} << freebits); ++f0) {
            for (uint64_t f1 = 0; f1 < (uint64_t{1} << freebits); ++f1) {
                BitVec s(L.amb1 + innerN);
                for (int i = 0; i < L.vbits; ++i) {
                    s.set(L.s0() + i, (uint64_t(v0) >> i) & 1);
                    s.set(L.s2() + i, (uint64_t(v1) >> i) & 1);
                }
                for (int i = 0; i < freebits; ++i) {
                    s.set(L.s0() + L.vbits + i, (f0 >> i) & 1);
                    s.set(L.s2() + L.vbits + i, (f1 >> i) & 1);
                }
                s.paste(L.s1(), n0);
                s.paste(L.s4(), n0);
                s.paste(L.s3(), n1);
                s.paste(L.s5(), n1);
                for (uint64_t w = 0; w < (uint64_t{1} << innerN); ++w) {
                    for (int i = 0; i < innerN; ++i) s.set(L.amb1 + i, (w >> i) & 1);
                    auto px = parse_output(dist.la.eval(s));
                    auto py = parse_output(dist.lb.eval(s));
                    if (!px || !py)
                        throw std::logic_error("detype: non-trivial seed failed to parse");
                    out[{*px, *py}] += 1;
                    ++total;
                }
            }
        }
    }
    if (denom) *denom = total;
    return out;
}

double Detyped::nontrivial_fraction(int64_t* count, int64_t* total) const {
    const DetypeLayout& L = layout;
    int freebits = L.lt_bits - L.vbits;
    int64_t eo = int64_t(inner->ordered_edges().size());
    long double cnt = (long double)(eo)*std::pow(2.0L, 2.0L * freebits);
    int seltotal_bits = L.amb1;
    long double tot = std::pow(2.0L, (long double)seltotal_bits);
    if (count && total) {
        if (seltotal_bits <= 62 && 2 * freebits <= 62) {
            *count = eo * (int64_t{1} << (2 * freebits));
            *total = int64_t{1} << seltotal_bits;
        } else {
            *count = *total = -1;
        }
    }
    return double(cnt / tot);
}

} // namespace nlgf
