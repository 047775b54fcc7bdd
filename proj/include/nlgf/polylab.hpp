#pragma once

#include <array>
#include <map>
#include <vector>

#include "nlgf/gf2p.hpp"
#include "nlgf/rng.hpp"

namespace nlgf {

/// Multivariate polynomial over F_{2^p} with bounded per-variable degree.
/// Terms map exponent tuples to nonzero coefficients; the zero polynomial has
/// no terms.
class IdPoly {
  public:
    using Exps = std::vector<uint16_t>;

    IdPoly() = default;
    IdPoly(FieldPtr ctx, int m) : ctx_(std::move(ctx)), m_(m) {}

    static IdPoly constant(FieldPtr ctx, int m, FieldElem c);
    static IdPoly variable(FieldPtr ctx, int m, int i);

    const FieldPtr& field() const { return ctx_; }
    int vars() const { return m_; }
    const std::map<Exps, FieldElem>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    /// Largest per-variable degree present.
    int individual_degree() const;

    void add_term(const Exps& e, FieldElem c);
    FieldElem coeff(const Exps& e) const;

    FieldElem eval(const std::vector<FieldElem>& point) const;

    friend IdPoly operator+(const IdPoly& a, const IdPoly& b);
    friend IdPoly operator*(const IdPoly& a, const IdPoly& b);
    IdPoly scaled(FieldElem c) const;
    friend bool operator==(const IdPoly& a, const IdPoly& b) {
        return a.m_ == b.m_ && a.terms_ == b.terms_;
    }

    /// Same polynomial over more variables, with variable i renamed to
    /// offset+i.
    IdPoly embedded(int new_m, int offset) const;

  private:
    FieldPtr ctx_;
    int m_ = 0;
    std::map<Exps, FieldElem> terms_;
};

/// Dense univariate polynomial, coefficient of t^i at index i.
struct UniPoly {
    FieldPtr ctx;
    std::vector<FieldElem> coeffs;

    int degree() const;
    FieldElem eval(FieldElem t) const;
    void trim();
    friend bool operator==(const UniPoly& a, const UniPoly& b);
};

/// Restriction f(offset + t * dir) as a univariate polynomial in t.
UniPoly restrict_line(const IdPoly& f, const std::vector<FieldElem>& dir,
                      const std::vector<FieldElem>& offset);

/// Degree-one polynomial that is 1 at the cube point a and 0 elsewhere on
/// {0,1}^m.
IdPoly indicator_poly(const FieldPtr& ctx, const BitVec& a);

/// Fits a degree-one polynomial through the 2^m cube values b (bit i at the
/// point with binary expansion i, least significant bit first).
IdPoly rm_encode(const FieldPtr& ctx, const std::vector<int>& b);
std::vector<int> rm_decode(const IdPoly& f);

/// zero(x) = x + x^2, the vanishing polynomial of {0,1} in one variable.
IdPoly zero_gadget(const FieldPtr& ctx, int m, int var);

/// Writes a polynomial vanishing on {0,1}^m as sum_i c_i * zero(x_i).
/// Throws std::domain_error if f does not vanish on the cube.
std::vector<IdPoly> zero_cube_decompose(const IdPoly& f);

/// A sampled evaluation view of a PCPP-style proof.
struct PcppView {
    IdPoly g_d; // over m_pcpp variables
    int m_ans = 0, g = 0;
    std::vector<FieldElem> s;    // point, m_pcpp coordinates
    std::vector<FieldElem> u;    // five claimed block evaluations
    FieldElem gamma;             // claimed full-product evaluation
    std::vector<FieldElem> beta; // m_pcpp claimed decomposition evaluations

    int m_pcpp() const { return 5 * m_ans + 5 + g; }
};

/// 1 iff the view parses and both algebraic identities hold at s.
int validate_pcpp(const PcppView& view);

/// Honest view for a proof (g_d, five answer-block polynomials over m_ans
/// variables) at the point s; requires the assembled product to vanish on the
/// cube.
PcppView make_honest_view(const IdPoly& g_d, const std::array<IdPoly, 5>& blocks,
                          const std::vector<FieldElem>& s, int m_ans, int g);

struct AgreeReport {
    int64_t agreements = 0;
    int64_t trials = 0;
    double rate = 0.0;
    double stderr_est = 0.0;
};

/// Empirical agreement rate of two distinct polynomials on random points.
AgreeReport sz_agreement(const IdPoly& f, const IdPoly& g, int64_t trials, Rng& rng);

} // namespace nlgf
