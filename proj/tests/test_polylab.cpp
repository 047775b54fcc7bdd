#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nlgf/polylab.hpp"

using namespace nlgf;

namespace {

// independent dense evaluator: no power cache, exponentiation by pow()
FieldElem naive_eval(const IdPoly& f, const std::vector<FieldElem>& pt) {
    const FieldPtr& F = f.field();
    FieldElem acc = F->zero();
    for (auto& [e, c] : f.terms()) {
        FieldElem t = c;
        for (int i = 0; i < f.vars(); ++i) t = F->mul(t, F->pow(pt[size_t(i)], e[size_t(i)]));
        acc = F->add(acc, t);
    }
    return acc;
}

IdPoly random_poly(const FieldPtr& F, int m, int d, int nterms, Rng& rng) {
    IdPoly f(F, m);
    for (int t = 0; t < nterms; ++t) {
        IdPoly::Exps e(static_cast<size_t>(m));
        for (int i = 0; i < m; ++i) e[size_t(i)] = uint16_t(rng.next_below(uint64_t(d) + 1));
        f.add_term(e, F->from_coords(uint32_t(rng.next_below(F->order()))));
    }
    return f;
}

std::vector<FieldElem> random_point(const FieldPtr& F, int m, Rng& rng) {
    std::vector<FieldElem> pt(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) pt[size_t(i)] = F->from_coords(uint32_t(rng.next_below(F->order())));
    return pt;
}

} // namespace

TEST_CASE("evaluation") {
    auto F = FieldCtx::build(3);
    SUBCASE("constants and single variables") {
        IdPoly c = IdPoly::constant(F, 2, F->from_coords(5));
        CHECK(c.eval({F->zero(), F->zero()}) == F->from_coords(5));
        IdPoly x0 = IdPoly::variable(F, 2, 0);
        for (uint32_t a = 0; a < 8; ++a)
            CHECK(x0.eval({F->from_coords(a), F->one()}) == F->from_coords(a));
    }
    SUBCASE("random polynomials match the naive evaluator") {
        Rng rng(21);
        for (int trial = 0; trial < 30; ++trial) {
            IdPoly f = random_poly(F, 3, 4, 8, rng);
            auto pt = random_point(F, 3, rng);
            CHECK(f.eval(pt) == naive_eval(f, pt));
        }
    }
    SUBCASE("arity mismatch") {
        IdPoly x0 = IdPoly::variable(F, 2, 0);
        CHECK_THROWS_AS(x0.eval({F->one()}), std::invalid_argument);
    }
}

TEST_CASE("line restriction") {
    auto F = FieldCtx::build(3);
    SUBCASE("axis line through the origin on a coordinate is t") {
        IdPoly x1 = IdPoly::variable(F, 2, 1);
        std::vector<FieldElem> dir{F->zero(), F->one()};
        std::vector<FieldElem> off{F->zero(), F->zero()};
        UniPoly r = restrict_line(x1, dir, off);
        CHECK(r.degree() == 1);
        CHECK(r.coeffs[0].is_zero());
        CHECK(r.coeffs[1] == F->one());
    }
    SUBCASE("constant restricts to itself") {
        IdPoly c = IdPoly::constant(F, 2, F->from_coords(3));
        Rng rng(2);
        UniPoly r = restrict_line(c, random_point(F, 2, rng), random_point(F, 2, rng));
        CHECK(r.degree() == 0);
        CHECK(r.coeffs[0] == F->from_coords(3));
    }
    SUBCASE("pointwise agreement with direct evaluation") {
        Rng rng(23);
        for (int trial = 0; trial < 12; ++trial) {
            IdPoly f = random_poly(F, 2, 3, 6, rng);
            auto dir = random_point(F, 2, rng);
            auto off = random_point(F, 2, rng);
            UniPoly r = restrict_line(f, dir, off);
            for (uint32_t t = 0; t < 8; ++t) {
                FieldElem te = F->from_coords(t);
                std::vector<FieldElem> pt{F->add(off[0], F->mul(te, dir[0])),
                                          F->add(off[1], F->mul(te, dir[1]))};
                CHECK(r.eval(te) == f.eval(pt));
            }
        }
    }
}

TEST_CASE("indicator polynomials") {
    auto F = FieldCtx::build(3);
    SUBCASE("one variable, a = 1 gives x") {
        IdPoly f = indicator_poly(F, BitVec::from_u64(1, 1));
        CHECK(f == IdPoly::variable(F, 1, 0));
    }
    SUBCASE("delta property on the cube, m <= 3") {
        for (int m = 1; m <= 3; ++m) {
            for (uint64_t a = 0; a < (uint64_t{1} << m); ++a) {
                IdPoly f = indicator_poly(F, BitVec::from_u64(m, a));
                CHECK(f.individual_degree() == 1);
                for (uint64_t s = 0; s < (uint64_t{1} << m); ++s) {
                    std::vector<FieldElem> pt;
                    for (int i = 0; i < m; ++i)
                        pt.push_back(((s >> i) & 1) ? F->one() : F->zero());
                    CHECK(f.eval(pt) == (s == a ? F->one() : F->zero()));
                }
            }
        }
    }
}

TEST_CASE("generalized Reed-Muller code") {
    auto F = FieldCtx::build(3);
    SUBCASE("all-zero word encodes to the zero polynomial") {
        CHECK(rm_encode(F, {0, 0, 0, 0}).is_zero());
    }
    SUBCASE("first unit word is the indicator of the origin") {
        IdPoly f = rm_encode(F, {1, 0});
        CHECK(f == indicator_poly(F, BitVec::from_u64(1, 0)));
    }
    SUBCASE("cube evaluations recover the word") {
        std::vector<int> b{1, 0, 1, 1};
        IdPoly f = rm_encode(F, b);
        CHECK(f.individual_degree() <= 1);
        CHECK(rm_decode(f) == b);
    }
    SUBCASE("round trip for m <= 4") {
        Rng rng(31);
        for (int m = 1; m <= 4; ++m) {
            for (int trial = 0; trial < 5; ++trial) {
                std::vector<int> b(size_t(1) << m);
                for (auto& x : b) x = rng.next_bit();
                CHECK(rm_decode(rm_encode(F, b)) == b);
            }
        }
    }
    SUBCASE("linearity at the coefficient level") {
        Rng rng(37);
        for (int m = 1; m <= 4; ++m) {
            std::vector<int> b1(size_t(1) << m), b2(size_t(1) << m), bx(size_t(1) << m);
            for (size_t i = 0; i < b1.size(); ++i) {
                b1[i] = rng.next_bit();
                b2[i] = rng.next_bit();
                bx[i] = b1[i] ^ b2[i];
            }
            CHECK(rm_encode(F, bx) == rm_encode(F, b1) + rm_encode(F, b2));
        }
    }
    SUBCASE("bad length") {
        CHECK_THROWS_AS(rm_encode(F, {1, 0, 1}), std::invalid_argument);
    }
}

TEST_CASE("zero-on-cube decomposition") {
    auto F = FieldCtx::build(3);
    SUBCASE("the gadget itself") {
        IdPoly f = zero_gadget(F, 2, 0);
        auto cs = zero_cube_decompose(f);
        CHECK(cs[0] == IdPoly::constant(F, 2, F->one()));
        CHECK(cs[1].is_zero());
    }
    SUBCASE("zero polynomial") {
        auto cs = zero_cube_decompose(IdPoly(F, 2));
        CHECK(cs[0].is_zero());
        CHECK(cs[1].is_zero());
    }
    SUBCASE("coefficient-level reassembly for m <= 3") {
        Rng rng(41);
        for (int m = 1; m <= 3; ++m) {
            for (int trial = 0; trial < 6; ++trial) {
                // c0 zero(x0) + ... is zero on the cube by construction
                IdPoly f(F, m);
                std::vector<IdPoly> gens;
                for (int i = 0; i < m; ++i) {
                    IdPoly ci = random_poly(F, m, 2, 4, rng);
                    f = f + ci * zero_gadget(F, m, i);
                }
                auto cs = zero_cube_decompose(f);
                IdPoly back(F, m);
                for (int i = 0; i < m; ++i) back = back + cs[size_t(i)] * zero_gadget(F, m, i);
                CHECK(back == f);
            }
        }
    }
    SUBCASE("pointwise identity for a 2-variable product") {
        IdPoly f = zero_gadget(F, 2, 0) * IdPoly::variable(F, 2, 1);
        auto cs = zero_cube_decompose(f);
        Rng rng(43);
        for (int t = 0; t < 1000; ++t) {
            auto pt = random_point(F, 2, rng);
            FieldElem lhs = f.eval(pt);
            FieldElem rhs = F->zero();
            for (int i = 0; i < 2; ++i) {
                FieldElem z = F->add(pt[size_t(i)], F->mul(pt[size_t(i)], pt[size_t(i)]));
                rhs = F->add(rhs, F->mul(cs[size_t(i)].eval(pt), z));
            }
            CHECK(lhs == rhs);
        }
    }
    SUBCASE("non-vanishing input is rejected") {
        CHECK_THROWS_AS(zero_cube_decompose(IdPoly::constant(F, 2, F->one())),
                        std::domain_error);
        CHECK_THROWS_AS(zero_cube_decompose(IdPoly::variable(F, 2, 1)), std::domain_error);
    }
}

TEST_CASE("pcpp validation") {
    auto F = FieldCtx::build(3);
    SUBCASE("all-zero view validates") {
        PcppView v;
        v.m_ans = 1;
        v.g = 2;
        v.g_d = IdPoly(F, v.m_pcpp());
        v.s.assign(size_t(v.m_pcpp()), F->zero());
        v.u.assign(5, F->zero());
        v.gamma = F->zero();
        v.beta.assign(size_t(v.m_pcpp()), F->zero());
        CHECK(validate_pcpp(v) == 1);
        v.gamma = F->one();
        CHECK(validate_pcpp(v) == 0);
    }
    SUBCASE("honest views validate, gamma perturbations fail") {
        Rng rng(47);
        int m_ans = 1, g = 2;
        int mp = 5 * m_ans + 5 + g;
        for (int trial = 0; trial < 10; ++trial) {
            IdPoly gd = zero_gadget(F, mp, int(rng.next_below(uint64_t(mp))));
            std::array<IdPoly, 5> blocks{IdPoly(F, 1), IdPoly(F, 1), IdPoly(F, 1),
                                         IdPoly(F, 1), IdPoly(F, 1)};
            for (auto& b : blocks) b = random_poly(F, 1, 2, 2, rng);
            auto s = random_point(F, mp, rng);
            PcppView v = make_honest_view(gd, blocks, s, m_ans, g);
            CHECK(validate_pcpp(v) == 1);
            PcppView bad = v;
            bad.gamma = F->add(bad.gamma, F->one());
            CHECK(validate_pcpp(bad) == 0);
        }
    }
    SUBCASE("parse failures reject") {
        PcppView v;
        v.m_ans = 1;
        v.g = 2;
        v.g_d = IdPoly(F, 3); // wrong arity
        v.s.assign(size_t(v.m_pcpp()), F->zero());
        v.u.assign(5, F->zero());
        v.gamma = F->zero();
        v.beta.assign(size_t(v.m_pcpp()), F->zero());
        CHECK(validate_pcpp(v) == 0);
    }
}

TEST_CASE("empirical agreement of distinct polynomials") {
    auto F = FieldCtx::build(3);
    Rng rng(53);
    SUBCASE("disjoint pair never agrees") {
        IdPoly f = IdPoly::variable(F, 1, 0);
        IdPoly g = f + IdPoly::constant(F, 1, F->one());
        auto rep = sz_agreement(f, g, 2000, rng);
        CHECK(rep.agreements == 0);
    }
    SUBCASE("x vs 0 agrees about an eighth of the time") {
        IdPoly f = IdPoly::variable(F, 1, 0);
        auto rep = sz_agreement(f, IdPoly(F, 1), 8000, rng);
        CHECK(rep.rate == doctest::Approx(1.0 / 8).epsilon(0.35));
    }
    SUBCASE("the md/2^p bound holds with slack") {
        for (int trial = 0; trial < 10; ++trial) {
            IdPoly f = random_poly(F, 2, 2, 5, rng);
            IdPoly g = random_poly(F, 2, 2, 5, rng);
            if (f == g) continue;
            auto rep = sz_agreement(f, g, 4000, rng);
            CHECK(rep.rate <= 2.0 * 2 / 8 + 5 * rep.stderr_est);
        }
    }
    SUBCASE("equal polynomials are rejected") {
        IdPoly f = IdPoly::variable(F, 1, 0);
        CHECK_THROWS_AS(sz_agreement(f, f, 10, rng), std::invalid_argument);
    }
}
