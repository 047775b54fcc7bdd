#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nlgf/solvers.hpp"

using namespace nlgf;

namespace {

// Brute-force oracle for the grid game value: enumerate both provers'
// variable assignments; for fixed assignments the constraint answers decouple
// across constraints, so each is optimized jointly over its 64 pairs.
// Weights: /360, label self-pairs 12, ordered constraint-variable pairs 5.
Rational magic_square_oracle() {
    auto par_ok = [](int c, int bits) {
        int p = (bits & 1) ^ ((bits >> 1) & 1) ^ ((bits >> 2) & 1);
        return p == (c == 5 ? 1 : 0);
    };
    // cross tables: tA[c][gb3][ca] = 5 * sum_s [par(ca)][bit_s(ca) == gb3_s]
    static int tA[6][8][8], tB[6][8][8];
    for (int c = 0; c < 6; ++c)
        for (int g3 = 0; g3 < 8; ++g3)
            for (int ca = 0; ca < 8; ++ca) {
                int acc = 0;
                if (par_ok(c, ca))
                    for (int s = 0; s < 3; ++s)
                        if (((ca >> s) & 1) == ((g3 >> s) & 1)) acc += 5;
                tA[c][g3][ca] = acc;
                tB[c][g3][ca] = acc; // same shape on the other side
            }
    // best joint constraint answers per (ga3, gb3)
    static int bestc[6][8][8];
    for (int c = 0; c < 6; ++c)
        for (int ga3 = 0; ga3 < 8; ++ga3)
            for (int gb3 = 0; gb3 < 8; ++gb3) {
                int best = 0;
                for (int ca = 0; ca < 8; ++ca)
                    for (int cb = 0; cb < 8; ++cb) {
                        int sc = tA[c][gb3][ca] + tB[c][ga3][cb];
                        if (ca == cb && par_ok(c, ca)) sc += 12;
                        best = std::max(best, sc);
                    }
                bestc[c][ga3][gb3] = best;
            }
    auto var_of = [](int c, int s) { return c < 3 ? 3 * c + s : (c - 3) + 3 * s; };
    int64_t best_total = 0;
    for (int ga = 0; ga < 512; ++ga)
        for (int gb = 0; gb < 512; ++gb) {
            int64_t sc = 0;
            for (int v = 0; v < 9; ++v)
                if (((ga >> v) & 1) == ((gb >> v) & 1)) sc += 12;
            for (int c = 0; c < 6; ++c) {
                int ga3 = 0, gb3 = 0;
                for (int s = 0; s < 3; ++s) {
                    ga3 |= ((ga >> var_of(c, s)) & 1) << s;
                    gb3 |= ((gb >> var_of(c, s)) & 1) << s;
                }
                sc += bestc[c][ga3][gb3];
            }
            best_total = std::max(best_total, sc);
        }
    return Rational(best_total, 360);
}

} // namespace

TEST_CASE("exact classical values of the base games") {
    auto acc = classical_value_exact(accept_game());
    CHECK(acc.value_exact == Rational(1));
    auto rej = classical_value_exact(reject_game());
    CHECK(rej.value_exact == Rational(1, 3));
}

TEST_CASE("witnesses re-evaluate to the reported value") {
    for (Game g : {accept_game(), reject_game(), magic_square_game()}) {
        auto rep = classical_value_exact(g);
        CHECK(witness_value(g, rep) == doctest::Approx(rep.value).epsilon(1e-12));
    }
}

TEST_CASE("anchoring shifts the classical value to 3/4 + v/4") {
    Rng rng(29);
    for (int t = 0; t < 5; ++t) {
        Rng child = rng.derive(uint64_t(t));
        auto g = std::make_shared<Game>(random_explicit_game(3, 2, child));
        auto inner = classical_value_exact(*g);
        auto anc = classical_value_exact(anchor(g));
        CHECK(anc.value_exact == Rational(3, 4) + inner.value_exact * Rational(1, 4));
    }
}

TEST_CASE("repetition multiplies the reject value") {
    auto rej = std::make_shared<Game>(reject_game());
    Rational base = classical_value_exact(*rej).value_exact;
    Rational power = base;
    for (int r = 2; r <= 3; ++r) {
        power = power * base;
        auto rep = classical_value_exact(repeat_game(rej, r));
        CHECK(rep.value_exact == power);
    }
    CHECK(classical_value_exact(repeat_game(rej, 2)).value_exact == Rational(1, 9));
}

TEST_CASE("repetition never loses value on library games") {
    auto acc = std::make_shared<Game>(accept_game());
    Rational a1 = classical_value_exact(*acc).value_exact;
    auto a2 = classical_value_exact(repeat_game(acc, 2)).value_exact;
    CHECK(a2 >= a1 * a1);
    // the squared grid game blows past the strategy-space cap by design
    auto ms = std::make_shared<Game>(magic_square_game());
    CHECK_THROWS_AS(classical_value_exact(repeat_game(ms, 2)), CapacityError);
}

TEST_CASE("magic square classical value matches the decomposition oracle") {
    Rational oracle = magic_square_oracle();
    auto rep = classical_value_exact(magic_square_game());
    CHECK(rep.value_exact == oracle);
    CHECK(rep.value_exact < Rational(1));
    // frozen from the oracle: half the mass is synchronous and fully winnable,
    // the cross half behaves like the uniform constraint-variable game
    CHECK(oracle == Rational(35, 36));
}

TEST_CASE("heuristic lower bound") {
    SUBCASE("accept reaches one at dimension one") {
        LowerBoundOptions opt;
        opt.dim = 1;
        opt.restarts = 4;
        opt.iters = 3;
        auto rep = quantum_lower_bound(accept_game(), opt);
        CHECK(rep.value == doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("reject never exceeds a third") {
        LowerBoundOptions opt;
        opt.dim = 2;
        opt.restarts = 30;
        opt.iters = 4;
        auto rep = quantum_lower_bound(reject_game(), opt);
        CHECK(rep.value <= 1.0 / 3 + 1e-6);
    }
    SUBCASE("deterministic for a fixed seed") {
        LowerBoundOptions opt;
        opt.dim = 2;
        opt.restarts = 6;
        opt.iters = 3;
        opt.seed = 42;
        auto r1 = quantum_lower_bound(reject_game(), opt);
        auto r2 = quantum_lower_bound(reject_game(), opt);
        CHECK(std::memcmp(&r1.value, &r2.value, sizeof(double)) == 0);
    }
    SUBCASE("magic square reaches at least the classical optimum") {
        LowerBoundOptions opt;
        opt.dim = 4;
        opt.restarts = 4;
        opt.iters = 2;
        opt.seed = 7;
        auto rep = quantum_lower_bound(magic_square_game(), opt);
        auto cls = classical_value_exact(magic_square_game());
        CHECK(rep.value >= cls.value - 1e-9);
        // the witness is a genuine strategy achieving the reported value
        REQUIRE(rep.witness_strategy);
        CHECK(eval_value(magic_square_game(), *rep.witness_strategy) ==
              doctest::Approx(rep.value).epsilon(1e-9));
    }
}

TEST_CASE("completeness chains") {
    auto ms = std::make_shared<Game>(magic_square_game());
    Strategy s = magic_square_strategy();
    SUBCASE("oracularization chain passes") {
        auto rep = verify_completeness_chain(ms, s, {"oracularize"});
        CHECK(rep.pass);
        for (const auto& st : rep.stages) CHECK(st.value >= 1.0 - 1e-9);
    }
    SUBCASE("anchor plus repetition passes") {
        auto rep = verify_completeness_chain(ms, s, {"anchor", "repeat:2"});
        CHECK(rep.pass);
        CHECK(rep.stages.size() == 3);
    }
    SUBCASE("a broken decider fails at the first stage") {
        auto broken = std::make_shared<Game>(magic_square_game());
        broken->decide = [](const Question&, const Question&, const Answer&, const Answer&) {
            return false;
        };
        auto rep = verify_completeness_chain(broken, s, {"oracularize"});
        CHECK_FALSE(rep.pass);
        CHECK(rep.stages.size() == 1);
        CHECK_FALSE(rep.stages[0].pass);
    }
}

TEST_CASE("oracularizing the accept game keeps value one") {
    auto acc = std::make_shared<Game>(accept_game());
    auto rep = classical_value_exact(oracularize(acc));
    CHECK(rep.value_exact == Rational(1));
}
