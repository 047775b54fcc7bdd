#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nlgf/clspace.hpp"

using namespace nlgf;

namespace {

// the two-level worked example on three bits:
// L(x0,x1,x2) = (x0, x0 x1 + (1+x0) x2, 0)
CLFunction example_fn() {
    CLFunction f(3, {{0}, {1, 2}}, BitMatrix::identity(1));
    f.add_level(
        [](const BitVec& prefix) {
            BitMatrix m(2, 2);
            // output local coord 0 is ambient bit 1
            if (prefix.get(0))
                m.set(0, 0, true); // x1
            else
                m.set(0, 1, true); // x2
            return m;
        },
        "example");
    return f;
}

BitVec example_truth(const BitVec& s) {
    BitVec r(3);
    r.set(0, s.get(0));
    r.set(1, (s.get(0) && s.get(1)) ^ (!s.get(0) && s.get(2)));
    return r;
}

CLFunction identity_fn(int n) {
    std::vector<std::vector<int>> regs{std::vector<int>{}};
    for (int i = 0; i < n; ++i) regs[0].push_back(i);
    return CLFunction::diagonal(n, regs, true);
}

CLFunction zero_fn(int n) {
    std::vector<std::vector<int>> regs{std::vector<int>{}};
    for (int i = 0; i < n; ++i) regs[0].push_back(i);
    return CLFunction::diagonal(n, regs, false);
}

} // namespace

TEST_CASE("worked example evaluates per the top-level formula") {
    CLFunction f = example_fn();
    CHECK(f.eval(BitVec::from_u64(3, 0b011)) == BitVec::from_u64(3, 0b011)); // (1,1,0)
    CHECK(f.eval(BitVec::from_u64(3, 0b100)) == BitVec::from_u64(3, 0b010)); // (0,0,1)->(0,1,0)
    for (uint64_t w = 0; w < 8; ++w) {
        BitVec s = BitVec::from_u64(3, w);
        CHECK(f.eval(s) == example_truth(s));
    }
    CHECK_THROWS_AS(f.eval(BitVec(4)), std::domain_error);
}

TEST_CASE("identity per level is the identity") {
    CLFunction f = CLFunction::diagonal(4, {{0, 1}, {2, 3}}, true);
    for (uint64_t w = 0; w < 16; ++w) {
        BitVec s = BitVec::from_u64(4, w);
        CHECK(f.eval(s) == s);
    }
}

TEST_CASE("series composition") {
    SUBCASE("identity head with a constant family") {
        CLFunction m = identity_fn(2);
        auto ex = std::make_shared<CLFunction>(example_fn());
        CLFamily fam = [ex](const BitVec&) { return ex; };
        CLFunction c = series_compose(m, fam, 2, 3, ex->registers(), "t");
        CHECK(c.levels() == 3);
        for (uint64_t w = 0; w < 32; ++w) {
            BitVec s = BitVec::from_u64(5, w);
            BitVec expect(5);
            expect.paste(0, s.slice(0, 2));
            expect.paste(2, example_truth(s.slice(2, 3)));
            CHECK(c.eval(s) == expect);
        }
    }
    SUBCASE("level-1 selector choosing between two tails") {
        // head: one bit, identity; tail: the example for 0, its sibling for 1
        CLFunction head = identity_fn(1);
        auto ex = std::make_shared<CLFunction>(example_fn());
        auto id3 = std::make_shared<CLFunction>(
            CLFunction::diagonal(3, {{0}, {1, 2}}, true));
        CLFamily fam = [ex, id3](const BitVec& v) { return v.get(0) ? ex : id3; };
        CLFunction c = series_compose(head, fam, 2, 3, ex->registers(), "sel");
        CHECK(c.levels() == 3);
        for (uint64_t w = 0; w < 16; ++w) {
            BitVec s = BitVec::from_u64(4, w);
            BitVec tail = s.slice(1, 3);
            BitVec expect(4);
            expect.set(0, s.get(0));
            expect.paste(1, s.get(0) ? example_truth(tail) : tail);
            CHECK(c.eval(s) == expect);
        }
    }
    SUBCASE("two one-level functions compose to level two") {
        CLFunction a = identity_fn(1);
        auto b = std::make_shared<CLFunction>(identity_fn(1));
        CLFamily fam = [b](const BitVec&) { return b; };
        CLFunction c = series_compose(a, fam, 1, 1, b->registers(), "t");
        CHECK(c.levels() == 2);
    }
}

TEST_CASE("parallel composition") {
    SUBCASE("zero second leg") {
        CLFunction m = example_fn();
        CLFunction z(3, {{0}, {1, 2}}, BitMatrix::zero(1));
        z.add_level([](const BitVec&) { return BitMatrix::zero(2); }, "zero");
        CLFunction c = parallel_compose(m, z);
        for (uint64_t w = 0; w < 64; ++w) {
            BitVec s = BitVec::from_u64(6, w);
            BitVec expect(6);
            // registers interleave: V0 = {0, 3}, V1 = {1, 2, 4, 5}
            BitVec left(3);
            left.set(0, s.get(0));
            left.set(1, s.get(1));
            left.set(2, s.get(2));
            BitVec lout = example_truth(left);
            expect.set(0, lout.get(0));
            expect.set(1, lout.get(1));
            expect.set(2, lout.get(2));
            CHECK(c.eval(s) == expect);
        }
    }
    SUBCASE("two copies of the example act componentwise") {
        CLFunction c = parallel_compose(example_fn(), example_fn());
        for (uint64_t w = 0; w < 64; ++w) {
            BitVec s = BitVec::from_u64(6, w);
            BitVec l(3), r(3);
            l.set(0, s.get(0));
            l.set(1, s.get(1));
            l.set(2, s.get(2));
            r.set(0, s.get(3));
            r.set(1, s.get(4));
            r.set(2, s.get(5));
            BitVec lo = example_truth(l), ro = example_truth(r);
            BitVec expect(6);
            expect.set(0, lo.get(0));
            expect.set(1, lo.get(1));
            expect.set(2, lo.get(2));
            expect.set(3, ro.get(0));
            expect.set(4, ro.get(1));
            expect.set(5, ro.get(2));
            CHECK(c.eval(s) == expect);
        }
    }
    SUBCASE("parallel of identities is the identity") {
        CLFunction c = parallel_compose(identity_fn(2), identity_fn(2));
        for (uint64_t w = 0; w < 16; ++w) {
            BitVec s = BitVec::from_u64(4, w);
            CHECK(c.eval(s) == s);
        }
    }
    SUBCASE("unequal level counts are rejected") {
        CHECK_THROWS_AS(parallel_compose(identity_fn(2), example_fn()),
                        std::invalid_argument);
    }
}

TEST_CASE("cl sampling") {
    Rng rng(7);
    SUBCASE("identity pair exposes the seed") {
        CLDist d(identity_fn(5), identity_fn(5));
        for (int i = 0; i < 20; ++i) {
            auto s = sample_cl(d, rng);
            CHECK(s.x == s.seed);
            CHECK(s.y == s.seed);
        }
    }
    SUBCASE("zero pair") {
        CLDist d(zero_fn(4), zero_fn(4));
        auto s = sample_cl(d, rng);
        CHECK(s.x.is_zero());
        CHECK(s.y.is_zero());
    }
    SUBCASE("example against identity, exhaustive seed table") {
        CLDist d(example_fn(), CLFunction::diagonal(3, {{0}, {1, 2}}, true));
        auto table = enumerate_cl(d);
        CHECK(int(table.size()) == 8);
        for (uint64_t w = 0; w < 8; ++w) {
            BitVec s = BitVec::from_u64(3, w);
            CHECK(table.at({example_truth(s), s}) == 1);
        }
    }
}

TEST_CASE("exact enumeration of cl laws") {
    SUBCASE("identity over one bit") {
        CLDist d(identity_fn(1), identity_fn(1));
        auto t = enumerate_cl(d);
        CHECK(t.size() == 2);
        CHECK(t.at({BitVec::from_u64(1, 0), BitVec::from_u64(1, 0)}) == 1);
        CHECK(t.at({BitVec::from_u64(1, 1), BitVec::from_u64(1, 1)}) == 1);
    }
    SUBCASE("zero law is a point mass") {
        CLDist d(zero_fn(3), zero_fn(3));
        auto t = enumerate_cl(d);
        CHECK(t.size() == 1);
        CHECK(t.at({BitVec(3), BitVec(3)}) == 8);
    }
    SUBCASE("capacity guard") {
        CLDist d(identity_fn(3), identity_fn(3));
        CHECK_THROWS_AS(enumerate_cl(d, 2), CapacityError);
    }
}

TEST_CASE("typed sampling and enumeration") {
    SUBCASE("single vertex with a self-loop") {
        TypedCLDist d{1, {{0, 0}}, {identity_fn(2)}};
        Rng rng(3);
        for (int i = 0; i < 10; ++i) {
            auto s = sample_typed(d, rng);
            CHECK(s.va == 0);
            CHECK(s.vb == 0);
            CHECK(s.xa == s.seed);
            CHECK(s.xb == s.seed);
        }
    }
    SUBCASE("two vertices, loops plus the cross edge") {
        TypedCLDist d{2, {{0, 0}, {1, 1}, {0, 1}}, {identity_fn(1), zero_fn(1)}};
        int64_t denom = 0;
        auto t = enumerate_typed(d, &denom);
        CHECK(denom == 4 * 2 * 2);
        // marginal over the label pair: self pairs 1/4 each, cross 1/4 per order
        auto mass = [&](int a, int b) {
            int64_t s = 0;
            for (auto& [k, c] : t)
                if (k.first.first == a && k.second.first == b) s += c;
            return s;
        };
        CHECK(mass(0, 0) == 4);
        CHECK(mass(1, 1) == 4);
        CHECK(mass(0, 1) == 4);
        CHECK(mass(1, 0) == 4);
        // hand simulation of the sampling steps
        std::map<TypedKey, int64_t> hand;
        std::vector<std::pair<int, int>> eo{{0, 0}, {0, 1}, {1, 0}, {1, 1}};
        for (auto& [v0, v1] : eo)
            for (int b = 0; b < 2; ++b)
                for (uint64_t w = 0; w < 2; ++w) {
                    BitVec s = BitVec::from_u64(1, w);
                    BitVec x0 = d.funcs[size_t(v0)].eval(s);
                    BitVec x1 = d.funcs[size_t(v1)].eval(s);
                    if (b == 0)
                        hand[{{v0, x0}, {v1, x1}}] += 1;
                    else
                        hand[{{v1, x1}, {v0, x0}}] += 1;
                }
        CHECK(hand == t);
    }
    SUBCASE("empty family is rejected") {
        TypedCLDist d{0, {}, {}};
        Rng rng(1);
        CHECK_THROWS_AS(sample_typed(d, rng), std::invalid_argument);
    }
}

TEST_CASE("detyping a two-vertex graph over F_2") {
    TypedCLDist d{2, {{0, 0}, {1, 1}, {0, 1}}, {identity_fn(1), zero_fn(1)}};
    Detyped dt = detype(d, 1);

    SUBCASE("shape") {
        // selector block: 2*1 + 4*2 = 10 extra bits, two extra levels
        CHECK(dt.dist.ambient() == 11);
        CHECK(dt.dist.la.levels() == 3);
        CHECK(dt.layout.amb1 == 10);
    }
    SUBCASE("all-zero seed is trivial") {
        CHECK_FALSE(dt.is_nontrivial_seed(BitVec(11)));
    }
    SUBCASE("hand-built non-trivial seed") {
        BitVec s(11);
        // v0 = 0, v1 = 1; neigh(0) = 11, neigh(1) = 11
        const auto& L = dt.layout;
        BitVec ones(2);
        ones.set(0, true);
        ones.set(1, true);
        s.set(L.s2(), true); // v1 = 1
        s.paste(L.s1(), ones);
        s.paste(L.s4(), ones);
        s.paste(L.s3(), ones);
        s.paste(L.s5(), ones);
        CHECK(dt.is_nontrivial_seed(s));
        auto px = dt.parse_output(dt.dist.la.eval(s));
        auto py = dt.parse_output(dt.dist.lb.eval(s));
        REQUIRE(px);
        REQUIRE(py);
        CHECK(px->first == 0);
        CHECK(py->first == 1);
    }
    SUBCASE("non-trivial fraction beats the guaranteed bound") {
        int64_t cnt = 0, tot = 0;
        double frac = dt.nontrivial_fraction(&cnt, &tot);
        // exhaustive count over the selector block
        int64_t direct = 0;
        for (uint64_t w = 0; w < 1024; ++w) {
            BitVec s(11);
            for (int i = 0; i < 10; ++i) s.set(i, (w >> i) & 1);
            if (dt.is_nontrivial_seed(s)) ++direct;
        }
        CHECK(cnt * (int64_t(1024) / tot) == direct); // same ratio, tot == 1024
        CHECK(frac == doctest::Approx(double(direct) / 1024.0));
        CHECK(frac >= 1.0 / (4.0 * 4.0 * 256.0)); // 1/(4 t^2 16^t), t = 2
    }
    SUBCASE("conditioned law equals the typed law exactly") {
        int64_t cd = 0, td = 0;
        auto cond = dt.enumerate_conditioned(&cd);
        auto typed = enumerate_typed(d, &td);
        // compare as exact rationals: cond[k]/cd == typed[k]/td
        CHECK(cond.size() == typed.size());
        for (auto& [k, c] : cond) {
            auto it = typed.find(k);
            REQUIRE(it != typed.end());
            CHECK(Rational(c, cd) == Rational(it->second, td));
        }
    }
}

TEST_CASE("padding to a multiple of p") {
    auto F = FieldCtx::build(3);
    (void)F;
    std::vector<std::vector<int>> regs{{0, 1, 2}};
    TypedCLDist d{2,
                  {{0, 0}, {0, 1}, {1, 1}},
                  {CLFunction::diagonal(3, regs, true), CLFunction::diagonal(3, regs, false)}};
    Detyped dt = detype(d, 3);
    CHECK(dt.inner->t == 3);
    CHECK(dt.inner->has_edge(2, 2));
    int64_t cd = 0, td = 0;
    auto cond = dt.enumerate_conditioned(&cd);
    auto typed = enumerate_typed(*dt.inner, &td);
    CHECK(cond.size() == typed.size());
    for (auto& [k, c] : cond) CHECK(Rational(c, cd) == Rational(typed.at(k), td));
}

TEST_CASE("canonical complement") {
    SUBCASE("trivial ends") {
        Subspace v = Subspace::full(3);
        CHECK(canonical_complement(Subspace::zero(3), v) == v);
        CHECK(canonical_complement(v, v) == Subspace::zero(3));
    }
    SUBCASE("pivot in column 0 leaves e1") {
        Subspace v = Subspace::full(2);
        BitVec w(2);
        w.set(0, true);
        w.set(1, true);
        Subspace sub = Subspace::from_vectors(2, {w});
        Subspace c = canonical_complement(sub, v);
        CHECK(c.dim() == 1);
        BitVec e1(2);
        e1.set(1, true);
        CHECK(c.contains(e1));
    }
    SUBCASE("independent of the basis presentation") {
        BitVec a = BitVec::from_u64(4, 0b0011), b = BitVec::from_u64(4, 0b0110);
        Subspace s1 = Subspace::from_vectors(4, {a, b});
        Subspace s2 = Subspace::from_vectors(4, {b, a ^ b, a});
        CHECK(canonical_complement(s1, Subspace::full(4)) ==
              canonical_complement(s2, Subspace::full(4)));
    }
    SUBCASE("W outside V is rejected") {
        Subspace v = Subspace::span_canonical(3, {0, 1});
        BitVec w(3);
        w.set(2, true);
        CHECK_THROWS_AS(canonical_complement(Subspace::from_vectors(3, {w}), v),
                        std::invalid_argument);
    }
}

TEST_CASE("kernel, orthogonal complement, perp projection") {
    Subspace v = Subspace::full(3);
    SUBCASE("identity map") {
        BitMatrix id = BitMatrix::identity(3);
        CHECK(kernel(id, v).dim() == 0);
        // ker^perp = V, so its complement is zero and the projection vanishes
        BitMatrix pp = proj_perp(id, v);
        for (uint64_t w = 0; w < 8; ++w)
            CHECK(pp.apply(BitVec::from_u64(3, w)).is_zero());
    }
    SUBCASE("zero map") {
        BitMatrix z(3, 3);
        CHECK(kernel(z, v).dim() == 3);
        BitMatrix pp = proj_perp(z, v);
        for (uint64_t w = 0; w < 8; ++w) {
            BitVec x = BitVec::from_u64(3, w);
            CHECK(pp.apply(x) == x);
        }
    }
    SUBCASE("ker(L)^perp = ker(L^perp) for random maps") {
        Rng rng(11);
        for (int trial = 0; trial < 40; ++trial) {
            BitMatrix m(3, 3);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) m.set(i, j, rng.next_bit());
            Subspace kperp = orth(kernel(m, v), v);
            BitMatrix pp = proj_perp(m, v);
            Subspace kerpp = kernel(pp, v);
            CHECK(kperp == kerpp);
            // idempotence and the split property
            for (uint64_t w = 0; w < 8; ++w) {
                BitVec x = BitVec::from_u64(3, w);
                CHECK(pp.apply(pp.apply(x)) == pp.apply(x));
                CHECK(kperp.contains(x ^ pp.apply(x)));
            }
        }
    }
}

TEST_CASE("orthogonality relation") {
    Subspace v = Subspace::full(4);
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<BitVec> vecs;
        for (int i = 0; i < 2; ++i) {
            BitVec b(4);
            for (int j = 0; j < 4; ++j) b.set(j, rng.next_bit());
            vecs.push_back(b);
        }
        Subspace w = Subspace::from_vectors(4, vecs);
        Subspace o = orth(w, v);
        for (const BitVec& u : o.elements())
            for (const BitVec& x : w.elements()) CHECK_FALSE(dot(u, x));
        CHECK(o.dim() + w.dim() == 4);
    }
}

TEST_CASE("canonical line representation") {
    auto F = FieldCtx::build(3);
    SUBCASE("points on the direction collapse to offset zero") {
        Vec2pm v(F, 2);
        v.set_coord(0, F->from_coords(5));
        v.set_coord(1, F->from_coords(1));
        auto [dir, off] = canon_line(v, v);
        CHECK(dir == v);
        CHECK(off.bits().is_zero());
    }
    SUBCASE("independent of the representative") {
        Rng rng(17);
        for (int trial = 0; trial < 30; ++trial) {
            Vec2pm u(F, 2), v(F, 2);
            for (int i = 0; i < 2; ++i) {
                u.set_coord(i, F->from_coords(uint32_t(rng.next_below(8))));
                v.set_coord(i, F->from_coords(uint32_t(rng.next_below(8))));
            }
            if (v.bits().is_zero()) continue;
            for (uint32_t t = 0; t < 8; ++t) {
                Vec2pm u2 = u + v.scaled(F->from_coords(t));
                CHECK(canon_line(u, v).second == canon_line(u2, v).second);
            }
        }
    }
    SUBCASE("zero direction is rejected") {
        Vec2pm u(F, 2), z(F, 2);
        CHECK_THROWS_AS(canon_line(u, z), std::invalid_argument);
    }
}

TEST_CASE("zero-out maps") {
    BitVec s = BitVec::from_u64(4, 0b1111);
    SUBCASE("string version") {
        CHECK(zero_out_string(s, 0, true) == BitVec::from_u64(4, 0b1110));
        CHECK(zero_out_string(s, 3, true).is_zero());
        for (int j = 0; j <= 4; ++j)
            CHECK((zero_out_string(s, j, true) ^ zero_out_string(s, j, false)) == s);
        CHECK_THROWS_AS(zero_out_string(s, 5, true), std::invalid_argument);
    }
    SUBCASE("field version differs from bit-level zeroing") {
        auto F = FieldCtx::build(3);
        for (uint32_t a = 1; a < 8; ++a) {
            Vec2pm v(F, 1);
            v.set_coord(0, F->from_coords(a));
            // killing field coordinate 0 kills all three bits
            CHECK(zero_out_field(v, 0, true).bits().is_zero());
            BitVec bitwise = zero_out_string(v.bits(), 0, true);
            if (a != 1) CHECK_FALSE(bitwise.is_zero());
        }
    }
}

TEST_CASE("sampled frequencies match the exact law") {
    // identity distribution on 6 bits: 64 outcomes, 10^5 draws, 5-sigma bands
    CLDist d(identity_fn(6), identity_fn(6));
    auto table = enumerate_cl(d);
    std::map<std::pair<BitVec, BitVec>, int64_t> counts;
    Rng rng(99);
    const int64_t draws = 100000;
    for (int64_t i = 0; i < draws; ++i) {
        auto s = sample_cl(d, rng);
        counts[{s.x, s.y}] += 1;
    }
    for (auto& [k, c] : table) {
        double p = double(c) / 64.0;
        double mean = draws * p;
        double sigma = std::sqrt(draws * p * (1 - p));
        double got = double(counts.count(k) ? counts.at(k) : 0);
        CHECK(std::abs(got - mean) <= 5 * sigma);
    }
    // and nothing outside the support
    for (auto& [k, c] : counts) CHECK(table.count(k));
}

TEST_CASE("typed sampler matches its exact law") {
    TypedCLDist d{2, {{0, 0}, {1, 1}, {0, 1}}, {identity_fn(2), zero_fn(2)}};
    int64_t denom = 0;
    auto table = enumerate_typed(d, &denom);
    std::map<TypedKey, int64_t> counts;
    Rng rng(7);
    const int64_t draws = 100000;
    for (int64_t i = 0; i < draws; ++i) {
        auto s = sample_typed(d, rng);
        counts[{{s.va, s.xa}, {s.vb, s.xb}}] += 1;
    }
    for (auto& [k, c] : table) {
        double p = double(c) / double(denom);
        double mean = draws * p;
        double sigma = std::sqrt(draws * p * (1 - p));
        double got = double(counts.count(k) ? counts.at(k) : 0);
        CHECK(std::abs(got - mean) <= 5 * sigma);
    }
}
