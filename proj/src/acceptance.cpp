#include "nlgf/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <set>
#include <sstream>

#include "nlgf/serial.hpp"
#include "nlgf/solvers.hpp"

namespace nlgf {

namespace {

using Clock = std::chrono::steady_clock;

struct Ctx {
    uint64_t seed;
    std::ostringstream detail;
    bool ok = true;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail << "FAILED: " << what << "; ";
        }
    }
    void note(const std::string& s) { detail << s << "; "; }
};

// ---- field suite -------------------------------------------------------------

void field_axioms(Ctx& c) {
    for (int p : {1, 3, 5}) {
        auto F = FieldCtx::build(p);
        for (int i = 0; i < p; ++i)
            for (int j = 0; j < p; ++j)
                c.expect(F->trace(F->mul(F->basis(i), F->basis(j))) == (i == j ? 1 : 0),
                         "self-duality p=" + std::to_string(p));
        if (p <= 3) {
            uint32_t q = F->order();
            for (uint32_t a = 0; a < q; ++a)
                for (uint32_t b = 0; b < q; ++b) {
                    auto ea = F->from_coords(a), eb = F->from_coords(b);
                    c.expect(F->add(ea, eb) == F->add(eb, ea), "commutative addition");
                    c.expect(F->mul(ea, eb) == F->mul(eb, ea), "commutative product");
                    c.expect(F->trace(F->mul(ea, eb)) == __builtin_parity(a & b),
                             "trace form equals the dot product");
                    for (uint32_t d = 0; d < q; ++d) {
                        auto ed = F->from_coords(d);
                        c.expect(F->mul(ea, F->add(eb, ed)) ==
                                     F->add(F->mul(ea, eb), F->mul(ea, ed)),
                                 "distributivity");
                        c.expect(F->mul(F->mul(ea, eb), ed) == F->mul(ea, F->mul(eb, ed)),
                                 "associativity");
                    }
                }
        } else {
            Rng rng(c.seed + 101);
            for (int t = 0; t < 10000; ++t) {
                auto ea = F->from_coords(uint32_t(rng.next_below(F->order())));
                auto eb = F->from_coords(uint32_t(rng.next_below(F->order())));
                auto ed = F->from_coords(uint32_t(rng.next_below(F->order())));
                c.expect(F->mul(ea, F->add(eb, ed)) == F->add(F->mul(ea, eb), F->mul(ea, ed)),
                         "sampled distributivity p=5");
                c.expect(F->mul(F->mul(ea, eb), ed) == F->mul(ea, F->mul(eb, ed)),
                         "sampled associativity p=5");
                if (!ea.is_zero())
                    c.expect(F->mul(ea, F->inv(ea)) == F->one(), "sampled inverses p=5");
            }
        }
    }
    c.note("axioms for p in {1,3,5}");
}

// ---- cl suite -----------------------------------------------------------------

CLFunction worked_example() {
    CLFunction f(3, {{0}, {1, 2}}, BitMatrix::identity(1));
    f.add_level(
        [](const BitVec& prefix) {
            BitMatrix m(2, 2);
            if (prefix.get(0))
                m.set(0, 0, true);
            else
                m.set(0, 1, true);
            return m;
        },
        "worked-example");
    return f;
}

CLFunction random_cl(int ambient, int levels, Rng& rng) {
    // random disjoint registers and random level matrices
    std::vector<int> perm(static_cast<size_t>(ambient));
    for (int i = 0; i < ambient; ++i) perm[size_t(i)] = i;
    for (int i = ambient - 1; i > 0; --i)
        std::swap(perm[size_t(i)], perm[size_t(rng.next_below(uint64_t(i) + 1))]);
    std::vector<std::vector<int>> regs(static_cast<size_t>(levels));
    for (int i = 0; i < ambient; ++i)
        regs[size_t(i < levels ? i : int(rng.next_below(uint64_t(levels))))].push_back(
            perm[size_t(i)]);
    for (auto& r : regs) std::sort(r.begin(), r.end());
    auto rand_mat = [&rng](int n) {
        BitMatrix m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m.set(i, j, rng.next_bit());
        return m;
    };
    CLFunction f(ambient, regs, rand_mat(int(regs[0].size())));
    for (int j = 1; j < levels; ++j) {
        int n = int(regs[size_t(j)].size());
        // two candidate matrices selected by a prefix bit
        BitMatrix m0 = rand_mat(n), m1 = rand_mat(n);
        int probe = regs[0][0];
        f.add_level(
            [m0, m1, probe](const BitVec& prefix) { return prefix.get(probe) ? m1 : m0; },
            "random");
    }
    return f;
}

void cl_suite(Ctx& c) {
    CLFunction ex = worked_example();
    auto truth = [](const BitVec& s) {
        BitVec r(3);
        r.set(0, s.get(0));
        r.set(1, (s.get(0) && s.get(1)) ^ (!s.get(0) && s.get(2)));
        return r;
    };
    for (uint64_t w = 0; w < 8; ++w) {
        BitVec s = BitVec::from_u64(3, w);
        c.expect(ex.eval(s) == truth(s), "worked example seed " + std::to_string(w));
    }
    c.note("worked example on 8 seeds");

    Rng rng(c.seed + 202);
    for (int trial = 0; trial < 6; ++trial) {
        int amb1 = 2 + int(rng.next_below(3));
        int amb2 = 2 + int(rng.next_below(4));
        int k1 = 1 + int(rng.next_below(2));
        int k2 = 1 + int(rng.next_below(2));
        CLFunction head = random_cl(amb1, k1, rng);
        auto tail0 = std::make_shared<CLFunction>(random_cl(amb2, k2, rng));
        auto tail1 = std::make_shared<CLFunction>(*tail0);
        // a second tail with the same registers
        {
            CLFunction t1(amb2, tail0->registers(), BitMatrix::identity(int(tail0->registers()[0].size())));
            for (int j = 1; j < k2; ++j) {
                int n = int(tail0->registers()[size_t(j)].size());
                BitMatrix m = BitMatrix::identity(n);
                t1.add_level([m](const BitVec&) { return m; }, "id");
            }
            tail1 = std::make_shared<CLFunction>(t1);
        }
        CLFamily fam = [tail0, tail1](const BitVec& v) -> CLPtr {
            return v.get(0) ? tail1 : tail0;
        };
        CLFunction ser = series_compose(head, fam, k2, amb2, tail0->registers(), "t");
        for (uint64_t w = 0; w < (uint64_t{1} << (amb1 + amb2)); ++w) {
            BitVec s = BitVec::from_u64(amb1 + amb2, w);
            BitVec v1 = s.slice(0, amb1), v2 = s.slice(amb1, amb2);
            BitVec h = head.eval(v1);
            BitVec t = (h.get(0) ? *tail1 : *tail0).eval(v2);
            BitVec expect(amb1 + amb2);
            expect.paste(0, h);
            expect.paste(amb1, t);
            c.expect(ser.eval(s) == expect, "series semantics");
        }
        if (k1 == k2) {
            CLFunction par = parallel_compose(head, random_cl(amb2, k1, rng));
            (void)par;
        }
        CLFunction m2 = random_cl(amb1, k1, rng);
        CLFunction p = parallel_compose(head, m2);
        for (uint64_t w = 0; w < (uint64_t{1} << (2 * amb1)); ++w) {
            BitVec s = BitVec::from_u64(2 * amb1, w);
            BitVec v1 = s.slice(0, amb1), v2 = s.slice(amb1, amb1);
            BitVec expect(2 * amb1);
            expect.paste(0, head.eval(v1));
            expect.paste(amb1, m2.eval(v2));
            c.expect(p.eval(s) == expect, "parallel semantics");
        }
    }
    c.note("series/parallel vs direct semantics, ambient <= 12 bits");
}

void detype_suite(Ctx& c) {
    std::vector<int> reg{0};
    TypedCLDist d{2,
                  {{0, 0}, {1, 1}, {0, 1}},
                  {CLFunction::diagonal(1, {reg}, true), CLFunction::diagonal(1, {reg}, false)}};
    Detyped dt = detype(d, 1);
    int64_t cnt = 0, tot = 0;
    double frac = dt.nontrivial_fraction(&cnt, &tot);
    double bound = 1.0 / (4.0 * 2 * 2 * 256.0); // 1/(4 t^2 16^t), t = 2
    c.expect(frac >= bound, "non-trivial seed fraction above the guaranteed bound");
    {
        std::ostringstream os;
        os << "fraction " << cnt << "/" << tot << " >= 1/4096";
        c.note(os.str());
    }
    int64_t cd = 0, td = 0;
    auto cond = dt.enumerate_conditioned(&cd);
    auto typed = enumerate_typed(d, &td);
    c.expect(cond.size() == typed.size(), "conditioned support equals the typed support");
    for (auto& [k, v] : cond)
        c.expect(typed.count(k) && Rational(v, cd) == Rational(typed.at(k), td),
                 "conditioned law equals the typed law");
    c.note("total-variation distance exactly 0");
}

// ---- games suite ---------------------------------------------------------------

void values_suite(Ctx& c) {
    c.expect(classical_value_exact(accept_game()).value_exact == Rational(1), "accept value 1");
    c.expect(classical_value_exact(reject_game()).value_exact == Rational(1, 3),
             "reject value 1/3");
    Rng rng(c.seed + 303);
    for (int t = 0; t < 5; ++t) {
        Rng child = rng.derive(uint64_t(t));
        auto g = std::make_shared<Game>(random_explicit_game(3, 2, child));
        Rational inner = classical_value_exact(*g).value_exact;
        Rational anc = classical_value_exact(anchor(g)).value_exact;
        c.expect(anc == Rational(3, 4) + inner * Rational(1, 4),
                 "anchored value identity on random game " + std::to_string(t));
    }
    auto rej = std::make_shared<Game>(reject_game());
    c.expect(classical_value_exact(repeat_game(rej, 2)).value_exact == Rational(1, 9),
             "doubled reject value 1/9");
    c.note("accept 1, reject 1/3, anchor identity on 5 games, reject^2 = 1/9");
}

Rational magic_square_oracle_value() {
    // brute force over both provers' variable assignments with per-constraint
    // joint optimization; independent of the library's search
    auto par_ok = [](int cc, int bits) {
        int p = (bits & 1) ^ ((bits >> 1) & 1) ^ ((bits >> 2) & 1);
        return p == (cc == 5 ? 1 : 0);
    };
    auto var_of = [](int cc, int s) { return cc < 3 ? 3 * cc + s : (cc - 3) + 3 * s; };
    static int cross[6][8][8];
    for (int cc = 0; cc < 6; ++cc)
        for (int g3 = 0; g3 < 8; ++g3)
            for (int ca = 0; ca < 8; ++ca) {
                int acc = 0;
                if (par_ok(cc, ca))
                    for (int s = 0; s < 3; ++s)
                        if (((ca >> s) & 1) == ((g3 >> s) & 1)) acc += 5;
                cross[cc][g3][ca] = acc;
            }
    static int bestc[6][8][8];
    for (int cc = 0; cc < 6; ++cc)
        for (int ga3 = 0; ga3 < 8; ++ga3)
            for (int gb3 = 0; gb3 < 8; ++gb3) {
                int best = 0;
                for (int ca = 0; ca < 8; ++ca)
                    for (int cb = 0; cb < 8; ++cb) {
                        int sc = cross[cc][gb3][ca] + cross[cc][ga3][cb];
                        if (ca == cb && par_ok(cc, ca)) sc += 12;
                        best = std::max(best, sc);
                    }
                bestc[cc][ga3][gb3] = best;
            }
    int64_t best_total = 0;
    for (int ga = 0; ga < 512; ++ga)
        for (int gb = 0; gb < 512; ++gb) {
            int64_t sc = 0;
            for (int v = 0; v < 9; ++v)
                if (((ga >> v) & 1) == ((gb >> v) & 1)) sc += 12;
            for (int cc = 0; cc < 6; ++cc) {
                int ga3 = 0, gb3 = 0;
                for (int s = 0; s < 3; ++s) {
                    ga3 |= ((ga >> var_of(cc, s)) & 1) << s;
                    gb3 |= ((gb >> var_of(cc, s)) & 1) << s;
                }
                sc += bestc[cc][ga3][gb3];
            }
            best_total = std::max(best_total, sc);
        }
    return Rational(best_total, 360);
}

void magic_square_suite(Ctx& c) {
    Game g = magic_square_game();
    Strategy s = magic_square_strategy();
    double v = eval_value(g, s);
    c.expect(std::abs(v - 1.0) <= 1e-9, "grid strategy value 1 within 1e-9");
    double comm = max_commutator(g, s);
    c.expect(comm <= 1e-9, "max commutator norm within 1e-9");
    Rational oracle = magic_square_oracle_value();
    Rational lib = classical_value_exact(g).value_exact;
    c.expect(lib == oracle, "classical value equals the brute-force oracle");
    c.expect(lib < Rational(1), "classical value below 1");
    std::ostringstream os;
    os << "value " << v << ", commutator " << comm << ", classical " << lib.str();
    c.note(os.str());
}

void solver_suite(Ctx& c) {
    LowerBoundOptions opt;
    opt.dim = 2;
    opt.restarts = 100;
    opt.iters = 3;
    opt.seed = c.seed;
    auto rep = quantum_lower_bound(reject_game(), opt);
    c.expect(rep.value <= 1.0 / 3 + 1e-6, "reject lower bound stays below 1/3 + 1e-6");
    auto rep2 = quantum_lower_bound(reject_game(), opt);
    std::string d1 = report_to_json(rep).dump();
    std::string d2 = report_to_json(rep2).dump();
    c.expect(d1 == d2, "byte-identical reports for a fixed seed");
    std::ostringstream os;
    os << "best " << rep.value << " over " << opt.restarts << " restarts";
    c.note(os.str());
}

// ---- quant suite ---------------------------------------------------------------

void pauli_suite(Ctx& c) {
    for (int n = 1; n <= 3; ++n) {
        Game g = pauli_basis_game(n);
        Strategy s = pauli_basis_strategy(n);
        double v = eval_value(g, s);
        c.expect(std::abs(v - 1.0) <= 1e-9,
                 "basis test strategy value 1 at n=" + std::to_string(n));
    }
    auto F = FieldCtx::build(3);
    for (uint32_t a = 0; a < 8; ++a)
        for (uint32_t b = 0; b < 8; ++b) {
            auto ea = F->from_coords(a), eb = F->from_coords(b);
            for (char w : {'X', 'Z'}) {
                Cmat lhs = gen_pauli_obs(w, F, ea) * gen_pauli_obs(w, F, eb);
                c.expect(op_norm(lhs - gen_pauli_obs(w, F, F->add(ea, eb))) <= 1e-12,
                         "addition identity");
            }
            Cmat xa = gen_pauli_obs('X', F, ea);
            Cmat zb = gen_pauli_obs('Z', F, eb);
            double sign = F->trace(F->mul(ea, eb)) ? -1.0 : 1.0;
            c.expect(op_norm(xa * zb - sign * (zb * xa)) <= 1e-12, "twisted commutation");
        }
    Cmat u = u2top(F);
    std::vector<int> bits{0, 1, 2};
    for (uint32_t sv = 0; sv < 8; ++sv) {
        FieldElem s = F->from_coords(sv);
        for (char w : {'X', 'Z'}) {
            Cmat qubit = w == 'X' ? x_mask_projector(3, bits, s.bits())
                                  : z_mask_projector(3, bits, s.bits());
            c.expect(op_norm(gen_pauli_pvm(w, F)[sv] - u.adjoint() * qubit * u) <= 1e-12,
                     "basis-change intertwining");
        }
    }
    Cvec me8 = me_state(8);
    c.expect((kron(u.adjoint(), u.adjoint()) * me8 - me8).norm() <= 1e-12,
             "basis change fixes the entangled state");
    c.note("n in {1,2,3} perfect; p=3 identities within 1e-12");
}

void introspection_suite(Ctx& c) {
    auto inner = std::make_shared<Game>(cl_identity_game(2));
    Game intro = introspection_game(inner, 2, 1);
    auto respond = [](const Question&) { return Answer{{}, {BitVec::from_u64(1, 0)}}; };
    Strategy trivial = deterministic_strategy(*inner, respond, respond);
    Strategy s = introspection_honest_strategy(intro, trivial);

    double worst = 1.0;
    for (const auto& wp : intro.pairs()) {
        double acc = 0;
        for (const auto& [a, ma] : s.a_for(wp.x).items)
            for (const auto& [b, mb] : s.b_for(wp.y).items)
                if (intro.decide(wp.x, wp.y, a, b)) acc += pair_probability(s, ma, mb);
        worst = std::min(worst, acc);
    }
    c.expect(worst >= 1.0 - 1e-9, "every clause passes with probability 1");

    // question marginal of the intro pair vs the inner distribution
    std::map<std::pair<BitVec, BitVec>, double> marg;
    Question qa, qb;
    for (const auto& wp : intro.pairs()) {
        if (wp.x.labels[0] == intro::intro_vertex(0, 1) &&
            wp.y.labels[0] == intro::intro_vertex(1, 1)) {
            qa = wp.x;
            qb = wp.y;
        }
    }
    for (const auto& [a, ma] : s.a_for(qa).items)
        for (const auto& [b, mb] : s.b_for(qb).items) {
            double pr = pair_probability(s, ma, mb);
            marg[{unpack_answers(a)[0].parts[0], unpack_answers(b)[0].parts[0]}] += pr;
        }
    double tv = 0;
    auto innerpairs = inner->pairs();
    std::map<std::pair<BitVec, BitVec>, double> mu;
    for (const auto& wp : innerpairs) mu[{wp.x.parts[0], wp.y.parts[0]}] += wp.w.to_double();
    std::set<std::pair<BitVec, BitVec>> keys;
    for (auto& [k, v] : marg) keys.insert(k);
    for (auto& [k, v] : mu) keys.insert(k);
    for (const auto& k : keys) {
        double a = marg.count(k) ? marg.at(k) : 0.0;
        double b = mu.count(k) ? mu.at(k) : 0.0;
        tv += std::abs(a - b);
    }
    tv /= 2;
    c.expect(tv < 1e-9, "intro question marginal equals the distribution");
    std::ostringstream os;
    os << "worst clause " << worst << ", marginal TV " << tv;
    c.note(os.str());
}

void chain_suite(Ctx& c) {
    auto ms = std::make_shared<Game>(magic_square_game());
    Strategy s = magic_square_strategy();
    auto r1 = verify_completeness_chain(ms, s, {"oracularize"});
    c.expect(r1.pass, "oracularization stage");
    auto r2 = verify_completeness_chain(ms, s, {"anchor", "repeat:2"});
    c.expect(r2.pass, "anchor and repeat stages");
    auto pbg = std::make_shared<Game>(pauli_basis_game(2));
    auto r3 = verify_completeness_chain(pbg, pauli_basis_strategy(2), {"detype"});
    c.expect(r3.pass, "detyping stage");
    std::ostringstream os;
    os << "values:";
    for (const auto& st : r1.stages) os << " " << st.value;
    for (const auto& st : r2.stages) os << " " << st.value;
    for (const auto& st : r3.stages) os << " " << st.value;
    c.note(os.str());
}

void ldt_suite(Ctx& c) {
    auto F = FieldCtx::build(3);
    Rng rng(c.seed + 404);
    Game g = sim_lowdeg_game(3, 2, 2, 2);
    IdPoly f0(F, 2), f1(F, 2);
    for (int t = 0; t < 4; ++t) {
        IdPoly::Exps e{uint16_t(rng.next_below(3)), uint16_t(rng.next_below(3))};
        f0.add_term(e, F->from_coords(uint32_t(rng.next_below(8))));
        IdPoly::Exps e2{uint16_t(rng.next_below(3)), uint16_t(rng.next_below(3))};
        f1.add_term(e2, F->from_coords(uint32_t(rng.next_below(8))));
    }
    Strategy s = sldt_classical_strategy(g, {f0, f1});
    double v = eval_value(g, s);
    c.expect(std::abs(v - 1.0) <= 1e-9, "simultaneous plug-in strategy wins with certainty");

    Game g1 = qlowdeg_game(3, 2, 2);
    Strategy s1 = ldt_classical_strategy(g1, f0);
    c.expect(std::abs(eval_value(g1, s1) - 1.0) <= 1e-9, "single plug-in strategy wins");

    // the simulating plain distribution reproduces the typed law exactly
    Game d = detype_game(std::make_shared<Game>(g));
    int64_t cd = 0, td = 0;
    auto cond = d.detyped->enumerate_conditioned(&cd);
    auto typed = enumerate_typed(*d.detyped->inner, &td);
    bool equal = cond.size() == typed.size();
    for (auto& [k, v2] : cond)
        if (!typed.count(k) || !(Rational(v2, cd) == Rational(typed.at(k), td))) equal = false;
    c.expect(equal, "conditioned law equals the typed law exactly");
    std::ostringstream os;
    os << "plug-in value " << v;
    c.note(os.str());
}

// ---- poly suite ----------------------------------------------------------------

void poly_suite(Ctx& c) {
    auto F = FieldCtx::build(3);
    Rng rng(c.seed + 505);
    for (int m = 1; m <= 4; ++m) {
        for (int t = 0; t < 4; ++t) {
            std::vector<int> b(size_t(1) << m);
            for (auto& x : b) x = rng.next_bit();
            IdPoly enc = rm_encode(F, b);
            c.expect(rm_decode(enc) == b, "round trip m=" + std::to_string(m));
        }
    }
    // coefficient-level reassembly, m <= 3
    for (int m = 1; m <= 3; ++m) {
        IdPoly f(F, m);
        for (int i = 0; i < m; ++i) {
            IdPoly ci(F, m);
            for (int t = 0; t < 3; ++t) {
                IdPoly::Exps e(size_t(m), 0);
                for (int j = 0; j < m; ++j) e[size_t(j)] = uint16_t(rng.next_below(3));
                ci.add_term(e, F->from_coords(uint32_t(rng.next_below(8))));
            }
            f = f + ci * zero_gadget(F, m, i);
        }
        auto cs = zero_cube_decompose(f);
        IdPoly back(F, m);
        for (int i = 0; i < m; ++i) back = back + cs[size_t(i)] * zero_gadget(F, m, i);
        c.expect(back == f, "coefficient-level reassembly m=" + std::to_string(m));
    }
    // pointwise reassembly at m = 5
    {
        int m = 5;
        IdPoly f(F, m);
        for (int i = 0; i < m; ++i) {
            IdPoly ci(F, m);
            IdPoly::Exps e(size_t(m), 0);
            e[size_t(int(rng.next_below(uint64_t(m))))] = 2;
            ci.add_term(e, F->from_coords(uint32_t(1 + rng.next_below(7))));
            f = f + ci * zero_gadget(F, m, i);
        }
        auto cs = zero_cube_decompose(f);
        bool all = true;
        for (int t = 0; t < 1000; ++t) {
            std::vector<FieldElem> pt;
            for (int i = 0; i < m; ++i)
                pt.push_back(F->from_coords(uint32_t(rng.next_below(8))));
            FieldElem lhs = f.eval(pt);
            FieldElem rhs = F->zero();
            for (int i = 0; i < m; ++i) {
                FieldElem z = F->add(pt[size_t(i)], F->mul(pt[size_t(i)], pt[size_t(i)]));
                rhs = F->add(rhs, F->mul(cs[size_t(i)].eval(pt), z));
            }
            if (!(lhs == rhs)) all = false;
        }
        c.expect(all, "pointwise reassembly at m=5");
    }
    // agreement bound for 10 seeded distinct pairs
    for (int t = 0; t < 10; ++t) {
        IdPoly f(F, 2), g2(F, 2);
        for (int i = 0; i < 5; ++i) {
            IdPoly::Exps e{uint16_t(rng.next_below(3)), uint16_t(rng.next_below(3))};
            f.add_term(e, F->from_coords(uint32_t(rng.next_below(8))));
            IdPoly::Exps e2{uint16_t(rng.next_below(3)), uint16_t(rng.next_below(3))};
            g2.add_term(e2, F->from_coords(uint32_t(rng.next_below(8))));
        }
        if (f == g2) continue;
        Rng srng = rng.derive(uint64_t(1000 + t));
        auto repp = sz_agreement(f, g2, 4000, srng);
        c.expect(repp.rate <= 2.0 * 2 / 8 + 5 * repp.stderr_est,
                 "agreement within md/2^p + 5 sigma");
    }
    // honest and perturbed proof views
    int m_ans = 1, gpad = 2;
    int mp = 5 * m_ans + 5 + gpad;
    int accepted = 0, rejected = 0;
    for (int t = 0; t < 10; ++t) {
        IdPoly gd = zero_gadget(F, mp, int(rng.next_below(uint64_t(mp))));
        std::array<IdPoly, 5> blocks{IdPoly(F, 1), IdPoly(F, 1), IdPoly(F, 1), IdPoly(F, 1),
                                     IdPoly(F, 1)};
        for (auto& bpoly : blocks) {
            bpoly = IdPoly(F, 1);
            for (int i = 0; i < 2; ++i) {
                IdPoly::Exps e{uint16_t(rng.next_below(3))};
                bpoly.add_term(e, F->from_coords(uint32_t(rng.next_below(8))));
            }
        }
        std::vector<FieldElem> s;
        for (int i = 0; i < mp; ++i) s.push_back(F->from_coords(uint32_t(rng.next_below(8))));
        PcppView view = make_honest_view(gd, blocks, s, m_ans, gpad);
        if (validate_pcpp(view) == 1) ++accepted;
        PcppView bad = view;
        bad.gamma = F->add(bad.gamma, F->one());
        if (validate_pcpp(bad) == 0) ++rejected;
    }
    c.expect(accepted == 10, "10 honest views accepted");
    c.expect(rejected == 10, "10 perturbed views rejected");
    std::ostringstream os;
    os << accepted << "/10 honest accepted, " << rejected << "/10 perturbed rejected";
    c.note(os.str());
}

CriterionResult run_one(const std::string& name, uint64_t seed, void (*fn)(Ctx&)) {
    Ctx c{seed, {}, true};
    auto t0 = Clock::now();
    try {
        fn(c);
    } catch (const std::exception& e) {
        c.ok = false;
        c.detail << "exception: " << e.what();
    }
    auto t1 = Clock::now();
    return {name, c.ok, c.detail.str(),
            std::chrono::duration_cast<std::chrono::duration<double>>(t1 - t0).count()};
}

} // namespace

std::vector<CriterionResult> run_suite(const std::string& suite, uint64_t seed) {
    std::vector<CriterionResult> out;
    auto want = [&](const std::string& s) { return suite == "all" || suite == s; };
    if (want("field")) out.push_back(run_one("1 field axioms and self-duality", seed, field_axioms));
    if (want("cl")) {
        out.push_back(run_one("2 conditionally linear machinery", seed, cl_suite));
        out.push_back(run_one("3 detyping reproduces the typed law", seed, detype_suite));
    }
    if (want("games")) {
        out.push_back(run_one("4 exact values and the anchor identity", seed, values_suite));
        out.push_back(run_one("5 magic square strategy and value", seed, magic_square_suite));
    }
    if (want("quant")) {
        out.push_back(run_one("6 basis test and Pauli identities", seed, pauli_suite));
        out.push_back(run_one("7 introspection completeness", seed, introspection_suite));
        out.push_back(run_one("8 transformation completeness chain", seed, chain_suite));
    }
    if (want("poly")) out.push_back(run_one("9 polynomial suite", seed, poly_suite));
    if (want("quant"))
        out.push_back(run_one("10 low-degree tests and their plain form", seed, ldt_suite));
    if (want("games")) out.push_back(run_one("11 solver sanity", seed, solver_suite));
    if (out.empty()) throw std::invalid_argument("unknown suite: " + suite);
    return out;
}

} // namespace nlgf
