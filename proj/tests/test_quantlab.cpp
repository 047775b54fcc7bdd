#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nlgf/serial.hpp"
#include "nlgf/solvers.hpp"

using namespace nlgf;

namespace {

Cmat random_unitary(int d, Rng& rng) {
    Cmat m(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            m(i, j) = std::complex<double>(rng.next_double() * 2 - 1, rng.next_double() * 2 - 1);
    Eigen::HouseholderQR<Cmat> qr(m);
    return qr.householderQ();
}

} // namespace

TEST_CASE("maximally entangled state and the switching identity") {
    Cvec me2 = me_state(2);
    CHECK(std::abs(me2.norm() - 1.0) < 1e-12);
    CHECK(std::abs(me2(0).real() - 1 / std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(me2(3).real() - 1 / std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(me2(1)) < 1e-12);

    Rng rng(3);
    Cvec me4 = me_state(4);
    for (int t = 0; t < 5; ++t) {
        Cmat a = random_unitary(4, rng);
        Cmat i4 = Cmat::Identity(4, 4);
        Cvec lhs = kron(a, i4) * me4;
        Cvec rhs = kron(i4, Cmat(a.transpose())) * me4;
        CHECK((lhs - rhs).norm() < 1e-12);
    }
}

TEST_CASE("generalized Pauli operators") {
    SUBCASE("p = 1 gives the qubit operators") {
        auto F = FieldCtx::build(1);
        Cmat x = gen_pauli_obs('X', F, F->one());
        Cmat z = gen_pauli_obs('Z', F, F->one());
        CHECK(std::abs(x(0, 1).real() - 1) < 1e-15);
        CHECK(std::abs(x(1, 0).real() - 1) < 1e-15);
        CHECK(std::abs(z(0, 0).real() - 1) < 1e-15);
        CHECK(std::abs(z(1, 1).real() + 1) < 1e-15);
    }
    auto F = FieldCtx::build(3);
    SUBCASE("identity at zero") {
        for (char w : {'X', 'Z'}) {
            Cmat m = gen_pauli_obs(w, F, F->zero());
            CHECK(op_norm(m - Cmat::Identity(8, 8)) < 1e-15);
        }
    }
    SUBCASE("addition and twisted commutation, exhaustively") {
        for (uint32_t a = 0; a < 8; ++a)
            for (uint32_t b = 0; b < 8; ++b) {
                auto ea = F->from_coords(a), eb = F->from_coords(b);
                for (char w : {'X', 'Z'}) {
                    Cmat lhs = gen_pauli_obs(w, F, ea) * gen_pauli_obs(w, F, eb);
                    Cmat rhs = gen_pauli_obs(w, F, F->add(ea, eb));
                    CHECK(op_norm(lhs - rhs) < 1e-12);
                }
                Cmat xa = gen_pauli_obs('X', F, ea);
                Cmat zb = gen_pauli_obs('Z', F, eb);
                double sign = F->trace(F->mul(ea, eb)) ? -1.0 : 1.0;
                CHECK(op_norm(xa * zb - sign * (zb * xa)) < 1e-12);
            }
    }
    SUBCASE("observables decompose over the projector family") {
        for (char w : {'X', 'Z'}) {
            auto pvm = gen_pauli_pvm(w, F);
            Cmat sum = Cmat::Zero(8, 8);
            for (auto& m : pvm) sum += m;
            CHECK(op_norm(sum - Cmat::Identity(8, 8)) < 1e-12);
            for (uint32_t a = 0; a < 8; ++a) {
                Cmat rebuilt = Cmat::Zero(8, 8);
                for (uint32_t b = 0; b < 8; ++b) {
                    double sign =
                        F->trace(F->mul(F->from_coords(a), F->from_coords(b))) ? -1.0 : 1.0;
                    rebuilt += sign * pvm[b];
                }
                CHECK(op_norm(rebuilt - gen_pauli_obs(w, F, F->from_coords(a))) < 1e-12);
                // and the inverse relation, averaging the observables
                Cmat avg = Cmat::Zero(8, 8);
                for (uint32_t b = 0; b < 8; ++b) {
                    double sign =
                        F->trace(F->mul(F->from_coords(a), F->from_coords(b))) ? -1.0 : 1.0;
                    avg += sign * gen_pauli_obs(w, F, F->from_coords(b));
                }
                avg /= 8.0;
                CHECK(op_norm(avg - pvm[a]) < 1e-12);
            }
        }
    }
}

TEST_CASE("basis change between qubit blocks and the field space") {
    auto F = FieldCtx::build(3);
    Cmat u = u2top(F);
    CHECK(op_norm(u * u.adjoint() - Cmat::Identity(8, 8)) < 1e-15);
    std::vector<int> bits{0, 1, 2};
    for (uint32_t sv = 0; sv < 8; ++sv) {
        FieldElem s = F->from_coords(sv);
        for (char w : {'X', 'Z'}) {
            // tensor of qubit projectors selected by the public coordinates
            Cmat qubit_side = w == 'X' ? x_mask_projector(3, bits, s.bits())
                                       : z_mask_projector(3, bits, s.bits());
            Cmat field_side = gen_pauli_pvm(w, F)[sv];
            CHECK(op_norm(field_side - u.adjoint() * qubit_side * u) < 1e-12);
        }
    }
    // the entangled state is fixed by the basis change on both sides
    Cvec me8 = me_state(8);
    CHECK((kron(u.adjoint(), u.adjoint()) * me8 - me8).norm() < 1e-12);
}

TEST_CASE("povm validity checks") {
    auto F = FieldCtx::build(1);
    Povm good;
    good.items.push_back({Answer{{}, {BitVec::from_u64(1, 0)}}, gen_pauli_pvm('Z', F)[0]});
    good.items.push_back({Answer{{}, {BitVec::from_u64(1, 1)}}, gen_pauli_pvm('Z', F)[1]});
    CHECK(good.valid(1e-9, true));
    Povm bad = good;
    bad.items[0].second(0, 0) = 2.0;
    CHECK_FALSE(bad.valid());
}

TEST_CASE("magic square strategy is perfect and commuting") {
    Game g = magic_square_game();
    Strategy s = magic_square_strategy();
    CHECK(s.valid());
    for (const auto& [q, p] : s.povm_a) CHECK(p.valid(1e-9, true));
    double v = eval_value(g, s);
    CHECK(v == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(delta_sync(g, s) < 1e-12);
    CHECK(is_oracularizable(g, s));
    CHECK(eval_value_serial(g, s) == v); // ordered reduction, identical result
}

TEST_CASE("a deliberately non-commuting pair is flagged") {
    // one question per side, X for Alice, Z for Bob
    Game g;
    g.name = "explicit";
    Question q{{0}, {}};
    g.table = {{q, q, Rational(1)}};
    g.answers = [](const Question&) {
        return std::vector<Answer>{Answer{{}, {BitVec::from_u64(1, 0)}},
                                   Answer{{}, {BitVec::from_u64(1, 1)}}};
    };
    g.decide = [](const Question&, const Question&, const Answer&, const Answer&) { return true; };
    auto F = FieldCtx::build(1);
    Strategy s;
    s.dim_a = s.dim_b = 2;
    s.state = me_state(2);
    Povm px, pz;
    for (int b = 0; b < 2; ++b) {
        px.items.push_back({Answer{{}, {BitVec::from_u64(1, uint64_t(b))}},
                            gen_pauli_pvm('X', F)[uint32_t(b)]});
        pz.items.push_back({Answer{{}, {BitVec::from_u64(1, uint64_t(b))}},
                            gen_pauli_pvm('Z', F)[uint32_t(b)]});
    }
    s.povm_a[q] = px;
    s.povm_b[q] = pz;
    CHECK_FALSE(is_oracularizable(g, s));
    CHECK(max_commutator(g, s) == doctest::Approx(0.5).epsilon(1e-9)); // norm of [X,Z]/4
}

TEST_CASE("pauli basis strategies are perfect for n up to 3") {
    for (int n = 1; n <= 3; ++n) {
        Game g = pauli_basis_game(n);
        Strategy s = pauli_basis_strategy(n);
        CHECK(s.valid());
        double v = eval_value(g, s);
        CHECK(v == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(is_oracularizable(g, s));
        CHECK(delta_sync(g, s) < 1e-9);
    }
}

TEST_CASE("low-degree plug-in strategies win with certainty") {
    auto F = FieldCtx::build(3);
    Rng rng(13);
    SUBCASE("single polynomial") {
        Game g = qlowdeg_game(3, 2, 2);
        IdPoly f(F, 2);
        f.add_term({2, 1}, F->from_coords(5));
        f.add_term({0, 2}, F->from_coords(3));
        f.add_term({1, 0}, F->one());
        Strategy s = ldt_classical_strategy(g, f);
        CHECK(eval_value(g, s) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("two polynomials simultaneously") {
        Game g = sim_lowdeg_game(3, 2, 2, 2);
        IdPoly f0(F, 2), f1(F, 2);
        f0.add_term({1, 2}, F->from_coords(6));
        f1.add_term({2, 2}, F->from_coords(2));
        f1.add_term({0, 0}, F->from_coords(7));
        Strategy s = sldt_classical_strategy(g, {f0, f1});
        CHECK(eval_value(g, s) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("value is invariant under local unitaries") {
    Game g = magic_square_game();
    Strategy s = magic_square_strategy();
    double base = eval_value(g, s);
    Rng rng(17);
    for (int t = 0; t < 5; ++t) {
        Cmat ua = random_unitary(4, rng), ub = random_unitary(4, rng);
        Strategy s2 = s;
        s2.state = kron(ua, ub) * s.state;
        for (auto& [q, p] : s2.povm_a)
            for (auto& [a, m] : p.items) m = ua * m * ua.adjoint();
        for (auto& [q, p] : s2.povm_b)
            for (auto& [a, m] : p.items) m = ub * m * ub.adjoint();
        CHECK(eval_value(g, s2) == doctest::Approx(base).epsilon(1e-9));
    }
}

TEST_CASE("measurement distances") {
    auto F = FieldCtx::build(1);
    Rng rng(23);
    SUBCASE("identical families have zero distance") {
        Povm p;
        for (int b = 0; b < 2; ++b)
            p.items.push_back({Answer{{}, {BitVec::from_u64(1, uint64_t(b))}},
                               gen_pauli_pvm('Z', F)[uint32_t(b)]});
        Cvec psi(2);
        psi << std::sqrt(0.3), std::sqrt(0.7);
        std::vector<std::pair<double, std::pair<Povm, Povm>>> w{{1.0, {p, p}}};
        CHECK(dist_close(w, psi) < 1e-15);
    }
    SUBCASE("closeness bounded by twice the consistency defect for commuting pvms") {
        for (int t = 0; t < 10; ++t) {
            Cmat u = random_unitary(4, rng);
            // two diagonal-in-the-same-basis projective families: they commute
            Povm p, q;
            std::vector<int> assign{0, 1, 0, 1}, assign2{0, 0, 1, 1};
            for (int b = 0; b < 2; ++b) {
                Cmat mp = Cmat::Zero(4, 4), mq = Cmat::Zero(4, 4);
                for (int c = 0; c < 4; ++c) {
                    Cmat col = u.col(c) * u.col(c).adjoint();
                    if (assign[size_t(c)] == b) mp += col;
                    if (assign2[size_t(c)] == b) mq += col;
                }
                p.items.push_back({Answer{{}, {BitVec::from_u64(1, uint64_t(b))}}, mp});
                q.items.push_back({Answer{{}, {BitVec::from_u64(1, uint64_t(b))}}, mq});
            }
            Cvec psi(4);
            for (int i = 0; i < 4; ++i)
                psi(i) = std::complex<double>(rng.next_double() - 0.5, rng.next_double() - 0.5);
            psi.normalize();
            std::vector<std::pair<double, std::pair<Povm, Povm>>> w{{1.0, {p, q}}};
            CHECK(dist_close(w, psi) <= 2.0 * dist_consistent(w, psi) + 1e-12);
        }
    }
}

TEST_CASE("lifting perfect strategies through the transformations") {
    auto ms = std::make_shared<Game>(magic_square_game());
    Strategy s = magic_square_strategy();
    SUBCASE("oracularization") {
        Game ora = oracularize(ms);
        Strategy lifted = lift_strategy(ora, s);
        CHECK(eval_value(ora, lifted) == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(is_oracularizable(ora, lifted));
    }
    SUBCASE("anchoring") {
        Game anc = anchor(ms);
        Strategy lifted = lift_strategy(anc, s);
        CHECK(eval_value(anc, lifted) == doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("repetition") {
        Game rep = repeat_game(ms, 2);
        Strategy lifted = lift_strategy(rep, s);
        CHECK(eval_value(rep, lifted) == doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("detyping the basis test") {
        auto pbg = std::make_shared<Game>(pauli_basis_game(2));
        Game d = detype_game(pbg);
        Strategy lifted = lift_strategy(d, pauli_basis_strategy(2));
        CHECK(eval_value(d, lifted) == doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("non-oracularizable inputs are rejected") {
        Game ora = oracularize(ms);
        Strategy broken = s;
        // X/Z on the same supported pair does not commute
        auto F = FieldCtx::build(1);
        Povm pz;
        pz.items.push_back({Answer{{}, {BitVec::from_u64(1, 0)}},
                            kron(Cmat::Identity(2, 2), gen_pauli_pvm('Z', F)[0])});
        pz.items.push_back({Answer{{}, {BitVec::from_u64(1, 1)}},
                            kron(Cmat::Identity(2, 2), gen_pauli_pvm('Z', F)[1])});
        broken.povm_a[Question{{6}, {}}] = pz;
        CHECK_THROWS_AS(lift_strategy(ora, broken), std::invalid_argument);
    }
}

TEST_CASE("block basis change fixes larger entangled states") {
    auto F = FieldCtx::build(3);
    Cmat u = u2top(F, 2);
    CHECK(op_norm(u * u.adjoint() - Cmat::Identity(64, 64)) < 1e-12);
    Cvec me64 = me_state(64);
    CHECK((kron(u.adjoint(), u.adjoint()) * me64 - me64).norm() < 1e-12);
}

TEST_CASE("correlation tables are normalized") {
    Game g = magic_square_game();
    Strategy s = magic_square_strategy();
    auto corr = correlation(g, s);
    std::map<std::pair<Question, Question>, double> mass;
    for (const auto& e : corr) {
        CHECK(e.p >= -1e-9);
        CHECK(e.p <= 1 + 1e-9);
        mass[{e.x, e.y}] += e.p;
    }
    for (auto& [k, m] : mass) CHECK(m == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("introspection honest strategy for the identity game") {
    auto inner = std::make_shared<Game>(cl_identity_game(1));
    Game intro = introspection_game(inner, 2, 1);
    auto respond = [](const Question&) { return Answer{{}, {BitVec::from_u64(1, 0)}}; };
    Strategy trivial = deterministic_strategy(*inner, respond, respond);
    Strategy s = introspection_honest_strategy(intro, trivial);
    CHECK(s.valid());
    for (const auto& [q, p] : s.povm_a) CHECK(p.valid(1e-9, true));
    CHECK(eval_value(intro, s) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(delta_sync(intro, s) < 1e-9);
}

TEST_CASE("strategy files round trip") {
    Strategy s = magic_square_strategy();
    save_strategy(s, "/tmp/nlgf_test_strategy.bin");
    Strategy back = load_strategy("/tmp/nlgf_test_strategy.bin");
    CHECK(back.dim_a == s.dim_a);
    CHECK((back.state - s.state).norm() < 1e-15);
    REQUIRE(back.povm_a.size() == s.povm_a.size());
    Game g = magic_square_game();
    CHECK(eval_value(g, back) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("detyped fast path agrees with direct enumeration") {
    // small typed game whose detyped seed space is still enumerable
    std::vector<int> reg{0};
    auto typed = std::make_shared<TypedCLDist>();
    typed->t = 2;
    typed->edges = {{0, 0}, {1, 1}, {0, 1}};
    typed->funcs = {CLFunction::diagonal(1, {reg}, true), CLFunction::diagonal(1, {reg}, false)};
    auto g = std::make_shared<Game>();
    g->name = "typed-tiny";
    g->kind = DistKind::TypedCL;
    g->typed = typed;
    g->field = FieldCtx::build(1);
    g->field_m = 1;
    g->synchronous = true;
    g->answers = [](const Question&) {
        return std::vector<Answer>{Answer{{}, {BitVec::from_u64(1, 0)}},
                                   Answer{{}, {BitVec::from_u64(1, 1)}}};
    };
    // imperfect on purpose: vertex labels must agree with the answer bit
    g->decide = [](const Question& x, const Question& y, const Answer& a, const Answer& b) {
        if (a.meta == std::vector<int32_t>{-2} || b.meta == std::vector<int32_t>{-2})
            return false;
        return int(a.parts[0].get(0)) == x.labels[0] && int(b.parts[0].get(0)) == y.labels[0];
    };
    Game d = detype_game(g);

    // answer the vertex bit when the question parses, star otherwise
    auto dt = d.detyped;
    auto respond = [dt](const Question& q) {
        auto p = dt->parse_output(q.parts[0]);
        if (!p) return star_answer();
        return Answer{{}, {BitVec::from_u64(1, uint64_t(p->first))}};
    };
    Strategy direct = deterministic_strategy(d, respond, respond);
    double generic = eval_value(d, direct);

    // the same behaviour through the lift wrapper takes the fast path
    auto respond_typed = [](const Question& q) {
        return Answer{{}, {BitVec::from_u64(1, uint64_t(q.labels[0]))}};
    };
    Strategy inner_s = deterministic_strategy(*g, respond_typed, respond_typed);
    Strategy lifted = lift_strategy(d, inner_s);
    double fast = eval_value(d, lifted);
    CHECK(generic == doctest::Approx(fast).epsilon(1e-12));

    // cross-check the decomposition: trivial mass wins, the rest is typed
    double inner_v = eval_value(*g, inner_s);
    double frac = dt->nontrivial_fraction();
    CHECK(fast == doctest::Approx(1.0 - frac * (1.0 - inner_v)).epsilon(1e-12));
}

TEST_CASE("introspection honest strategy at two levels") {
    // two one-bit registers; the second level map of one side depends on the
    // first level's output
    CLFunction la(2, {{0}, {1}}, BitMatrix::identity(1));
    la.add_level(
        [](const BitVec& prefix) {
            return prefix.get(0) ? BitMatrix::zero(1) : BitMatrix::identity(1);
        },
        "selective");
    CLFunction lb(2, {{0}, {1}}, BitMatrix::zero(1));
    lb.add_level([](const BitVec&) { return BitMatrix::identity(1); }, "pass");
    auto g = std::make_shared<Game>();
    g->name = "two-level";
    g->kind = DistKind::CL;
    g->cl = std::make_shared<CLDist>(la, lb);
    g->field = FieldCtx::build(1);
    g->field_m = 2;
    g->synchronous = true;
    g->answers = [](const Question&) {
        return std::vector<Answer>{Answer{{}, {BitVec::from_u64(1, 0)}},
                                   Answer{{}, {BitVec::from_u64(1, 1)}}};
    };
    g->decide = [](const Question&, const Question&, const Answer& a, const Answer& b) {
        return a == b;
    };

    Game intro = introspection_game(g, 2, 2);
    auto respond = [](const Question&) { return Answer{{}, {BitVec::from_u64(1, 0)}}; };
    Strategy trivial = deterministic_strategy(*g, respond, respond);
    Strategy s = introspection_honest_strategy(intro, trivial);
    CHECK(s.valid());
    for (const auto& [q, p] : s.povm_a) CHECK(p.valid(1e-9, true));
    // every clause must pass with certainty, including the hide chain
    for (const auto& wp : intro.pairs()) {
        double acc = 0;
        for (const auto& [a, ma] : s.a_for(wp.x).items)
            for (const auto& [b, mb] : s.b_for(wp.y).items)
                if (intro.decide(wp.x, wp.y, a, b)) acc += pair_probability(s, ma, mb);
        CAPTURE(wp.x.labels[0]);
        CAPTURE(wp.y.labels[0]);
        CHECK(acc >= 1.0 - 1e-9);
    }
}

TEST_CASE("base game values under explicit strategies") {
    SUBCASE("answering zero wins the accept game") {
        Game g = accept_game();
        auto zero = [](const Question&) { return Answer{{}, {BitVec::from_u64(1, 0)}}; };
        Strategy s = deterministic_strategy(g, zero, zero);
        CHECK(eval_value(g, s) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("no strategy beats a third on the reject game") {
        Game g = reject_game();
        Rng rng(61);
        for (int trial = 0; trial < 10; ++trial) {
            // random two-dimensional projective strategies
            Strategy s;
            s.dim_a = s.dim_b = 2;
            Cvec psi(4);
            for (int i = 0; i < 4; ++i)
                psi(i) = std::complex<double>(rng.next_double() - 0.5, rng.next_double() - 0.5);
            psi.normalize();
            s.state = psi;
            for (const auto& wp : g.pairs()) {
                for (const Question& q : {wp.x, wp.y}) {
                    if (s.povm_a.count(q)) continue;
                    Cmat u = random_unitary(2, rng);
                    Povm pa, pb;
                    for (int b = 0; b < 2; ++b) {
                        Cmat proj = u.col(b) * u.col(b).adjoint();
                        pa.items.push_back({Answer{{}, {BitVec::from_u64(1, uint64_t(b))}}, proj});
                    }
                    Cmat v = random_unitary(2, rng);
                    for (int b = 0; b < 2; ++b) {
                        Cmat proj = v.col(b) * v.col(b).adjoint();
                        pb.items.push_back({Answer{{}, {BitVec::from_u64(1, uint64_t(b))}}, proj});
                    }
                    s.povm_a[q] = pa;
                    s.povm_b[q] = pb;
                }
            }
            CHECK(eval_value(g, s) <= 1.0 / 3 + 1e-9);
        }
    }
}

TEST_CASE("introspection over a larger field") {
    // one field coordinate of F_8: the field block occupies three qubits
    auto g = std::make_shared<Game>();
    g->name = "cl-f8";
    g->kind = DistKind::CL;
    std::vector<int> reg{0, 1, 2};
    CLFunction id = CLFunction::diagonal(3, {reg}, true);
    g->cl = std::make_shared<CLDist>(id, id);
    g->field = FieldCtx::build(3);
    g->field_m = 1;
    g->synchronous = true;
    g->answers = [](const Question&) {
        return std::vector<Answer>{Answer{{}, {BitVec::from_u64(1, 0)}},
                                   Answer{{}, {BitVec::from_u64(1, 1)}}};
    };
    g->decide = [](const Question&, const Question&, const Answer& a, const Answer& b) {
        return a == b;
    };
    Game intro = introspection_game(g, 3, 1);
    auto respond = [](const Question&) { return Answer{{}, {BitVec::from_u64(1, 0)}}; };
    Strategy trivial = deterministic_strategy(*g, respond, respond);
    Strategy s = introspection_honest_strategy(intro, trivial);
    CHECK(eval_value(intro, s) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("dimension mismatches are rejected") {
    Game g = magic_square_game();
    Strategy s = magic_square_strategy();
    s.dim_a = 8; // declared dimension no longer matches the operators
    CHECK_THROWS_AS(eval_value(g, s), std::invalid_argument);
}
