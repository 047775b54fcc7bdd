#include "nlgf/games.hpp"

namespace nlgf {

namespace {

Question role_question(int32_t role, const std::vector<Question>& inner) {
    Question q = pack_questions(inner);
    q.labels.insert(q.labels.begin(), role);
    return q;
}

std::pair<int32_t, std::vector<Question>> role_unpack(const Question& q) {
    Question body = q;
    int32_t role = body.labels.at(0);
    body.labels.erase(body.labels.begin());
    return {role, unpack_questions(body)};
}

} // namespace

Game oracularize(const GamePtr& g) {
    Game out;
    out.name = "oracularize";
    out.inner = g;
    out.synchronous = true;

    if (g->kind == DistKind::Explicit) {
        for (const auto& wp : g->pairs()) {
            Question qa = role_question(kRoleProverA, {wp.x});
            Question qb = role_question(kRoleProverB, {wp.y});
            Question qo = role_question(kRoleOra, {wp.x, wp.y});
            std::array<Question, 3> qs{qa, qb, qo};
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    out.table.push_back({qs[size_t(i)], qs[size_t(j)], wp.w * Rational(1, 9)});
        }
    } else if (g->kind == DistKind::CL) {
        // selector block of four field coordinates ahead of the original seed
        int p = g->field->p();
        int selbits = 4 * p;
        std::vector<int> reg0(static_cast<size_t>(selbits));
        for (int i = 0; i < selbits; ++i) reg0[size_t(i)] = i;
        auto make = [&](bool sideA) {
            BitMatrix l0(selbits, selbits);
            if (sideA) {
                l0.set(0, 0, true);
                l0.set(1, 1, true);
            } else {
                l0.set(0, 2, true);
                l0.set(1, 3, true);
            }
            CLFunction head(selbits, {reg0}, l0);
            auto la = std::make_shared<CLFunction>(g->cl->la);
            auto lb = std::make_shared<CLFunction>(g->cl->lb);
            auto id = std::make_shared<CLFunction>(
                CLFunction::diagonal(g->cl->ambient(), g->cl->la.registers(), true));
            auto zero = std::make_shared<CLFunction>(
                CLFunction::diagonal(g->cl->ambient(), g->cl->la.registers(), false));
            CLFamily fam = [la, lb, id, zero](const BitVec& sel) -> CLPtr {
                bool b0 = sel.get(0), b1 = sel.get(1);
                if (!b0 && !b1) return la;
                if (!b0 && b1) return lb;
                if (b0 && !b1) return id;
                return zero;
            };
            return series_compose(head, fam, g->cl->la.levels(), g->cl->ambient(),
                                  g->cl->la.registers(), "ora");
        };
        out.kind = DistKind::CL;
        out.cl = std::make_shared<CLDist>(make(true), make(false));
        out.field = g->field;
        out.field_m = g->field_m + 4;
    } else {
        throw std::invalid_argument("oracularize: typed inputs must be detyped first");
    }

    GamePtr inner = g;
    if (g->kind == DistKind::Explicit) {
        out.answers = [inner](const Question& q) {
            auto [role, qs] = role_unpack(q);
            if (role == kRoleOra) {
                std::vector<Answer> out2;
                for (const auto& a : inner->answers(qs[0]))
                    for (const auto& b : inner->answers(qs[1])) out2.push_back(pack_answers({a, b}));
                return out2;
            }
            return inner->answers(qs[0]);
        };
        out.decide = [inner](const Question& x, const Question& y, const Answer& a,
                             const Answer& b) {
            auto [rx, qx] = role_unpack(x);
            auto [ry, qy] = role_unpack(y);
            auto clause = [&](int32_t r0, const std::vector<Question>& q0, const Answer& a0,
                              int32_t r1, const std::vector<Question>& q1, const Answer& a1) {
                // r0 is a single-prover role, r1 the joint role
                (void)r1;
                auto ab = unpack_answers(a1);
                bool d = inner->decide(q1[0], q1[1], ab[0], ab[1]);
                if (r0 == kRoleProverA) return d && q1[0] == q0[0] && ab[0] == a0;
                return d && q1[1] == q0[0] && ab[1] == a0;
            };
            if (rx == kRoleOra && ry == kRoleOra) {
                if (!(x == y && a == b)) return false;
                auto ab = unpack_answers(a);
                return inner->decide(qx[0], qx[1], ab[0], ab[1]);
            }
            if (rx == ry) return x == y && a == b;
            if (rx == kRoleOra) return clause(ry, qy, b, rx, qx, a);
            if (ry == kRoleOra) return clause(rx, qx, a, ry, qy, b);
            return true; // (Prover,A) with (Prover,B) wins automatically
        };
    } else {
        // CL form: contents are selector bits followed by a seed image
        int p = g->field->p();
        int selbits = 4 * p;
        auto role_of = [](const BitVec& content) {
            bool b0 = content.get(0), b1 = content.get(1);
            if (!b0 && !b1) return kRoleProverA;
            if (!b0 && b1) return kRoleProverB;
            if (b0 && !b1) return kRoleOra;
            return int32_t{3}; // free win
        };
        auto cldist = g->cl;
        out.answers = [inner, selbits, role_of, cldist](const Question& q) {
            BitVec tail = q.parts[0].slice(selbits, cldist->ambient());
            int32_t role = role_of(q.parts[0]);
            if (role == kRoleProverA || role == kRoleProverB)
                return inner->answers(cl_question(tail));
            if (role == kRoleOra) {
                std::vector<Answer> out2;
                for (const auto& a : inner->answers(cl_question(cldist->la.eval(tail))))
                    for (const auto& b : inner->answers(cl_question(cldist->lb.eval(tail))))
                        out2.push_back(pack_answers({a, b}));
                return out2;
            }
            return std::vector<Answer>{star_answer()};
        };
        out.decide = [inner, selbits, role_of, cldist](const Question& x, const Question& y,
                                                       const Answer& a, const Answer& b) {
            int32_t rx = role_of(x.parts[0]);
            int32_t ry = role_of(y.parts[0]);
            BitVec tx = x.parts[0].slice(selbits, cldist->ambient());
            BitVec ty = y.parts[0].slice(selbits, cldist->ambient());
            if (rx == 3 || ry == 3) return true;
            if (rx == ry) return x == y && a == b;
            auto clause = [&](int32_t r0, const BitVec& t0, const Answer& a0, const BitVec& seed,
                              const Answer& a1) {
                BitVec qa = cldist->la.eval(seed);
                BitVec qb = cldist->lb.eval(seed);
                auto ab = unpack_answers(a1);
                bool d = inner->decide(cl_question(qa), cl_question(qb), ab[0], ab[1]);
                if (r0 == kRoleProverA) return d && qa == t0 && ab[0] == a0;
                return d && qb == t0 && ab[1] == a0;
            };
            if (rx == kRoleOra) return clause(ry, ty, b, tx, a);
            if (ry == kRoleOra) return clause(rx, tx, a, ty, b);
            return true;
        };
    }
    return out;
}

Game anchor(const GamePtr& g) {
    Game out;
    out.name = "anchor";
    out.inner = g;
    out.synchronous = g->synchronous;
    GamePtr inner = g;

    if (g->kind == DistKind::Explicit || g->kind == DistKind::TypedCL) {
        Question bot{{kAnchorLabel}, {}};
        auto base = g->pairs();
        for (const auto& wp : base) out.table.push_back({wp.x, wp.y, wp.w * Rational(1, 4)});
        for (const auto& [q, w] : g->marginal(0)) out.table.push_back({q, bot, w * Rational(1, 4)});
        for (const auto& [q, w] : g->marginal(1)) out.table.push_back({bot, q, w * Rational(1, 4)});
        out.table.push_back({bot, bot, Rational(1, 4)});
        out.answers = [inner](const Question& q) {
            if (q.labels[0] == kAnchorLabel) return std::vector<Answer>{anchor_answer()};
            return inner->answers(q);
        };
        out.decide = [inner](const Question& x, const Question& y, const Answer& a,
                             const Answer& b) {
            bool xb = x.labels[0] == kAnchorLabel, yb = y.labels[0] == kAnchorLabel;
            if (!xb && !yb) return inner->decide(x, y, a, b);
            if (xb && !yb) return a == anchor_answer();
            if (!xb && yb) return b == anchor_answer();
            return a == anchor_answer() && b == anchor_answer();
        };
    } else if (g->kind == DistKind::CL) {
        int p = g->field->p();
        int selbits = 2 * p;
        std::vector<int> reg0(static_cast<size_t>(selbits));
        for (int i = 0; i < selbits; ++i) reg0[size_t(i)] = i;
        auto make = [&](bool sideA) {
            BitMatrix l0(selbits, selbits);
            for (int i = 0; i < p; ++i) l0.set(i, sideA ? i : p + i, true);
            CLFunction head(selbits, {reg0}, l0);
            auto fn = std::make_shared<CLFunction>(sideA ? g->cl->la : g->cl->lb);
            auto zero = std::make_shared<CLFunction>(
                CLFunction::diagonal(g->cl->ambient(), g->cl->la.registers(), false));
            CLFamily fam = [fn, zero](const BitVec& sel) -> CLPtr {
                return sel.get(0) ? zero : fn;
            };
            return series_compose(head, fam, g->cl->la.levels(), g->cl->ambient(),
                                  g->cl->la.registers(), "anchor");
        };
        out.kind = DistKind::CL;
        out.cl = std::make_shared<CLDist>(make(true), make(false));
        out.field = g->field;
        out.field_m = g->field_m + 2;
        int amb = g->cl->ambient();
        out.answers = [inner, selbits, amb](const Question& q) {
            if (q.parts[0].get(0)) return std::vector<Answer>{anchor_answer()};
            return inner->answers(cl_question(q.parts[0].slice(selbits, amb)));
        };
        out.decide = [inner, selbits, amb](const Question& x, const Question& y, const Answer& a,
                                           const Answer& b) {
            bool xb = x.parts[0].get(0), yb = y.parts[0].get(0);
            if (!xb && !yb)
                return inner->decide(cl_question(x.parts[0].slice(selbits, amb)),
                                     cl_question(y.parts[0].slice(selbits, amb)), a, b);
            if (xb && !yb) return a == anchor_answer();
            if (!xb && yb) return b == anchor_answer();
            return a == anchor_answer() && b == anchor_answer();
        };
    }
    return out;
}

Game repeat_game(const GamePtr& g, int r) {
    if (r < 1) throw std::invalid_argument("repeat: r must be positive");
    if (r == 1) return *g;
    Game out;
    out.name = "repeat";
    out.params = {r};
    out.inner = g;
    out.repeat_r = r;
    out.synchronous = g->synchronous;
    GamePtr inner = g;

    if (g->kind == DistKind::Explicit) {
        auto base = g->pairs();
        int64_t est = 1;
        for (int i = 0; i < r; ++i) {
            est *= int64_t(base.size());
            if (est > capacity_table_entries()) throw CapacityError("repeat: table too large");
        }
        std::vector<const WeightedPair*> cur(static_cast<size_t>(r), nullptr);
        std::function<void(int)> rec = [&](int i) {
            if (i == r) {
                std::vector<Question> xs, ys;
                Rational w(1);
                for (auto* wp : cur) {
                    xs.push_back(wp->x);
                    ys.push_back(wp->y);
                    w = w * wp->w;
                }
                out.table.push_back({pack_questions(xs), pack_questions(ys), w});
                return;
            }
            for (const auto& wp : base) {
                cur[size_t(i)] = &wp;
                rec(i + 1);
            }
        };
        rec(0);
        out.answers = [inner, r](const Question& q) {
            auto qs = unpack_questions(q);
            std::vector<std::vector<Answer>> per;
            int64_t total = 1;
            for (int i = 0; i < r; ++i) {
                per.push_back(inner->answers(qs[size_t(i)]));
                total *= int64_t(per.back().size());
                if (total > capacity_table_entries())
                    throw CapacityError("repeat: answer alphabet too large");
            }
            std::vector<Answer> out2;
            std::vector<Answer> cur2(static_cast<size_t>(r));
            std::function<void(int)> rec2 = [&](int i) {
                if (i == r) {
                    out2.push_back(pack_answers(cur2));
                    return;
                }
                for (const auto& a : per[size_t(i)]) {
                    cur2[size_t(i)] = a;
                    rec2(i + 1);
                }
            };
            rec2(0);
            return out2;
        };
        out.decide = [inner, r](const Question& x, const Question& y, const Answer& a,
                                const Answer& b) {
            auto xs = unpack_questions(x);
            auto ys = unpack_questions(y);
            if (int(xs.size()) != r || int(ys.size()) != r) return false;
            if (a.meta.empty() || b.meta.empty() || a.meta[0] != r || b.meta[0] != r) return false;
            auto as = unpack_answers(a);
            auto bs = unpack_answers(b);
            for (int i = 0; i < r; ++i)
                if (!inner->decide(xs[size_t(i)], ys[size_t(i)], as[size_t(i)], bs[size_t(i)]))
                    return false;
            return true;
        };
    } else if (g->kind == DistKind::CL) {
        CLFunction la = g->cl->la, lb = g->cl->lb;
        for (int i = 1; i < r; ++i) {
            la = parallel_compose(la, g->cl->la);
            lb = parallel_compose(lb, g->cl->lb);
        }
        out.kind = DistKind::CL;
        out.cl = std::make_shared<CLDist>(la, lb);
        out.field = g->field;
        out.field_m = g->field_m * r;
        int amb = g->cl->ambient();
        out.answers = [inner, r, amb](const Question& q) {
            std::vector<std::vector<Answer>> per;
            int64_t total = 1;
            for (int i = 0; i < r; ++i) {
                per.push_back(inner->answers(cl_question(q.parts[0].slice(i * amb, amb))));
                total *= int64_t(per.back().size());
                if (total > capacity_table_entries())
                    throw CapacityError("repeat: answer alphabet too large");
            }
            std::vector<Answer> out2;
            std::vector<Answer> cur2(static_cast<size_t>(r));
            std::function<void(int)> rec2 = [&](int i) {
                if (i == r) {
                    out2.push_back(pack_answers(cur2));
                    return;
                }
                for (const auto& a : per[size_t(i)]) {
                    cur2[size_t(i)] = a;
                    rec2(i + 1);
                }
            };
            rec2(0);
            return out2;
        };
        out.decide = [inner, r, amb](const Question& x, const Question& y, const Answer& a,
                                     const Answer& b) {
            if (a.meta.empty() || b.meta.empty() || a.meta[0] != r || b.meta[0] != r) return false;
            auto as = unpack_answers(a);
            auto bs = unpack_answers(b);
            for (int i = 0; i < r; ++i) {
                if (!inner->decide(cl_question(x.parts[0].slice(i * amb, amb)),
                                   cl_question(y.parts[0].slice(i * amb, amb)), as[size_t(i)],
                                   bs[size_t(i)]))
                    return false;
            }
            return true;
        };
    } else {
        throw std::invalid_argument("repeat: typed inputs must be detyped first");
    }
    return out;
}

Game detype_game(const GamePtr& g) {
    if (g->kind != DistKind::TypedCL)
        throw std::invalid_argument("detype: input must have a typed distribution");
    Game out;
    out.name = "detype";
    out.inner = g;
    out.synchronous = g->synchronous;
    auto dt = std::make_shared<Detyped>(detype(*g->typed, g->field->p()));
    out.kind = DistKind::CL;
    out.cl = std::make_shared<CLDist>(dt->dist);
    out.detyped = dt;
    out.field = g->field;
    out.field_m = (dt->layout.amb1 + dt->layout.inner_amb + g->field->p() - 1) / g->field->p();
    GamePtr inner = g;
    out.answers = [inner, dt](const Question& q) {
        auto parsed = dt->parse_output(q.parts[0]);
        if (!parsed) return std::vector<Answer>{star_answer()};
        return inner->answers(typed_question(parsed->first, parsed->second));
    };
    out.decide = [inner, dt](const Question& x, const Question& y, const Answer& a,
                             const Answer& b) {
        auto px = dt->parse_output(x.parts[0]);
        auto py = dt->parse_output(y.parts[0]);
        if (px && py)
            return inner->decide(typed_question(px->first, px->second),
                                 typed_question(py->first, py->second), a, b);
        if (x == y) return a == b;
        return true;
    };
    return out;
}

} // namespace nlgf
