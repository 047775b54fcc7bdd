#include "nlgf/strategies.hpp"

#include <set>

namespace nlgf {

namespace {

Cmat pauli_x() {
    Cmat m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}
Cmat pauli_z() {
    Cmat m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

// parity observable (-1)^{u . bits} on n qubits, W in {X, Z}
Cmat parity_obs(char w, int n, const BitVec& u) {
    Cmat one = w == 'X' ? pauli_x() : pauli_z();
    Cmat acc = Cmat::Identity(1, 1);
    for (int i = n - 1; i >= 0; --i)
        acc = kron(acc, u.get(i) ? one : Cmat(Cmat::Identity(2, 2)));
    return acc;
}

Cmat obs_projector(const Cmat& obs, int bit) {
    Eigen::Index d = obs.rows();
    return (Cmat::Identity(d, d) + (bit ? -1.0 : 1.0) * obs) / 2.0;
}

void add_b_side_transposes(Strategy& s) {
    for (const auto& [q, p] : s.povm_a) {
        Povm t;
        for (const auto& [a, m] : p.items) t.items.push_back({a, m.transpose()});
        s.povm_b[q] = t;
    }
}

} // namespace

Cmat magic_grid_cell(const Cmat& xt, const Cmat& zt, int cell) {
    // the involution pair acts on the low qubits, the fresh qubit on the top
    Cmat X = pauli_x(), Z = pauli_z();
    Eigen::Index d = xt.rows();
    Cmat I = Cmat::Identity(d, d);
    Cmat I2 = Cmat::Identity(2, 2);
    switch (cell) {
        case 0: return kron(I2, xt);
        case 1: return kron(X, I);
        case 2: return kron(X, xt);
        case 3: return kron(Z, I);
        case 4: return kron(I2, zt);
        case 5: return kron(Z, zt);
        case 6: return kron(Z, xt);
        case 7: return kron(X, zt);
        case 8: return -kron(Cmat(X * Z), Cmat(xt * zt));
    }
    throw std::invalid_argument("grid: cell out of range");
}

namespace {

Povm grid_variable_povm(const Cmat& obs) {
    Povm p;
    for (int b = 0; b < 2; ++b)
        p.items.push_back({Answer{{}, {BitVec::from_u64(1, uint64_t(b))}}, obs_projector(obs, b)});
    return p;
}

Povm grid_constraint_povm(const std::array<Cmat, 3>& obs) {
    Povm p;
    for (uint64_t w = 0; w < 8; ++w) {
        BitVec bits = BitVec::from_u64(3, w);
        Cmat m = obs_projector(obs[0], bits.get(0)) * obs_projector(obs[1], bits.get(1)) *
                 obs_projector(obs[2], bits.get(2));
        p.items.push_back({Answer{{}, {bits}}, m});
    }
    return p;
}

} // namespace

Strategy magic_square_strategy() {
    Strategy s;
    s.dim_a = s.dim_b = 4;
    s.state = me_state(4);
    Cmat xt = pauli_x(), zt = pauli_z();
    std::array<Cmat, 9> cells;
    for (int i = 0; i < 9; ++i) cells[size_t(i)] = magic_grid_cell(xt, zt, i);
    for (int c = 0; c < 6; ++c) {
        std::array<Cmat, 3> obs{cells[size_t(magic_square_constraint_var(c, 0))],
                                cells[size_t(magic_square_constraint_var(c, 1))],
                                cells[size_t(magic_square_constraint_var(c, 2))]};
        s.povm_a[Question{{c}, {}}] = grid_constraint_povm(obs);
    }
    for (int v = 0; v < 9; ++v)
        s.povm_a[Question{{6 + v}, {}}] = grid_variable_povm(cells[size_t(v)]);
    add_b_side_transposes(s);
    return s;
}

Strategy pauli_basis_strategy(int n) {
    Game g = pauli_basis_game(n);
    auto gens = pauli_basis_code(n);
    int kc = int(gens.size());
    int nq = n + 1; // extra qubit for the grid block
    Eigen::Index dim = Eigen::Index(1) << nq;

    Strategy s;
    s.dim_a = s.dim_b = int(dim);
    s.state = me_state(int(dim));

    std::vector<int> all_n;
    for (int i = 0; i < n; ++i) all_n.push_back(i);

    auto with_pad = [&](const Cmat& m) { // act on the n-qubit block
        return kron(Cmat(Cmat::Identity(2, 2)), m);
    };
    // qubit i is the 2^i digit, so the padding qubit n sits on the left
    // factor of the kron above

    std::set<Question> questions;
    for (const auto& wp : g.pairs()) {
        questions.insert(wp.x);
        questions.insert(wp.y);
    }
    for (const Question& q : questions) {
        int v = q.labels[0];
        Povm p;
        BitVec sx = q.parts[0].slice(0, kc), sz = q.parts[0].slice(kc, kc);
        BitVec ux = pauli_basis_encode(gens, sx), uz = pauli_basis_encode(gens, sz);
        int anti = 0;
        for (int i = 0; i < n; ++i)
            if (ux.get(i) && uz.get(i)) anti ^= 1;

        auto answers = g.answers(q);
        if (v == pb::PauliX || v == pb::PauliZ) {
            char w = v == pb::PauliX ? 'X' : 'Z';
            for (const auto& a : answers) {
                Cmat m = w == 'X' ? x_mask_projector(n, all_n, a.parts[0])
                                  : z_mask_projector(n, all_n, a.parts[0]);
                p.items.push_back({a, with_pad(m)});
            }
        } else if (v == pb::CoordX || v == pb::CoordZ) {
            char w = v == pb::CoordX ? 'X' : 'Z';
            BitVec u = v == pb::CoordX ? ux : uz;
            std::vector<int> idx;
            for (int i = 0; i < n; ++i)
                if (u.get(i)) idx.push_back(i);
            for (const auto& a : answers) {
                Cmat m = w == 'X' ? x_mask_projector(n, idx, a.parts[0])
                                  : z_mask_projector(n, idx, a.parts[0]);
                p.items.push_back({a, with_pad(m)});
            }
        } else if (v == pb::CommX || v == pb::CommZ) {
            char w = v == pb::CommX ? 'X' : 'Z';
            Cmat obs = parity_obs(w, n, w == 'X' ? ux : uz);
            for (const auto& a : answers)
                p.items.push_back({a, with_pad(obs_projector(obs, a.parts[0].get(0)))});
        } else if (v == pb::Comm) {
            if (!anti) {
                Cmat ox = parity_obs('X', n, ux), oz = parity_obs('Z', n, uz);
                for (const auto& a : answers) {
                    Cmat m = obs_projector(ox, a.parts[0].get(0)) *
                             obs_projector(oz, a.parts[0].get(1));
                    p.items.push_back({a, with_pad(m)});
                }
            } else {
                for (const auto& a : answers) {
                    bool zero = a.parts[0].is_zero();
                    p.items.push_back({a, zero ? Cmat(Cmat::Identity(dim, dim))
                                               : Cmat(Cmat::Zero(dim, dim))});
                }
            }
        } else { // grid constraints and variables
            if (!anti) {
                // forced zero answer
                for (const auto& a : answers) {
                    bool zero = a.parts[0].is_zero();
                    p.items.push_back({a, zero ? Cmat(Cmat::Identity(dim, dim))
                                               : Cmat(Cmat::Zero(dim, dim))});
                }
            } else {
                Cmat xt = parity_obs('X', n, ux), zt = parity_obs('Z', n, uz);
                if (v >= pb::Variable0 && v < pb::Variable0 + 9) {
                    Cmat cell = magic_grid_cell(xt, zt, v - pb::Variable0);
                    for (const auto& a : answers)
                        p.items.push_back({a, obs_projector(cell, a.parts[0].get(0))});
                } else {
                    int c = v - pb::Constraint0;
                    std::array<Cmat, 3> obs{
                        magic_grid_cell(xt, zt, magic_square_constraint_var(c, 0)),
                        magic_grid_cell(xt, zt, magic_square_constraint_var(c, 1)),
                        magic_grid_cell(xt, zt, magic_square_constraint_var(c, 2))};
                    for (const auto& a : answers) {
                        Cmat m = obs_projector(obs[0], a.parts[0].get(0)) *
                                 obs_projector(obs[1], a.parts[0].get(1)) *
                                 obs_projector(obs[2], a.parts[0].get(2));
                        p.items.push_back({a, m});
                    }
                }
            }
        }
        s.povm_a[q] = p;
    }
    add_b_side_transposes(s);
    return s;
}

namespace {

// question layout of the low-degree test, recomputed from the game params
struct LdtLayout {
    FieldPtr F;
    int p, m, d, k, jbits, mprime;
    explicit LdtLayout(const Game& g) {
        p = int(g.params[0]);
        m = int(g.params[1]);
        d = int(g.params[2]);
        k = int(g.params[3]);
        F = FieldCtx::build(p);
        jbits = 0;
        while ((1 << jbits) < m) ++jbits;
        mprime = std::max(1, (jbits + p - 1) / p);
    }
    Vec2pm point(const BitVec& content) const {
        return Vec2pm(F, m, content.slice(p * (mprime + m), p * m));
    }
    Vec2pm dir(const BitVec& content) const {
        return Vec2pm(F, m, content.slice(p * mprime, p * m));
    }
    int axis(const BitVec& content) const { return int(content.slice_u64(0, jbits)); }
};

std::vector<FieldElem> elems_of(const Vec2pm& v) {
    std::vector<FieldElem> out;
    for (int i = 0; i < v.m(); ++i) out.push_back(v.coord(i));
    return out;
}

Answer poly_tuple_answer(const FieldPtr& F, const std::vector<UniPoly>& ps, int ncoef) {
    Answer a;
    for (const auto& u : ps) {
        for (int i = 0; i < ncoef; ++i) {
            FieldElem c = i < int(u.coeffs.size()) ? u.coeffs[size_t(i)] : F->zero();
            a.parts.push_back(c.bits());
        }
    }
    return a;
}

} // namespace

Strategy sldt_classical_strategy(const Game& g, const std::vector<IdPoly>& fs) {
    LdtLayout lay(g);
    if (int(fs.size()) != lay.k) throw std::invalid_argument("ldt strategy: polynomial count");
    auto respond = [lay, fs](const Question& q) {
        int v = q.labels[0];
        const FieldPtr& F = lay.F;
        if (v == ldt::Point) {
            auto pt = elems_of(lay.point(q.parts[0]));
            Answer a;
            for (const auto& f : fs) a.parts.push_back(f.eval(pt).bits());
            return a;
        }
        std::vector<FieldElem> dir(size_t(lay.m), F->zero());
        int ncoef;
        if (v == ldt::AxisLine) {
            dir[size_t(lay.axis(q.parts[0]))] = F->one();
            ncoef = lay.d + 1;
        } else {
            dir = elems_of(lay.dir(q.parts[0]));
            ncoef = lay.d * lay.m + 1;
        }
        auto off = elems_of(lay.point(q.parts[0]));
        std::vector<UniPoly> ps;
        for (const auto& f : fs) ps.push_back(restrict_line(f, dir, off));
        return poly_tuple_answer(F, ps, ncoef);
    };
    return deterministic_strategy(g, respond, respond);
}

Strategy deterministic_strategy(const Game& g,
                                const std::function<Answer(const Question&)>& fa,
                                const std::function<Answer(const Question&)>& fb) {
    Strategy s;
    s.dim_a = s.dim_b = 1;
    s.state = Cvec::Ones(1);
    std::set<Question> qs;
    for (const auto& wp : g.pairs()) {
        qs.insert(wp.x);
        qs.insert(wp.y);
    }
    for (const Question& q : qs) {
        Povm pa, pb;
        pa.items.push_back({fa(q), Cmat::Identity(1, 1)});
        pb.items.push_back({fb(q), Cmat::Identity(1, 1)});
        s.povm_a[q] = pa;
        s.povm_b[q] = pb;
    }
    return s;
}

// --- introspection ------------------------------------------------------------

namespace {

struct IntroBuild {
    GamePtr inner;
    const Strategy* base; // symmetric perfect strategy for the inner game
    int cap = 0, k = 0, pm = 0, nq = 0;
    int ds = 1;
    Eigen::Index pb_dim = 0, dim = 0;
    std::vector<std::vector<int>> regs;

    const CLFunction& fn(int prover) const {
        return prover == 0 ? inner->cl->la : inner->cl->lb;
    }
    std::vector<int> idx_below(int i) const {
        std::vector<int> out;
        for (int j = 0; j < i; ++j) out.insert(out.end(), regs[size_t(j)].begin(), regs[size_t(j)].end());
        return out;
    }
    std::vector<int> idx_above(int i) const {
        std::vector<int> out;
        for (int j = i + 1; j < k; ++j)
            out.insert(out.end(), regs[size_t(j)].begin(), regs[size_t(j)].end());
        return out;
    }

    BitMatrix ambient_level(int prover, int j, const BitVec& prefix) const {
        BitMatrix local = fn(prover).level_map(j, prefix);
        const auto& reg = regs[size_t(j)];
        BitMatrix out(pm, pm);
        for (size_t r = 0; r < reg.size(); ++r)
            for (size_t c = 0; c < reg.size(); ++c)
                if (local.get(int(r), int(c))) out.set(reg[r], reg[c], true);
        return out;
    }

    Cmat inner_op(const BitVec& x, const Answer& a) const {
        // questions outside the sampler's image only appear with a vanishing
        // seed projector, so a zero block keeps the measurement complete
        auto it = base->povm_a.find(cl_question(x));
        if (it == base->povm_a.end()) return Cmat::Zero(ds, ds);
        const Cmat* m = it->second.find(a);
        if (!m) return Cmat::Zero(ds, ds);
        return *m;
    }

    /// Sum of Z projectors over seeds in the subspace spanned by `support`
    /// mapping to `target` under `process` (identity when null).
    Cmat z_processed(const std::vector<int>& support, const BitMatrix* process,
                     const BitVec& target) const {
        Cmat acc = Cmat::Zero(pb_dim, pb_dim);
        for (uint64_t w = 0; w < (uint64_t{1} << support.size()); ++w) {
            BitVec v(pm);
            for (size_t i = 0; i < support.size(); ++i) v.set(support[i], (w >> i) & 1);
            BitVec img = process ? process->apply(v) : v;
            if (img != target) continue;
            acc += z_mask_projector(nq, support, v);
        }
        return acc;
    }
    Cmat x_processed(const std::vector<int>& support, const BitMatrix* process,
                     const BitVec& target) const {
        Cmat acc = Cmat::Zero(pb_dim, pb_dim);
        for (uint64_t w = 0; w < (uint64_t{1} << support.size()); ++w) {
            BitVec v(pm);
            for (size_t i = 0; i < support.size(); ++i) v.set(support[i], (w >> i) & 1);
            BitVec img = process ? process->apply(v) : v;
            if (img != target) continue;
            acc += x_mask_projector(nq, support, v);
        }
        return acc;
    }
};

} // namespace

Strategy introspection_honest_strategy(const Game& intro_game, const Strategy& inner_perfect) {
    if (intro_game.name != "introspection")
        throw std::invalid_argument("introspection strategy: wrong game");
    IntroBuild ib;
    ib.inner = intro_game.inner;
    ib.base = &inner_perfect;
    ib.cap = int(intro_game.params[0]);
    ib.k = int(intro_game.params[1]);
    ib.pm = ib.inner->cl->ambient();
    ib.nq = ib.cap + 1;
    ib.ds = inner_perfect.dim_a;
    ib.pb_dim = Eigen::Index(1) << ib.nq;
    ib.dim = ib.pb_dim * ib.ds;
    ib.regs = ib.inner->cl->la.registers();
    if (ib.dim > 1024) throw CapacityError("introspection strategy: dimension cap exceeded");

    Strategy pbs = pauli_basis_strategy(ib.cap);

    Strategy s;
    s.dim_a = s.dim_b = int(ib.dim);
    // pairing: A index = (pb, inner), B likewise; EPR pairs on the pb block,
    // the inner state across the inner blocks
    s.state = Cvec::Zero(ib.dim * ib.dim);
    Cvec me = me_state(int(ib.pb_dim));
    for (Eigen::Index pa = 0; pa < ib.pb_dim; ++pa)
        for (Eigen::Index pb2 = 0; pb2 < ib.pb_dim; ++pb2) {
            std::complex<double> amp = me(pa * ib.pb_dim + pb2);
            if (amp == std::complex<double>(0, 0)) continue;
            for (int ia = 0; ia < ib.ds; ++ia)
                for (int ib2 = 0; ib2 < ib.ds; ++ib2) {
                    Eigen::Index ai = pa * ib.ds + ia;
                    Eigen::Index bi = pb2 * ib.ds + ib2;
                    s.state(ai * ib.dim + bi) = amp * inner_perfect.state(ia * ib.ds + ib2);
                }
        }

    Cmat id_inner = Cmat::Identity(ib.ds, ib.ds);
    auto lift_pb = [&](const Cmat& m) { return kron(m, id_inner); };

    std::set<Question> questions;
    for (const auto& wp : intro_game.pairs()) {
        questions.insert(wp.x);
        questions.insert(wp.y);
    }
    std::vector<int> all_field = ib.idx_below(ib.k);

    for (const Question& q : questions) {
        int v = q.labels[0];
        Povm povm;
        if (v < pb::Count) {
            for (const auto& [a, m] : pbs.a_for(q).items) povm.items.push_back({a, lift_pb(m)});
            s.povm_a[q] = povm;
            continue;
        }
        auto answers = intro_game.answers(q);
        if (v == intro::GenPauliX || v == intro::GenPauliZ) {
            bool xbasis = v == intro::GenPauliX;
            for (const auto& a : answers) {
                Cmat m = xbasis ? ib.x_processed(all_field, nullptr, a.parts[0])
                                : ib.z_processed(all_field, nullptr, a.parts[0]);
                povm.items.push_back({a, lift_pb(m)});
            }
            s.povm_a[q] = povm;
            continue;
        }
        for (int prover = 0; prover < 2; ++prover) {
            if (v == intro::intro_vertex(prover, ib.k)) {
                for (const auto& ans : answers) {
                    auto parts = unpack_answers(ans);
                    const BitVec& x = parts[0].parts[0];
                    Cmat zsel = Cmat::Zero(ib.pb_dim, ib.pb_dim);
                    for (uint64_t w = 0; w < (uint64_t{1} << ib.pm); ++w) {
                        BitVec seed = BitVec::from_u64(ib.pm, w);
                        if (ib.fn(prover).eval(seed) == x)
                            zsel += z_mask_projector(ib.nq, all_field, seed);
                    }
                    povm.items.push_back({ans, kron(zsel, ib.inner_op(x, parts[1]))});
                }
            } else if (v == intro::sample_vertex(prover, ib.k)) {
                for (const auto& ans : answers) {
                    auto parts = unpack_answers(ans);
                    const BitVec& seed = parts[0].parts[0];
                    Cmat z = z_mask_projector(ib.nq, all_field, seed);
                    povm.items.push_back(
                        {ans, kron(z, ib.inner_op(ib.fn(prover).eval(seed), parts[1]))});
                }
            } else if (v == intro::read_vertex(prover, ib.k)) {
                for (const auto& ans : answers) {
                    auto parts = unpack_answers(ans);
                    const BitVec& tperp = parts[0].parts[0];
                    const BitVec& tline = parts[0].parts[1];
                    // Z side: seeds mapping to tline level by level = L(s) = tline
                    Cmat z = Cmat::Zero(ib.pb_dim, ib.pb_dim);
                    for (uint64_t w = 0; w < (uint64_t{1} << ib.pm); ++w) {
                        BitVec seed = BitVec::from_u64(ib.pm, w);
                        if (ib.fn(prover).eval(seed) == tline)
                            z += z_mask_projector(ib.nq, all_field, seed);
                    }
                    // X side: per level, processed through the perp projection
                    Cmat xop = Cmat::Identity(ib.pb_dim, ib.pb_dim);
                    BitVec prefix(ib.pm);
                    for (int j = 0; j < ib.k; ++j) {
                        BitMatrix perp = proj_perp(ib.ambient_level(prover, j, prefix),
                                                   Subspace::span_canonical(ib.pm, ib.regs[size_t(j)]));
                        BitVec tj(ib.pm);
                        for (int i : ib.regs[size_t(j)]) tj.set(i, tperp.get(i));
                        xop = xop * ib.x_processed(ib.regs[size_t(j)], &perp, tj);
                        for (int i : ib.regs[size_t(j)]) prefix.set(i, tline.get(i));
                    }
                    povm.items.push_back({ans, kron(Cmat(z * xop), ib.inner_op(tline, parts[1]))});
                }
            } else {
                for (int hi = 0; hi < ib.k; ++hi) {
                    if (v != intro::hide_vertex(hi, prover, ib.k)) continue;
                    for (const auto& ans : answers) {
                        const BitVec& tline = ans.parts[0];
                        const BitVec& tperp = ans.parts[1];
                        const BitVec& r = ans.parts[2];
                        Cmat op = Cmat::Identity(ib.pb_dim, ib.pb_dim);
                        BitVec prefix(ib.pm);
                        for (int j = 0; j < hi; ++j) {
                            BitVec lj(ib.pm);
                            for (int i : ib.regs[size_t(j)]) lj.set(i, tline.get(i));
                            BitMatrix amb = ib.ambient_level(prover, j, prefix);
                            op = op * ib.z_processed(ib.regs[size_t(j)], &amb, lj);
                            for (int i : ib.regs[size_t(j)]) prefix.set(i, tline.get(i));
                        }
                        prefix = BitVec(ib.pm);
                        for (int i : ib.idx_below(hi)) prefix.set(i, tline.get(i));
                        for (int j = 0; j <= hi; ++j) {
                            BitVec keyp(ib.pm);
                            for (int i : ib.idx_below(j)) keyp.set(i, tline.get(i));
                            BitMatrix perp =
                                proj_perp(ib.ambient_level(prover, j, keyp),
                                          Subspace::span_canonical(ib.pm, ib.regs[size_t(j)]));
                            BitVec tj(ib.pm);
                            for (int i : ib.regs[size_t(j)]) tj.set(i, tperp.get(i));
                            op = op * ib.x_processed(ib.regs[size_t(j)], &perp, tj);
                        }
                        for (int j = hi + 1; j < ib.k; ++j) {
                            BitVec rj(ib.pm);
                            for (int i : ib.regs[size_t(j)]) rj.set(i, r.get(i));
                            op = op * ib.x_processed(ib.regs[size_t(j)], nullptr, rj);
                        }
                        povm.items.push_back({ans, lift_pb(op)});
                    }
                }
            }
        }
        s.povm_a[q] = povm;
    }
    add_b_side_transposes(s);
    return s;
}

// --- lifting ------------------------------------------------------------------

Strategy lift_strategy(const Game& transformed, const Strategy& s) {
    if (!transformed.inner) throw std::invalid_argument("lift: not a transformed game");
    const Game& inner = *transformed.inner;

    if (transformed.name == "oracularize") {
        if (!is_oracularizable(inner, s))
            throw std::invalid_argument("lift: strategy is not oracularizable");
        if (transformed.kind != DistKind::Explicit)
            throw std::invalid_argument("lift: only the explicit oracularization is lifted");
        Strategy out;
        out.dim_a = out.dim_b = s.dim_a;
        out.state = s.state;
        std::set<Question> qs;
        for (const auto& wp : transformed.pairs()) {
            qs.insert(wp.x);
            qs.insert(wp.y);
        }
        for (const Question& q : qs) {
            int32_t role = q.labels[0];
            Question body = q;
            body.labels.erase(body.labels.begin());
            auto innerq = unpack_questions(body);
            Povm p;
            if (role == kRoleProverA) {
                p = s.a_for(innerq[0]);
            } else if (role == kRoleProverB) {
                for (const auto& [a, m] : s.b_for(innerq[0]).items)
                    p.items.push_back({a, m.transpose()});
            } else {
                const Povm& pa = s.a_for(innerq[0]);
                for (const auto& [a, ma] : pa.items)
                    for (const auto& [b, mb] : s.b_for(innerq[1]).items)
                        p.items.push_back({pack_answers({a, b}), Cmat(ma * mb.transpose())});
            }
            out.povm_a[q] = p;
        }
        add_b_side_transposes(out);
        return out;
    }

    if (transformed.name == "anchor") {
        if (transformed.kind != DistKind::Explicit)
            throw std::invalid_argument("lift: only the explicit anchoring is lifted");
        Strategy out = s;
        Povm bot;
        bot.items.push_back({anchor_answer(), Cmat::Identity(s.dim_a, s.dim_a)});
        out.povm_a[Question{{kAnchorLabel}, {}}] = bot;
        Povm botb;
        botb.items.push_back({anchor_answer(), Cmat::Identity(s.dim_b, s.dim_b)});
        out.povm_b[Question{{kAnchorLabel}, {}}] = botb;
        return out;
    }

    if (transformed.name == "repeat") {
        Strategy out;
        out.dim_a = out.dim_b = 1;
        out.state = Cvec::Ones(1);
        auto f = std::make_shared<Strategy>(s);
        for (int i = 0; i < transformed.repeat_r; ++i) out.factors.push_back(f);
        return out;
    }

    if (transformed.name == "detype") {
        Strategy out;
        out.dim_a = s.dim_a;
        out.dim_b = s.dim_b;
        out.state = s.state;
        out.detype_inner = std::make_shared<Strategy>(s);
        out.detype_game_src = transformed.inner;
        return out;
    }

    throw std::invalid_argument("lift: unsupported transformation " + transformed.name);
}

} // namespace nlgf
