#include "nlgf/games.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

namespace nlgf {

namespace {

std::vector<Answer> bit_answers(int bits) {
    std::vector<Answer> out;
    for (uint64_t w = 0; w < (uint64_t{1} << bits); ++w)
        out.push_back(Answer{{}, {BitVec::from_u64(bits, w)}});
    return out;
}

bool is_bit_answer(const Answer& a, int bits) {
    return a.meta.empty() && a.parts.size() == 1 && a.parts[0].size() == bits;
}

} // namespace

Answer star_answer() { return Answer{{-2}, {}}; }
Answer anchor_answer() { return Answer{{-1}, {}}; }

Game accept_game() {
    Game g;
    g.name = "accept";
    Question q{{0}, {}};
    g.table = {{q, q, Rational(1)}};
    g.answers = [](const Question&) { return bit_answers(1); };
    g.decide = [](const Question&, const Question&, const Answer& a, const Answer& b) {
        return is_bit_answer(a, 1) && is_bit_answer(b, 1) && a.parts[0].is_zero() &&
               b.parts[0].is_zero();
    };
    g.synchronous = true;
    return g;
}

Game reject_game() {
    Game g;
    g.name = "reject";
    Question q0{{0}, {}}, q1{{1}, {}};
    g.table = {{q0, q1, Rational(1, 3)},
               {q1, q0, Rational(1, 3)},
               {q0, q0, Rational(1, 6)},
               {q1, q1, Rational(1, 6)}};
    g.answers = [](const Question&) { return bit_answers(1); };
    g.decide = [](const Question& x, const Question& y, const Answer& a, const Answer& b) {
        if (!is_bit_answer(a, 1) || !is_bit_answer(b, 1)) return false;
        return x == y && a.parts[0].is_zero() && b.parts[0].is_zero();
    };
    g.synchronous = true;
    return g;
}

Game random_explicit_game(int nx, int na, Rng& rng) {
    Game g;
    g.name = "random";
    g.params = {nx, na};
    std::vector<Question> qs;
    for (int i = 0; i < nx; ++i) qs.push_back(Question{{i}, {}});
    int64_t denom = 0;
    std::vector<int64_t> w(static_cast<size_t>(nx * nx));
    for (auto& x : w) {
        x = 1 + int64_t(rng.next_below(5));
        denom += x;
    }
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < nx; ++j)
            g.table.push_back({qs[size_t(i)], qs[size_t(j)], Rational(w[size_t(i * nx + j)], denom)});
    auto tt = std::make_shared<std::vector<bool>>(size_t(nx * nx * na * na));
    for (size_t i = 0; i < tt->size(); ++i) (*tt)[i] = rng.next_bit();
    int NA = na;
    g.answers = [NA](const Question&) {
        std::vector<Answer> out;
        for (int i = 0; i < NA; ++i) out.push_back(Answer{{}, {BitVec::from_u64(1, uint64_t(i))}});
        return out;
    };
    g.decide = [tt, nx, na](const Question& x, const Question& y, const Answer& a,
                            const Answer& b) {
        if (!is_bit_answer(a, 1) || !is_bit_answer(b, 1)) return false;
        int ai = int(a.parts[0].low_u64());
        int bi = int(b.parts[0].low_u64());
        if (ai >= na || bi >= na) return false;
        size_t idx = size_t(((x.labels[0] * nx + y.labels[0]) * na + ai) * na + bi);
        return bool((*tt)[idx]);
    };
    return g;
}

// --- magic square -------------------------------------------------------------

int magic_square_constraint_var(int c, int slot) {
    return c < 3 ? 3 * c + slot : (c - 3) + 3 * slot;
}

bool magic_square_parity_ok(int c, const BitVec& bits) {
    int par = int(bits.get(0)) ^ int(bits.get(1)) ^ int(bits.get(2));
    return par == (c == 5 ? 1 : 0);
}

Game magic_square_game() {
    Game g;
    g.name = "magic-square";
    g.synchronous = true;
    // labels 0..5 constraints, 6..14 variables
    auto cq = [](int c) { return Question{{c}, {}}; };
    auto vq = [](int v) { return Question{{6 + v}, {}}; };
    for (int l = 0; l < 15; ++l)
        g.table.push_back({Question{{l}, {}}, Question{{l}, {}}, Rational(12, 360)});
    for (int c = 0; c < 6; ++c)
        for (int s = 0; s < 3; ++s) {
            int v = magic_square_constraint_var(c, s);
            g.table.push_back({cq(c), vq(v), Rational(5, 360)});
            g.table.push_back({vq(v), cq(c), Rational(5, 360)});
        }
    g.answers = [](const Question& q) { return bit_answers(q.labels[0] < 6 ? 3 : 1); };
    g.decide = [](const Question& x, const Question& y, const Answer& a, const Answer& b) {
        int lx = x.labels[0], ly = y.labels[0];
        bool xc = lx < 6, yc = ly < 6;
        if (!is_bit_answer(a, xc ? 3 : 1) || !is_bit_answer(b, yc ? 3 : 1)) return false;
        if (lx == ly) return a == b && (!xc || magic_square_parity_ok(lx, a.parts[0]));
        if (xc == yc) return false; // distinct labels of the same kind never pair
        int c = xc ? lx : ly;
        int v = (xc ? ly : lx) - 6;
        const BitVec& cons = xc ? a.parts[0] : b.parts[0];
        const BitVec& var = xc ? b.parts[0] : a.parts[0];
        int slot = -1;
        for (int s = 0; s < 3; ++s)
            if (magic_square_constraint_var(c, s) == v) slot = s;
        if (slot < 0) return false;
        return magic_square_parity_ok(c, cons) && cons.get(slot) == var.get(0);
    };
    return g;
}

// --- Pauli basis test ----------------------------------------------------------

std::vector<BitVec> pauli_basis_code(int n) {
    if (n < 1 || n > 16) throw std::invalid_argument("basis test: n out of range");
    int k = std::max(1, int(std::floor(std::log2(double(n)))));
    // enumerate k-dimensional subspaces by their echelon-form generators,
    // keep the first one of maximal minimum distance
    std::vector<BitVec> best;
    int best_d = -1;
    std::set<std::vector<uint64_t>> seen;
    std::vector<int> idx(static_cast<size_t>(k));
    // iterate over all k-tuples of vectors; canonicalize via rref
    uint64_t total = uint64_t{1} << n;
    std::function<void(int, uint64_t)> rec = [&](int depth, uint64_t start) {
        if (depth == k) {
            std::vector<BitVec> vecs;
            for (int i = 0; i < k; ++i) vecs.push_back(BitVec::from_u64(n, uint64_t(idx[size_t(i)])));
            Subspace s = Subspace::from_vectors(n, vecs);
            if (s.dim() != k) return;
            std::vector<uint64_t> canon;
            for (int i = 0; i < s.dim(); ++i) canon.push_back(s.basis().row(i).low_u64());
            if (!seen.insert(canon).second) return;
            int d = n + 1;
            for (uint64_t mask = 1; mask < (uint64_t{1} << k); ++mask) {
                BitVec cw(n);
                for (int i = 0; i < k; ++i)
                    if ((mask >> i) & 1) cw ^= s.basis().row(i);
                int wt = 0;
                for (int i = 0; i < n; ++i) wt += cw.get(i);
                d = std::min(d, wt);
            }
            if (d > best_d) {
                best_d = d;
                best.clear();
                for (int i = 0; i < s.dim(); ++i) best.push_back(s.basis().row(i));
            }
            return;
        }
        for (uint64_t v = start; v < total; ++v) {
            idx[size_t(depth)] = int(v);
            rec(depth + 1, v + 1);
        }
    };
    rec(0, 1);
    return best;
}

BitVec pauli_basis_encode(const std::vector<BitVec>& gens, const BitVec& seed) {
    BitVec out(gens.at(0).size());
    for (size_t i = 0; i < gens.size(); ++i)
        if (seed.get(int(i))) out ^= gens[i];
    return out;
}

namespace {

struct PBInfo {
    int n = 0;
    int kc = 0; // code dimension
    std::vector<BitVec> gens;
};

BitVec pb_content_ux(const PBInfo& info, const BitVec& content) {
    return pauli_basis_encode(info.gens, content.slice(0, info.kc));
}
BitVec pb_content_uz(const PBInfo& info, const BitVec& content) {
    return pauli_basis_encode(info.gens, content.slice(info.kc, info.kc));
}

std::vector<std::pair<int, int>> pb_edges() {
    std::vector<std::pair<int, int>> e;
    for (int v = 0; v < pb::Count; ++v) e.push_back({v, v});
    for (int c = 0; c < 6; ++c)
        for (int s = 0; s < 3; ++s)
            e.push_back({pb::Constraint0 + c, pb::Variable0 + magic_square_constraint_var(c, s)});
    e.push_back({pb::Variable0 + 0, pb::CoordX});
    e.push_back({pb::Variable0 + 4, pb::CoordZ});
    e.push_back({pb::CoordX, pb::PauliX});
    e.push_back({pb::CoordZ, pb::PauliZ});
    e.push_back({pb::CoordX, pb::CommX});
    e.push_back({pb::CoordZ, pb::CommZ});
    e.push_back({pb::Comm, pb::CommX});
    e.push_back({pb::Comm, pb::CommZ});
    return e;
}

std::vector<CLFunction> pb_functions(int kc) {
    int amb = 2 * kc;
    std::vector<int> reg(static_cast<size_t>(amb));
    for (int i = 0; i < amb; ++i) reg[size_t(i)] = i;
    std::vector<std::vector<int>> regs{reg};
    auto keep = [&](bool x, bool z) {
        BitMatrix m(amb, amb);
        for (int i = 0; i < kc; ++i) {
            if (x) m.set(i, i, true);
            if (z) m.set(kc + i, kc + i, true);
        }
        return CLFunction(amb, regs, m);
    };
    std::vector<CLFunction> fs(static_cast<size_t>(pb::Count), keep(true, true));
    fs[pb::PauliX] = keep(false, false);
    fs[pb::PauliZ] = keep(false, false);
    fs[pb::CoordX] = keep(true, false);
    fs[pb::CommX] = keep(true, false);
    fs[pb::CoordZ] = keep(false, true);
    fs[pb::CommZ] = keep(false, true);
    return fs;
}

std::vector<Answer> pb_answers(const PBInfo& info, const Question& q) {
    int v = q.labels[0];
    int n = info.n;
    if (v == pb::PauliX || v == pb::PauliZ) return bit_answers(n);
    if (v == pb::CoordX || v == pb::CoordZ) {
        // strings supported on the coordinate mask
        BitVec u = v == pb::CoordX ? pb_content_ux(info, q.parts[0])
                                   : pb_content_uz(info, q.parts[0]);
        std::vector<int> on;
        for (int i = 0; i < n; ++i)
            if (u.get(i)) on.push_back(i);
        std::vector<Answer> out;
        for (uint64_t w = 0; w < (uint64_t{1} << on.size()); ++w) {
            BitVec t(n);
            for (size_t i = 0; i < on.size(); ++i) t.set(on[i], (w >> i) & 1);
            out.push_back(Answer{{}, {t}});
        }
        return out;
    }
    if (v == pb::CommX || v == pb::CommZ) return bit_answers(1);
    if (v == pb::Comm) return bit_answers(2);
    if (v >= pb::Variable0 && v < pb::Variable0 + 9) return bit_answers(1);
    return bit_answers(3); // constraints
}

bool pb_decide(const PBInfo& info, const Question& x, const Question& y, const Answer& a,
               const Answer& b) {
    int vx = x.labels[0], vy = y.labels[0];
    if (vx == vy) return a == b;
    // orient so that helper lambdas read the right side
    auto side = [&](int v) -> std::pair<const Question*, const Answer*> {
        return v == vx ? std::make_pair(&x, &a) : std::make_pair(&y, &b);
    };
    auto is_pair = [&](int u, int v) {
        return (vx == u && vy == v) || (vx == v && vy == u);
    };
    auto masked_dot = [&](const BitVec& u, const BitVec& t) {
        int acc = 0;
        for (int i = 0; i < info.n; ++i)
            if (u.get(i) && t.get(i)) acc ^= 1;
        return acc;
    };

    for (int W = 0; W < 2; ++W) { // 0 = X, 1 = Z
        int pauli = W ? pb::PauliZ : pb::PauliX;
        int coord = W ? pb::CoordZ : pb::CoordX;
        int commW = W ? pb::CommZ : pb::CommX;
        if (is_pair(pauli, coord)) {
            auto [cq, ca] = side(coord);
            auto [pq, pa] = side(pauli);
            (void)pq;
            BitVec u = W ? pb_content_uz(info, cq->parts[0]) : pb_content_ux(info, cq->parts[0]);
            for (int i = 0; i < info.n; ++i)
                if (u.get(i) && pa->parts[0].get(i) != ca->parts[0].get(i)) return false;
            return true;
        }
        if (is_pair(coord, commW)) {
            auto [cq, ca] = side(coord);
            auto [wq, wa] = side(commW);
            (void)wq;
            BitVec u = W ? pb_content_uz(info, cq->parts[0]) : pb_content_ux(info, cq->parts[0]);
            return masked_dot(u, ca->parts[0]) == int(wa->parts[0].get(0));
        }
        if (is_pair(pb::Comm, commW)) {
            auto [mq, ma] = side(pb::Comm);
            auto [wq, wa] = side(commW);
            (void)wq;
            BitVec ux = pb_content_ux(info, mq->parts[0]);
            BitVec uz = pb_content_uz(info, mq->parts[0]);
            if (masked_dot(ux, uz)) return ma->parts[0].is_zero(); // only the joint side is bound
            return ma->parts[0].get(W) == wa->parts[0].get(0);
        }
        int var = W ? pb::Variable0 + 4 : pb::Variable0 + 0;
        if (is_pair(var, coord)) {
            auto [vq2, va2] = side(var);
            auto [cq, ca] = side(coord);
            BitVec ux = pb_content_ux(info, vq2->parts[0]);
            BitVec uz = pb_content_uz(info, vq2->parts[0]);
            BitVec uw = W ? uz : ux;
            if (!masked_dot(ux, uz)) return va2->parts[0].is_zero();
            return masked_dot(uw, ca->parts[0]) == int(va2->parts[0].get(0));
        }
    }
    // constraint - variable
    bool xc = vx >= pb::Constraint0 && vx < pb::Constraint0 + 6;
    bool yc = vy >= pb::Constraint0 && vy < pb::Constraint0 + 6;
    bool xv = vx >= pb::Variable0 && vx < pb::Variable0 + 9;
    bool yv = vy >= pb::Variable0 && vy < pb::Variable0 + 9;
    if ((xc && yv) || (yc && xv)) {
        int c = (xc ? vx : vy) - pb::Constraint0;
        int v = (xc ? vy : vx) - pb::Variable0;
        const Answer& cons = xc ? a : b;
        const Answer& var = xc ? b : a;
        BitVec ux = pb_content_ux(info, x.parts[0]);
        BitVec uz = pb_content_uz(info, x.parts[0]);
        if (!masked_dot(ux, uz)) return cons.parts[0].is_zero() && var.parts[0].is_zero();
        int slot = -1;
        for (int s = 0; s < 3; ++s)
            if (magic_square_constraint_var(c, s) == v) slot = s;
        if (slot < 0) return false;
        return magic_square_parity_ok(c, cons.parts[0]) &&
               cons.parts[0].get(slot) == var.parts[0].get(0);
    }
    return false;
}

} // namespace

Game pauli_basis_game(int n) {
    auto info = std::make_shared<PBInfo>();
    info->n = n;
    info->gens = pauli_basis_code(n);
    info->kc = int(info->gens.size());

    int dist = n + 1;
    for (uint64_t mask = 1; mask < (uint64_t{1} << info->kc); ++mask) {
        BitVec cw(n);
        for (int i = 0; i < info->kc; ++i)
            if ((mask >> i) & 1) cw ^= info->gens[size_t(i)];
        int wt = 0;
        for (int i = 0; i < n; ++i) wt += cw.get(i);
        dist = std::min(dist, wt);
    }

    Game g;
    g.name = "pauli-basis";
    // n, then the code dimension and distance (2k/d is the gap surrogate)
    g.params = {n, info->kc, dist};
    g.kind = DistKind::TypedCL;
    auto typed = std::make_shared<TypedCLDist>();
    typed->t = pb::Count;
    typed->edges = pb_edges();
    typed->funcs = pb_functions(info->kc);
    typed->validate();
    g.typed = typed;
    g.field = FieldCtx::build(1);
    g.field_m = 2 * info->kc;
    g.synchronous = true;
    g.answers = [info](const Question& q) { return pb_answers(*info, q); };
    g.decide = [info](const Question& x, const Question& y, const Answer& a, const Answer& b) {
        return pb_decide(*info, x, y, a, b);
    };
    return g;
}

// --- simultaneous low-individual-degree test -----------------------------------

namespace {

struct LdtInfo {
    FieldPtr F;
    int p = 0, m = 0, d = 0, k = 0;
    int jbits = 0;   // bits of the axis index
    int mprime = 0;  // field coords of the index block
    int amb = 0;     // total bits

    int off_j() const { return 0; }
    int off_dir() const { return p * mprime; }
    int off_pt() const { return p * (mprime + m); }

    Vec2pm dir_of(const BitVec& content) const {
        return Vec2pm(F, m, content.slice(off_dir(), p * m));
    }
    Vec2pm pt_of(const BitVec& content) const {
        return Vec2pm(F, m, content.slice(off_pt(), p * m));
    }
    int j_of(const BitVec& content) const { return int(content.slice_u64(0, jbits)); }
};

std::vector<CLFunction> ldt_functions(const std::shared_ptr<LdtInfo>& info) {
    int amb = info->amb;
    std::vector<int> r0, r1, r2;
    for (int i = 0; i < info->p * info->mprime; ++i) r0.push_back(i);
    for (int i = 0; i < info->p * info->m; ++i) r1.push_back(info->off_dir() + i);
    for (int i = 0; i < info->p * info->m; ++i) r2.push_back(info->off_pt() + i);
    std::vector<std::vector<int>> regs{r0, r1, r2};
    int pm = info->p * info->m;

    auto null_matrix = [info, pm](const Vec2pm& v) {
        // local matrix on the point block killing the span(v) component
        BitMatrix out(pm, pm);
        if (v.bits().is_zero()) return BitMatrix::identity(pm);
        std::vector<BitVec> span_basis;
        for (int i = 0; i < info->p; ++i) span_basis.push_back(v.scaled(info->F->basis(i)).bits());
        Subspace sp = Subspace::from_vectors(pm, span_basis);
        Subspace comp = canonical_complement(sp, Subspace::full(pm));
        for (int c = 0; c < pm; ++c) {
            BitVec e(pm);
            e.set(c, true);
            auto [a, bpart] = decompose(e, sp, comp);
            (void)a;
            for (int r = 0; r < pm; ++r)
                if (bpart.get(r)) out.set(r, c, true);
        }
        return out;
    };

    // Point: forget everything but the point block
    CLFunction point(amb, regs, BitMatrix::zero(int(r0.size())));
    point.add_level([n = int(r1.size())](const BitVec&) { return BitMatrix::zero(n); },
                    "ldt.point");
    point.add_level([n = int(r2.size())](const BitVec&) { return BitMatrix::identity(n); },
                    "ldt.point");

    // AxisLine: keep the axis index, kill the direction block, kill the
    // point's component along the axis
    CLFunction axis(amb, regs, BitMatrix::identity(int(r0.size())));
    axis.add_level([n = int(r1.size())](const BitVec&) { return BitMatrix::zero(n); },
                   "ldt.axis");
    axis.add_level(
        [info, pm](const BitVec& prefix) {
            int j = info->j_of(prefix);
            if (j >= info->m) return BitMatrix::zero(pm);
            BitMatrix m = BitMatrix::identity(pm);
            for (int b = 0; b < info->p; ++b) m.set(j * info->p + b, j * info->p + b, false);
            return m;
        },
        "ldt.axis");

    // DiagLine: direction = first j field coordinates of the direction seed
    CLFunction diag(amb, regs, BitMatrix::identity(int(r0.size())));
    diag.add_level(
        [info, pm](const BitVec& prefix) {
            int j = info->j_of(prefix);
            BitMatrix m(pm, pm);
            for (int c = 0; c < std::min(j, info->m); ++c)
                for (int b = 0; b < info->p; ++b)
                    m.set(c * info->p + b, c * info->p + b, true);
            return m;
        },
        "ldt.diag");
    auto memo = std::make_shared<std::map<BitVec, BitMatrix>>();
    diag.add_level(
        [info, null_matrix, memo](const BitVec& prefix) {
            BitVec dirbits = prefix.slice(info->off_dir(), info->p * info->m);
            auto it = memo->find(dirbits);
            if (it != memo->end()) return it->second;
            BitMatrix m = null_matrix(Vec2pm(info->F, info->m, dirbits));
            memo->emplace(dirbits, m);
            return m;
        },
        "ldt.diag");

    return {point, axis, diag};
}

// recover the line parameter of s, checking membership
bool line_param(const LdtInfo& info, const Vec2pm& dir, const Vec2pm& off, const Vec2pm& s,
                FieldElem* t) {
    const FieldPtr& F = info.F;
    if (dir.bits().is_zero()) {
        if (!(s == off)) return false;
        *t = F->zero();
        return true;
    }
    int c = -1;
    for (int i = 0; i < info.m; ++i)
        if (!dir.coord(i).is_zero()) {
            c = i;
            break;
        }
    FieldElem tt = F->mul(F->add(s.coord(c), off.coord(c)), F->inv(dir.coord(c)));
    Vec2pm probe = off + dir.scaled(tt);
    if (!(probe == s)) return false;
    *t = tt;
    return true;
}

UniPoly answer_poly(const LdtInfo& info, const Answer& a, int poly, int ncoef) {
    UniPoly u{info.F, {}};
    for (int i = 0; i < ncoef; ++i)
        u.coeffs.push_back(info.F->from_bits(a.parts[size_t(poly * ncoef + i)]));
    return u;
}

bool ldt_decide(const LdtInfo& info, const Question& x, const Question& y, const Answer& a,
                const Answer& b) {
    int vx = x.labels[0], vy = y.labels[0];
    const FieldPtr& F = info.F;
    auto answer_ok = [&](int v, const Answer& ans) {
        size_t parts = v == ldt::Point ? size_t(info.k)
                       : v == ldt::AxisLine ? size_t(info.k * (info.d + 1))
                                            : size_t(info.k * (info.d * info.m + 1));
        if (!ans.meta.empty() || ans.parts.size() != parts) return false;
        for (auto& p : ans.parts)
            if (p.size() != info.p) return false;
        return true;
    };
    if (!answer_ok(vx, a) || !answer_ok(vy, b)) return false;
    if (vx == vy) return a == b;
    bool x_is_point = vx == ldt::Point;
    if (!x_is_point && vy != ldt::Point) return false;
    const Question& pq = x_is_point ? x : y;
    const Answer& pa = x_is_point ? a : b;
    const Question& lq = x_is_point ? y : x;
    const Answer& la = x_is_point ? b : a;
    int lv = lq.labels[0];

    Vec2pm s = info.pt_of(pq.parts[0]);
    Vec2pm off = info.pt_of(lq.parts[0]);
    Vec2pm dir(F, info.m);
    int ncoef;
    if (lv == ldt::AxisLine) {
        int j = info.j_of(lq.parts[0]);
        if (j >= info.m) return false;
        dir.set_coord(j, F->one());
        ncoef = info.d + 1;
    } else {
        dir = info.dir_of(lq.parts[0]);
        ncoef = info.d * info.m + 1;
    }
    FieldElem t = F->zero();
    if (!line_param(info, dir, off, s, &t)) return false;
    for (int i = 0; i < info.k; ++i) {
        if (!(answer_poly(info, la, i, ncoef).eval(t) == F->from_bits(pa.parts[size_t(i)])))
            return false;
    }
    return true;
}

} // namespace

Game sim_lowdeg_game(int p, int m, int d, int k) {
    auto info = std::make_shared<LdtInfo>();
    info->F = FieldCtx::build(p);
    info->p = p;
    info->m = m;
    info->d = d;
    info->k = k;
    info->jbits = 0;
    while ((1 << info->jbits) < m) ++info->jbits;
    info->mprime = std::max(1, (info->jbits + p - 1) / p);
    info->amb = p * (info->mprime + 2 * m);

    Game g;
    g.name = "sim-lowdeg";
    g.params = {p, m, d, k};
    g.kind = DistKind::TypedCL;
    auto typed = std::make_shared<TypedCLDist>();
    typed->t = 3;
    typed->edges = {{ldt::Point, ldt::Point},
                    {ldt::AxisLine, ldt::AxisLine},
                    {ldt::DiagLine, ldt::DiagLine},
                    {ldt::Point, ldt::AxisLine},
                    {ldt::Point, ldt::DiagLine}};
    typed->funcs = ldt_functions(info);
    typed->validate();
    g.typed = typed;
    g.field = info->F;
    g.field_m = info->mprime + 2 * m;
    g.synchronous = true;
    g.answers = [info](const Question& q) {
        int v = q.labels[0];
        int parts = v == ldt::Point ? info->k
                    : v == ldt::AxisLine ? info->k * (info->d + 1)
                                         : info->k * (info->d * info->m + 1);
        int64_t count = 1;
        for (int i = 0; i < parts; ++i) {
            count *= int64_t(info->F->order());
            if (count > capacity_table_entries())
                throw CapacityError("ldt: answer alphabet too large to enumerate");
        }
        std::vector<Answer> out;
        std::vector<BitVec> cur(static_cast<size_t>(parts), BitVec(info->p));
        std::function<void(int)> rec = [&](int i) {
            if (i == parts) {
                out.push_back(Answer{{}, cur});
                return;
            }
            for (uint32_t w = 0; w < info->F->order(); ++w) {
                cur[size_t(i)] = BitVec::from_u64(info->p, w);
                rec(i + 1);
            }
        };
        rec(0);
        return out;
    };
    g.decide = [info](const Question& x, const Question& y, const Answer& a, const Answer& b) {
        return ldt_decide(*info, x, y, a, b);
    };
    return g;
}

Game cl_identity_game(int m) {
    Game g;
    g.name = "cl-identity";
    g.params = {m};
    g.kind = DistKind::CL;
    std::vector<int> reg(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) reg[size_t(i)] = i;
    CLFunction id = CLFunction::diagonal(m, {reg}, true);
    g.cl = std::make_shared<CLDist>(id, id);
    g.field = FieldCtx::build(1);
    g.field_m = m;
    g.synchronous = true;
    g.answers = [](const Question&) { return bit_answers(1); };
    g.decide = [](const Question&, const Question&, const Answer& a, const Answer& b) {
        return a == b;
    };
    return g;
}

} // namespace nlgf
