#include "nlgf/quantum.hpp"

#include <omp.h>

#include <set>

#include "nlgf/games.hpp"

namespace nlgf {

Cmat kron(const Cmat& a, const Cmat& b) {
    Cmat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Cvec kron_vec(const Cvec& a, const Cvec& b) {
    Cvec out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i)
        out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

double op_norm(const Cmat& m) {
    if (m.rows() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<Cmat> es(m.adjoint() * m);
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

const Cmat* Povm::find(const Answer& a) const {
    for (const auto& [ans, m] : items)
        if (ans == a) return &m;
    return nullptr;
}

bool Povm::valid(double tol, bool pvm) const {
    if (items.empty()) return false;
    Eigen::Index d = items[0].second.rows();
    Cmat sum = Cmat::Zero(d, d);
    for (const auto& [ans, m] : items) {
        if (m.rows() != d || m.cols() != d) return false;
        if (op_norm(m - m.adjoint()) > tol) return false;
        Eigen::SelfAdjointEigenSolver<Cmat> es(m);
        if (es.eigenvalues().minCoeff() < -tol) return false;
        if (pvm && op_norm(m * m - m) > tol) return false;
        sum += m;
    }
    return op_norm(sum - Cmat::Identity(d, d)) <= tol;
}

bool Strategy::valid(double tol) const {
    if (std::abs(state.norm() - 1.0) > 1e-12) return false;
    for (const auto& [q, p] : povm_a)
        if (!p.valid(tol)) return false;
    for (const auto& [q, p] : povm_b)
        if (!p.valid(tol)) return false;
    return true;
}

const Povm& Strategy::a_for(const Question& q) const {
    auto it = povm_a.find(q);
    if (it == povm_a.end()) throw std::invalid_argument("strategy: no A-side measurement");
    return it->second;
}

const Povm& Strategy::b_for(const Question& q) const {
    auto it = povm_b.find(q);
    if (it == povm_b.end()) throw std::invalid_argument("strategy: no B-side measurement");
    return it->second;
}

double pair_probability(const Strategy& s, const Cmat& a, const Cmat& b) {
    // <psi|A (x) B|psi> = sum conj(Psi) .* (A Psi B^T) with Psi the row-major
    // reshape of the state
    Eigen::Map<const Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic,
                                   Eigen::RowMajor>>
        psi(s.state.data(), s.dim_a, s.dim_b);
    Cmat mid = a * psi * b.transpose();
    std::complex<double> acc = 0;
    for (int i = 0; i < s.dim_a; ++i)
        for (int j = 0; j < s.dim_b; ++j) acc += std::conj(psi(i, j)) * mid(i, j);
    return acc.real();
}

namespace {

double pair_value(const Game& g, const Strategy& s, const Question& x, const Question& y) {
    const Povm& pa = s.a_for(x);
    const Povm& pb = s.b_for(y);
    double acc = 0;
    for (const auto& [a, ma] : pa.items)
        for (const auto& [b, mb] : pb.items) {
            if (!g.decide(x, y, a, b)) continue;
            acc += pair_probability(s, ma, mb);
        }
    return acc;
}

// value with the detyping fast path handled by the caller
double eval_value_pairs(const Game& g, const Strategy& s, bool parallel, int threads) {
    auto pairs = g.pairs();
    // resolve measurements and check shapes before entering the parallel loop
    for (const auto& wp : pairs) {
        const Povm& pa = s.a_for(wp.x);
        const Povm& pb = s.b_for(wp.y);
        if (!pa.items.empty() && pa.items[0].second.rows() != s.dim_a)
            throw std::invalid_argument("eval: A-side dimension mismatch");
        if (!pb.items.empty() && pb.items[0].second.rows() != s.dim_b)
            throw std::invalid_argument("eval: B-side dimension mismatch");
    }
    std::vector<double> vals(pairs.size(), 0.0);
    if (parallel) {
        int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nt)
        for (size_t i = 0; i < pairs.size(); ++i)
            vals[i] = pair_value(g, s, pairs[i].x, pairs[i].y);
    } else {
        for (size_t i = 0; i < pairs.size(); ++i)
            vals[i] = pair_value(g, s, pairs[i].x, pairs[i].y);
    }
    // ordered reduction keeps the result identical across thread counts
    double acc = 0;
    for (size_t i = 0; i < pairs.size(); ++i) acc += pairs[i].w.to_double() * vals[i];
    return acc;
}

double eval_value_impl(const Game& g, const Strategy& s, bool parallel, int threads) {
    // product strategy on a repeated game: the correlation factorizes
    if (g.repeat_r > 1 && !s.factors.empty() && int(s.factors.size()) == g.repeat_r && g.inner) {
        double acc = 1.0;
        for (const auto& f : s.factors) acc *= eval_value_impl(*g.inner, *f, parallel, threads);
        return acc;
    }
    // detyped game with a lifted strategy: trivial seeds win with certainty,
    // the non-trivial part reproduces the typed game
    if (g.detyped && s.detype_inner && s.detype_game_src) {
        double frac = g.detyped->nontrivial_fraction();
        double inner = eval_value_impl(*s.detype_game_src, *s.detype_inner, parallel, threads);
        return 1.0 - frac * (1.0 - inner);
    }
    return eval_value_pairs(g, s, parallel, threads);
}

} // namespace

double eval_value(const Game& g, const Strategy& s, const EvalOptions& opt) {
    return eval_value_impl(g, s, !opt.serial, opt.threads);
}

double eval_value_serial(const Game& g, const Strategy& s) {
    return eval_value_impl(g, s, false, 1);
}

std::vector<CorrelationEntry> correlation(const Game& g, const Strategy& s) {
    std::vector<CorrelationEntry> out;
    for (const auto& wp : g.pairs()) {
        for (const auto& [a, ma] : s.a_for(wp.x).items)
            for (const auto& [b, mb] : s.b_for(wp.y).items)
                out.push_back({wp.x, wp.y, a, b, pair_probability(s, ma, mb)});
    }
    return out;
}

double delta_sync(const Game& g, const Strategy& s) {
    double worst = 0;
    for (int side = 0; side < 2; ++side) {
        double acc = 0;
        for (const auto& [q, w] : g.marginal(side)) {
            if (s.povm_a.find(q) == s.povm_a.end() || s.povm_b.find(q) == s.povm_b.end())
                continue;
            for (const auto& [a, ma] : s.a_for(q).items)
                for (const auto& [b, mb] : s.b_for(q).items) {
                    if (a == b) continue;
                    acc += w.to_double() * pair_probability(s, ma, mb);
                }
        }
        worst = std::max(worst, acc);
    }
    return worst;
}

double dist_consistent(const std::vector<std::pair<double, std::pair<Povm, Povm>>>& weighted,
                       const Cvec& psi) {
    double acc = 0;
    for (const auto& [w, pq] : weighted) {
        for (const auto& [a, ma] : pq.first.items)
            for (const auto& [b, mb] : pq.second.items) {
                if (a == b) continue;
                acc += w * (psi.adjoint() * ma * mb * psi).real()(0, 0);
            }
    }
    return acc;
}

double dist_close(const std::vector<std::pair<double, std::pair<Povm, Povm>>>& weighted,
                  const Cvec& psi) {
    double acc = 0;
    for (const auto& [w, pq] : weighted) {
        for (const auto& [a, ma] : pq.first.items) {
            const Cmat* mb = pq.second.find(a);
            Cmat diff = mb ? Cmat(ma - *mb) : ma;
            acc += w * ((diff * psi).squaredNorm());
        }
        for (const auto& [b, mb] : pq.second.items)
            if (!pq.first.find(b)) acc += w * ((mb * psi).squaredNorm());
    }
    return acc;
}

double max_commutator(const Game& g, const Strategy& s) {
    if (s.dim_a != s.dim_b)
        throw std::invalid_argument("oracularizable: factors must share a dimension");
    double worst = 0;
    std::set<std::pair<Question, Question>> seen;
    for (const auto& wp : g.pairs()) {
        if (seen.count({wp.x, wp.y})) continue;
        seen.insert({wp.x, wp.y});
        const Povm& pa = s.a_for(wp.x);
        const Povm& pb = s.b_for(wp.y);
        for (const auto& [a, ma] : pa.items)
            for (const auto& [b, mb] : pb.items) {
                Cmat bt = mb.transpose();
                worst = std::max(worst, op_norm(ma * bt - bt * ma));
            }
    }
    return worst;
}

bool is_oracularizable(const Game& g, const Strategy& s, double tol) {
    return max_commutator(g, s) <= tol;
}

// --- Pauli machinery ----------------------------------------------------------

Cmat gen_pauli_obs(char w, const FieldPtr& f, FieldElem a) {
    uint32_t q = f->order();
    Cmat m = Cmat::Zero(q, q);
    if (w == 'X') {
        for (uint32_t b = 0; b < q; ++b) {
            FieldElem sum = f->add(f->from_coords(b), a);
            m(sum.coords(), b) = 1.0;
        }
    } else {
        for (uint32_t b = 0; b < q; ++b) {
            int tr = f->trace(f->mul(a, f->from_coords(b)));
            m(b, b) = tr ? -1.0 : 1.0;
        }
    }
    return m;
}

std::vector<Cmat> gen_pauli_pvm(char w, const FieldPtr& f) {
    uint32_t q = f->order();
    std::vector<Cmat> out;
    for (uint32_t a = 0; a < q; ++a) {
        Cmat m = Cmat::Zero(q, q);
        if (w == 'Z') {
            m(a, a) = 1.0;
        } else {
            // |a^X> = q^{-1/2} sum_b (-1)^{Tr(ab)} |b>
            Cvec v(q);
            for (uint32_t b = 0; b < q; ++b) {
                int tr = f->trace(f->mul(f->from_coords(a), f->from_coords(b)));
                v(b) = (tr ? -1.0 : 1.0) / std::sqrt(double(q));
            }
            m = v * v.adjoint();
        }
        out.push_back(m);
    }
    return out;
}

Cmat u2top(const FieldPtr& f) {
    // the public coordinates index the qubit basis, so the basis change is
    // the permutation |b><kappa(b)|, which these conventions make diagonal
    uint32_t q = f->order();
    Cmat m = Cmat::Zero(q, q);
    for (uint32_t b = 0; b < q; ++b) m(b, f->from_coords(b).coords()) = 1.0;
    return m;
}

Cmat u2top(const FieldPtr& f, int m) {
    Cmat u = Cmat::Identity(1, 1);
    Cmat one = u2top(f);
    for (int i = 0; i < m; ++i) u = kron(u, one);
    return u;
}

Cvec me_state(int n) {
    Cvec v = Cvec::Zero(Eigen::Index(n) * n);
    for (int i = 0; i < n; ++i) v(Eigen::Index(i) * n + i) = 1.0 / std::sqrt(double(n));
    return v;
}

Cmat z_mask_projector(int n, const std::vector<int>& idx, const BitVec& val) {
    Eigen::Index d = Eigen::Index(1) << n;
    Cmat m = Cmat::Zero(d, d);
    for (Eigen::Index w = 0; w < d; ++w) {
        bool ok = true;
        // qubit i is the 2^i digit of the basis index
        for (int i : idx)
            if ((((w >> i) & 1) != 0) != val.get(i)) ok = false;
        if (ok) m(w, w) = 1.0;
    }
    return m;
}

Cmat x_mask_projector(int n, const std::vector<int>& idx, const BitVec& val) {
    Eigen::Index d = Eigen::Index(1) << n;
    // Hadamard on the masked qubits maps the X projector to a Z projector
    Cmat h1(2, 2);
    h1 << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
    Cmat had = Cmat::Identity(1, 1);
    std::vector<bool> in(size_t(n), false);
    for (int i : idx) in[size_t(i)] = true;
    for (int i = n - 1; i >= 0; --i)
        had = kron(had, in[size_t(i)] ? h1 : Cmat(Cmat::Identity(2, 2)));
    (void)d;
    return had * z_mask_projector(n, idx, val) * had;
}

} // namespace nlgf
