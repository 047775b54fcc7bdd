#include "nlgf/solvers.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <set>

namespace nlgf {

namespace {

int strategy_cap_bits() {
    if (const char* env = std::getenv("NLGF_CAPACITY")) {
        long v = std::atol(env);
        if (v > 0) return int(v) + 4; // a few bits of headroom over the seed cap
    }
    return 24;
}

struct Side {
    std::vector<Question> qs;
    std::vector<std::vector<Answer>> answers;
    std::map<Question, int> index;
};

struct Instance {
    Side a, b;
    int64_t denom = 1;
    // per pair: (x idx, y idx, weight numerator, win table [|Ax| * |By|])
    struct Pair {
        int xi, yi;
        int64_t w;
        std::vector<uint8_t> win;
    };
    std::vector<Pair> pairs;
    std::vector<std::vector<int>> pairs_by_y;
};

Side collect_side(const Game& g, const std::vector<WeightedPair>& pairs, int side) {
    Side s;
    std::set<Question> seen;
    for (const auto& wp : pairs) {
        const Question& q = side == 0 ? wp.x : wp.y;
        if (seen.insert(q).second) s.qs.push_back(q);
    }
    std::sort(s.qs.begin(), s.qs.end());
    for (size_t i = 0; i < s.qs.size(); ++i) {
        s.index[s.qs[i]] = int(i);
        s.answers.push_back(g.answers(s.qs[i]));
    }
    return s;
}

Instance build_instance(const Game& g) {
    Instance in;
    auto pairs = g.pairs();
    in.a = collect_side(g, pairs, 0);
    in.b = collect_side(g, pairs, 1);

    // common denominator
    Rational total(0);
    int64_t denom = 1;
    for (const auto& wp : pairs) denom = std::lcm(denom, wp.w.den());
    in.denom = denom;

    int64_t cells = 0;
    for (const auto& wp : pairs) {
        Instance::Pair p;
        p.xi = in.a.index.at(wp.x);
        p.yi = in.b.index.at(wp.y);
        p.w = wp.w.num() * (denom / wp.w.den());
        const auto& ax = in.a.answers[size_t(p.xi)];
        const auto& by = in.b.answers[size_t(p.yi)];
        cells += int64_t(ax.size()) * int64_t(by.size());
        if (cells > (int64_t{1} << 27))
            throw CapacityError("classical solver: decision tables above the cap");
        p.win.resize(ax.size() * by.size());
        for (size_t i = 0; i < ax.size(); ++i)
            for (size_t j = 0; j < by.size(); ++j)
                p.win[i * by.size() + j] = g.decide(wp.x, wp.y, ax[i], by[j]) ? 1 : 0;
        in.pairs.push_back(std::move(p));
    }

    // drop answers that never win anything (exact: their contribution is zero)
    auto prune = [&](Side& s, bool is_a) {
        for (size_t qi = 0; qi < s.qs.size(); ++qi) {
            std::vector<uint8_t> winner(s.answers[qi].size(), 0);
            for (const auto& p : in.pairs) {
                size_t me = size_t(is_a ? p.xi : p.yi);
                if (me != qi) continue;
                size_t other = is_a ? in.b.answers[size_t(p.yi)].size()
                                    : in.a.answers[size_t(p.xi)].size();
                for (size_t i = 0; i < s.answers[qi].size(); ++i)
                    for (size_t j = 0; j < other; ++j) {
                        bool w = is_a ? p.win[i * other + j] : p.win[j * s.answers[qi].size() + i];
                        if (w) winner[i] = 1;
                    }
            }
            std::vector<Answer> kept;
            std::vector<int> map_old;
            for (size_t i = 0; i < winner.size(); ++i)
                if (winner[i]) {
                    kept.push_back(s.answers[qi][i]);
                    map_old.push_back(int(i));
                }
            if (kept.empty()) {
                kept.push_back(s.answers[qi][0]);
                map_old.push_back(0);
            }
            if (kept.size() == s.answers[qi].size()) continue;
            // rewrite win tables
            for (auto& p : in.pairs) {
                size_t me = size_t(is_a ? p.xi : p.yi);
                if (me != qi) continue;
                size_t na = in.a.answers[size_t(p.xi)].size();
                size_t nb = in.b.answers[size_t(p.yi)].size();
                std::vector<uint8_t> nw;
                if (is_a) {
                    for (int oi : map_old)
                        for (size_t j = 0; j < nb; ++j) nw.push_back(p.win[size_t(oi) * nb + j]);
                } else {
                    for (size_t i = 0; i < na; ++i)
                        for (int oj : map_old) nw.push_back(p.win[i * nb + size_t(oj)]);
                }
                p.win = std::move(nw);
            }
            s.answers[qi] = kept;
        }
    };
    prune(in.a, true);
    prune(in.b, false);

    in.pairs_by_y.resize(in.b.qs.size());
    for (size_t pi = 0; pi < in.pairs.size(); ++pi)
        in.pairs_by_y[size_t(in.pairs[pi].yi)].push_back(int(pi));
    return in;
}

// best response score for a fixed Alice assignment
int64_t best_response(const Instance& in, const std::vector<int>& fa, std::vector<int>* fb_out) {
    int64_t total = 0;
    for (size_t yi = 0; yi < in.b.qs.size(); ++yi) {
        int64_t best = -1;
        int best_b = 0;
        size_t nb = in.b.answers[yi].size();
        for (size_t b = 0; b < nb; ++b) {
            int64_t acc = 0;
            for (int pi : in.pairs_by_y[yi]) {
                const auto& p = in.pairs[size_t(pi)];
                acc += p.w * p.win[size_t(fa[size_t(p.xi)]) * nb + b];
            }
            if (acc > best) {
                best = acc;
                best_b = int(b);
            }
        }
        total += best;
        if (fb_out) (*fb_out)[yi] = best_b;
    }
    return total;
}

} // namespace

SolveReport classical_value_exact(const Game& g) {
    Instance in = build_instance(g);

    long double space = 1;
    for (const auto& a : in.a.answers) space *= (long double)a.size();
    if (space > std::pow(2.0L, strategy_cap_bits()))
        throw CapacityError("classical solver: strategy space above the cap");

    int64_t nstrat = 1;
    for (const auto& a : in.a.answers) nstrat *= int64_t(a.size());

    // symmetric pass: translate each A-side answer to the B-side index of the
    // same answer, where it survived pruning
    bool sym_ok = g.synchronous && in.a.qs == in.b.qs;
    std::vector<std::vector<int>> sym_map;
    if (sym_ok) {
        sym_map.resize(in.a.qs.size());
        for (size_t qi = 0; qi < in.a.qs.size(); ++qi)
            for (const auto& a : in.a.answers[qi]) {
                int j = -1;
                for (size_t bj = 0; bj < in.b.answers[qi].size(); ++bj)
                    if (in.b.answers[qi][bj] == a) j = int(bj);
                sym_map[qi].push_back(j);
            }
    }

    struct Best {
        int64_t score = -1;
        int64_t index = -1;
    };
    int nt = omp_get_max_threads();
    std::vector<Best> bests(static_cast<size_t>(nt)), sym_bests(static_cast<size_t>(nt));
    std::vector<int64_t> works(static_cast<size_t>(nt), 0);

#pragma omp parallel num_threads(nt)
    {
        int tid = omp_get_thread_num();
        std::vector<int> fa(in.a.qs.size(), 0);
#pragma omp for schedule(static)
        for (int64_t idx = 0; idx < nstrat; ++idx) {
            int64_t rem = idx;
            for (size_t qi = 0; qi < in.a.qs.size(); ++qi) {
                int64_t sz = int64_t(in.a.answers[qi].size());
                fa[qi] = int(rem % sz);
                rem /= sz;
            }
            if (sym_ok) {
                int64_t acc = 0;
                bool feasible = true;
                for (const auto& p : in.pairs) {
                    int bj = sym_map[size_t(p.yi)][size_t(fa[size_t(p.yi)])];
                    if (bj < 0) {
                        feasible = false;
                        break;
                    }
                    size_t nb = in.b.answers[size_t(p.yi)].size();
                    acc += p.w * p.win[size_t(fa[size_t(p.xi)]) * nb + size_t(bj)];
                }
                if (feasible) {
                    Best& sb = sym_bests[size_t(tid)];
                    if (acc > sb.score || (acc == sb.score && idx < sb.index)) {
                        sb.score = acc;
                        sb.index = idx;
                    }
                }
            }
            int64_t score = best_response(in, fa, nullptr);
            ++works[size_t(tid)];
            Best& b = bests[size_t(tid)];
            if (score > b.score || (score == b.score && idx < b.index)) {
                b.score = score;
                b.index = idx;
            }
        }
    }
    Best best, sym_best;
    for (const Best& b : bests)
        if (b.score > best.score || (b.score == best.score && b.index < best.index && b.index >= 0))
            best = b;
    for (const Best& b : sym_bests)
        if (b.score > sym_best.score ||
            (b.score == sym_best.score && b.index < sym_best.index && b.index >= 0))
            sym_best = b;
    // the relaxed optimum dominates the symmetric one; keep the larger
    if (sym_best.score > best.score) best = sym_best;

    // rebuild the winning assignment and its best response
    std::vector<int> fa(in.a.qs.size(), 0);
    int64_t rem = best.index;
    for (size_t qi = 0; qi < in.a.qs.size(); ++qi) {
        int64_t sz = int64_t(in.a.answers[qi].size());
        fa[qi] = int(rem % sz);
        rem /= sz;
    }
    std::vector<int> fb(in.b.qs.size(), 0);
    best_response(in, fa, &fb);

    SolveReport rep;
    rep.value_exact = Rational(best.score, in.denom);
    rep.value = rep.value_exact.to_double();
    rep.exact = true;
    rep.converged = true;
    for (const auto& w : works) rep.work += w;
    for (size_t qi = 0; qi < in.a.qs.size(); ++qi)
        rep.witness_a.push_back({in.a.qs[qi], in.a.answers[qi][size_t(fa[qi])]});
    for (size_t yi = 0; yi < in.b.qs.size(); ++yi)
        rep.witness_b.push_back({in.b.qs[yi], in.b.answers[yi][size_t(fb[yi])]});
    return rep;
}

double witness_value(const Game& g, const SolveReport& r) {
    std::map<Question, Answer> fa(r.witness_a.begin(), r.witness_a.end());
    std::map<Question, Answer> fb(r.witness_b.begin(), r.witness_b.end());
    double acc = 0;
    for (const auto& wp : g.pairs())
        if (g.decide(wp.x, wp.y, fa.at(wp.x), fb.at(wp.y))) acc += wp.w.to_double();
    return acc;
}

// --- heuristic quantum lower bound ---------------------------------------------

namespace {

using Rmat = Eigen::MatrixXd;
using Rvec = Eigen::VectorXd;

Rmat givens_product(int d, const std::vector<double>& angles) {
    Rmat m = Rmat::Identity(d, d);
    size_t t = 0;
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            if (t >= angles.size()) return m;
            double c = std::cos(angles[t]), s = std::sin(angles[t]);
            ++t;
            Rmat g = Rmat::Identity(d, d);
            g(i, i) = c;
            g(j, j) = c;
            g(i, j) = -s;
            g(j, i) = s;
            m = g * m;
        }
    return m;
}

struct Parameterization {
    std::vector<Question> qa, qb;
    std::vector<int> na, nb; // answer counts
    int dim;
    int state_angles;
    int angles_per_q;

    int total() const {
        return state_angles + angles_per_q * int(qa.size() + qb.size());
    }
};

// the game reduced to index form: per pair, the winning answer-index list.
// Answers that never win are dropped so the rotation family spends its
// projector mass only on outcomes that can matter.
struct FlatGame {
    struct Pair {
        int xi, yi;
        double w;
        std::vector<std::pair<int, int>> wins;
    };
    std::vector<Pair> pairs;
    std::vector<std::vector<Answer>> answers_a, answers_b;
};

FlatGame flatten(const Game& g, const Parameterization& par) {
    FlatGame f;
    std::map<Question, int> ia, ib;
    for (size_t i = 0; i < par.qa.size(); ++i) ia[par.qa[i]] = int(i);
    for (size_t i = 0; i < par.qb.size(); ++i) ib[par.qb[i]] = int(i);
    f.answers_a.resize(par.qa.size());
    f.answers_b.resize(par.qb.size());
    std::vector<std::vector<uint8_t>> keep_a(par.qa.size()), keep_b(par.qb.size());
    for (size_t i = 0; i < par.qa.size(); ++i)
        keep_a[i].assign(g.answers(par.qa[i]).size(), 0);
    for (size_t i = 0; i < par.qb.size(); ++i)
        keep_b[i].assign(g.answers(par.qb[i]).size(), 0);
    for (const auto& wp : g.pairs()) {
        int xi = ia.at(wp.x), yi = ib.at(wp.y);
        auto ax = g.answers(wp.x);
        auto by = g.answers(wp.y);
        for (size_t i = 0; i < ax.size(); ++i)
            for (size_t j = 0; j < by.size(); ++j)
                if (g.decide(wp.x, wp.y, ax[i], by[j])) {
                    keep_a[size_t(xi)][i] = 1;
                    keep_b[size_t(yi)][j] = 1;
                }
    }
    auto remap = [&](const std::vector<uint8_t>& keep, const std::vector<Answer>& all,
                     std::vector<Answer>& out) {
        std::vector<int> m(all.size(), -1);
        for (size_t i = 0; i < all.size(); ++i)
            if (keep[i]) {
                m[i] = int(out.size());
                out.push_back(all[i]);
            }
        if (out.empty()) {
            out.push_back(all[0]);
            m[0] = 0;
        }
        return m;
    };
    std::vector<std::vector<int>> map_a(par.qa.size()), map_b(par.qb.size());
    for (size_t i = 0; i < par.qa.size(); ++i)
        map_a[i] = remap(keep_a[i], g.answers(par.qa[i]), f.answers_a[i]);
    for (size_t i = 0; i < par.qb.size(); ++i)
        map_b[i] = remap(keep_b[i], g.answers(par.qb[i]), f.answers_b[i]);
    for (const auto& wp : g.pairs()) {
        FlatGame::Pair p;
        p.xi = ia.at(wp.x);
        p.yi = ib.at(wp.y);
        p.w = wp.w.to_double();
        auto ax = g.answers(wp.x);
        auto by = g.answers(wp.y);
        for (size_t i = 0; i < ax.size(); ++i)
            for (size_t j = 0; j < by.size(); ++j)
                if (g.decide(wp.x, wp.y, ax[i], by[j]))
                    p.wins.push_back({map_a[size_t(p.xi)][i], map_b[size_t(p.yi)][j]});
        f.pairs.push_back(std::move(p));
    }
    return f;
}

// povm projectors per question, by answer index
struct FlatStrategy {
    Cvec state;
    std::vector<std::vector<Cmat>> a, b;
};

double flat_value(const FlatGame& fg, const FlatStrategy& fs, int d) {
    Eigen::Map<const Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic,
                                   Eigen::RowMajor>>
        psi(fs.state.data(), d, d);
    double acc = 0;
    for (const auto& p : fg.pairs) {
        double pv = 0;
        for (auto [i, j] : p.wins) {
            Cmat mid = fs.a[size_t(p.xi)][size_t(i)] * psi *
                       fs.b[size_t(p.yi)][size_t(j)].transpose();
            std::complex<double> val = 0;
            for (int r = 0; r < d; ++r)
                for (int c = 0; c < d; ++c) val += std::conj(psi(r, c)) * mid(r, c);
            pv += val.real();
        }
        acc += p.w * pv;
    }
    return acc;
}

FlatStrategy materialize_flat(const Parameterization& par, const std::vector<double>& th) {
    FlatStrategy fs;
    int d = par.dim;
    std::vector<double> sa(th.begin(), th.begin() + par.state_angles);
    Rmat rot = givens_product(d * d, sa);
    Rvec base = Rvec::Zero(d * d);
    for (int i = 0; i < d; ++i) base(i * d + i) = 1.0 / std::sqrt(double(d));
    Rvec st = rot * base;
    fs.state = Cvec(d * d);
    for (int i = 0; i < d * d; ++i) fs.state(i) = st(i);

    size_t off = size_t(par.state_angles);
    auto build = [&](const std::vector<int>& ns, std::vector<std::vector<Cmat>>& out) {
        for (size_t qi = 0; qi < ns.size(); ++qi) {
            std::vector<double> angles(th.begin() + long(off),
                                       th.begin() + long(off) + par.angles_per_q);
            off += size_t(par.angles_per_q);
            Rmat u = givens_product(d, angles);
            std::vector<Cmat> povm;
            int groups = ns[qi];
            for (int a = 0; a < groups; ++a) {
                Cmat proj = Cmat::Zero(d, d);
                for (int c = a; c < d; c += groups) {
                    Rvec col = u.col(c);
                    for (int r1 = 0; r1 < d; ++r1)
                        for (int r2 = 0; r2 < d; ++r2) proj(r1, r2) += col(r1) * col(r2);
                }
                povm.push_back(proj);
            }
            out.push_back(std::move(povm));
        }
    };
    build(par.na, fs.a);
    build(par.nb, fs.b);
    return fs;
}

Strategy materialize(const FlatGame& fg, const Parameterization& par,
                     const std::vector<double>& th) {
    FlatStrategy fs = materialize_flat(par, th);
    Strategy s;
    s.dim_a = s.dim_b = par.dim;
    s.state = fs.state;
    for (size_t qi = 0; qi < par.qa.size(); ++qi) {
        Povm p;
        for (size_t a = 0; a < fs.a[qi].size(); ++a)
            p.items.push_back({fg.answers_a[qi][a], fs.a[qi][a]});
        s.povm_a[par.qa[qi]] = p;
    }
    for (size_t qi = 0; qi < par.qb.size(); ++qi) {
        Povm p;
        for (size_t a = 0; a < fs.b[qi].size(); ++a)
            p.items.push_back({fg.answers_b[qi][a], fs.b[qi][a]});
        s.povm_b[par.qb[qi]] = p;
    }
    return s;
}

} // namespace

SolveReport quantum_lower_bound(const Game& g, const LowerBoundOptions& opt) {
    if (opt.dim < 1 || opt.dim > 16) throw CapacityError("lower bound: dimension cap");
    Parameterization par;
    par.dim = opt.dim;
    auto pairs = g.pairs();
    std::set<Question> qa, qb;
    for (const auto& wp : pairs) {
        qa.insert(wp.x);
        qb.insert(wp.y);
    }
    par.qa.assign(qa.begin(), qa.end());
    par.qb.assign(qb.begin(), qb.end());
    FlatGame fg = flatten(g, par);
    for (const auto& a : fg.answers_a) par.na.push_back(int(a.size()));
    for (const auto& b : fg.answers_b) par.nb.push_back(int(b.size()));
    par.state_angles = std::min(par.dim * par.dim - 1, 24);
    par.angles_per_q = par.dim * (par.dim - 1) / 2;

    Rng root(opt.seed);
    struct Outcome {
        double value = -1;
        std::vector<double> theta;
    };
    std::vector<Outcome> outs(static_cast<size_t>(opt.restarts));

    int nt = opt.threads > 0 ? opt.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nt)
    for (int r = 0; r < opt.restarts; ++r) {
        Rng rng = root.derive(uint64_t(r));
        std::vector<double> th(static_cast<size_t>(par.total()));
        // restart 0 starts from the coordinate partitions on the maximally
        // entangled state; later restarts are random with shrinking spread
        double spread = r == 0 ? 0.0 : (r % 2 ? M_PI : M_PI / 4);
        for (auto& x : th) x = (rng.next_double() * 2 - 1) * spread;
        double cur = flat_value(fg, materialize_flat(par, th), par.dim);
        for (int sweep = 0; sweep < opt.iters; ++sweep) {
            for (size_t i = 0; i < th.size(); ++i) {
                // golden-section search on a symmetric bracket around th[i]
                double lo = th[i] - M_PI / 2, hi = th[i] + M_PI / 2;
                const double gr = (std::sqrt(5.0) - 1) / 2;
                double c = hi - gr * (hi - lo), dpt = lo + gr * (hi - lo);
                auto feval = [&](double v) {
                    std::vector<double> t2 = th;
                    t2[i] = v;
                    return flat_value(fg, materialize_flat(par, t2), par.dim);
                };
                double fc = feval(c), fd = feval(dpt);
                for (int it = 0; it < 12; ++it) {
                    if (fc > fd) {
                        hi = dpt;
                        dpt = c;
                        fd = fc;
                        c = hi - gr * (hi - lo);
                        fc = feval(c);
                    } else {
                        lo = c;
                        c = dpt;
                        fc = fd;
                        dpt = lo + gr * (hi - lo);
                        fd = feval(dpt);
                    }
                }
                double cand = fc > fd ? c : dpt;
                double fcand = std::max(fc, fd);
                if (fcand > cur) {
                    th[i] = cand;
                    cur = fcand;
                }
            }
        }
        outs[size_t(r)] = {cur, th};
    }

    int best = 0;
    for (int r = 1; r < opt.restarts; ++r)
        if (outs[size_t(r)].value > outs[size_t(best)].value) best = r;

    // fine polish of the winning restart: narrow brackets push the
    // golden-section resolution below the reporting tolerance
    {
        std::vector<double>& th = outs[size_t(best)].theta;
        double cur = outs[size_t(best)].value;
        for (int sweep = 0; sweep < 2; ++sweep) {
            for (size_t i = 0; i < th.size(); ++i) {
                double lo = th[i] - 0.08, hi = th[i] + 0.08;
                const double gr = (std::sqrt(5.0) - 1) / 2;
                double c = hi - gr * (hi - lo), dpt = lo + gr * (hi - lo);
                auto feval = [&](double v) {
                    std::vector<double> t2 = th;
                    t2[i] = v;
                    return flat_value(fg, materialize_flat(par, t2), par.dim);
                };
                double fc = feval(c), fd = feval(dpt);
                for (int it = 0; it < 18; ++it) {
                    if (fc > fd) {
                        hi = dpt;
                        dpt = c;
                        fd = fc;
                        c = hi - gr * (hi - lo);
                        fc = feval(c);
                    } else {
                        lo = c;
                        c = dpt;
                        fc = fd;
                        dpt = lo + gr * (hi - lo);
                        fd = feval(dpt);
                    }
                }
                double cand = fc > fd ? c : dpt;
                double fcand = std::max(fc, fd);
                if (fcand > cur) {
                    th[i] = cand;
                    cur = fcand;
                }
            }
        }
        outs[size_t(best)].value = cur;
    }

    SolveReport rep;
    rep.value = outs[size_t(best)].value;
    rep.exact = false;
    rep.converged = true;
    rep.work = int64_t(opt.restarts) * opt.iters;
    rep.witness_strategy =
        std::make_shared<Strategy>(materialize(fg, par, outs[size_t(best)].theta));
    return rep;
}

ChainReport verify_completeness_chain(const GamePtr& g, const Strategy& s,
                                      const std::vector<std::string>& transforms, double tol) {
    ChainReport rep;
    GamePtr cur = g;
    Strategy cur_s = s;

    ChainStage stage0{"input", eval_value(*cur, cur_s), cur_s.dim_a, false};
    stage0.pass = stage0.value >= 1.0 - tol;
    rep.stages.push_back(stage0);
    if (!stage0.pass) return rep;

    for (const std::string& t : transforms) {
        GamePtr next;
        if (t == "oracularize")
            next = std::make_shared<Game>(oracularize(cur));
        else if (t == "anchor")
            next = std::make_shared<Game>(anchor(cur));
        else if (t.rfind("repeat:", 0) == 0)
            next = std::make_shared<Game>(repeat_game(cur, std::stoi(t.substr(7))));
        else if (t == "detype")
            next = std::make_shared<Game>(detype_game(cur));
        else
            throw std::invalid_argument("chain: unknown transformation " + t);
        Strategy lifted = lift_strategy(*next, cur_s);
        ChainStage st{t, eval_value(*next, lifted), lifted.dim_a, false};
        st.pass = st.value >= 1.0 - tol;
        rep.stages.push_back(st);
        if (!st.pass) return rep;
        cur = next;
        cur_s = std::move(lifted);
    }
    rep.pass = true;
    return rep;
}

} // namespace nlgf
