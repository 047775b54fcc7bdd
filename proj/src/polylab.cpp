#include "nlgf/polylab.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nlgf {

IdPoly IdPoly::constant(FieldPtr ctx, int m, FieldElem c) {
    IdPoly p(std::move(ctx), m);
    p.add_term(Exps(size_t(m), 0), c);
    return p;
}

IdPoly IdPoly::variable(FieldPtr ctx, int m, int i) {
    IdPoly p(ctx, m);
    Exps e(size_t(m), 0);
    e[size_t(i)] = 1;
    p.add_term(e, ctx->one());
    return p;
}

int IdPoly::individual_degree() const {
    int d = 0;
    for (auto& [e, c] : terms_)
        for (uint16_t x : e) d = std::max(d, int(x));
    return d;
}

void IdPoly::add_term(const Exps& e, FieldElem c) {
    if (int(e.size()) != m_) throw std::invalid_argument("poly: exponent arity");
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        FieldElem s = ctx_->add(it->second, c);
        if (s.is_zero())
            terms_.erase(it);
        else
            it->second = s;
    }
}

FieldElem IdPoly::coeff(const Exps& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? ctx_->zero() : it->second;
}

FieldElem IdPoly::eval(const std::vector<FieldElem>& point) const {
    if (int(point.size()) != m_) throw std::invalid_argument("poly: point arity");
    // power cache per variable
    int d = individual_degree();
    std::vector<std::vector<FieldElem>> pw;
    pw.resize(size_t(m_));
    for (int i = 0; i < m_; ++i) {
        pw[size_t(i)].resize(size_t(d) + 1);
        pw[size_t(i)][0] = ctx_->one();
        for (int e = 1; e <= d; ++e)
            pw[size_t(i)][size_t(e)] = ctx_->mul(pw[size_t(i)][size_t(e - 1)], point[size_t(i)]);
    }
    FieldElem acc = ctx_->zero();
    for (auto& [e, c] : terms_) {
        FieldElem t = c;
        for (int i = 0; i < m_; ++i)
            if (e[size_t(i)]) t = ctx_->mul(t, pw[size_t(i)][e[size_t(i)]]);
        acc = ctx_->add(acc, t);
    }
    return acc;
}

IdPoly operator+(const IdPoly& a, const IdPoly& b) {
    if (a.m_ != b.m_) throw std::invalid_argument("poly: arity mismatch");
    IdPoly r = a;
    for (auto& [e, c] : b.terms_) r.add_term(e, c);
    return r;
}

IdPoly operator*(const IdPoly& a, const IdPoly& b) {
    if (a.m_ != b.m_) throw std::invalid_argument("poly: arity mismatch");
    IdPoly r(a.ctx_, a.m_);
    for (auto& [ea, ca] : a.terms_)
        for (auto& [eb, cb] : b.terms_) {
            IdPoly::Exps e(size_t(a.m_));
            for (int i = 0; i < a.m_; ++i) e[size_t(i)] = uint16_t(ea[size_t(i)] + eb[size_t(i)]);
            r.add_term(e, a.ctx_->mul(ca, cb));
        }
    return r;
}

IdPoly IdPoly::scaled(FieldElem c) const {
    IdPoly r(ctx_, m_);
    for (auto& [e, x] : terms_) r.add_term(e, ctx_->mul(x, c));
    return r;
}

IdPoly IdPoly::embedded(int new_m, int offset) const {
    IdPoly r(ctx_, new_m);
    for (auto& [e, c] : terms_) {
        Exps ne(size_t(new_m), 0);
        for (int i = 0; i < m_; ++i) ne[size_t(offset + i)] = e[size_t(i)];
        r.add_term(ne, c);
    }
    return r;
}

int UniPoly::degree() const {
    for (size_t i = coeffs.size(); i-- > 0;)
        if (!coeffs[i].is_zero()) return int(i);
    return -1;
}

FieldElem UniPoly::eval(FieldElem t) const {
    FieldElem acc = ctx->zero();
    for (size_t i = coeffs.size(); i-- > 0;) acc = ctx->add(ctx->mul(acc, t), coeffs[i]);
    return acc;
}

void UniPoly::trim() {
    while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
}

bool operator==(const UniPoly& a, const UniPoly& b) {
    UniPoly x = a, y = b;
    x.trim();
    y.trim();
    return x.coeffs == y.coeffs;
}

UniPoly restrict_line(const IdPoly& f, const std::vector<FieldElem>& dir,
                      const std::vector<FieldElem>& offset) {
    const FieldPtr& F = f.field();
    if (int(dir.size()) != f.vars() || int(offset.size()) != f.vars())
        throw std::invalid_argument("restrict: arity mismatch");
    auto mul_lin = [&](std::vector<FieldElem> acc, FieldElem a, FieldElem b, int times) {
        // acc *= (a + b t)^times
        for (int r = 0; r < times; ++r) {
            std::vector<FieldElem> nxt(acc.size() + 1, F->zero());
            for (size_t i = 0; i < acc.size(); ++i) {
                nxt[i] = F->add(nxt[i], F->mul(acc[i], a));
                nxt[i + 1] = F->add(nxt[i + 1], F->mul(acc[i], b));
            }
            acc = std::move(nxt);
        }
        return acc;
    };
    UniPoly out{F, {}};
    for (auto& [e, c] : f.terms()) {
        std::vector<FieldElem> term{c};
        for (int i = 0; i < f.vars(); ++i)
            if (e[size_t(i)])
                term = mul_lin(std::move(term), offset[size_t(i)], dir[size_t(i)], e[size_t(i)]);
        if (term.size() > out.coeffs.size()) out.coeffs.resize(term.size(), F->zero());
        for (size_t i = 0; i < term.size(); ++i) out.coeffs[i] = F->add(out.coeffs[i], term[i]);
    }
    out.trim();
    return out;
}

IdPoly indicator_poly(const FieldPtr& ctx, const BitVec& a) {
    int m = a.size();
    IdPoly acc = IdPoly::constant(ctx, m, ctx->one());
    for (int i = 0; i < m; ++i) {
        IdPoly xi = IdPoly::variable(ctx, m, i);
        if (a.get(i))
            acc = acc * xi;
        else
            acc = acc * (IdPoly::constant(ctx, m, ctx->one()) + xi); // 1 - x = 1 + x
    }
    return acc;
}

IdPoly rm_encode(const FieldPtr& ctx, const std::vector<int>& b) {
    size_t n = b.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("rm: length must be a power of two");
    int m = 0;
    while ((size_t(1) << m) < n) ++m;
    IdPoly acc(ctx, m);
    for (size_t i = 0; i < n; ++i) {
        if (!b[i]) continue;
        acc = acc + indicator_poly(ctx, BitVec::from_u64(m, i));
    }
    return acc;
}

std::vector<int> rm_decode(const IdPoly& f) {
    const FieldPtr& F = f.field();
    int m = f.vars();
    std::vector<int> out(size_t(1) << m);
    for (size_t i = 0; i < out.size(); ++i) {
        std::vector<FieldElem> pt(static_cast<size_t>(m));
        for (int j = 0; j < m; ++j)
            pt[size_t(j)] = ((i >> j) & 1) ? F->one() : F->zero();
        FieldElem v = f.eval(pt);
        if (v == F->zero())
            out[i] = 0;
        else if (v == F->one())
            out[i] = 1;
        else
            throw std::domain_error("rm: not a cube-bit polynomial");
    }
    return out;
}

IdPoly zero_gadget(const FieldPtr& ctx, int m, int var) {
    IdPoly x = IdPoly::variable(ctx, m, var);
    return x + x * x;
}

namespace {

bool vanishes_on_cube(const IdPoly& f) {
    const FieldPtr& F = f.field();
    int m = f.vars();
    if (m <= 12) {
        for (uint64_t w = 0; w < (uint64_t{1} << m); ++w) {
            std::vector<FieldElem> pt(static_cast<size_t>(m));
            for (int j = 0; j < m; ++j) pt[size_t(j)] = ((w >> j) & 1) ? F->one() : F->zero();
            if (!f.eval(pt).is_zero()) return false;
        }
        return true;
    }
    Rng rng(0);
    for (int t = 0; t < 1000; ++t) {
        std::vector<FieldElem> pt(static_cast<size_t>(m));
        for (int j = 0; j < m; ++j) pt[size_t(j)] = rng.next_bit() ? F->one() : F->zero();
        if (!f.eval(pt).is_zero()) return false;
    }
    return true;
}

} // namespace

std::vector<IdPoly> zero_cube_decompose(const IdPoly& f) {
    const FieldPtr& F = f.field();
    int m = f.vars();
    if (!vanishes_on_cube(f)) throw std::domain_error("decompose: not zero on the cube");
    std::vector<IdPoly> cs;
    IdPoly rem = f;
    for (int i = 0; i < m; ++i) {
        // divide rem by x_i^2 + x_i in the variable x_i
        IdPoly quot(F, m);
        bool again = true;
        while (again) {
            again = false;
            for (auto& [e, c] : rem.terms()) {
                if (e[size_t(i)] < 2) continue;
                IdPoly::Exps q = e, r = e;
                q[size_t(i)] = uint16_t(e[size_t(i)] - 2);
                r[size_t(i)] = uint16_t(e[size_t(i)] - 1);
                quot.add_term(q, c);
                IdPoly::Exps dead = e;
                FieldElem coef = c;
                rem.add_term(dead, coef); // cancels the term (char 2)
                rem.add_term(r, coef);
                again = true;
                break;
            }
        }
        cs.push_back(quot);
    }
    // a multilinear polynomial vanishing on the cube is identically zero
    if (!rem.is_zero()) throw std::domain_error("decompose: not zero on the cube");
    return cs;
}

int validate_pcpp(const PcppView& view) {
    const FieldPtr& F = view.g_d.field();
    int mp = view.m_pcpp();
    if (view.m_ans < 0 || view.g < 0) return 0;
    if (view.g_d.vars() != mp) return 0;
    if (int(view.s.size()) != mp) return 0;
    if (int(view.u.size()) != 5) return 0;
    if (int(view.beta.size()) != mp) return 0;

    // product identity: gamma = g_d(s) (u_0 - b_0) ... (u_4 - b_4)
    FieldElem prod = view.g_d.eval(view.s);
    for (int i = 0; i < 5; ++i) {
        FieldElem b = view.s[size_t(5 * view.m_ans + i)];
        prod = F->mul(prod, F->add(view.u[size_t(i)], b)); // subtraction = addition
    }
    if (!(prod == view.gamma)) return 0;

    // decomposition identity: gamma = sum_i beta_i zero(s_i)
    FieldElem acc = F->zero();
    for (int i = 0; i < mp; ++i) {
        FieldElem si = view.s[size_t(i)];
        FieldElem z = F->add(si, F->mul(si, si));
        acc = F->add(acc, F->mul(view.beta[size_t(i)], z));
    }
    if (!(acc == view.gamma)) return 0;
    return 1;
}

PcppView make_honest_view(const IdPoly& g_d, const std::array<IdPoly, 5>& blocks,
                          const std::vector<FieldElem>& s, int m_ans, int g) {
    const FieldPtr& F = g_d.field();
    int mp = 5 * m_ans + 5 + g;
    if (g_d.vars() != mp) throw std::invalid_argument("view: g_d arity");
    IdPoly full = g_d;
    PcppView v;
    for (int i = 0; i < 5; ++i) {
        if (blocks[size_t(i)].vars() != m_ans) throw std::invalid_argument("view: block arity");
        IdPoly lifted = blocks[size_t(i)].embedded(mp, i * m_ans);
        IdPoly bvar = IdPoly::variable(F, mp, 5 * m_ans + i);
        full = full * (lifted + bvar);
        std::vector<FieldElem> si(s.begin() + i * m_ans, s.begin() + (i + 1) * m_ans);
        v.u.push_back(blocks[size_t(i)].eval(si));
    }
    std::vector<IdPoly> cs = zero_cube_decompose(full);
    v.g_d = g_d;
    v.m_ans = m_ans;
    v.g = g;
    v.s = s;
    v.gamma = full.eval(s);
    for (auto& c : cs) v.beta.push_back(c.eval(s));
    return v;
}

AgreeReport sz_agreement(const IdPoly& f, const IdPoly& g, int64_t trials, Rng& rng) {
    if (f == g) throw std::invalid_argument("agreement: polynomials must differ");
    const FieldPtr& F = f.field();
    AgreeReport rep;
    rep.trials = trials;
    for (int64_t t = 0; t < trials; ++t) {
        std::vector<FieldElem> pt(static_cast<size_t>(f.vars()));
        for (int i = 0; i < f.vars(); ++i)
            pt[size_t(i)] = F->from_coords(uint32_t(rng.next_below(F->order())));
        if (f.eval(pt) == g.eval(pt)) ++rep.agreements;
    }
    rep.rate = double(rep.agreements) / double(trials);
    rep.stderr_est = std::sqrt(std::max(rep.rate * (1 - rep.rate), 1e-12) / double(trials));
    return rep;
}

} // namespace nlgf
