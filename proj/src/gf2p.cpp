#include "nlgf/gf2p.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace nlgf {

namespace {

// degree of a polynomial word (-1 for 0)
int degree(uint64_t w) { return w ? 63 - __builtin_clzll(w) : -1; }

// carry-less multiply mod (x^p + lowmod), words of degree < p
uint32_t clmul_mod(uint32_t a, uint32_t b, int p, uint32_t lowmod) {
    uint64_t acc = 0;
    uint64_t bb = b;
    for (int i = 0; i <= degree(a); ++i)
        if ((a >> i) & 1) acc ^= bb << i;
    for (int d = degree(acc); d >= p; d = degree(acc))
        acc ^= (uint64_t(lowmod) | (uint64_t{1} << p)) << (d - p);
    return uint32_t(acc);
}

bool is_irreducible(int p, uint32_t lowmod) {
    if (p == 1) return true;
    // x^(2^k) mod f by repeated squaring of x
    auto frob_chain = [&](int k) {
        uint32_t x = 2; // the polynomial x
        for (int i = 0; i < k; ++i) x = clmul_mod(x, x, p, lowmod);
        return x;
    };
    if (frob_chain(p) != 2) return false; // x^(2^p) == x required
    // no roots in proper subfields: for each prime q | p, x^(2^(p/q)) != x
    for (int q = 2; q <= p; ++q) {
        if (p % q) continue;
        bool prime = true;
        for (int d = 2; d * d <= q; ++d)
            if (q % d == 0) prime = false;
        if (!prime) continue;
        if (frob_chain(p / q) == 2) return false;
    }
    return true;
}

BitMatrix invert_bitmatrix(const BitMatrix& m) {
    int n = m.rows();
    BitMatrix aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.set(i, j, m.get(i, j));
        aug.set(i, n + i, true);
    }
    aug.rref();
    if (aug.rows() < n) throw std::logic_error("gf2p: singular change of basis");
    BitMatrix inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv.set(i, j, aug.get(i, n + j));
    return inv;
}

} // namespace

FieldPtr FieldCtx::build(int p) {
    if (p < 1 || p > 17 || p % 2 == 0)
        throw std::invalid_argument("field: p must be odd and in [1, 17]");

    static std::mutex mu;
    static std::map<int, FieldPtr> cache;
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find(p);
        if (it != cache.end()) return it->second;
    }

    auto ctx = std::shared_ptr<FieldCtx>(new FieldCtx());
    ctx->p_ = p;

    // smallest irreducible modulus x^p + (low terms)
    for (uint32_t low = 1;; ++low) {
        if (is_irreducible(p, low)) {
            ctx->modulus_ = low;
            break;
        }
    }

    // trace of each monomial x^i, packed as a mask
    auto slow_trace = [&](uint32_t a) {
        uint32_t acc = 0, t = a;
        for (int i = 0; i < p; ++i) {
            acc ^= t;
            t = ctx->pmul(t, t);
        }
        return int(acc & 1); // the conjugate sum lies in F_2
    };
    ctx->trace_mask_ = 0;
    for (int i = 0; i < p; ++i)
        if (slow_trace(uint32_t{1} << i)) ctx->trace_mask_ |= uint32_t{1} << i;

    // first generator g with Tr(g^(1+2^d)) = delta_{d,0}; the Gram matrix of
    // g^(2^i) is then the identity, which also forces linear independence
    uint32_t gen = 0;
    for (uint32_t a = 1; a < ctx->order(); ++a) {
        uint32_t sq = a;
        bool ok = true;
        for (int d = 0; d < p; ++d) {
            int tr = ctx->ptrace(ctx->pmul(a, sq));
            if (tr != (d == 0 ? 1 : 0)) {
                ok = false;
                break;
            }
            sq = ctx->pmul(sq, sq);
        }
        if (ok) {
            gen = a;
            break;
        }
    }
    if (!gen) throw std::logic_error("field: no self-dual normal generator found");

    ctx->basis_poly_.resize(p);
    uint32_t e = gen;
    for (int i = 0; i < p; ++i) {
        ctx->basis_poly_[i] = e;
        e = ctx->pmul(e, e);
    }

    BitMatrix coords_to_poly(p, p); // column i = basis_poly_[i]
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j)
            coords_to_poly.set(j, i, (ctx->basis_poly_[i] >> j) & 1);
    ctx->coords_to_poly_ = coords_to_poly;
    ctx->poly_to_coords_ = invert_bitmatrix(coords_to_poly);

    ctx->one_ = ctx->from_poly_word(1);
    ctx->build_log_tables();

    ctx->mult_tables_.resize(p);
    for (int i = 0; i < p; ++i) {
        BitMatrix m(p, p);
        for (int j = 0; j < p; ++j) {
            FieldElem col = ctx->mul(ctx->basis(i), ctx->basis(j));
            for (int r = 0; r < p; ++r) m.set(r, j, (col.coords() >> r) & 1);
        }
        ctx->mult_tables_[i] = m;
    }

    std::lock_guard<std::mutex> lk(mu);
    cache[p] = ctx;
    return ctx;
}

uint32_t FieldCtx::pmul(uint32_t a, uint32_t b) const {
    return clmul_mod(a, b, p_, modulus_);
}

uint32_t FieldCtx::ppow(uint32_t a, uint64_t e) const {
    uint32_t r = 1;
    while (e) {
        if (e & 1) r = pmul(r, a);
        a = pmul(a, a);
        e >>= 1;
    }
    return r;
}

int FieldCtx::ptrace(uint32_t a) const {
    return __builtin_parity(a & trace_mask_);
}

void FieldCtx::check(const FieldElem& a) const {
    if (a.ctx() != this) throw std::invalid_argument("field: mixed contexts");
}

FieldElem FieldCtx::from_coords(uint32_t c) const {
    if (c >> p_) throw std::invalid_argument("field: coordinate width");
    return FieldElem(this, c);
}

FieldElem FieldCtx::from_bits(const BitVec& b) const {
    if (b.size() != p_) throw std::invalid_argument("field: bit width");
    return FieldElem(this, uint32_t(b.low_u64()));
}

FieldElem FieldCtx::from_poly_word(uint32_t w) const {
    BitVec in(p_);
    for (int i = 0; i < p_; ++i) in.set(i, (w >> i) & 1);
    BitVec out = poly_to_coords_.apply(in);
    return FieldElem(this, uint32_t(out.low_u64()));
}

FieldElem FieldCtx::from_hex(const std::string& s) const {
    uint32_t v = 0;
    for (char c : s) {
        int d;
        if (c >= '0' && c <= '9')
            d = c - '0';
        else if (c >= 'a' && c <= 'f')
            d = c - 'a' + 10;
        else
            throw std::invalid_argument("field: bad hex");
        v = (v << 4) | uint32_t(d);
    }
    return from_coords(v);
}

FieldElem FieldCtx::add(FieldElem a, FieldElem b) const {
    check(a);
    check(b);
    return FieldElem(this, a.coords() ^ b.coords());
}

uint32_t FieldCtx::mul_via_basis(uint32_t a, uint32_t b) const {
    BitVec av(p_), bv(p_);
    for (int i = 0; i < p_; ++i) {
        av.set(i, (a >> i) & 1);
        bv.set(i, (b >> i) & 1);
    }
    uint32_t ap = uint32_t(coords_to_poly_.apply(av).low_u64());
    uint32_t bp = uint32_t(coords_to_poly_.apply(bv).low_u64());
    uint32_t rp = pmul(ap, bp);
    BitVec rv(p_);
    for (int i = 0; i < p_; ++i) rv.set(i, (rp >> i) & 1);
    return uint32_t(poly_to_coords_.apply(rv).low_u64());
}

void FieldCtx::build_log_tables() {
    uint32_t n = order() - 1; // multiplicative group order
    std::vector<uint32_t> prime_factors;
    uint32_t m = n;
    for (uint32_t f = 2; f * f <= m; ++f)
        while (m % f == 0) {
            if (prime_factors.empty() || prime_factors.back() != f) prime_factors.push_back(f);
            m /= f;
        }
    if (m > 1) prime_factors.push_back(m);

    auto pow_via = [&](uint32_t a, uint32_t e) {
        uint32_t r = one_.coords();
        while (e) {
            if (e & 1) r = mul_via_basis(r, a);
            a = mul_via_basis(a, a);
            e >>= 1;
        }
        return r;
    };

    uint32_t gen = 0;
    for (uint32_t c = 1; c <= n; ++c) {
        bool primitive = true;
        for (uint32_t f : prime_factors)
            if (pow_via(c, n / f) == one_.coords()) {
                primitive = false;
                break;
            }
        if (primitive && n > 1) {
            gen = c;
            break;
        }
        if (n == 1) {
            gen = one_.coords();
            break;
        }
    }

    log_.assign(order(), 0);
    exp_.assign(2 * size_t(n), one_.coords());
    uint32_t cur = one_.coords();
    for (uint32_t i = 0; i < n; ++i) {
        exp_[i] = cur;
        exp_[i + n] = cur;
        log_[cur] = i;
        cur = mul_via_basis(cur, gen);
    }
}

FieldElem FieldCtx::mul(FieldElem a, FieldElem b) const {
    check(a);
    check(b);
    if (a.is_zero() || b.is_zero()) return FieldElem(this, 0);
    return FieldElem(this, exp_[size_t(log_[a.coords()]) + log_[b.coords()]]);
}

FieldElem FieldCtx::inv(FieldElem a) const {
    check(a);
    if (a.is_zero()) throw std::domain_error("field: inverse of zero");
    uint32_t n = order() - 1;
    return FieldElem(this, exp_[(n - log_[a.coords()]) % n]);
}

FieldElem FieldCtx::pow(FieldElem a, uint64_t e) const {
    check(a);
    FieldElem r = one_;
    FieldElem base = a;
    while (e) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

int FieldCtx::trace(FieldElem a) const {
    check(a);
    // self-duality: Tr(x) = coords(x) . coords(1)
    return __builtin_parity(a.coords() & one_.coords());
}

BitVec FieldElem::bits() const {
    BitVec b(ctx_->p());
    for (int i = 0; i < ctx_->p(); ++i) b.set(i, (coords_ >> i) & 1);
    return b;
}

std::string FieldElem::hex() const {
    int digits = (ctx_->p() + 3) / 4;
    static const char* k = "0123456789abcdef";
    std::string s(digits, '0');
    for (int i = 0; i < digits; ++i)
        s[digits - 1 - i] = k[(coords_ >> (4 * i)) & 0xf];
    return s;
}

} // namespace nlgf
