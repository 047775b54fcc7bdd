#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "nlgf/bits.hpp"

namespace nlgf {

class FieldCtx;

/// Element of F_{2^p} held in coordinates of the field's self-dual normal
/// basis (the public representation; p bits).
class FieldElem {
  public:
    FieldElem() = default;
    FieldElem(const FieldCtx* ctx, uint32_t coords) : ctx_(ctx), coords_(coords) {}

    const FieldCtx* ctx() const { return ctx_; }
    uint32_t coords() const { return coords_; }
    bool is_zero() const { return coords_ == 0; }

    BitVec bits() const;
    std::string hex() const;

    friend bool operator==(const FieldElem& a, const FieldElem& b) {
        return a.ctx_ == b.ctx_ && a.coords_ == b.coords_;
    }
    friend bool operator!=(const FieldElem& a, const FieldElem& b) { return !(a == b); }
    friend bool operator<(const FieldElem& a, const FieldElem& b) {
        return a.coords_ < b.coords_;
    }

  private:
    const FieldCtx* ctx_ = nullptr;
    uint32_t coords_ = 0;
};

/// F_{2^p}, p odd, with a deterministic self-dual normal basis e_i = g^(2^i).
/// Arithmetic is exact; the internal polynomial basis is private to this class.
class FieldCtx {
  public:
    /// Builds the field for odd p in [1, 17]. Deterministic for a given p.
    static std::shared_ptr<const FieldCtx> build(int p);

    int p() const { return p_; }
    uint32_t modulus_bits() const { return modulus_; } // low terms of x^p + ...
    uint32_t order() const { return uint32_t{1} << p_; }

    FieldElem zero() const { return FieldElem(this, 0); }
    FieldElem one() const { return one_; }
    FieldElem from_coords(uint32_t c) const;
    FieldElem from_bits(const BitVec& b) const;
    FieldElem from_hex(const std::string& s) const;

    /// Element whose internal polynomial-basis word is w (test/serialization hook).
    FieldElem from_poly_word(uint32_t w) const;

    /// Basis element e_i in public coordinates (the indicator vector).
    FieldElem basis(int i) const { return FieldElem(this, uint32_t{1} << i); }

    /// Multiplication table of e_i: mult_table(i) * coords(b) = coords(e_i * b).
    const BitMatrix& mult_table(int i) const { return mult_tables_[i]; }

    FieldElem add(FieldElem a, FieldElem b) const;
    FieldElem mul(FieldElem a, FieldElem b) const;
    FieldElem inv(FieldElem a) const;
    FieldElem pow(FieldElem a, uint64_t e) const;
    FieldElem frobenius(FieldElem a) const { return mul(a, a); }
    int trace(FieldElem a) const;

  private:
    FieldCtx() = default;
    void check(const FieldElem& a) const;

    // internal polynomial-basis arithmetic
    uint32_t pmul(uint32_t a, uint32_t b) const;
    uint32_t ppow(uint32_t a, uint64_t e) const;
    int ptrace(uint32_t a) const;
    uint32_t mul_via_basis(uint32_t a, uint32_t b) const;
    void build_log_tables();

    int p_ = 0;
    uint32_t modulus_ = 0;   // bits of x^p reduced: x^p = modulus_ (low p bits)
    uint32_t trace_mask_ = 0;
    std::vector<uint32_t> basis_poly_;   // e_i as polynomial words
    BitMatrix poly_to_coords_;           // change of basis, both p x p
    BitMatrix coords_to_poly_;
    std::vector<BitMatrix> mult_tables_;
    std::vector<uint32_t> log_, exp_;    // multiplicative group tables
    FieldElem one_;
};

using FieldPtr = std::shared_ptr<const FieldCtx>;

} // namespace nlgf
