#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nlgf {

/// Fixed-width bit vector over GF(2). Index 0 is the first coordinate.
class BitVec {
  public:
    BitVec() = default;
    explicit BitVec(int n) : n_(n), w_((n + 63) / 64, 0) {}

    static BitVec from_u64(int n, uint64_t bits) {
        BitVec v(n);
        for (int i = 0; i < n && i < 64; ++i)
            if ((bits >> i) & 1) v.set(i, true);
        return v;
    }

    int size() const { return n_; }
    bool get(int i) const { return (w_[size_t(i) >> 6] >> (i & 63)) & 1; }
    void set(int i, bool b) {
        uint64_t m = uint64_t{1} << (i & 63);
        if (b)
            w_[size_t(i) >> 6] |= m;
        else
            w_[size_t(i) >> 6] &= ~m;
    }

    void operator^=(const BitVec& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
    }
    friend BitVec operator^(BitVec a, const BitVec& b) {
        a ^= b;
        return a;
    }

    bool is_zero() const {
        for (uint64_t w : w_)
            if (w) return false;
        return true;
    }

    /// GF(2) dot product.
    friend bool dot(const BitVec& a, const BitVec& b) {
        uint64_t acc = 0;
        for (size_t i = 0; i < a.w_.size(); ++i) acc ^= a.w_[i] & b.w_[i];
        return __builtin_parityll(acc);
    }

    uint64_t low_u64() const { return w_.empty() ? 0 : w_[0]; }

    /// Value of bits [start, start+len) with bit `start` as the 2^0 digit.
    uint64_t slice_u64(int start, int len) const {
        uint64_t v = 0;
        for (int i = 0; i < len; ++i)
            if (get(start + i)) v |= uint64_t{1} << i;
        return v;
    }

    BitVec slice(int start, int len) const {
        BitVec r(len);
        for (int i = 0; i < len; ++i) r.set(i, get(start + i));
        return r;
    }

    void paste(int start, const BitVec& src) {
        for (int i = 0; i < src.size(); ++i) set(start + i, src.get(i));
    }

    BitVec gather(const std::vector<int>& idx) const {
        BitVec r(int(idx.size()));
        for (size_t i = 0; i < idx.size(); ++i) r.set(int(i), get(idx[i]));
        return r;
    }
    void scatter(const std::vector<int>& idx, const BitVec& src) {
        for (size_t i = 0; i < idx.size(); ++i) set(idx[i], src.get(int(i)));
    }

    std::string str() const {
        std::string s(n_, '0');
        for (int i = 0; i < n_; ++i)
            if (get(i)) s[i] = '1';
        return s;
    }

    friend bool operator==(const BitVec& a, const BitVec& b) {
        return a.n_ == b.n_ && a.w_ == b.w_;
    }
    friend bool operator!=(const BitVec& a, const BitVec& b) { return !(a == b); }
    friend bool operator<(const BitVec& a, const BitVec& b) {
        if (a.n_ != b.n_) return a.n_ < b.n_;
        for (size_t i = a.w_.size(); i-- > 0;)
            if (a.w_[i] != b.w_[i]) return a.w_[i] < b.w_[i];
        return false;
    }

    size_t hash() const {
        size_t h = std::hash<int>()(n_);
        for (uint64_t w : w_) h = h * 0x100000001b3ULL ^ std::hash<uint64_t>()(w);
        return h;
    }

  private:
    int n_ = 0;
    std::vector<uint64_t> w_;
};

/// Dense GF(2) matrix, rows x cols. Row-major bit storage.
class BitMatrix {
  public:
    BitMatrix() = default;
    BitMatrix(int rows, int cols) : r_(rows), c_(cols), rows_(rows, BitVec(cols)) {}

    static BitMatrix identity(int n) {
        BitMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.set(i, i, true);
        return m;
    }
    static BitMatrix zero(int n) { return BitMatrix(n, n); }

    int rows() const { return r_; }
    int cols() const { return c_; }
    bool get(int i, int j) const { return rows_[i].get(j); }
    void set(int i, int j, bool b) { rows_[i].set(j, b); }
    const BitVec& row(int i) const { return rows_[i]; }
    BitVec& row(int i) { return rows_[i]; }

    /// y = M x; output coordinate i is row_i . x.
    BitVec apply(const BitVec& x) const {
        BitVec y(r_);
        for (int i = 0; i < r_; ++i) y.set(i, dot(rows_[i], x));
        return y;
    }

    BitMatrix transposed() const {
        BitMatrix t(c_, r_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j)
                if (get(i, j)) t.set(j, i, true);
        return t;
    }

    friend BitMatrix operator*(const BitMatrix& a, const BitMatrix& b) {
        if (a.c_ != b.r_) throw std::invalid_argument("bitmatrix: shape mismatch");
        BitMatrix r(a.r_, b.c_);
        BitMatrix bt = b.transposed();
        for (int i = 0; i < a.r_; ++i)
            for (int j = 0; j < b.c_; ++j)
                r.set(i, j, dot(a.rows_[i], bt.rows_[j]));
        return r;
    }
    friend BitMatrix operator+(const BitMatrix& a, const BitMatrix& b) {
        BitMatrix r = a;
        for (int i = 0; i < r.r_; ++i) r.rows_[i] ^= b.rows_[i];
        return r;
    }
    friend bool operator==(const BitMatrix& a, const BitMatrix& b) {
        return a.r_ == b.r_ && a.c_ == b.c_ && a.rows_ == b.rows_;
    }

    /// In-place reduced row echelon form; returns pivot column per rank row.
    std::vector<int> rref() {
        std::vector<int> pivots;
        int rank = 0;
        for (int col = 0; col < c_ && rank < r_; ++col) {
            int sel = -1;
            for (int i = rank; i < r_; ++i)
                if (get(i, col)) {
                    sel = i;
                    break;
                }
            if (sel < 0) continue;
            std::swap(rows_[sel], rows_[rank]);
            for (int i = 0; i < r_; ++i)
                if (i != rank && get(i, col)) rows_[i] ^= rows_[rank];
            pivots.push_back(col);
            ++rank;
        }
        rows_.resize(rank, BitVec(c_));
        r_ = rank;
        return pivots;
    }

  private:
    int r_ = 0, c_ = 0;
    std::vector<BitVec> rows_;
};

} // namespace nlgf
