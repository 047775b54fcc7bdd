#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace nlgf {

/// Raised when an enumeration or arithmetic step exceeds the configured caps.
struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Exact rational on int64 with overflow checks. Denominator > 0, reduced.
class Rational {
  public:
    Rational() = default;
    Rational(int64_t n) : num_(n), den_(1) {}
    Rational(int64_t n, int64_t d) : num_(n), den_(d) {
        if (den_ == 0) throw std::invalid_argument("rational: zero denominator");
        normalize();
    }

    int64_t num() const { return num_; }
    int64_t den() const { return den_; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        int64_t g = std::gcd(a.den_, b.den_);
        int64_t lhs = mul(a.num_, b.den_ / g);
        int64_t rhs = mul(b.num_, a.den_ / g);
        int64_t n = add(lhs, rhs);
        int64_t d = mul(a.den_, b.den_ / g);
        return Rational(n, d);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return a + Rational(neg(b.num_), b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        int64_t g1 = std::gcd(std::abs(a.num_), b.den_);
        int64_t g2 = std::gcd(std::abs(b.num_), a.den_);
        return Rational(mul(a.num_ / g1, b.num_ / g2), mul(a.den_ / g2, b.den_ / g1));
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("rational: divide by zero");
        return a * Rational(b.den_, b.num_);
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return (a - b).num_ < 0;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return a < b || a == b; }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return b <= a; }

    double to_double() const { return double(num_) / double(den_); }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

  private:
    void normalize() {
        if (den_ < 0) {
            num_ = neg(num_);
            den_ = neg(den_);
        }
        int64_t g = std::gcd(std::abs(num_), den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
        if (num_ == 0) den_ = 1;
    }

    static int64_t add(int64_t a, int64_t b) {
        int64_t r;
        if (__builtin_add_overflow(a, b, &r)) throw CapacityError("rational overflow (+)");
        return r;
    }
    static int64_t mul(int64_t a, int64_t b) {
        int64_t r;
        if (__builtin_mul_overflow(a, b, &r)) throw CapacityError("rational overflow (*)");
        return r;
    }
    static int64_t neg(int64_t a) {
        if (a == INT64_MIN) throw CapacityError("rational overflow (neg)");
        return -a;
    }

    int64_t num_ = 0;
    int64_t den_ = 1;
};

} // namespace nlgf
