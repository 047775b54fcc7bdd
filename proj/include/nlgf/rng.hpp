#pragma once

#include <cstdint>

namespace nlgf {

/// Counter-based splittable generator. Streams derived from (seed, index)
/// are independent of draw order, so parallel consumers stay reproducible.
class Rng {
  public:
    explicit Rng(uint64_t seed) : state_(mix(seed)) {}

    uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    /// Uniform in [0, n). n > 0.
    uint64_t next_below(uint64_t n) {
        // rejection to avoid modulo bias
        uint64_t lim = ~uint64_t{0} - (~uint64_t{0} % n);
        uint64_t v;
        do {
            v = next_u64();
        } while (v >= lim);
        return v % n;
    }

    bool next_bit() { return next_u64() >> 63; }

    double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

    /// Independent child stream; derive(i) != derive(j) for i != j.
    Rng derive(uint64_t index) const {
        Rng r(0);
        r.state_ = mix(state_ ^ mix(index + 0x517cc1b727220a95ULL));
        return r;
    }

  private:
    static uint64_t mix(uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    uint64_t state_;
};

} // namespace nlgf
