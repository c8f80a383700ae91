#pragma once

#include <cstdint>
#include <random>

#include "solenoid/rational.hpp"

namespace solenoid {

/// Deterministic random source.  mt19937_64 output is fully specified by the
/// standard; the bounded draws below avoid std distributions, whose mapping
/// is implementation-defined, so transcripts replay byte-identically.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : rng_(seed) {}

    std::uint64_t next() { return rng_(); }

    /// Uniform in [0, n) by rejection sampling; n > 0.
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) throw DomainError("RandomSource::below: n must be positive");
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = rng_();
        } while (x >= limit);
        return x % n;
    }

    long range(long lo, long hi) {  // inclusive bounds
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool coin() { return (rng_() & 1u) != 0; }

    /// Uniform draw from the dyadic-style grid {k/den : |k| <= max_num}.
    Rational rational(long max_num, long den) {
        return Rational(range(-max_num, max_num), den);
    }

private:
    std::mt19937_64 rng_;
};

}  // namespace solenoid
