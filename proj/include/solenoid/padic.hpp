#pragma once

#include <cstdint>

#include "solenoid/rational.hpp"

namespace solenoid {

/// Deterministic primality test (trial division; inputs are small place primes).
bool is_prime(unsigned long n);

/// p-adic valuation v_p(q) of a nonzero rational.
long padic_valuation(const Rational& q, unsigned long p);

/// |q|_p = p^{-v_p(q)}, normalized so |p|_p = 1/p; |0|_p = 0 exactly.
Rational padic_abs(const Rational& q, unsigned long p);

/// Result of snapping a positive rational to the power-of-p grid.
struct PowerFloor {
    unsigned long prime;
    long exponent;   // value == prime^exponent
    Rational value;
};

/// Largest power p^j with p^j <= r; requires r > 0.  Exponent is estimated
/// from digit counts in base p and then corrected with exact comparisons, so
/// no floating point enters the computation.
PowerFloor padic_floor(const Rational& r, unsigned long p);

/// Largest power p^j with p^j < r (strict); requires r > 0.
PowerFloor padic_floor_strict(const Rational& r, unsigned long p);

}  // namespace solenoid
