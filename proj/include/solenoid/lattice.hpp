#pragma once

#include <cstddef>
#include <vector>

#include "solenoid/space.hpp"

namespace solenoid {

/// One p-adic box constraint: |z - center|_p <= radius (coordinate units).
struct PlaceWindow {
    Rational center;
    Rational radius;  // must be positive; clamped down to a power of p internally
};

/// Product box for the diagonal embedding of a scaled ring element: the real
/// coordinate lies in the closed interval [real_lo, real_hi] and the p-adic
/// coordinates satisfy one PlaceWindow per prime of the set.
struct LatticeBox {
    Rational real_lo;
    Rational real_hi;
    std::vector<PlaceWindow> windows;
};

/// All z in scale * Z[1/p : p in P] whose diagonal embedding lies in the box,
/// ascending.  Exact and exhaustive: candidates come from a congruence class
/// computed with the Chinese remainder theorem, then each is re-checked
/// against the box.  Throws DomainError if the candidate class has more than
/// `limit` members in range, which signals a box far too large to enumerate.
std::vector<Rational> lattice_enumerate(const PrimeSet& P, const Rational& scale,
                                        const LatticeBox& box, std::size_t limit = 1000000);

/// All z in scale * Z[1/p : p in P] with d(diag(z), x) <= r, ascending.
std::vector<Rational> lattice_points_near(const PrimeSet& P, const Rational& scale,
                                          const Point& x, const Rational& r,
                                          std::size_t limit = 1000000);

/// Exact distance from x to the diagonal copy of scale * Z[1/p : p in P].
Rational lattice_distance(const PrimeSet& P, const Rational& scale, const Point& x);

/// Smallest positive distance between distinct points of the diagonal copy
/// of scale * Z[1/p : p in P] (equivalently from 0 to the rest, by
/// translation invariance).
Rational lattice_min_gap(const PrimeSet& P, const Rational& scale);

/// True when q lies in scale * Z[1/p : p in P].
bool in_scaled_ring(const PrimeSet& P, const Rational& scale, const Rational& q);

}  // namespace solenoid
