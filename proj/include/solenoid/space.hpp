#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "solenoid/padic.hpp"
#include "solenoid/rational.hpp"

namespace solenoid {

/// Ordered set of distinct primes defining the product space
/// R x Q_{p_1} x ... x Q_{p_k}.  Place 0 is the real line; place i >= 1 is
/// the i-th prime.  "places()" counts the real place too.
class PrimeSet {
public:
    explicit PrimeSet(std::vector<unsigned long> primes);

    std::size_t prime_count() const { return primes_.size(); }
    std::size_t places() const { return primes_.size() + 1; }

    /// Prime at 0-based position j in the list.
    unsigned long prime(std::size_t j) const { return primes_.at(j); }
    /// Prime carried by place index i >= 1.
    unsigned long place_prime(std::size_t i) const { return primes_.at(i - 1); }
    unsigned long largest() const { return primes_.back(); }

    const std::vector<unsigned long>& list() const { return primes_; }

    /// True when q's denominator is supported on this prime set, i.e. q lies
    /// in the ring Z[1/p : p in the set].
    bool in_ring(const Rational& q) const;

    bool operator==(const PrimeSet& o) const { return primes_ == o.primes_; }
    bool operator!=(const PrimeSet& o) const { return !(*this == o); }

private:
    std::vector<unsigned long> primes_;
};

/// Point of the product space: one real coordinate plus one rational per
/// prime place (rationals embed into each Q_p, and every value the library
/// manipulates stays rational, so coordinates are exact).
struct Point {
    Rational real;
    std::vector<Rational> padic;
};

Point zero_point(const PrimeSet& P);
/// Diagonal embedding z -> (z; z, ..., z).
Point diagonal(const PrimeSet& P, const Rational& z);
Point add(const Point& a, const Point& b);
Point sub(const Point& a, const Point& b);
Point scale(const Rational& c, const Point& x);
bool points_equal(const Point& a, const Point& b);

void check_point(const PrimeSet& P, const Point& x);

/// Metric: d(x, z) = max(|x_0 - z_0|, max_p (1/p) |x_p - z_p|_p).
Rational distance(const PrimeSet& P, const Point& a, const Point& b);

struct Ball {
    Point center;
    Rational radius;     // > 0
    bool closed = true;
};

/// One coordinate of a ball or cylinder as an exact set description.  For a
/// p-adic place the set is always a closed coordinate ball (open metric balls
/// collapse to closed ones of the adjacent power radius); for the real place
/// the closed flag matters.
struct CoordinateBall {
    Rational center;
    Rational radius;   // coordinate units: euclidean at place 0, |.|_p value at place i
    bool closed;
};

/// Open cylinder: constrains exactly one coordinate.  At place 0 the
/// constraint is |w_0 - anchor_0| < epsilon; at place i >= 1 it is
/// |w_i - anchor_i|_p < p * epsilon.  normalized_radius is the smallest
/// epsilon' defining the same point set: epsilon itself at place 0, and
/// (largest power of p strictly below p * epsilon) / p otherwise.
struct Cylinder {
    Point anchor;
    Rational epsilon;
    std::size_t place = 0;
    Rational normalized_radius;
};

/// Builds a cylinder with its normalized radius; validates the place index.
Cylinder make_cylinder(const PrimeSet& P, Point anchor, const Rational& epsilon, std::size_t place);

/// Recomputes the normalized radius of an existing cylinder description.
Rational cylinder_normalize(const PrimeSet& P, const Rational& epsilon, std::size_t place);

CoordinateBall ball_projection(const PrimeSet& P, const Ball& b, std::size_t place);
/// Projection of the cylinder onto its constraining place.
CoordinateBall cylinder_projection(const PrimeSet& P, const Cylinder& c);

bool ball_contains_point(const PrimeSet& P, const Ball& b, const Point& x);
bool cylinder_contains_point(const PrimeSet& P, const Cylinder& c, const Point& x);
bool ball_contains(const PrimeSet& P, const Ball& outer, const Ball& inner);
bool ball_cylinder_disjoint(const PrimeSet& P, const Ball& b, const Cylinder& c);

/// Exact set distance between two balls (0 when they intersect).  The max
/// metric factors through places, so this is the max of per-place set
/// distances.
Rational ball_distance(const PrimeSet& P, const Ball& a, const Ball& b);

/// Set distance between two coordinate balls at the given place.
Rational coordinate_ball_distance(const PrimeSet& P, std::size_t place,
                                  const CoordinateBall& a, const CoordinateBall& b);

std::string point_str(const Point& x);

}  // namespace solenoid
