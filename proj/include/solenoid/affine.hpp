#pragma once

#include <cstddef>
#include <vector>

#include "solenoid/space.hpp"

namespace solenoid {

/// Affine endomorphism x -> linear * x + translation, acting coordinatewise
/// on the product space.  The linear part must lie in Z[1/p : p in P] so that
/// the map descends to a surjective endomorphism of the quotient; its lift is
/// then invertible on the product space.
struct AffineMap {
    Rational linear;
    Point translation;
};

AffineMap make_affine(const PrimeSet& P, const Rational& linear, Point translation);
AffineMap make_linear(const PrimeSet& P, const Rational& linear);

Point apply(const PrimeSet& P, const AffineMap& A, const Point& x);
Point apply_inverse(const PrimeSet& P, const AffineMap& A, const Point& x);
/// j-fold inverse lift, exact.
Point apply_inverse_iter(const PrimeSet& P, const AffineMap& A, long j, const Point& x);
/// j-fold forward map, exact.
Point apply_iter(const PrimeSet& P, const AffineMap& A, long j, const Point& x);

/// Per-place absolute values of the linear part and the dominant expansion.
struct SpectralData {
    std::vector<Rational> lambdas;   // index 0 archimedean, index i >= 1 the i-th prime
    Rational lambda_A;               // max over places, > 1 for non-degenerate maps
    std::size_t dominant_place = 0;  // smallest place attaining lambda_A
    long ell = 0;                    // smallest with lambda_A^(-ell) < mu
};

/// Computes expansion data; throws DomainError("degenerate linear part") when
/// the linear part is 0 or +-1, where every place is an isometry and the
/// orbit structure needs no expansion machinery.
SpectralData spectral_data(const PrimeSet& P, const AffineMap& A, const Rational& mu);

/// Expansion factors only (no mu needed): lambda_i per place.
std::vector<Rational> place_expansions(const PrimeSet& P, const AffineMap& A);

/// Product of per-place coordinate balls around the coordinates of a common
/// center point.  Radii are in coordinate units (euclidean at place 0, |.|_p
/// value at place i >= 1).  p-adic coordinates are always closed sets; the
/// real coordinate is an open interval when real_open is set (p-adic open
/// metric balls collapse to closed coordinate balls, the real one does not).
struct ProductBox {
    Point center;
    std::vector<Rational> radii;
    bool real_open = false;
};

ProductBox ball_box(const PrimeSet& P, const Ball& b);
/// Image of the box under the j-th power of A (negative j = inverse lift).
/// Coordinates scale by lambda_i^j; the center maps exactly.
ProductBox map_box(const PrimeSet& P, const AffineMap& A, long j, const ProductBox& box);
/// Exact set distance between the closures (max of per-place set distances).
Rational box_distance(const PrimeSet& P, const ProductBox& a, const ProductBox& b);
/// Exact disjointness, honoring real-place openness: open sets touching at a
/// boundary point do not intersect.
bool box_disjoint(const PrimeSet& P, const ProductBox& a, const ProductBox& b);
bool box_intersects(const PrimeSet& P, const ProductBox& a, const ProductBox& b);

/// Image data of A^(-j) B(center, t): the mapped center, the exact per-place
/// metric radii lambda_i^(-j) * t, and the enclosing one-coordinate cylinder
/// C(A^(-j) center, lambda_A^(-j) * t, dominant place).
struct ResonantImage {
    Point center;
    std::vector<Rational> radii;
    Cylinder enclosure;
};

ResonantImage resonant_enclosure(const PrimeSet& P, const AffineMap& A, const Point& y_plus_z,
                                 long j, const Rational& t);

/// All constants the orbit-avoidance strategy needs, derived exactly from the
/// map, the target point y, the initial radius and the game parameter beta.
struct AvoidanceParams {
    Rational mu;          // beta^2 / 2
    SpectralData spectral;
    Rational a_scale;     // |numerator of linear|^(-ell); blocked targets sit on y + a*ring
    Rational delta_unif;  // smallest positive distance within the scaled ring
    Rational b;           // reach bound for the first ell inverse iterates on the unit ball
    Rational t0;          // normalised separation of the target orbit from the scaled ring
    long k0 = 0;
    Rational delta;       // blocking radius seed: mu^(k0+1) * r0
    Rational radius_cap;  // 1
    Rational beta;
    Rational r0;
    Point y;

    Rational epsilon() const { return mu * t0 / Rational(2); }
};

/// Validates 0 < beta < (1/3 at the archimedean dominant place, 1/p at a
/// p-adic one) and 0 < r0 < 1/2, then computes every constant.
AvoidanceParams avoidance_params(const PrimeSet& P, const AffineMap& A, const Point& y,
                                 const Rational& r0, const Rational& beta);

}  // namespace solenoid
