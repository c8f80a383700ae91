#include "solenoid/affine.hpp"

#include "solenoid/errors.hpp"
#include "solenoid/lattice.hpp"

namespace solenoid {

AffineMap make_affine(const PrimeSet& P, const Rational& linear, Point translation) {
    if (linear.is_zero()) throw DomainError("affine map: linear part must be nonzero");
    if (!P.in_ring(linear))
        throw DomainError("affine map: linear part " + linear.str() + " has denominator outside the prime set");
    check_point(P, translation);
    return AffineMap{linear, std::move(translation)};
}

AffineMap make_linear(const PrimeSet& P, const Rational& linear) {
    return make_affine(P, linear, zero_point(P));
}

Point apply([[maybe_unused]] const PrimeSet& P, const AffineMap& A, const Point& x) {
    return add(scale(A.linear, x), A.translation);
}

Point apply_inverse([[maybe_unused]] const PrimeSet& P, const AffineMap& A, const Point& x) {
    return scale(A.linear.reciprocal(), sub(x, A.translation));
}

Point apply_inverse_iter(const PrimeSet& P, const AffineMap& A, long j, const Point& x) {
    if (j < 0) throw DomainError("apply_inverse_iter: j must be >= 0");
    Point y = x;
    for (long k = 0; k < j; ++k) y = apply_inverse(P, A, y);
    return y;
}

Point apply_iter(const PrimeSet& P, const AffineMap& A, long j, const Point& x) {
    Point y = x;
    if (j >= 0) {
        for (long k = 0; k < j; ++k) y = apply(P, A, y);
    } else {
        for (long k = 0; k < -j; ++k) y = apply_inverse(P, A, y);
    }
    return y;
}

std::vector<Rational> place_expansions(const PrimeSet& P, const AffineMap& A) {
    std::vector<Rational> lambdas;
    lambdas.reserve(P.places());
    lambdas.push_back(A.linear.abs());
    for (std::size_t j = 0; j < P.prime_count(); ++j)
        lambdas.push_back(padic_abs(A.linear, P.prime(j)));
    return lambdas;
}

SpectralData spectral_data(const PrimeSet& P, const AffineMap& A, const Rational& mu) {
    if (mu.sign() <= 0 || mu >= Rational(1)) throw DomainError("spectral_data: mu must lie in ]0,1[");
    SpectralData s;
    s.lambdas = place_expansions(P, A);
    if (A.linear.abs() == Rational(1)) throw DomainError("degenerate linear part");
    s.lambda_A = s.lambdas[0];
    s.dominant_place = 0;
    for (std::size_t i = 1; i < s.lambdas.size(); ++i) {
        if (s.lambdas[i] > s.lambda_A) {
            s.lambda_A = s.lambdas[i];
            s.dominant_place = i;
        }
    }
    if (s.lambda_A <= Rational(1))
        throw InvariantViolation("spectral_data: expansion factor <= 1 for non-degenerate map " + A.linear.str());
    Rational power(1);
    s.ell = 0;
    while (Rational(1) >= mu * power) {  // lambda_A^(-ell) < mu  <=>  1 < mu * lambda_A^ell
        power *= s.lambda_A;
        ++s.ell;
    }
    return s;
}

ProductBox ball_box(const PrimeSet& P, const Ball& b) {
    ProductBox box{b.center, {}, !b.closed};
    box.radii.reserve(P.places());
    for (std::size_t place = 0; place < P.places(); ++place)
        box.radii.push_back(ball_projection(P, b, place).radius);
    return box;
}

ProductBox map_box(const PrimeSet& P, const AffineMap& A, long j, const ProductBox& box) {
    check_point(P, box.center);
    if (box.radii.size() != P.places()) throw DomainError("map_box: radii count mismatch");
    std::vector<Rational> lambdas = place_expansions(P, A);
    ProductBox out{apply_iter(P, A, j, box.center), {}, box.real_open};
    out.radii.reserve(P.places());
    for (std::size_t i = 0; i < P.places(); ++i) out.radii.push_back(pow_int(lambdas[i], j) * box.radii[i]);
    return out;
}

Rational box_distance(const PrimeSet& P, const ProductBox& a, const ProductBox& b) {
    check_point(P, a.center);
    check_point(P, b.center);
    Rational d(0);
    for (std::size_t place = 0; place < P.places(); ++place) {
        Rational ca = place == 0 ? a.center.real : a.center.padic[place - 1];
        Rational cb = place == 0 ? b.center.real : b.center.padic[place - 1];
        CoordinateBall ba{ca, a.radii[place], true};
        CoordinateBall bb{cb, b.radii[place], true};
        d = max(d, coordinate_ball_distance(P, place, ba, bb));
    }
    return d;
}

bool box_disjoint(const PrimeSet& P, const ProductBox& a, const ProductBox& b) {
    Rational gap = (a.center.real - b.center.real).abs() - a.radii[0] - b.radii[0];
    if (gap.sign() > 0) return true;
    if (gap.is_zero() && (a.real_open || b.real_open)) return true;
    for (std::size_t place = 1; place < P.places(); ++place) {
        unsigned long p = P.place_prime(place);
        Rational sep = padic_abs(a.center.padic[place - 1] - b.center.padic[place - 1], p);
        if (sep > max(a.radii[place], b.radii[place])) return true;
    }
    return false;
}

bool box_intersects(const PrimeSet& P, const ProductBox& a, const ProductBox& b) {
    return !box_disjoint(P, a, b);
}

ResonantImage resonant_enclosure(const PrimeSet& P, const AffineMap& A, const Point& y_plus_z,
                                 long j, const Rational& t) {
    if (t.sign() <= 0) throw DomainError("resonant_enclosure: radius must be positive");
    if (j < 0) throw DomainError("resonant_enclosure: j must be >= 0");
    SpectralData s = spectral_data(P, A, Rational(1, 2));
    ResonantImage img;
    img.center = apply_inverse_iter(P, A, j, y_plus_z);
    img.radii.reserve(P.places());
    for (std::size_t i = 0; i < P.places(); ++i) img.radii.push_back(pow_int(s.lambdas[i], -j) * t);
    img.enclosure = make_cylinder(P, img.center, pow_int(s.lambda_A, -j) * t, s.dominant_place);
    return img;
}

AvoidanceParams avoidance_params(const PrimeSet& P, const AffineMap& A, const Point& y,
                                 const Rational& r0, const Rational& beta) {
    check_point(P, y);
    if (r0.sign() <= 0 || r0 >= Rational(1, 2))
        throw DomainError("avoidance_params: initial radius must lie in ]0, 1/2[");
    if (beta.sign() <= 0) throw DomainError("avoidance_params: beta must be positive");

    AvoidanceParams ap;
    ap.beta = beta;
    ap.r0 = r0;
    ap.y = y;
    ap.mu = beta * beta / Rational(2);
    ap.spectral = spectral_data(P, A, ap.mu);

    Rational beta_max = ap.spectral.dominant_place == 0
                            ? Rational(1, 3)
                            : Rational(1, (long)P.place_prime(ap.spectral.dominant_place));
    if (beta >= beta_max)
        throw DomainError("avoidance_params: beta must be below " + beta_max.str() +
                          " for the dominant place");

    ap.a_scale = pow_int(Rational(A.linear.num()).abs(), -ap.spectral.ell);
    ap.delta_unif = lattice_min_gap(P, ap.a_scale);

    // Reach bound: on the closed unit ball each inverse iterate scales place i
    // by lambda_i^(-j), and translations shift the image by d(A^(-j)0, 0).
    Point origin = zero_point(P);
    ap.b = Rational(0);
    for (long j = 0; j <= ap.spectral.ell; ++j) {
        Rational m(0);
        for (const Rational& lam : ap.spectral.lambdas) m = max(m, pow_int(lam, -j));
        m += distance(P, apply_inverse_iter(P, A, j, origin), origin);
        ap.b = max(ap.b, m);
    }

    // Separation of the orbit differences y - A^(-j)y from the scaled ring:
    // distance zero means the difference sits on the ring itself, where the
    // relevant positive minimum is the ring's own gap.
    Rational sep(-1);
    for (long j = 0; j <= ap.spectral.ell; ++j) {
        Point w = sub(y, apply_inverse_iter(P, A, j, y));
        Rational v = lattice_distance(P, ap.a_scale, w);
        if (v.is_zero()) v = ap.delta_unif;
        if (sep.sign() < 0 || v < sep) sep = v;
    }
    ap.t0 = sep / (Rational(3) * ap.b);
    if (ap.t0.sign() <= 0 || ap.t0 > Rational(1, 3))
        throw InvariantViolation("avoidance_params: t0 = " + ap.t0.str() + " outside ]0, 1/3]");

    ap.radius_cap = Rational(1);
    Rational bound = min(ap.epsilon() * ap.mu / r0, Rational(1) / ap.radius_cap);
    Rational power(1);
    ap.k0 = 0;
    while (power >= bound) {
        power *= ap.mu;
        ++ap.k0;
    }
    ap.delta = power * ap.mu * r0;  // mu^(k0+1) * r0
    if (ap.delta >= ap.epsilon())
        throw InvariantViolation("avoidance_params: delta " + ap.delta.str() + " not below epsilon " +
                                 ap.epsilon().str());
    return ap;
}

}  // namespace solenoid
