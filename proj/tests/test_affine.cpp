#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "solenoid/affine.hpp"
#include "solenoid/random.hpp"

using namespace solenoid;

namespace {

Point random_point(RandomSource& rng, const PrimeSet& P) {
    Point x;
    x.real = rng.rational(30, 12);
    for (std::size_t j = 0; j < P.prime_count(); ++j) x.padic.push_back(rng.rational(30, 12));
    return x;
}

}  // namespace

TEST_CASE("map construction and ring validation") {
    PrimeSet P({2, 3});
    CHECK_NOTHROW(make_linear(P, Rational(3, 2)));
    CHECK_NOTHROW(make_affine(P, Rational(6), diagonal(P, Rational(1, 4))));
    CHECK_THROWS_AS(make_linear(P, Rational(1, 5)), DomainError);  // 1/5 not in Z[1/2,1/3]
    CHECK_THROWS_AS(make_linear(P, Rational(0)), DomainError);
}

TEST_CASE("apply and inverse are exact mutual inverses") {
    PrimeSet P({2, 3});
    RandomSource rng(12);
    const Rational pool[] = {Rational(3, 2), Rational(6), Rational(2, 3), Rational(-5, 4),
                             Rational(9, 8)};
    for (int i = 0; i < 800; ++i) {
        AffineMap A = rng.coin()
                          ? make_linear(P, pool[rng.below(5)])
                          : make_affine(P, pool[rng.below(5)], random_point(rng, P));
        Point x = random_point(rng, P);
        CHECK(points_equal(apply(P, A, apply_inverse(P, A, x)), x));
        CHECK(points_equal(apply_inverse(P, A, apply(P, A, x)), x));
        long j = rng.range(0, 5);
        CHECK(points_equal(apply_iter(P, A, j, apply_inverse_iter(P, A, j, x)), x));
    }
    AffineMap A = make_linear(P, Rational(3, 2));
    Point one = diagonal(P, Rational(1));
    CHECK(points_equal(apply(P, A, one), diagonal(P, Rational(3, 2))));
    CHECK(points_equal(apply_inverse_iter(P, A, 2, one), diagonal(P, Rational(4, 9))));
}

TEST_CASE("spectral data: frozen examples") {
    PrimeSet P({2, 3});
    SpectralData s = spectral_data(P, make_linear(P, Rational(3, 2)), Rational(9, 200));
    CHECK(s.lambdas[0] == Rational(3, 2));
    CHECK(s.lambdas[1] == Rational(2));       // |3/2|_2
    CHECK(s.lambdas[2] == Rational(1, 3));    // |3/2|_3
    CHECK(s.lambda_A == Rational(2));
    CHECK(s.dominant_place == 1);
    CHECK(s.ell == 5);  // smallest with 2^-ell < 9/200

    SpectralData s6 = spectral_data(P, make_linear(P, Rational(6)), Rational(1, 10));
    CHECK(s6.lambdas[0] == Rational(6));
    CHECK(s6.lambdas[1] == Rational(1, 2));
    CHECK(s6.lambdas[2] == Rational(1, 3));
    CHECK(s6.lambda_A == Rational(6));
    CHECK(s6.dominant_place == 0);
    CHECK(s6.ell == 2);

    CHECK_THROWS_AS(spectral_data(P, make_linear(P, Rational(-1)), Rational(1, 10)),
                    DomainError);
    CHECK_THROWS_AS(spectral_data(P, make_linear(P, Rational(1)), Rational(1, 10)),
                    DomainError);
}

TEST_CASE("boxes: ball box, mapping, distances") {
    PrimeSet P({2, 3});
    Ball b{zero_point(P), Rational(1, 4), true};
    ProductBox box = ball_box(P, b);
    CHECK(box.radii[0] == Rational(1, 4));
    CHECK(box.radii[1] == Rational(1, 2));  // coordinate units
    CHECK(box.radii[2] == Rational(1, 3));
    CHECK_FALSE(box.real_open);

    AffineMap A = make_linear(P, Rational(3, 2));
    ProductBox fwd = map_box(P, A, 1, box);
    CHECK(fwd.radii[0] == Rational(3, 8));
    CHECK(fwd.radii[1] == Rational(1));
    CHECK(fwd.radii[2] == Rational(1, 9));
    ProductBox back = map_box(P, A, -1, fwd);
    CHECK(back.radii[0] == box.radii[0]);
    CHECK(back.radii[1] == box.radii[1]);
    CHECK(back.radii[2] == box.radii[2]);
    CHECK(points_equal(back.center, box.center));

    // box distance agrees with ball distance through the projection snap
    RandomSource rng(23);
    for (int i = 0; i < 300; ++i) {
        Ball x{random_point(rng, P), Rational(rng.range(1, 9), 8), true};
        Ball y{random_point(rng, P), Rational(rng.range(1, 9), 8), true};
        CHECK(box_distance(P, ball_box(P, x), ball_box(P, y)) == ball_distance(P, x, y));
        CHECK(box_intersects(P, ball_box(P, x), ball_box(P, y)) ==
              (ball_distance(P, x, y) == Rational(0)));
    }

    // open real side: touching intervals do not intersect
    ProductBox left = ball_box(P, Ball{zero_point(P), Rational(1, 4), true});
    ProductBox right = ball_box(P, Ball{Point{Rational(1, 2), {Rational(0), Rational(0)}},
                                        Rational(1, 4), true});
    CHECK(box_intersects(P, left, right));
    left.real_open = true;
    CHECK_FALSE(box_intersects(P, left, right));
}

TEST_CASE("resonant enclosure contains the backward image") {
    PrimeSet P({2, 3});
    AffineMap A = make_linear(P, Rational(3, 2));
    Point c = diagonal(P, Rational(1));
    Rational t(1, 100);
    for (long j : {0L, 1L, 4L}) {
        ResonantImage img = resonant_enclosure(P, A, c, j, t);
        CHECK(img.enclosure.place == 1);
        CHECK(img.enclosure.epsilon == pow_int(Rational(2), -j) * t);
        CHECK(points_equal(img.center, apply_inverse_iter(P, A, j, c)));
        // sample points of B(c, t) and push them backward
        RandomSource rng(100 + j);
        for (int i = 0; i < 200; ++i) {
            Point u = c;
            u.real = u.real + Rational(rng.range(-99, 99), 20000);
            u.padic[0] = u.padic[0] + Rational(64) * Rational(rng.range(-3, 3));
            u.padic[1] = u.padic[1] + Rational(81) * Rational(rng.range(-3, 3));
            REQUIRE(distance(P, u, c) <= t);
            CHECK(cylinder_contains_point(P, img.enclosure, apply_inverse_iter(P, A, j, u)));
        }
    }
    CHECK_THROWS_AS(resonant_enclosure(P, A, c, -1, t), DomainError);
}

TEST_CASE("avoidance parameters: the worked instance") {
    PrimeSet P({2, 3});
    AffineMap A = make_linear(P, Rational(3, 2));
    AvoidanceParams ap = avoidance_params(P, A, zero_point(P), Rational(1, 4), Rational(3, 10));
    CHECK(ap.mu == Rational(9, 200));
    CHECK(ap.spectral.lambda_A == Rational(2));
    CHECK(ap.spectral.dominant_place == 1);
    CHECK(ap.spectral.ell == 5);
    CHECK(ap.a_scale == Rational(1, 243));
    CHECK(ap.delta_unif == Rational(1));
    CHECK(ap.b == Rational(243));
    CHECK(ap.t0 == Rational(1, 729));
    CHECK(ap.epsilon() == Rational(1, 32400));
    CHECK(ap.k0 == 4);
    CHECK(ap.delta == pow_int(Rational(9, 200), 5) * Rational(1, 4));
    CHECK(ap.delta < ap.epsilon());
    CHECK(Rational(0) < ap.t0);
    CHECK(ap.t0 <= Rational(1, 3));
}

TEST_CASE("avoidance parameters: validation gates") {
    PrimeSet P({2, 3});
    AffineMap A = make_linear(P, Rational(3, 2));
    Point y = zero_point(P);
    // dominant place p = 2, so the ceiling is 1/2
    CHECK_THROWS_AS(avoidance_params(P, A, y, Rational(1, 4), Rational(1, 2)), DomainError);
    CHECK_NOTHROW(avoidance_params(P, A, y, Rational(1, 4), Rational(2, 5)));
    CHECK_THROWS_AS(avoidance_params(P, A, y, Rational(1, 4), Rational(0)), DomainError);
    CHECK_THROWS_AS(avoidance_params(P, A, y, Rational(1, 2), Rational(3, 10)), DomainError);
    CHECK_THROWS_AS(avoidance_params(P, A, y, Rational(0), Rational(3, 10)), DomainError);
    // real dominant place (map 6x): ceiling 1/3
    AffineMap A6 = make_linear(P, Rational(6));
    CHECK_THROWS_AS(avoidance_params(P, A6, y, Rational(1, 4), Rational(1, 3)), DomainError);
    CHECK_NOTHROW(avoidance_params(P, A6, y, Rational(1, 4), Rational(3, 10)));
}

TEST_CASE("avoidance parameters: nonzero target and translation") {
    PrimeSet P({2, 3});
    AffineMap A = make_affine(P, Rational(3, 2), diagonal(P, Rational(1, 2)));
    Point y = diagonal(P, Rational(1, 7));
    AvoidanceParams ap = avoidance_params(P, A, y, Rational(1, 4), Rational(3, 10));
    CHECK(ap.t0.sign() > 0);
    CHECK(ap.delta < ap.epsilon());
    CHECK(ap.delta.sign() > 0);
}
