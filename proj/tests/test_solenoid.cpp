#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "solenoid/random.hpp"
#include "solenoid/space.hpp"

using namespace solenoid;

namespace {

Point pt(const Rational& r, const Rational& a, const Rational& b) {
    return Point{r, {a, b}};
}

Point random_point(RandomSource& rng, const PrimeSet& P) {
    Point x;
    x.real = rng.rational(40, 12);
    for (std::size_t j = 0; j < P.prime_count(); ++j) x.padic.push_back(rng.rational(40, 12));
    return x;
}

}  // namespace

TEST_CASE("prime set validation") {
    PrimeSet P({2, 3});
    CHECK(P.places() == 3);
    CHECK(P.prime(0) == 2);
    CHECK(P.place_prime(1) == 2);
    CHECK(P.place_prime(2) == 3);
    CHECK(P.largest() == 3);
    CHECK_THROWS_AS(PrimeSet({}), DomainError);
    CHECK_THROWS_AS(PrimeSet({4}), DomainError);
    CHECK_THROWS_AS(PrimeSet({3, 2}), DomainError);
    CHECK_THROWS_AS(PrimeSet({2, 2}), DomainError);
    CHECK(P.in_ring(Rational(5, 12)));
    CHECK(P.in_ring(Rational(7)));
    CHECK_FALSE(P.in_ring(Rational(1, 5)));
}

TEST_CASE("distance: frozen example and places") {
    PrimeSet P({2, 3});
    // real gap 1/4; |3/4|_2 = 4 weighted by 1/2; |1/6|_3 = 3 weighted by 1/3
    CHECK(distance(P, pt(0, 0, 0), pt(Rational(1, 4), Rational(3, 4), Rational(1, 6))) ==
          Rational(2));
    CHECK(distance(P, pt(0, 0, 0), pt(0, Rational(2), 0)) == Rational(1, 4));
    CHECK(distance(P, pt(0, 0, 0), pt(0, 0, Rational(2))) == Rational(1, 3));
    CHECK(distance(P, diagonal(P, Rational(1)), diagonal(P, Rational(1))) == Rational(0));
}

TEST_CASE("metric axioms, sampled") {
    PrimeSet P({2, 3});
    RandomSource rng(9);
    for (int i = 0; i < 400; ++i) {
        Point x = random_point(rng, P);
        Point y = random_point(rng, P);
        Point z = random_point(rng, P);
        CHECK(distance(P, x, y) == distance(P, y, x));
        CHECK(distance(P, x, z) <= distance(P, x, y) + distance(P, y, z));
        CHECK((distance(P, x, y) == Rational(0)) == points_equal(x, y));
    }
}

TEST_CASE("point helpers") {
    PrimeSet P({2, 3});
    Point a = pt(1, Rational(1, 2), 3);
    Point b = pt(2, Rational(1, 2), -1);
    CHECK(points_equal(add(a, b), pt(3, 1, 2)));
    CHECK(points_equal(sub(a, b), pt(-1, 0, 4)));
    CHECK(points_equal(scale(Rational(2), a), pt(2, 1, 6)));
    CHECK_THROWS_AS(check_point(P, Point{Rational(0), {Rational(0)}}), DomainError);
    CHECK(point_str(pt(Rational(1, 2), 0, Rational(-3))) == "(1/2; 0,-3)");
}

TEST_CASE("ball projections snap to the power grid") {
    PrimeSet P({2, 3});
    Ball b{zero_point(P), Rational(1, 4), true};
    CoordinateBall real = ball_projection(P, b, 0);
    CHECK(real.radius == Rational(1, 4));
    CHECK(real.closed);
    // closed coordinate radius = largest power of p at most p * r
    CHECK(ball_projection(P, b, 1).radius == Rational(1, 2));
    CHECK(ball_projection(P, b, 2).radius == Rational(1, 3));
    Ball open_b{zero_point(P), Rational(1, 4), false};
    // open metric balls collapse to the adjacent strictly-smaller power
    CHECK(ball_projection(P, open_b, 1).radius == Rational(1, 4));
    CHECK(ball_projection(P, open_b, 2).radius == Rational(1, 3));
    CHECK(ball_projection(P, open_b, 0).closed == false);
}

TEST_CASE("cylinder normalization: frozen values") {
    PrimeSet P({2, 3});
    // place 0 keeps epsilon
    CHECK(cylinder_normalize(P, Rational(1, 7), 0) == Rational(1, 7));
    // place 1 (p=2): largest power of 2 strictly below 2*eps, divided by 2
    CHECK(cylinder_normalize(P, Rational(1, 32), 1) == Rational(1, 64));
    CHECK(cylinder_normalize(P, Rational(1, 16), 1) == Rational(1, 32));
    CHECK(cylinder_normalize(P, Rational(3, 16), 1) == Rational(1, 8));
    // place 2 (p=3)
    CHECK(cylinder_normalize(P, Rational(1, 9), 2) == Rational(1, 27));
    CHECK(cylinder_normalize(P, Rational(2, 9), 2) == Rational(1, 9));
    Cylinder c = make_cylinder(P, zero_point(P), Rational(1, 16), 1);
    CHECK(c.normalized_radius == Rational(1, 32));
    CHECK_THROWS_AS(make_cylinder(P, zero_point(P), Rational(1, 16), 3), DomainError);
    CHECK_THROWS_AS(make_cylinder(P, zero_point(P), Rational(0), 1), DomainError);
}

TEST_CASE("cylinder membership is the normalized coordinate ball") {
    PrimeSet P({2, 3});
    Cylinder c = make_cylinder(P, zero_point(P), Rational(1, 16), 1);
    // projection radius = p * normalized = 1/16
    CHECK(cylinder_projection(P, c).radius == Rational(1, 16));
    CHECK(cylinder_contains_point(P, c, pt(5, Rational(16), -7)));   // |16|_2 = 1/16
    CHECK(cylinder_contains_point(P, c, pt(0, Rational(48), 0)));    // |48|_2 = 1/16
    CHECK_FALSE(cylinder_contains_point(P, c, pt(0, Rational(8), 0)));  // |8|_2 = 1/8
    Cylinder real_c = make_cylinder(P, zero_point(P), Rational(1, 4), 0);
    CHECK(cylinder_contains_point(P, real_c, pt(Rational(1, 5), 99, 99)));
    CHECK_FALSE(cylinder_contains_point(P, real_c, pt(Rational(1, 4), 0, 0)));  // open edge
    // sampled: membership matches the projection test coordinatewise
    RandomSource rng(17);
    for (int i = 0; i < 500; ++i) {
        Point w = random_point(rng, P);
        bool in = cylinder_contains_point(P, c, w);
        bool coord = padic_abs(w.padic[0], 2) <= Rational(1, 16);
        CHECK(in == coord);
    }
}

TEST_CASE("ball membership and containment") {
    PrimeSet P({2, 3});
    Ball b{zero_point(P), Rational(1, 4), true};
    CHECK(ball_contains_point(P, b, pt(Rational(1, 4), 0, 0)));
    CHECK_FALSE(ball_contains_point(P, Ball{zero_point(P), Rational(1, 4), false},
                                    pt(Rational(1, 4), 0, 0)));
    CHECK(ball_contains_point(P, b, pt(0, Rational(2), 0)));  // weighted |2|_2 = 1/4
    CHECK_FALSE(ball_contains_point(P, b, pt(0, 0, Rational(2))));  // weighted |2|_3 = 1/3
    CHECK(ball_contains(P, b, Ball{pt(0, Rational(2), 0), Rational(3, 40), true}));
    CHECK(ball_contains(P, b, b));
    CHECK_FALSE(ball_contains(P, b, Ball{zero_point(P), Rational(1, 3), true}));
    CHECK_FALSE(ball_contains(P, b, Ball{pt(Rational(1, 4), 0, 0), Rational(1, 50), true}));
}

TEST_CASE("ball and cylinder set distances") {
    PrimeSet P({2, 3});
    Ball b{zero_point(P), Rational(1, 8), true};
    Ball far_b{pt(Rational(1), 0, 0), Rational(1, 8), true};
    CHECK(ball_distance(P, b, far_b) == Rational(3, 4));
    CHECK(ball_distance(P, b, b) == Rational(0));
    Cylinder c = make_cylinder(P, zero_point(P), Rational(1, 16), 1);
    CHECK_FALSE(ball_cylinder_disjoint(P, b, c));  // center is inside both
    // frozen escape data: offset 2 at the p=2 coordinate clears the block
    Ball esc{pt(0, Rational(2), 0), Rational(3, 40), true};
    CHECK(ball_cylinder_disjoint(P, esc, c));
    Cylinder real_c = make_cylinder(P, pt(Rational(1, 2), 0, 0), Rational(1, 4), 0);
    // open cylinder (1/4, 3/4) vs closed ball reaching 1/4: touching is disjoint
    CHECK(ball_cylinder_disjoint(P, Ball{zero_point(P), Rational(1, 4), true}, real_c));
    CHECK_FALSE(ball_cylinder_disjoint(P, Ball{zero_point(P), Rational(3, 10), true}, real_c));
}

TEST_CASE("coordinate ball distance cases") {
    PrimeSet P({2, 3});
    CoordinateBall a{Rational(0), Rational(1, 4), true};
    CoordinateBall b{Rational(1), Rational(1, 4), true};
    CHECK(coordinate_ball_distance(P, 0, a, b) == Rational(1, 2));
    // p-adic: distance between cosets 0 mod 1/4-ball and 1 mod ... |1|_2 = 1
    CoordinateBall pa{Rational(0), Rational(1, 4), true};
    CoordinateBall pb{Rational(1), Rational(1, 4), true};
    // weighted by 1/p at place 1
    CHECK(coordinate_ball_distance(P, 1, pa, pb) == Rational(1, 2));
    CoordinateBall pc{Rational(4), Rational(1, 4), true};
    CHECK(coordinate_ball_distance(P, 1, pa, pc) == Rational(0));  // |4|_2 = 1/4 inside
}
