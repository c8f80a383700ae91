#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "solenoid/analysis.hpp"
#include "solenoid/random.hpp"
#include "solenoid/strategies.hpp"

using namespace solenoid;

namespace {

// the product admits a second reading: one reciprocal factor for every
// prime power below the threshold
Rational double_product_oracle(const Rational& x, const std::vector<unsigned long>& primes) {
    Rational prod(1);
    for (unsigned long p : primes) {
        Rational pw(p);
        while (pw < x) {
            prod = prod / Rational(p);
            pw = pw * Rational(p);
        }
    }
    return prod;
}

} // namespace

TEST_CASE("prime lists") {
    std::vector<unsigned long> want = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
    CHECK(primes_upto(30) == want);
    CHECK(primes_upto(29) == want);
    CHECK(primes_upto(1) == std::vector<unsigned long>{});
    PrimeSet P4 = first_primes(4);
    REQUIRE(P4.prime_count() == 4);
    CHECK(P4.prime(3) == 7);
}

TEST_CASE("floor products match the double-product reading") {
    CHECK(prime_floor_product_all(Rational(4)) == Rational(1, 6));
    CHECK(prime_floor_product_all(Rational(10)) == Rational(1, 2520));
    std::vector<Rational> xs = {Rational(3, 2), Rational(2),  Rational(4),
                                Rational(10),   Rational(100), Rational(157, 3),
                                Rational(1000)};
    auto primes = primes_upto(1100); // superset: factors for p >= x vanish
    for (const Rational& x : xs)
        CHECK(prime_floor_product_all(x) == double_product_oracle(x, primes));
    // factors for p >= x are skipped, so a short list changes nothing
    CHECK(prime_floor_product(Rational(4), PrimeSet({2, 3})) ==
          prime_floor_product_all(Rational(4)));
    // single-prime degenerate family
    CHECK(prime_floor_product(Rational(10), PrimeSet({2})) == Rational(1, 8));
}

TEST_CASE("product bound certificates") {
    for (long x : {10L, 100L, 1000L, 10000L}) {
        ProductBoundReport rep = product_bound_check_all(Rational(x));
        CHECK(rep.theta_ok);
        CHECK(rep.quadratic_ok);
        CHECK(rep.intermediate_ok);
        CHECK(rep.ok);
        CHECK(rep.margin >= 0);
    }
    ProductBoundReport ten = product_bound_check_all(Rational(10));
    CHECK(ten.product == Rational(1, 2520));
    CHECK(abs(ten.neg_log_product - Decimal("7.83201418050547")) <
          Decimal("1e-9"));
    CHECK(abs(ten.theta - Decimal("5.34710753071747")) < Decimal("1e-9"));
    // the certificate survives restriction to a single prime
    CHECK(product_bound_check(Rational(10), PrimeSet({2})).theta_ok);
}

TEST_CASE("exponential smallness of the floor product") {
    for (long x : {10L, 100L, 1000L}) {
        ProductBoundReport rep = product_bound_check_all(Rational(x));
        CHECK(rep.neg_log_product >= Decimal(x) / 2); // P(x) <= e^{-x/2}
    }
}

TEST_CASE("measure bound on product balls") {
    PrimeSet P({2, 3});
    HaarBound hb = haar_ball_bound(Rational(1, 12), P);
    CHECK(hb.bound == Rational(1, 432));
    CHECK(hb.exact == Rational(1, 432));
    CHECK(haar_ball_bound(Rational(1, 4), P).bound == Rational(1, 12));

    // the per-place floors are exactly the coordinate ball measures
    RandomSource rng(77);
    Rational prev_bound(0);
    for (int i = 0; i < 1000; ++i) {
        Rational r(1 + static_cast<long>(rng.below(997)), 1000);
        HaarBound h = haar_ball_bound(r, P);
        CHECK(h.exact <= h.bound);
        CHECK(h.exact == h.bound);
    }
    // monotone in the radius
    for (Rational r(1, 100); r < Rational(1, 2); r += Rational(1, 100)) {
        Rational b = haar_ball_bound(r, P).bound;
        CHECK(b >= prev_bound);
        prev_bound = b;
    }
    CHECK_THROWS_AS(haar_ball_bound(Rational(1), P), DomainError);
}

TEST_CASE("constructive packing counts") {
    PrimeSet P23({2, 3});
    CHECK(packing_count_lower(Rational(1, 12), P23, 0) == Int(432));
    CHECK(packing_count_lower(Rational(1, 12), P23, 1) == Int(504));
    CHECK(packing_count_lower(Rational(1, 12), P23, 2) == Int(512));
    CHECK(packing_count_lower_min(Rational(1, 12), P23) == Int(432));
    CHECK(packing_count_lower_min(Rational(1, 24), P23) == Int(2016));
    CHECK(packing_count_lower_min(Rational(1, 48), P23) == Int(25920));

    // an exact reciprocal power of p loses one factor of p at that place
    PrimeSet P2({2});
    CHECK(packing_count_lower(Rational(1, 8), P2, 0) == Int(12));
    CHECK(packing_count_lower(Rational(1, 8), P2, 1) == Int(15));
    CHECK(packing_count_lower_min(Rational(1, 8), P2) == Int(12));

    CHECK_THROWS_AS(packing_count_lower(Rational(1, 2), P23, 0), DomainError);
    CHECK_THROWS_AS(packing_count_lower(Rational(1, 12), P23, 3), DomainError);
}

TEST_CASE("exhaustive packing oracle dominates the constructive count") {
    PrimeSet P23({2, 3});
    CHECK(packing_count_bruteforce(Rational(1, 6), P23) == Int(360));
    CHECK(packing_count_bruteforce(Rational(1, 4), PrimeSet({2})) == Int(12));

    std::vector<PrimeSet> sets = {PrimeSet({2}), PrimeSet({3}), PrimeSet({2, 3})};
    std::vector<Rational> betas = {Rational(1, 6),  Rational(1, 8),
                                   Rational(1, 12), Rational(1, 16),
                                   Rational(1, 24)};
    for (const PrimeSet& P : sets)
        for (const Rational& beta : betas) {
            if (!(beta < Rational(1, P.largest()))) continue;
            CHECK(packing_count_bruteforce(beta, P) >=
                  packing_count_lower_min(beta, P));
        }
    CHECK_THROWS_AS(packing_count_bruteforce(Rational(1, 100), P23), DomainError);
    CHECK_THROWS_AS(packing_count_bruteforce(Rational(1, 6), PrimeSet({2, 5})),
                    DomainError);
}

TEST_CASE("dimension lower bounds") {
    PrimeSet P23({2, 3});
    Decimal d12 = dimension_lower_bound(Rational(1, 12), P23);
    Decimal d24 = dimension_lower_bound(Rational(1, 24), P23);
    Decimal d48 = dimension_lower_bound(Rational(1, 48), P23);
    CHECK(abs(d12 - Decimal("2.4421")) < Decimal("0.0001"));
    CHECK(abs(d24 - Decimal("2.3942")) < Decimal("0.0001"));
    CHECK(abs(d48 - Decimal("2.6252")) < Decimal("0.0001"));
    CHECK(d48 > Decimal("2.5"));
    CHECK(d48 > d12);
    // halving beta never costs more than 0.2 of the bound
    CHECK(d24 >= d12 - Decimal("0.2"));
    CHECK(d48 >= d24 - Decimal("0.2"));
    CHECK(d48 < Decimal(3)); // strictly below the place count

    CHECK_THROWS_AS(dimension_lower_bound(Rational(1, 4), PrimeSet({2})),
                    DomainError);
}

TEST_CASE("truncation growth at fixed beta") {
    Rational beta(1, 210);
    Decimal prev(0);
    for (std::size_t m = 1; m <= 6; ++m) {
        Decimal d = dimension_lower_bound(beta, first_primes(m));
        CHECK(d > prev);
        prev = d;
    }
    CHECK(prev > Decimal("4")); // six places already beat the {2,3} ceiling
}

TEST_CASE("tree of disjoint sub-balls realizes the counting bound") {
    PrimeSet P({2, 3});
    AffineMap A = make_affine(P, Rational(3, 2), zero_point(P));
    Rational beta0(1, 12);
    AliceFactory factory = [&]() {
        return avoidance_alice(P, A, {zero_point(P)}, beta0);
    };
    Ball initial{zero_point(P), Rational(1, 4), true};
    CantorTree tree = cantor_tree(P, factory, initial, beta0, 2, 8);
    CHECK(tree.branching == 8);
    REQUIRE(tree.nodes.size() == 73);
    REQUIRE(tree.leaves.size() == 64);
    CHECK(tree.nodes[0].level == 0);
    for (std::size_t li : tree.leaves) {
        CHECK(tree.nodes[li].level == 2);
        CHECK(tree.nodes[li].ball.radius == beta0 * beta0 * Rational(1, 4));
    }

    TreeAuditReport audit = audit_cantor_tree(P, tree, 500, 3);
    CHECK(audit.uniform_arity);
    CHECK(audit.siblings_disjoint);
    CHECK(audit.separation_ok);
    CHECK(audit.address_injective);
    CHECK(audit.mass_ok);
    CHECK(audit.ok);
    CHECK(audit.sibling_pairs > 0);

    // a node budget too small for the requested depth is refused
    CHECK_THROWS_AS(cantor_tree(P, factory, initial, beta0, 3, 8, 100),
                    DomainError);
}
