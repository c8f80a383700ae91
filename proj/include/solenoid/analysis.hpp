#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "solenoid/decimal.hpp"
#include "solenoid/game.hpp"

namespace solenoid {

/// Primes up to and including the bound, ascending.
std::vector<unsigned long> primes_upto(unsigned long bound);

/// The first m primes as a prime set.
PrimeSet first_primes(std::size_t m);

/// Sum of ln p over the listed primes with p <= x, at 50 digits.
Decimal chebyshev_theta(const Rational& x, const std::vector<unsigned long>& primes);
Decimal chebyshev_theta(const Rational& x, const PrimeSet& P);
/// Same over all primes <= x.
Decimal chebyshev_theta_all(const Rational& x);

/// Exact product of (largest power of p at most p/x) over listed primes
/// p < x; factors for p >= x equal 1 and are skipped.
Rational prime_floor_product(const Rational& x, const std::vector<unsigned long>& primes);
Rational prime_floor_product(const Rational& x, const PrimeSet& P);
Rational prime_floor_product_all(const Rational& x);

/// Certifies -ln(product) against the theta sum: the quadratic lower bound
/// -ln(product) - theta >= -3 (ln x)^2 and the telescoping intermediate
/// bound sum_{k<=ell} theta(x^(1/k)) - ell (theta(x^(1/(ell+1))) + ln x)
/// <= -ln(product), where 2^ell < x <= 2^(ell+1).
struct ProductBoundReport {
    Rational x;
    Rational product;         // exact
    Decimal theta;
    Decimal neg_log_product;
    Decimal margin;           // neg_log_product - theta
    Decimal intermediate;
    long ell = 0;
    bool theta_ok = false;        // neg_log_product >= theta
    bool quadratic_ok = false;    // margin >= -3 (ln x)^2
    bool intermediate_ok = false; // intermediate <= neg_log_product
    bool ok = false;              // quadratic_ok && intermediate_ok
};

ProductBoundReport product_bound_check(const Rational& x, const std::vector<unsigned long>& primes);
ProductBoundReport product_bound_check(const Rational& x, const PrimeSet& P);
ProductBoundReport product_bound_check_all(const Rational& x);

/// Measure bound 2r * prime_floor_product(1/r) for a radius-r ball, plus the
/// exact product-ball measure (coordinate measures capped at the full group).
struct HaarBound {
    Rational bound;
    Rational exact;
};

HaarBound haar_ball_bound(const Rational& r, const PrimeSet& P);

/// Constructive count of pairwise disjoint radius-(beta r) sub-balls of a
/// radius-r ball that avoid one legally-blocked cylinder constraining the
/// given place.  The real place packs centers 3*beta*r apart (losing at most
/// 2 to the blocked interval); a p-adic place contributes the largest power
/// of p at most 1/beta cosets, one factor of p fewer when beta is itself a
/// power of p, and one coset fewer when the block constrains that place.
Int packing_count_lower(const Rational& beta, const PrimeSet& P, std::size_t place);

/// Worst case over the blocked place: valid whichever place the block hits.
Int packing_count_lower_min(const Rational& beta, const PrimeSet& P);

/// Independent exact oracle on tiny instances (P within {2,3}, beta >= 1/24):
/// maximum packing over the candidate grid, decomposed as (number of p-adic
/// coset tuples) x (exact greedy interval packing on a beta/4-pitch grid).
/// No blocked cylinder, so it upper-bounds every packing_count_lower value.
Int packing_count_bruteforce(const Rational& beta, const PrimeSet& P);

/// ln(packing_count_lower_min) / |ln beta| at 50 digits.
Decimal dimension_lower_bound(const Rational& beta, const PrimeSet& P);

/// Cantor scheme extracted from a blocking strategy: every node carries a
/// ball, children are the constructive disjoint family avoiding the
/// strategy's block at that node, trimmed to a uniform arity.
struct TreeNode {
    std::size_t parent = 0;  // root points to itself
    std::size_t level = 0;
    std::vector<int> word;   // child indices along the path; empty at root
    Ball ball;
    Cylinder blocked;        // the strategy's block at this node
    bool has_block = false;  // leaves are not expanded
};

struct CantorTree {
    Rational beta0;
    Rational r0;
    long branching = 0;
    std::size_t depth = 0;
    std::vector<TreeNode> nodes;  // breadth-first, root at index 0
    std::vector<std::size_t> leaves;
};

using AliceFactory = std::function<std::unique_ptr<AliceStrategy>()>;

/// Expands the scheme breadth-first to the given depth.  The strategy is
/// re-created and replayed along each path (strategies are stateful), so the
/// factory must be deterministic.  Arity is min(packing_count_lower_min,
/// branching_cap); fewer admissible children than that is a contract
/// violation since the constructive count is a guarantee.
CantorTree cantor_tree(const PrimeSet& P, const AliceFactory& make_alice, const Ball& initial,
                       const Rational& beta0, std::size_t depth, long branching_cap = 16,
                       std::size_t node_budget = 100000);

/// Tree-wide audits: uniform arity, exhaustive sibling disjointness, the
/// level-separation lower bound beta0^(k+1) * r0 for words first differing
/// at level k (exhaustive on siblings, sampled across branches), injectivity
/// of the arity-adic address map on leaves, and the mass-distribution bound
/// mu(node) <= c2 * diam(node)^s with s = 0.9 * dimension_lower_bound.
struct TreeAuditReport {
    bool uniform_arity = false;
    bool siblings_disjoint = false;
    bool separation_ok = false;
    bool address_injective = false;
    bool mass_ok = false;
    Decimal s;
    Decimal c2;
    std::size_t sibling_pairs = 0;
    std::size_t sampled_pairs = 0;
    bool ok = false;
};

TreeAuditReport audit_cantor_tree(const PrimeSet& P, const CantorTree& tree,
                                  std::size_t cross_samples = 2000, std::uint64_t seed = 1);

}  // namespace solenoid
