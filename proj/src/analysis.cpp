#include "solenoid/analysis.hpp"

#include <algorithm>
#include <utility>

#include "solenoid/errors.hpp"
#include "solenoid/random.hpp"

namespace solenoid {

std::vector<unsigned long> primes_upto(unsigned long bound) {
    std::vector<unsigned long> out;
    if (bound < 2) return out;
    std::vector<bool> composite(bound + 1, false);
    for (unsigned long n = 2; n <= bound; ++n) {
        if (composite[n]) continue;
        out.push_back(n);
        for (unsigned long m = n * n; m <= bound; m += n) composite[m] = true;
    }
    return out;
}

PrimeSet first_primes(std::size_t m) {
    std::vector<unsigned long> ps;
    unsigned long n = 2;
    while (ps.size() < m) {
        if (is_prime(n)) ps.push_back(n);
        ++n;
    }
    return PrimeSet(ps);
}

namespace {

// theta at the k-th root: sum of ln p over listed primes with p^k <= x
Decimal theta_at_root(const Rational& x, long k, const std::vector<unsigned long>& primes) {
    Decimal sum(0);
    for (unsigned long p : primes) {
        if (pow_int(Rational(p), k) <= x) sum += log(Decimal(p));
    }
    return sum;
}

std::vector<unsigned long> all_primes_for(const Rational& x) {
    Int bound = floor_int(x);
    if (bound < 2) return {};
    return primes_upto(bound.get_ui());
}

}  // namespace

Decimal chebyshev_theta(const Rational& x, const std::vector<unsigned long>& primes) {
    if (!(x > Rational(1))) throw DomainError("chebyshev_theta: x must exceed 1");
    return theta_at_root(x, 1, primes);
}

Decimal chebyshev_theta(const Rational& x, const PrimeSet& P) {
    return chebyshev_theta(x, P.list());
}

Decimal chebyshev_theta_all(const Rational& x) {
    if (!(x > Rational(1))) throw DomainError("chebyshev_theta: x must exceed 1");
    return theta_at_root(x, 1, all_primes_for(x));
}

Rational prime_floor_product(const Rational& x, const std::vector<unsigned long>& primes) {
    if (!(x > Rational(1))) throw DomainError("prime_floor_product: x must exceed 1");
    Rational prod(1);
    for (unsigned long p : primes) {
        if (!(Rational(p) < x)) continue;
        prod *= padic_floor(Rational(p) / x, p).value;
    }
    return prod;
}

Rational prime_floor_product(const Rational& x, const PrimeSet& P) {
    return prime_floor_product(x, P.list());
}

Rational prime_floor_product_all(const Rational& x) {
    if (!(x > Rational(1))) throw DomainError("prime_floor_product: x must exceed 1");
    return prime_floor_product(x, all_primes_for(x));
}

ProductBoundReport product_bound_check(const Rational& x,
                                       const std::vector<unsigned long>& primes) {
    if (!(x > Rational(2))) throw DomainError("product_bound_check: x must exceed 2");
    ProductBoundReport rep;
    rep.x = x;
    rep.product = prime_floor_product(x, primes);
    rep.theta = theta_at_root(x, 1, primes);
    rep.neg_log_product = -ln_rational(rep.product);
    rep.margin = rep.neg_log_product - rep.theta;
    rep.ell = 0;
    while (pow_int(Rational(2), rep.ell + 1) < x) ++rep.ell;
    Decimal lnx = ln_rational(x);
    Decimal sum(0);
    for (long k = 1; k <= rep.ell; ++k) sum += theta_at_root(x, k, primes);
    rep.intermediate = sum - Decimal(rep.ell) * (theta_at_root(x, rep.ell + 1, primes) + lnx);
    rep.theta_ok = rep.neg_log_product >= rep.theta;
    rep.quadratic_ok = rep.margin >= Decimal(-3) * lnx * lnx;
    rep.intermediate_ok = rep.intermediate <= rep.neg_log_product;
    rep.ok = rep.quadratic_ok && rep.intermediate_ok;
    return rep;
}

ProductBoundReport product_bound_check(const Rational& x, const PrimeSet& P) {
    return product_bound_check(x, P.list());
}

ProductBoundReport product_bound_check_all(const Rational& x) {
    if (!(x > Rational(2))) throw DomainError("product_bound_check: x must exceed 2");
    return product_bound_check(x, all_primes_for(x));
}

HaarBound haar_ball_bound(const Rational& r, const PrimeSet& P) {
    if (!(Rational(0) < r) || !(r < Rational(1)))
        throw DomainError("haar_ball_bound: radius must lie in ]0, 1[");
    HaarBound hb;
    hb.bound = Rational(2) * r * prime_floor_product(r.reciprocal(), P);
    // coordinate measures: interval length times one p-adic ball volume per
    // place; for r < 1 every p-adic factor is at most 1 already
    hb.exact = Rational(2) * r;
    for (std::size_t j = 0; j < P.prime_count(); ++j) {
        unsigned long p = P.prime(j);
        hb.exact *= min(padic_floor(Rational(p) * r, p).value, Rational(1));
    }
    return hb;
}

namespace {

// per-place coset count at shrink factor beta: largest power of p at most
// 1/beta, one factor of p fewer when beta is exactly a power of p
Rational place_coset_count(const Rational& beta, unsigned long p) {
    Rational inv = beta.reciprocal();
    PowerFloor f = padic_floor(inv, p);
    Rational n = f.value;
    if (f.value == inv) n = n / Rational(p);
    return n;
}

Rational real_center_count(const Rational& beta) {
    Rational k = (Rational(2) / beta - Rational(5, 2)) / Rational(3);
    Int c = floor_int(k) + 1;
    if (c < 0) c = 0;
    return Rational(c);
}

}  // namespace

Int packing_count_lower(const Rational& beta, const PrimeSet& P, std::size_t place) {
    if (!(Rational(0) < beta) || !(beta < Rational(1, P.largest())))
        throw DomainError("packing_count_lower: beta must lie in ]0, 1/p_max[");
    if (place >= P.places()) throw DomainError("packing_count_lower: no such place");
    Rational total = real_center_count(beta);
    if (place == 0) total = max(total - Rational(2), Rational(0));
    for (std::size_t j = 0; j < P.prime_count(); ++j) {
        Rational n = place_coset_count(beta, P.prime(j));
        if (place == j + 1) n = max(n - Rational(1), Rational(0));
        total *= n;
    }
    return floor_int(total);
}

Int packing_count_lower_min(const Rational& beta, const PrimeSet& P) {
    Int best = packing_count_lower(beta, P, 0);
    for (std::size_t i = 1; i < P.places(); ++i) {
        Int c = packing_count_lower(beta, P, i);
        if (c < best) best = c;
    }
    return best;
}

Int packing_count_bruteforce(const Rational& beta, const PrimeSet& P) {
    for (unsigned long p : P.list())
        if (p != 2 && p != 3)
            throw DomainError("packing_count_bruteforce: tractable only for primes 2 and 3");
    if (beta < Rational(1, 24))
        throw DomainError("packing_count_bruteforce: beta below the tractability floor 1/24");
    if (!(beta < Rational(1, P.largest())))
        throw DomainError("packing_count_bruteforce: beta must stay below 1/p_max");
    // distinct p-adic coset tuples never collide, so the maximum factorizes
    // into (number of tuples) x (max distinct-interval packing per tuple)
    Rational combos(1);
    for (std::size_t j = 0; j < P.prime_count(); ++j) {
        unsigned long p = P.prime(j);
        Rational parent = padic_floor(Rational(p), p).value;
        Rational child = padic_floor(Rational(p) * beta, p).value;
        combos *= parent / child;
    }
    // exact greedy scan over the candidate grid: centers at pitch beta/4,
    // pairwise gaps above 2*beta, balls inside [-1, 1]
    Rational pitch = beta / Rational(4);
    Rational lo = beta - Rational(1);
    Rational hi = Rational(1) - beta;
    Rational gap = Rational(2) * beta;
    Int count(0);
    Rational last;
    bool have = false;
    for (Rational c = lo; c <= hi; c += pitch) {
        if (!have || c - last > gap) {
            ++count;
            last = c;
            have = true;
        }
    }
    return floor_int(combos * Rational(count));
}

Decimal dimension_lower_bound(const Rational& beta, const PrimeSet& P) {
    Int count = packing_count_lower_min(beta, P);
    if (count <= 0) throw DomainError("dimension_lower_bound: packing count degenerates");
    Decimal num = log(Decimal(count.get_str()));
    Decimal den = -ln_rational(beta);
    return num / den;
}

namespace {

// the constructive family behind packing_count_lower: a real-place grid of
// pitch 3*beta*r crossed with per-place coset representatives, filtered
// against the blocked cylinder
std::vector<Ball> disjoint_family(const PrimeSet& P, const Ball& parent, const Rational& beta,
                                  const Cylinder& blocked) {
    const Rational& r = parent.radius;
    Rational child_r = beta * r;
    std::vector<Rational> reals;
    Int kr = floor_int((Rational(2) / beta - Rational(5, 2)) / Rational(3)) + 1;
    for (Int k(0); k < kr; ++k)
        reals.push_back(parent.center.real - r +
                        (Rational(3) * Rational(k) + Rational(3, 2)) * beta * r);
    std::vector<std::vector<Rational>> coords(P.prime_count());
    for (std::size_t j = 0; j < P.prime_count(); ++j) {
        unsigned long p = P.prime(j);
        long a = padic_floor(Rational(p) * r, p).exponent;
        Rational step = prime_power(p, -a);
        Int n = floor_int(place_coset_count(beta, p));
        for (Int t(0); t < n; ++t)
            coords[j].push_back(parent.center.padic[j] + Rational(t) * step);
    }
    std::vector<Ball> out;
    std::vector<std::size_t> idx(P.prime_count(), 0);
    for (const Rational& c0 : reals) {
        std::fill(idx.begin(), idx.end(), 0);
        bool done = false;
        while (!done) {
            Point c;
            c.real = c0;
            c.padic.reserve(P.prime_count());
            for (std::size_t j = 0; j < P.prime_count(); ++j) c.padic.push_back(coords[j][idx[j]]);
            Ball b{c, child_r, true};
            if (!ball_contains(P, parent, b))
                throw InvariantViolation("disjoint family: member escapes its parent");
            if (ball_cylinder_disjoint(P, b, blocked)) out.push_back(b);
            // odometer over the coset tuples
            std::size_t j = 0;
            for (; j < P.prime_count(); ++j) {
                if (++idx[j] < coords[j].size()) break;
                idx[j] = 0;
            }
            if (j == P.prime_count()) done = true;
        }
    }
    return out;
}

Cylinder replay_block(const AliceFactory& make_alice, const std::vector<const Ball*>& path) {
    std::unique_ptr<AliceStrategy> alice = make_alice();
    AliceMove am;
    for (std::size_t i = 0; i < path.size(); ++i) {
        am = alice->move(*path[i]);
        if (i + 1 < path.size()) alice->observe(*path[i + 1]);
    }
    return am.cylinder;
}

}  // namespace

CantorTree cantor_tree(const PrimeSet& P, const AliceFactory& make_alice, const Ball& initial,
                       const Rational& beta0, std::size_t depth, long branching_cap,
                       std::size_t node_budget) {
    if (!initial.closed || !(initial.radius > Rational(0)))
        throw DomainError("cantor_tree: initial ball must be closed with positive radius");
    if (branching_cap < 1) throw DomainError("cantor_tree: branching cap must be positive");
    CantorTree tree;
    tree.beta0 = beta0;
    tree.r0 = initial.radius;
    tree.depth = depth;
    Int base = packing_count_lower_min(beta0, P);
    tree.branching = branching_cap;
    if (base < branching_cap) {
        if (!base.fits_slong_p()) throw InvariantViolation("cantor_tree: count overflow");
        tree.branching = base.get_si();
    }
    if (tree.branching < 1) throw DomainError("cantor_tree: branching degenerates");
    Int total(1), layer(1);
    for (std::size_t d = 0; d < depth; ++d) {
        layer *= tree.branching;
        total += layer;
        if (total > Int(static_cast<unsigned long>(node_budget)))
            throw DomainError("cantor_tree: node budget exceeded");
    }
    TreeNode root;
    root.parent = 0;
    root.level = 0;
    root.ball = initial;
    tree.nodes.push_back(root);
    std::vector<std::size_t> frontier{0};
    for (std::size_t level = 0; level < depth; ++level) {
        std::vector<std::size_t> next;
        for (std::size_t idx : frontier) {
            std::vector<const Ball*> path;
            for (std::size_t n = idx;; n = tree.nodes[n].parent) {
                path.push_back(&tree.nodes[n].ball);
                if (n == 0) break;
            }
            std::reverse(path.begin(), path.end());
            Cylinder cyl = replay_block(make_alice, path);
            if (!legal_alice(P, tree.nodes[idx].ball, cyl, beta0).ok)
                throw InvariantViolation("cantor_tree: strategy block illegal at beta0");
            tree.nodes[idx].blocked = cyl;
            tree.nodes[idx].has_block = true;
            std::vector<Ball> family = disjoint_family(P, tree.nodes[idx].ball, beta0, cyl);
            if (family.size() < static_cast<std::size_t>(tree.branching))
                throw InvariantViolation("cantor_tree: family smaller than the uniform arity");
            for (long c = 0; c < tree.branching; ++c) {
                TreeNode child;
                child.parent = idx;
                child.level = level + 1;
                child.word = tree.nodes[idx].word;
                child.word.push_back(static_cast<int>(c));
                child.ball = family[static_cast<std::size_t>(c)];
                next.push_back(tree.nodes.size());
                tree.nodes.push_back(std::move(child));
            }
        }
        frontier = std::move(next);
    }
    tree.leaves = frontier;
    return tree;
}

TreeAuditReport audit_cantor_tree(const PrimeSet& P, const CantorTree& tree,
                                  std::size_t cross_samples, std::uint64_t seed) {
    TreeAuditReport rep;
    const std::size_t n = tree.nodes.size();
    std::vector<std::vector<std::size_t>> children(n);
    for (std::size_t i = 1; i < n; ++i) children[tree.nodes[i].parent].push_back(i);

    rep.uniform_arity = true;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t want =
            tree.nodes[i].has_block ? static_cast<std::size_t>(tree.branching) : 0;
        if (children[i].size() != want) rep.uniform_arity = false;
    }

    rep.siblings_disjoint = true;
    rep.separation_ok = true;
    auto separation_threshold = [&tree](std::size_t differ_at) {
        return pow_int(tree.beta0, static_cast<long>(differ_at) + 1) * tree.r0;
    };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t a = 0; a < children[i].size(); ++a) {
            for (std::size_t b = a + 1; b < children[i].size(); ++b) {
                ++rep.sibling_pairs;
                Rational d = ball_distance(P, tree.nodes[children[i][a]].ball,
                                           tree.nodes[children[i][b]].ball);
                if (!(d > Rational(0))) rep.siblings_disjoint = false;
                if (d < separation_threshold(tree.nodes[i].level)) rep.separation_ok = false;
            }
        }
    }
    // sampled cross-branch pairs at arbitrary levels
    RandomSource rng(seed);
    for (std::size_t s = 0; s < cross_samples && n > 1; ++s) {
        std::size_t a = static_cast<std::size_t>(rng.below(n));
        std::size_t b = static_cast<std::size_t>(rng.below(n));
        if (a == b) continue;
        const std::vector<int>& wa = tree.nodes[a].word;
        const std::vector<int>& wb = tree.nodes[b].word;
        std::size_t k = 0;
        while (k < wa.size() && k < wb.size() && wa[k] == wb[k]) ++k;
        if (k == wa.size() || k == wb.size()) continue;  // one path extends the other
        ++rep.sampled_pairs;
        Rational d = ball_distance(P, tree.nodes[a].ball, tree.nodes[b].ball);
        if (d < separation_threshold(k)) rep.separation_ok = false;
    }

    rep.address_injective = true;
    std::vector<Rational> addresses;
    for (std::size_t leaf : tree.leaves) {
        Rational v(0);
        const std::vector<int>& w = tree.nodes[leaf].word;
        for (std::size_t i = 0; i < w.size(); ++i)
            v += Rational(w[i]) * pow_int(Rational(tree.branching), -(static_cast<long>(i) + 1));
        addresses.push_back(v);
    }
    std::sort(addresses.begin(), addresses.end());
    for (std::size_t i = 1; i < addresses.size(); ++i)
        if (addresses[i - 1] == addresses[i]) rep.address_injective = false;

    // mass distribution: mu(node) = arity^-level against diam^s
    rep.s = Decimal("0.9") * dimension_lower_bound(tree.beta0, P);
    std::vector<Decimal> level_ratio(tree.depth + 1);
    for (std::size_t L = 0; L <= tree.depth; ++L) {
        Decimal mass = to_decimal(pow_int(Rational(tree.branching), -static_cast<long>(L)));
        Decimal diam =
            to_decimal(Rational(2) * pow_int(tree.beta0, static_cast<long>(L)) * tree.r0);
        level_ratio[L] = mass / pow(diam, rep.s);
        if (L == 0 || level_ratio[L] > rep.c2) rep.c2 = level_ratio[L];
    }
    rep.mass_ok = true;
    for (const TreeNode& node : tree.nodes)
        if (level_ratio[node.level] > rep.c2) rep.mass_ok = false;

    rep.ok = rep.uniform_arity && rep.siblings_disjoint && rep.separation_ok &&
             rep.address_injective && rep.mass_ok;
    return rep;
}

}  // namespace solenoid
