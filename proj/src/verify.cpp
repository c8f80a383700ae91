#include "solenoid/verify.hpp"

#include <sstream>

#include "solenoid/affine.hpp"
#include "solenoid/analysis.hpp"
#include "solenoid/errors.hpp"
#include "solenoid/game.hpp"
#include "solenoid/lattice.hpp"
#include "solenoid/random.hpp"
#include "solenoid/serialize.hpp"
#include "solenoid/strategies.hpp"

namespace solenoid {

namespace {

Point random_point(RandomSource& rng, const PrimeSet& P, long max_num, long den) {
    Point x;
    x.real = rng.rational(max_num, den);
    for (std::size_t j = 0; j < P.prime_count(); ++j) x.padic.push_back(rng.rational(max_num, den));
    return x;
}

Rational random_positive(RandomSource& rng, long max_num, long max_den) {
    return Rational(rng.range(1, max_num), rng.range(1, max_den));
}

PropertyResult metric_axioms(std::uint64_t seed) {
    PropertyResult r{"metric-axioms", true, 0, ""};
    RandomSource rng(seed);
    PrimeSet P({2, 3});
    for (int i = 0; i < 1000; ++i) {
        ++r.cases;
        Point x = random_point(rng, P, 30, 12);
        Point y = random_point(rng, P, 30, 12);
        Point z = random_point(rng, P, 30, 12);
        Rational dxy = distance(P, x, y);
        if (dxy < Rational(0)) r.ok = false;
        if ((dxy == Rational(0)) != points_equal(x, y)) r.ok = false;
        if (dxy != distance(P, y, x)) r.ok = false;
        if (distance(P, x, z) > dxy + distance(P, y, z)) r.ok = false;
        if (!r.ok) {
            r.detail = "metric axiom failed at case " + std::to_string(i);
            break;
        }
    }
    return r;
}

PropertyResult floor_identities(std::uint64_t seed) {
    PropertyResult r{"floor-identities", true, 0, ""};
    RandomSource rng(seed);
    const unsigned long ps[] = {2, 3, 5, 7};
    for (int i = 0; i < 1000; ++i) {
        ++r.cases;
        unsigned long p = ps[rng.below(4)];
        Rational x = random_positive(rng, 400, 400);
        Rational y = random_positive(rng, 400, 400);
        long m = rng.range(-5, 5);
        PowerFloor fx = padic_floor(x, p);
        if (padic_floor(prime_power(p, m) * x, p).value != prime_power(p, m) * fx.value)
            r.ok = false;
        if (!(fx.value <= x) || !(x < Rational(p) * fx.value)) r.ok = false;
        PowerFloor sx = padic_floor_strict(x, p);
        if (!(sx.value < x) || !(x <= Rational(p) * sx.value)) r.ok = false;
        if (padic_floor(x * y, p).value < fx.value * padic_floor(y, p).value) r.ok = false;
        if (!r.ok) {
            r.detail = "floor identity failed at case " + std::to_string(i) + " (x=" + x.str() +
                       ", p=" + std::to_string(p) + ")";
            break;
        }
    }
    return r;
}

PropertyResult contraction_bound(std::uint64_t seed) {
    PropertyResult r{"contraction-bound", true, 0, ""};
    RandomSource rng(seed);
    PrimeSet P({2, 3});
    const Rational pool[] = {Rational(3, 2), Rational(6), Rational(2, 3), Rational(9, 2),
                             Rational(-3, 2)};
    for (int i = 0; i < 1000; ++i) {
        ++r.cases;
        AffineMap A = rng.coin()
                          ? make_linear(P, pool[rng.below(5)])
                          : make_affine(P, pool[rng.below(5)], diagonal(P, rng.rational(3, 6)));
        SpectralData s = spectral_data(P, A, Rational(1, 2));
        Point u = random_point(rng, P, 20, 12);
        Point v = random_point(rng, P, 20, 12);
        long j = rng.range(0, 6);
        Rational lhs = distance(P, apply_inverse_iter(P, A, j, u), apply_inverse_iter(P, A, j, v));
        Rational rhs = pow_int(s.lambda_A, -j) * distance(P, u, v);
        if (lhs < rhs) {
            r.ok = false;
            r.detail = "backward iterate contracted below the spectral floor at case " +
                       std::to_string(i);
            break;
        }
    }
    return r;
}

PropertyResult escape_legality(std::uint64_t seed) {
    PropertyResult r{"escape-legality", true, 0, ""};
    RandomSource rng(seed);
    PrimeSet P({2, 3});
    const Rational fractions[] = {Rational(1, 2), Rational(2, 3), Rational(9, 10)};
    const Rational eps_scale[] = {Rational(1, 3), Rational(1, 2), Rational(1)};
    for (int i = 0; i < 1200; ++i) {
        ++r.cases;
        Ball prev{random_point(rng, P, 30, 12), Rational(rng.range(1, 99), rng.range(200, 500)),
                  true};
        std::size_t place = static_cast<std::size_t>(rng.below(3));
        Rational beta = place_beta_ceiling(P, place) * fractions[rng.below(3)];
        Point anchor = prev.center;
        if (rng.coin()) {
            anchor.real = anchor.real + rng.rational(8, 5) * prev.radius;
            if (rng.coin() && place > 0)
                anchor.padic[place - 1] =
                    anchor.padic[place - 1] + rng.rational(6, 9) * prev.radius;
        }
        Cylinder c = make_cylinder(P, anchor, eps_scale[rng.below(3)] * beta * prev.radius, place);
        if (!legal_alice(P, prev, c, beta).ok) {
            r.ok = false;
            r.detail = "constructed block unexpectedly illegal at case " + std::to_string(i);
            break;
        }
        Ball e = escape_ball(P, prev, c, beta);
        if (e.radius != beta * prev.radius || !legal_bob(P, prev, c, e, beta).ok) {
            r.ok = false;
            r.detail = "escape ball illegal at case " + std::to_string(i);
            break;
        }
    }
    return r;
}

PropertyResult resonant_uniqueness(std::uint64_t seed) {
    PropertyResult r{"resonant-uniqueness", true, 0, ""};
    RandomSource rng(seed);
    PrimeSet P({2, 3});
    const Rational pool[] = {Rational(3, 2), Rational(6), Rational(2, 3), Rational(5, 2)};
    Rational beta(3, 10);
    Rational r0(1, 4);
    int cases = 0;
    while (cases < 1000) {
        AffineMap A = make_linear(P, pool[rng.below(4)]);
        Point y = rng.coin() ? diagonal(P, rng.rational(3, 6)) : random_point(rng, P, 3, 6);
        AvoidanceParams params = avoidance_params(P, A, y, r0, beta);
        for (int b = 0; b < 5 && cases < 1000; ++b) {
            ++cases;
            ++r.cases;
            long k = params.k0 - 1 + rng.range(0, 4);
            if (k < 0) k = 0;
            Rational radius = pow_int(params.mu, k) * r0 * Rational(rng.range(4, 10), 10);
            Point center = add(y, random_point(rng, P, 4, 9));
            try {
                find_resonant(P, A, params, Ball{center, radius, true}, k);
            } catch (const InvariantViolation& e) {
                r.ok = false;
                r.detail = std::string("uniqueness violated: ") + e.what();
                return r;
            }
        }
    }
    return r;
}

PropertyResult lattice_oracle(std::uint64_t seed) {
    PropertyResult r{"lattice-oracle", true, 0, ""};
    RandomSource rng(seed);
    PrimeSet P({2, 3});
    const Rational scales[] = {Rational(1), Rational(1, 243), Rational(5), Rational(3, 4)};
    for (int i = 0; i < 200; ++i) {
        ++r.cases;
        Rational scale = scales[rng.below(4)];
        // seed a true member, then build a box around it
        Rational w = Rational(rng.range(-2000, 2000)) /
                     (prime_power(2, rng.range(0, 5)) * prime_power(3, rng.range(0, 5)));
        Rational z = scale * w;
        LatticeBox box;
        Rational pad = random_positive(rng, 9, 4);
        box.real_lo = z - pad;
        box.real_hi = z + random_positive(rng, 9, 4);
        for (std::size_t j = 0; j < P.prime_count(); ++j) {
            unsigned long p = P.prime(j);
            Rational radius = prime_power(p, rng.range(-2, 1));
            // radius is p^e, so mult/radius = mult * p^(-e) keeps |pert|_p <= radius
            Rational pert = Rational(rng.range(0, 3)) / radius;
            box.windows.push_back({z + pert, radius});
        }
        std::vector<Rational> got = lattice_enumerate(P, scale, box, 200000);
        bool found = false;
        Rational prev;
        bool have_prev = false;
        for (const Rational& m : got) {
            if (m == z) found = true;
            if (have_prev && !(prev < m)) r.ok = false;  // sorted, distinct
            prev = m;
            have_prev = true;
            if (!in_scaled_ring(P, scale, m)) r.ok = false;
            if (m < box.real_lo || m > box.real_hi) r.ok = false;
            for (std::size_t j = 0; j < P.prime_count(); ++j) {
                unsigned long p = P.prime(j);
                if (padic_abs(m - box.windows[j].center, p) > box.windows[j].radius) r.ok = false;
            }
        }
        if (!found) r.ok = false;
        if (!r.ok) {
            r.detail = "lattice enumeration missed or mangled a member at case " +
                       std::to_string(i) + " (z=" + z.str() + ")";
            break;
        }
    }
    return r;
}

PropertyResult packing_oracle() {
    PropertyResult r{"packing-oracle", true, 0, ""};
    struct Case {
        std::vector<unsigned long> primes;
        Rational beta;
    };
    std::vector<Case> cases;
    for (const Rational& b :
         {Rational(1, 24), Rational(1, 12), Rational(1, 8), Rational(1, 6), Rational(5, 24),
          Rational(7, 24)})
        cases.push_back({{2, 3}, b});
    for (const Rational& b :
         {Rational(1, 24), Rational(1, 12), Rational(1, 6), Rational(1, 4), Rational(3, 8)})
        cases.push_back({{2}, b});
    for (const Rational& b : {Rational(1, 24), Rational(1, 12), Rational(1, 6), Rational(7, 24)})
        cases.push_back({{3}, b});
    for (const Case& c : cases) {
        ++r.cases;
        PrimeSet P(c.primes);
        Int brute = packing_count_bruteforce(c.beta, P);
        for (std::size_t place = 0; place < P.places(); ++place) {
            if (brute < packing_count_lower(c.beta, P, place)) {
                r.ok = false;
                r.detail = "constructive count exceeds the brute-force maximum at beta=" +
                           c.beta.str();
                return r;
            }
        }
    }
    return r;
}

/// Blocks concentric real cylinders that overstep the radius bound by half
/// the injected slack: legal for the loosened live audit, illegal strictly.
class OversteppingAlice : public AliceStrategy {
public:
    OversteppingAlice(Rational beta, Rational slack)
        : beta_(std::move(beta)), slack_(std::move(slack)) {}

    std::string name() const override { return "overstepping"; }
    AliceMove move(const Ball& current) override {
        Rational eps = (beta_ + slack_ / Rational(2)) * current.radius;
        return AliceMove{Cylinder{current.center, eps, 0, eps}, "overstep"};
    }

private:
    Rational beta_;
    Rational slack_;
};

PropertyResult replay_strict(std::uint64_t seed, bool fault_injection) {
    PropertyResult r{"replay-strict", true, 0, ""};
    PrimeSet P({2, 3});
    Ball initial{zero_point(P), Rational(1, 4), true};
    if (fault_injection) {
        ++r.cases;
        Rational slack(1, 1000000);
        GameConfig cfg;
        cfg.beta = Rational(3, 10);
        cfg.max_rounds = 6;
        cfg.seed = seed;
        OversteppingAlice alice(cfg.beta, slack);
        EscapeBob bob(P, cfg.beta);
        AuditOptions audit;
        audit.alice_radius_slack = slack;
        Transcript t = run_game(P, cfg, alice, bob, initial, audit);
        ReplayReport rep = replay_transcript(json_of(t));
        if (rep.ok) {
            r.detail = "strict replay accepted an overstepped transcript";
        } else {
            r.detail = "fault injection detected by strict replay: " +
                       (rep.violations.empty() ? std::string("(no detail)") : rep.violations[0]);
        }
        r.ok = rep.ok;  // the suite must fail here, proving sensitivity
        return r;
    }
    struct Setup {
        std::string bob_kind;
        std::uint64_t salt;
    };
    for (const Setup& s : {Setup{"escape", 1}, Setup{"random", 2}, Setup{"random", 3}}) {
        ++r.cases;
        GameConfig cfg;
        cfg.beta = Rational(3, 10);
        cfg.max_rounds = 12;
        cfg.seed = seed + s.salt;
        AffineMap A = make_linear(P, Rational(3, 2));
        AvoidanceAlice alice(P, A, zero_point(P), cfg.beta);
        std::unique_ptr<BobStrategy> bob;
        if (s.bob_kind == "escape")
            bob = std::make_unique<EscapeBob>(P, cfg.beta);
        else
            bob = std::make_unique<RandomBob>(P, cfg.beta, cfg.seed);
        Transcript t = run_game(P, cfg, alice, *bob, initial);
        if (t.fault) {
            r.ok = false;
            r.detail = "engine flagged a fault in a clean run: " + t.fault->reason;
            break;
        }
        ReplayReport rep = replay_transcript(json_of(t));
        if (!rep.ok || !rep.byte_identical) {
            r.ok = false;
            r.detail = rep.violations.empty() ? "replay round-trip not byte-identical"
                                              : rep.violations[0];
            break;
        }
    }
    return r;
}

}  // namespace

VerifyReport run_verify_suite(std::uint64_t seed, const std::string& filter,
                              bool fault_injection) {
    VerifyReport report;
    report.seed = seed;
    report.fault_injection = fault_injection;
    std::vector<PropertyResult> all;
    all.push_back(metric_axioms(seed + 11));
    all.push_back(floor_identities(seed + 22));
    all.push_back(contraction_bound(seed + 33));
    all.push_back(escape_legality(seed + 44));
    all.push_back(resonant_uniqueness(seed + 55));
    all.push_back(lattice_oracle(seed + 66));
    all.push_back(packing_oracle());
    all.push_back(replay_strict(seed + 77, fault_injection));
    report.ok = true;
    for (PropertyResult& p : all) {
        if (!filter.empty() && p.name.find(filter) == std::string::npos) continue;
        if (!p.ok) report.ok = false;
        report.properties.push_back(std::move(p));
    }
    return report;
}

}  // namespace solenoid
