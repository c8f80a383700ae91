#include "solenoid/game.hpp"

#include "solenoid/errors.hpp"

namespace solenoid {

Rational place_beta_ceiling(const PrimeSet& P, std::size_t place) {
    if (place >= P.places()) throw DomainError("place_beta_ceiling: place index out of range");
    return place == 0 ? Rational(1, 3) : Rational(1, (long)P.place_prime(place));
}

namespace {

void note(LegalityReport& rep, bool ok, const std::string& text) {
    rep.evidence.push_back((ok ? "ok: " : "fail: ") + text);
    if (!ok) rep.ok = false;
}

}  // namespace

LegalityReport legal_alice(const PrimeSet& P, const Ball& prev, const Cylinder& c, const Rational& beta) {
    LegalityReport rep;
    Rational cap = beta * prev.radius;
    note(rep, c.normalized_radius <= cap,
         "cylinder normalized radius " + c.normalized_radius.str() + " <= beta*r = " + cap.str());
    note(rep, cylinder_normalize(P, c.epsilon, c.place) == c.normalized_radius,
         "normalized radius consistent with epsilon " + c.epsilon.str());
    return rep;
}

LegalityReport legal_bob(const PrimeSet& P, const Ball& prev, const Cylinder& blocked, const Ball& next,
                         const Rational& beta) {
    LegalityReport rep;
    note(rep, next.closed, "ball is closed");
    note(rep, ball_contains(P, prev, next),
         "ball " + point_str(next.center) + " r=" + next.radius.str() + " inside previous");
    note(rep, ball_cylinder_disjoint(P, next, blocked),
         "ball disjoint from blocked cylinder at place " + std::to_string(blocked.place));
    Rational floor = beta * prev.radius;
    note(rep, next.radius >= floor, "radius " + next.radius.str() + " >= beta*r = " + floor.str());
    return rep;
}

LegalityReport legal_strong_alice(const PrimeSet& P, const Ball& prev, const Ball& pick, const Rational& alpha) {
    LegalityReport rep;
    note(rep, pick.closed, "ball is closed");
    note(rep, ball_contains(P, prev, pick), "ball inside previous");
    Rational floor = alpha * prev.radius;
    note(rep, pick.radius >= floor, "radius " + pick.radius.str() + " >= alpha*r = " + floor.str());
    return rep;
}

LegalityReport legal_strong_bob(const PrimeSet& P, const Ball& alice_ball, const Ball& pick, const Rational& beta) {
    LegalityReport rep;
    note(rep, pick.closed, "ball is closed");
    note(rep, ball_contains(P, alice_ball, pick), "ball inside Alice's ball");
    Rational floor = beta * alice_ball.radius;
    note(rep, pick.radius >= floor, "radius " + pick.radius.str() + " >= beta*r = " + floor.str());
    return rep;
}

std::optional<Ball> try_escape_ball(const PrimeSet& P, const Ball& prev, const Cylinder& blocked,
                                    const Rational& beta) {
    if (beta.sign() <= 0 || beta >= place_beta_ceiling(P, blocked.place)) return std::nullopt;
    Rational radius = beta * prev.radius;
    std::vector<Ball> candidates;
    candidates.push_back(Ball{prev.center, radius, true});
    if (blocked.place == 0) {
        Rational off = (Rational(1) - beta) * prev.radius;
        Point right = prev.center, left = prev.center;
        right.real += off;
        left.real -= off;
        // Try the side farther from the blocked interval first.
        if (blocked.anchor.real <= prev.center.real) {
            candidates.push_back(Ball{right, radius, true});
            candidates.push_back(Ball{left, radius, true});
        } else {
            candidates.push_back(Ball{left, radius, true});
            candidates.push_back(Ball{right, radius, true});
        }
    } else {
        unsigned long p = P.place_prime(blocked.place);
        // Offset of p-adic size exactly p * (largest power of p <= radius(prev)):
        // on the boundary sphere of the previous ball's projection, hence inside
        // it, and beyond any legally blocked cylinder's coordinate radius.
        long f = padic_floor(prev.radius, p).exponent;
        Rational offset = prime_power(p, -(f + 1));
        Point shifted = prev.center;
        shifted.padic[blocked.place - 1] = blocked.anchor.padic[blocked.place - 1] + offset;
        candidates.push_back(Ball{shifted, radius, true});
    }
    for (const Ball& cand : candidates) {
        if (legal_bob(P, prev, blocked, cand, beta).ok) return cand;
    }
    return std::nullopt;
}

Ball escape_ball(const PrimeSet& P, const Ball& prev, const Cylinder& blocked, const Rational& beta) {
    Rational ceiling = place_beta_ceiling(P, blocked.place);
    if (beta.sign() <= 0 || beta >= ceiling)
        throw DomainError("escape_ball: beta " + beta.str() + " not below the place ceiling " + ceiling.str());
    std::optional<Ball> b = try_escape_ball(P, prev, blocked, beta);
    if (!b)
        throw InvariantViolation("escape_ball: no legal candidate for blocked place " +
                                 std::to_string(blocked.place) + " with beta " + beta.str());
    return *b;
}

namespace {

Transcript make_transcript(const PrimeSet& P, const GameConfig& config, const std::string& alice_desc,
                           const std::string& bob_desc, const Ball& initial) {
    Transcript t;
    t.primes = P.list();
    t.config = config;
    t.alice_descriptor = alice_desc;
    t.bob_descriptor = bob_desc;
    t.initial = initial;
    t.limit = initial.center;
    return t;
}

void check_initial(const Ball& initial) {
    if (!initial.closed) throw DomainError("run_game: initial ball must be closed");
    if (initial.radius.sign() <= 0 || initial.radius >= Rational(1, 2))
        throw DomainError("run_game: initial radius must lie in ]0, 1/2[");
}

}  // namespace

Transcript run_game(const PrimeSet& P, const GameConfig& config, AliceStrategy& alice, BobStrategy& bob,
                    const Ball& initial, const AuditOptions& audit) {
    if (config.variant != GameVariant::cylinder_absolute)
        throw DomainError("run_game: config variant must be cylinder_absolute");
    if (config.beta.sign() <= 0 || config.beta >= Rational(1))
        throw DomainError("run_game: beta must lie in ]0,1[");
    check_initial(initial);
    check_point(P, initial.center);

    Transcript t = make_transcript(P, config, alice.descriptor(), bob.descriptor(), initial);
    Ball current = initial;
    for (std::size_t round = 0; round < config.max_rounds; ++round) {
        RoundRecord rec;
        AliceMove am = alice.move(current);
        rec.alice_cylinder = am.cylinder;
        rec.alice_note = am.note;

        LegalityReport arep = legal_alice(P, current, am.cylinder, config.beta + audit.alice_radius_slack);
        Rational ceiling = place_beta_ceiling(P, am.cylinder.place);
        bool ceiling_ok = config.beta < ceiling;
        arep.evidence.push_back(std::string(ceiling_ok ? "ok: " : "fail: ") + "beta " + config.beta.str() +
                                " < place ceiling " + ceiling.str());
        rec.evidence = arep.evidence;
        if (!arep.ok || !ceiling_ok) {
            t.rounds.push_back(rec);
            t.fault = FaultRecord{round, "alice", "illegal cylinder"};
            return t;
        }

        std::optional<Ball> nb = bob.move(current, am.cylinder);
        if (nb) {
            LegalityReport brep = legal_bob(P, current, am.cylinder, *nb, config.beta);
            for (const auto& e : brep.evidence) rec.evidence.push_back(e);
            if (!brep.ok) {
                rec.bob_ball = *nb;
                t.rounds.push_back(rec);
                t.fault = FaultRecord{round, "bob", "illegal ball"};
                return t;
            }
            rec.bob_ball = *nb;
        } else {
            std::optional<Ball> solved = try_escape_ball(P, current, am.cylinder, config.beta);
            if (!solved) {
                t.rounds.push_back(rec);
                t.outcome = Outcome::bob_default_win;
                return t;
            }
            LegalityReport brep = legal_bob(P, current, am.cylinder, *solved, config.beta);
            for (const auto& e : brep.evidence) rec.evidence.push_back(e);
            if (!brep.ok) {
                t.rounds.push_back(rec);
                t.outcome = Outcome::bob_default_win;
                return t;
            }
            rec.bob_ball = *solved;
            rec.assisted = true;
        }
        current = rec.bob_ball;
        alice.observe(current);
        t.rounds.push_back(rec);
        t.limit = current.center;
    }
    t.outcome = Outcome::completed;
    return t;
}

Transcript run_strong_game(const PrimeSet& P, const GameConfig& config, StrongAliceStrategy& alice,
                           StrongBobStrategy& bob, const Ball& initial, const AuditOptions& audit) {
    if (config.variant != GameVariant::strong)
        throw DomainError("run_strong_game: config variant must be strong");
    if (config.alpha.sign() <= 0 || config.alpha >= Rational(1) || config.beta.sign() <= 0 ||
        config.beta >= Rational(1))
        throw DomainError("run_strong_game: alpha and beta must lie in ]0,1[");
    check_initial(initial);
    check_point(P, initial.center);

    Transcript t = make_transcript(P, config, alice.descriptor(), bob.descriptor(), initial);
    Ball current = initial;
    for (std::size_t round = 0; round < config.max_rounds; ++round) {
        RoundRecord rec;
        rec.has_cylinder = false;
        Ball pick = alice.move(current);
        rec.alice_ball = pick;

        LegalityReport arep = legal_strong_alice(P, current, pick, config.alpha - audit.alice_radius_slack);
        rec.evidence = arep.evidence;
        if (!arep.ok) {
            t.rounds.push_back(rec);
            t.fault = FaultRecord{round, "alice", "illegal ball"};
            return t;
        }

        std::optional<Ball> nb = bob.move(pick);
        if (!nb) {
            // Concentric shrink is always legal in the strong game.
            nb = Ball{pick.center, config.beta * pick.radius, true};
            rec.assisted = true;
        }
        LegalityReport brep = legal_strong_bob(P, pick, *nb, config.beta);
        for (const auto& e : brep.evidence) rec.evidence.push_back(e);
        if (!brep.ok) {
            rec.bob_ball = *nb;
            t.rounds.push_back(rec);
            t.fault = FaultRecord{round, "bob", "illegal ball"};
            return t;
        }
        rec.bob_ball = *nb;
        current = *nb;
        alice.observe(current);
        t.rounds.push_back(rec);
        t.limit = current.center;
    }
    t.outcome = Outcome::completed;
    return t;
}

}  // namespace solenoid
