#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "solenoid/game.hpp"
#include "solenoid/random.hpp"
#include "solenoid/serialize.hpp"
#include "solenoid/strategies.hpp"

using namespace solenoid;

namespace {

Point pt(const Rational& r, const Rational& a, const Rational& b) {
    return Point{r, {a, b}};
}

// Alice who blocks a concentric cylinder at a fixed place with epsilon
// scale * radius, for boundary probes.
class FixedScaleAlice : public AliceStrategy {
public:
    FixedScaleAlice(PrimeSet P, Rational scale, std::size_t place)
        : P_(std::move(P)), scale_(std::move(scale)), place_(place) {}
    std::string name() const override { return "fixed-scale"; }
    AliceMove move(const Ball& current) override {
        return AliceMove{make_cylinder(P_, current.center, scale_ * current.radius, place_), ""};
    }

private:
    PrimeSet P_;
    Rational scale_;
    std::size_t place_;
};

class TinyBallBob : public BobStrategy {
public:
    explicit TinyBallBob(Rational beta) : beta_(std::move(beta)) {}
    std::string name() const override { return "tiny"; }
    std::optional<Ball> move(const Ball& current, const Cylinder&) override {
        // strictly below the radius floor: illegal
        Point c = current.center;
        c.real += current.radius / Rational(2);
        return Ball{c, beta_ * current.radius / Rational(2), true};
    }

private:
    Rational beta_;
};

class HalfStrongAlice : public StrongAliceStrategy {
public:
    explicit HalfStrongAlice(Rational alpha) : alpha_(std::move(alpha)) {}
    std::string name() const override { return "half-strong"; }
    Ball move(const Ball& current) override {
        return Ball{current.center, alpha_ * current.radius, true};
    }

private:
    Rational alpha_;
};

}  // namespace

TEST_CASE("beta ceilings per place") {
    PrimeSet P({2, 3});
    CHECK(place_beta_ceiling(P, 0) == Rational(1, 3));
    CHECK(place_beta_ceiling(P, 1) == Rational(1, 2));
    CHECK(place_beta_ceiling(P, 2) == Rational(1, 3));
    CHECK_THROWS_AS(place_beta_ceiling(P, 3), DomainError);
}

TEST_CASE("alice legality: exact boundary") {
    PrimeSet P({2, 3});
    Ball prev{zero_point(P), Rational(1, 4), true};
    Rational beta(3, 10);
    // real place: normalized radius equals epsilon
    CHECK(legal_alice(P, prev, make_cylinder(P, prev.center, Rational(3, 40), 0), beta).ok);
    CHECK_FALSE(
        legal_alice(P, prev, make_cylinder(P, prev.center, Rational(3, 40) + Rational(1, 1000), 0), beta)
            .ok);
    // p-adic place: the power snap keeps 3/40 legal (normalized 1/16 <= 3/40)
    CHECK(legal_alice(P, prev, make_cylinder(P, prev.center, Rational(3, 40), 1), beta).ok);
    CHECK_FALSE(legal_alice(P, prev, make_cylinder(P, prev.center, Rational(1, 4), 1), beta).ok);
    // tampered normalized radius is rejected independently of its size
    Cylinder c = make_cylinder(P, prev.center, Rational(3, 40), 1);
    c.normalized_radius = Rational(1, 64);
    CHECK_FALSE(legal_alice(P, prev, c, beta).ok);
}

TEST_CASE("bob legality: containment, avoidance, radius floor") {
    PrimeSet P({2, 3});
    Ball prev{zero_point(P), Rational(1, 4), true};
    Rational beta(3, 10);
    Cylinder blocked = make_cylinder(P, prev.center, Rational(1, 16), 1);
    Ball good{pt(0, Rational(2), 0), Rational(3, 40), true};
    CHECK(legal_bob(P, prev, blocked, good, beta).ok);
    Ball small = good;
    small.radius = Rational(3, 40) - Rational(1, 1000);
    CHECK_FALSE(legal_bob(P, prev, blocked, small, beta).ok);
    Ball open_ball = good;
    open_ball.closed = false;
    CHECK_FALSE(legal_bob(P, prev, blocked, open_ball, beta).ok);
    Ball outside = good;
    outside.center.real = Rational(1, 2);
    CHECK_FALSE(legal_bob(P, prev, blocked, outside, beta).ok);
    Ball touching{zero_point(P), Rational(3, 40), true};  // center inside the block
    CHECK_FALSE(legal_bob(P, prev, blocked, touching, beta).ok);
}

TEST_CASE("escape ball: frozen example") {
    PrimeSet P({2, 3});
    Ball prev{zero_point(P), Rational(1, 4), true};
    Cylinder blocked = make_cylinder(P, zero_point(P), Rational(1, 16), 1);
    Ball e = escape_ball(P, prev, blocked, Rational(3, 10));
    CHECK(points_equal(e.center, pt(0, Rational(2), 0)));
    CHECK(e.radius == Rational(3, 40));
    CHECK(e.closed);
    CHECK(legal_bob(P, prev, blocked, e, Rational(3, 10)).ok);
    // ceiling gates
    CHECK_THROWS_AS(escape_ball(P, prev, blocked, Rational(1, 2)), DomainError);
    Cylinder real_blocked = make_cylinder(P, zero_point(P), Rational(1, 20), 0);
    CHECK_THROWS_AS(escape_ball(P, prev, real_blocked, Rational(1, 3)), DomainError);
    CHECK(legal_bob(P, prev, real_blocked, escape_ball(P, prev, real_blocked, Rational(3, 10)),
                    Rational(3, 10))
              .ok);
    // beta close to the p-adic ceiling still escapes
    Ball e2 = escape_ball(P, prev, blocked, Rational(49, 100));
    CHECK(legal_bob(P, prev, blocked, e2, Rational(49, 100)).ok);
}

TEST_CASE("escape ball: fuzz across places and betas") {
    PrimeSet P({2, 3});
    RandomSource rng(606);
    const Rational fracs[] = {Rational(1, 3), Rational(3, 5), Rational(9, 10)};
    for (int i = 0; i < 3000; ++i) {
        Point center;
        center.real = rng.rational(20, 12);
        center.padic.push_back(rng.rational(20, 12));
        center.padic.push_back(rng.rational(20, 12));
        Ball prev{center, Rational(rng.range(1, 99), rng.range(200, 400)), true};
        std::size_t place = rng.below(3);
        Rational beta = place_beta_ceiling(P, place) * fracs[rng.below(3)];
        Point anchor = prev.center;
        if (rng.coin()) anchor.real += rng.rational(6, 5) * prev.radius;
        if (rng.coin() && place > 0)
            anchor.padic[place - 1] += rng.rational(6, 7) * prev.radius;
        Cylinder blocked = make_cylinder(P, anchor, beta * prev.radius, place);
        REQUIRE(legal_alice(P, prev, blocked, beta).ok);
        Ball e = escape_ball(P, prev, blocked, beta);
        CHECK(e.radius == beta * prev.radius);
        CHECK(legal_bob(P, prev, blocked, e, beta).ok);
    }
}

TEST_CASE("engine: never-block against stay-put leaves the ball fixed") {
    PrimeSet P({2, 3});
    GameConfig cfg;
    cfg.beta = Rational(3, 10);
    cfg.max_rounds = 8;
    NeverBlockAlice alice(cfg.beta);
    StayPutBob bob(P, cfg.beta);
    Ball initial{zero_point(P), Rational(1, 4), true};
    Transcript t = run_game(P, cfg, alice, bob, initial);
    CHECK(t.outcome == Outcome::completed);
    CHECK_FALSE(t.fault.has_value());
    REQUIRE(t.rounds.size() == 8);
    for (const RoundRecord& r : t.rounds) {
        CHECK(points_equal(r.bob_ball.center, initial.center));
        CHECK(r.bob_ball.radius == initial.radius);
        CHECK_FALSE(r.assisted);
    }
}

TEST_CASE("engine: illegal moves fault the offending side") {
    PrimeSet P({2, 3});
    GameConfig cfg;
    cfg.beta = Rational(3, 10);
    cfg.max_rounds = 5;
    Ball initial{zero_point(P), Rational(1, 4), true};
    {
        FixedScaleAlice alice(P, Rational(3, 10) + Rational(1, 1000000), 0);
        EscapeBob bob(P, cfg.beta);
        Transcript t = run_game(P, cfg, alice, bob, initial);
        REQUIRE(t.fault.has_value());
        CHECK(t.fault->actor == "alice");
        CHECK(t.rounds.size() == 1);
    }
    {
        NeverBlockAlice alice(cfg.beta);
        TinyBallBob bob(cfg.beta);
        Transcript t = run_game(P, cfg, alice, bob, initial);
        REQUIRE(t.fault.has_value());
        CHECK(t.fault->actor == "bob");
    }
    // the audit slack admits a slight overstep
    {
        FixedScaleAlice alice(P, Rational(3, 10) + Rational(1, 2000000), 0);
        EscapeBob bob(P, cfg.beta);
        AuditOptions audit;
        audit.alice_radius_slack = Rational(1, 1000000);
        Transcript t = run_game(P, cfg, alice, bob, initial, audit);
        CHECK_FALSE(t.fault.has_value());
        CHECK(t.outcome == Outcome::completed);
    }
}

TEST_CASE("engine: config validation") {
    PrimeSet P({2, 3});
    NeverBlockAlice alice{Rational(3, 10)};
    EscapeBob bob(P, Rational(3, 10));
    GameConfig cfg;
    cfg.max_rounds = 1;
    cfg.beta = Rational(0);
    Ball initial{zero_point(P), Rational(1, 4), true};
    CHECK_THROWS_AS(run_game(P, cfg, alice, bob, initial), DomainError);
    cfg.beta = Rational(3, 10);
    CHECK_THROWS_AS(run_game(P, cfg, alice, bob, Ball{zero_point(P), Rational(1, 2), true}),
                    DomainError);
    CHECK_THROWS_AS(run_game(P, cfg, alice, bob, Ball{zero_point(P), Rational(1, 4), false}),
                    DomainError);
    cfg.variant = GameVariant::strong;
    CHECK_THROWS_AS(run_game(P, cfg, alice, bob, initial), DomainError);
}

TEST_CASE("engine: deterministic transcripts for equal seeds") {
    PrimeSet P({2, 3});
    AffineMap A = make_linear(P, Rational(3, 2));
    Ball initial{zero_point(P), Rational(1, 4), true};
    auto play = [&](std::uint64_t seed) {
        GameConfig cfg;
        cfg.beta = Rational(3, 10);
        cfg.max_rounds = 15;
        cfg.seed = seed;
        AvoidanceAlice alice(P, A, zero_point(P), cfg.beta);
        RandomBob bob(P, cfg.beta, seed);
        return transcript_dump(run_game(P, cfg, alice, bob, initial));
    };
    CHECK(play(42) == play(42));
    CHECK(play(42) != play(43));
}

TEST_CASE("engine: avoidance against the escape bob completes") {
    PrimeSet P({2, 3});
    AffineMap A = make_linear(P, Rational(3, 2));
    GameConfig cfg;
    cfg.beta = Rational(3, 10);
    cfg.max_rounds = 25;
    AvoidanceAlice alice(P, A, zero_point(P), cfg.beta);
    EscapeBob bob(P, cfg.beta);
    Ball initial{zero_point(P), Rational(1, 4), true};
    Transcript t = run_game(P, cfg, alice, bob, initial);
    CHECK(t.outcome == Outcome::completed);
    CHECK_FALSE(t.fault.has_value());
    REQUIRE(t.rounds.size() == 25);
    // radius shrinks by exactly beta each round for this bob
    CHECK(t.rounds.back().bob_ball.radius ==
          pow_int(Rational(3, 10), 25) * Rational(1, 4));
}

TEST_CASE("replay: byte identity and tamper detection") {
    PrimeSet P({2, 3});
    AffineMap A = make_linear(P, Rational(3, 2));
    GameConfig cfg;
    cfg.beta = Rational(3, 10);
    cfg.max_rounds = 12;
    cfg.seed = 7;
    AvoidanceAlice alice(P, A, zero_point(P), cfg.beta);
    RandomBob bob(P, cfg.beta, cfg.seed);
    Ball initial{zero_point(P), Rational(1, 4), true};
    Transcript t = run_game(P, cfg, alice, bob, initial);
    REQUIRE_FALSE(t.fault.has_value());

    Json j = Json::parse(transcript_dump(t));
    ReplayReport rep = replay_transcript(j);
    CHECK(rep.ok);
    CHECK(rep.byte_identical);

    // shrink one bob radius below the floor: the strict re-audit must flag it
    Json bad = j;
    bad["rounds"][3]["bob"]["radius"] = "1/100000";
    ReplayReport rep2 = replay_transcript(bad);
    CHECK_FALSE(rep2.ok);
    CHECK_FALSE(rep2.violations.empty());

    // round-trip through parse/dump is canonical
    CHECK(transcript_dump(transcript_from_json(j)) == transcript_dump(t));
}

TEST_CASE("strong game: floors are enforced") {
    PrimeSet P({2, 3});
    GameConfig cfg;
    cfg.variant = GameVariant::strong;
    cfg.alpha = Rational(1, 5);
    cfg.beta = Rational(1, 2);
    cfg.max_rounds = 10;
    HalfStrongAlice alice(cfg.alpha);
    ShrinkStrongBob bob(cfg.beta);
    Ball initial{zero_point(P), Rational(1, 4), true};
    Transcript t = run_strong_game(P, cfg, alice, bob, initial);
    CHECK(t.outcome == Outcome::completed);
    CHECK_FALSE(t.fault.has_value());
    REQUIRE(t.rounds.size() == 10);
    CHECK(t.rounds.back().bob_ball.radius ==
          pow_int(Rational(1, 10), 10) * Rational(1, 4));
    // alice below her floor faults
    HalfStrongAlice bad(Rational(1, 10));
    Transcript t2 = run_strong_game(P, cfg, bad, bob, initial);
    REQUIRE(t2.fault.has_value());
    CHECK(t2.fault->actor == "alice");
}
