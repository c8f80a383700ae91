#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "solenoid/space.hpp"

namespace solenoid {

/// Largest admissible beta for a block constraining the given place: 1/3 at
/// the archimedean place, 1/p at a p-adic one.
Rational place_beta_ceiling(const PrimeSet& P, std::size_t place);

enum class GameVariant { cylinder_absolute, strong };

struct GameConfig {
    GameVariant variant = GameVariant::cylinder_absolute;
    Rational beta;            // Bob's radius floor (both variants)
    Rational alpha;           // Alice's radius floor (strong variant only)
    std::size_t max_rounds = 0;
    std::uint64_t seed = 0;
};

/// Engine knobs for fault-injection experiments.  A nonzero slack loosens the
/// live radius check on Alice's cylinders, letting slightly illegal moves
/// into the transcript; the strict replay audit must then flag them.
struct AuditOptions {
    Rational alice_radius_slack = Rational(0);
};

struct LegalityReport {
    bool ok = true;
    std::vector<std::string> evidence;
};

/// Cylinder-game legality: Alice may block a cylinder whose normalized radius
/// is at most beta times the current radius.
LegalityReport legal_alice(const PrimeSet& P, const Ball& prev, const Cylinder& c, const Rational& beta);

/// Bob must stay inside the previous ball, avoid the blocked cylinder, play a
/// closed ball and keep radius >= beta * radius(prev).
LegalityReport legal_bob(const PrimeSet& P, const Ball& prev, const Cylinder& blocked, const Ball& next,
                         const Rational& beta);

/// Strong-game legality: Alice picks a closed sub-ball of radius >= alpha * r.
LegalityReport legal_strong_alice(const PrimeSet& P, const Ball& prev, const Ball& pick, const Rational& alpha);
/// Bob picks a closed sub-ball of Alice's ball with radius >= beta * radius.
LegalityReport legal_strong_bob(const PrimeSet& P, const Ball& alice_ball, const Ball& pick, const Rational& beta);

/// The explicit escape construction: a legal Bob ball of radius exactly
/// beta * radius(prev).  Requires beta below the ceiling of the blocked
/// place; throws InvariantViolation when no candidate is legal, which is
/// unreachable for legal blocks.
Ball escape_ball(const PrimeSet& P, const Ball& prev, const Cylinder& blocked, const Rational& beta);
/// Non-throwing variant used by the engine's assist path.
std::optional<Ball> try_escape_ball(const PrimeSet& P, const Ball& prev, const Cylinder& blocked,
                                    const Rational& beta);

struct AliceMove {
    Cylinder cylinder;
    std::string note;
};

class AliceStrategy {
public:
    virtual ~AliceStrategy() = default;
    virtual std::string name() const = 0;
    virtual std::string descriptor() const { return name(); }
    virtual AliceMove move(const Ball& current) = 0;
    /// Called once per round with Bob's accepted ball.
    virtual void observe(const Ball&) {}
};

class BobStrategy {
public:
    virtual ~BobStrategy() = default;
    virtual std::string name() const = 0;
    virtual std::string descriptor() const { return name(); }
    /// Empty optional = resignation; the engine then tries the escape solver.
    virtual std::optional<Ball> move(const Ball& current, const Cylinder& blocked) = 0;
};

class StrongAliceStrategy {
public:
    virtual ~StrongAliceStrategy() = default;
    virtual std::string name() const = 0;
    virtual std::string descriptor() const { return name(); }
    virtual Ball move(const Ball& current) = 0;
    virtual void observe(const Ball&) {}
};

class StrongBobStrategy {
public:
    virtual ~StrongBobStrategy() = default;
    virtual std::string name() const = 0;
    virtual std::string descriptor() const { return name(); }
    virtual std::optional<Ball> move(const Ball& alice_ball) = 0;
};

enum class Outcome { running, completed, bob_default_win };

struct FaultRecord {
    std::size_t round = 0;
    std::string actor;
    std::string reason;
};

struct RoundRecord {
    bool has_cylinder = true;    // false in the strong variant
    Cylinder alice_cylinder;
    Ball alice_ball;             // strong variant only
    std::string alice_note;
    std::vector<std::string> evidence;
    Ball bob_ball;
    bool assisted = false;       // Bob resigned and the solver supplied the ball
};

struct Transcript {
    std::vector<unsigned long> primes;
    GameConfig config;
    std::string alice_descriptor;
    std::string bob_descriptor;
    Ball initial;
    std::vector<RoundRecord> rounds;
    Outcome outcome = Outcome::running;
    std::optional<FaultRecord> fault;
    Point limit;  // center of the last ball
};

/// Runs the cylinder absolute game.  Every proposed move is audited before
/// acceptance; an illegal proposal terminates the run with a fault record.
/// Bob's resignation triggers the escape solver, and bob_default_win is
/// declared only when the solver also fails.
Transcript run_game(const PrimeSet& P, const GameConfig& config, AliceStrategy& alice, BobStrategy& bob,
                    const Ball& initial, const AuditOptions& audit = {});

Transcript run_strong_game(const PrimeSet& P, const GameConfig& config, StrongAliceStrategy& alice,
                           StrongBobStrategy& bob, const Ball& initial, const AuditOptions& audit = {});

}  // namespace solenoid
