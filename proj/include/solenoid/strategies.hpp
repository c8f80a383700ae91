#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "solenoid/affine.hpp"
#include "solenoid/game.hpp"
#include "solenoid/lattice.hpp"
#include "solenoid/random.hpp"

namespace solenoid {

// Cylinder at the real place, concentric with b, radius beta * radius(b).
// Always a legal block and forces Bob strictly inward.
Cylinder idle_block(const PrimeSet& P, const Ball& b, const Rational& beta);

// One resonant set A^{-j} B(y + diag(z), delta), z in a_scale * R.
struct ResonantIndex {
    long j = 0;
    Rational z;
    Point target;  // y + diag(z)
};

// Box of the (open) resonant set in coordinate units.
ProductBox resonant_set_box(const PrimeSet& P, const AffineMap& A,
                            const AvoidanceParams& params, const ResonantIndex& n);

// All resonant indices of window k whose set meets the region.  The window
// covers j with lambda_A^{-j} in [mu^{k+1-k0}, mu^{k-k0}); z candidates come
// from an exact lattice enumeration around the forward image of the region.
std::vector<ResonantIndex> window_hits(const PrimeSet& P, const AffineMap& A,
                                       const AvoidanceParams& params,
                                       const ProductBox& region, long k);

// The unique orbit class of window-k sets meeting the ball, if any.  Several
// hits are tolerated only when they lie on one backward orbit (then the
// smallest j is returned and its cylinder covers the rest); two distinct
// classes contradict the separation of the target's orbit and throw.
std::optional<ResonantIndex> find_resonant(const PrimeSet& P, const AffineMap& A,
                                           const AvoidanceParams& params,
                                           const Ball& ball, long k);

// Bookkeeping for one processed window.
struct WindowRecord {
    long k = 0;
    std::size_t stage = 0;  // observe count when the window move fired
    bool blocked = false;
    ResonantIndex hit;      // valid when blocked
    Ball reply;             // Bob's ball right after the window move
    bool has_reply = false;
};

// Region to audit against all resonant sets of windows up to k.
struct WindowAuditEntry {
    long k = 0;
    ProductBox region;
};

struct WindowAuditResult {
    std::size_t entries = 0;
    std::size_t sets_checked = 0;
    std::vector<std::string> violations;
    bool ok = true;
};

// For each entry, enumerates every resonant set with lambda_A^{-j} >=
// mu^{k-k0} and verifies the region is disjoint from all of them.
WindowAuditResult audit_windows(const PrimeSet& P, const AffineMap& A,
                                const AvoidanceParams& params,
                                const std::vector<WindowAuditEntry>& entries);

std::vector<WindowAuditEntry> window_entries(const PrimeSet& P,
                                             const std::vector<WindowRecord>& records);

// Independent post-hoc certificate: the minimum lattice distance between the
// forward orbit of x_hat (up to the audited horizon) and the target.
struct OrbitCertificate {
    long horizon = -1;      // largest certified forward iterate
    Rational min_distance;  // min_j lattice_distance(A^j x_hat - y)
    Rational threshold;     // delta / 2
    bool ok = true;
};

OrbitCertificate orbit_certificate(const PrimeSet& P, const AffineMap& A,
                                   const AvoidanceParams& params,
                                   const Point& x_hat, long k_max);

// Blocking strategy that keeps the limit point off every forward image of a
// neighborhood of the target's lattice orbit.  Parameters are derived from
// the first ball seen; windows fire as the radius passes mu^k * r0.
class AvoidanceAlice : public AliceStrategy {
public:
    AvoidanceAlice(PrimeSet P, AffineMap A, Point y, Rational beta);

    std::string name() const override;
    std::string descriptor() const override;
    AliceMove move(const Ball& current) override;
    void observe(const Ball& reply) override;

    bool initialized() const { return params_.has_value(); }
    const AvoidanceParams& params() const;
    const AffineMap& map() const { return A_; }
    const Point& target() const { return y_; }
    const std::vector<WindowRecord>& windows() const { return records_; }
    long next_window() const { return k_next_; }

private:
    PrimeSet P_;
    AffineMap A_;
    Point y_;
    Rational beta_;
    std::optional<AvoidanceParams> params_;
    Rational r0_;
    long k_next_ = 0;
    std::size_t stage_ = 0;
    std::optional<std::size_t> pending_;
    std::vector<WindowRecord> records_;
};

// Keeps the limit point away from finitely many fixed points by blocking
// them in turn at the real place (handles unit linear parts, where the
// spectral machinery degenerates).
class PointAvoidanceAlice : public AliceStrategy {
public:
    PointAvoidanceAlice(PrimeSet P, std::vector<Point> targets, Rational beta);

    std::string name() const override;
    std::string descriptor() const override;
    AliceMove move(const Ball& current) override;

private:
    PrimeSet P_;
    std::vector<Point> targets_;
    Rational beta_;
    std::size_t turn_ = 0;
};

// Round-robin intersection of several blocking strategies.  Children must be
// built for the slowed clock (their shrink rate per acting turn is beta^T).
class InterleaveAlice : public AliceStrategy {
public:
    explicit InterleaveAlice(std::vector<std::unique_ptr<AliceStrategy>> children);

    std::string name() const override;
    std::string descriptor() const override;
    AliceMove move(const Ball& current) override;
    void observe(const Ball& reply) override;

    std::size_t child_count() const { return children_.size(); }
    const AliceStrategy& child(std::size_t i) const { return *children_[i]; }
    AliceStrategy& child(std::size_t i) { return *children_[i]; }

private:
    std::vector<std::unique_ptr<AliceStrategy>> children_;
    std::size_t turn_ = 0;
};

// Strategy factory for avoiding the forward orbits of the given targets
// under A.  Dispatches on the linear part: the generic spectral strategy for
// |m/n| != 1, the fixed/periodic point blocker for m/n = +-1.
std::unique_ptr<AliceStrategy> avoidance_alice(const PrimeSet& P, const AffineMap& A,
                                               std::vector<Point> targets,
                                               const Rational& beta);

// Alice who blocks a far-away cylinder, never constraining the play.
class NeverBlockAlice : public AliceStrategy {
public:
    explicit NeverBlockAlice(Rational beta) : beta_(std::move(beta)) {}

    std::string name() const override { return "never-block"; }
    std::string descriptor() const override { return "never-block(beta=" + beta_.str() + ")"; }
    AliceMove move(const Ball& current) override;

private:
    Rational beta_;
};

// Deterministic Bob: always the canonical escape ball.
class EscapeBob : public BobStrategy {
public:
    explicit EscapeBob(PrimeSet P, Rational beta);

    std::string name() const override { return "escape"; }
    std::string descriptor() const override { return "escape(beta=" + beta_.str() + ")"; }
    std::optional<Ball> move(const Ball& current, const Cylinder& blocked) override;

private:
    PrimeSet P_;
    Rational beta_;
};

// Bob who repeats the previous ball whenever that is legal and resigns
// otherwise, exercising the engine's assist path.
class StayPutBob : public BobStrategy {
public:
    explicit StayPutBob(PrimeSet P, Rational beta);

    std::string name() const override { return "stay-put"; }
    std::string descriptor() const override { return "stay-put(beta=" + beta_.str() + ")"; }
    std::optional<Ball> move(const Ball& current, const Cylinder& blocked) override;

private:
    PrimeSet P_;
    Rational beta_;
};

// Seeded randomized Bob: random legal centers and radii, an occasional
// resignation to exercise the assist path, deterministic fallback.
class RandomBob : public BobStrategy {
public:
    RandomBob(PrimeSet P, Rational beta, std::uint64_t seed);

    std::string name() const override { return "random"; }
    std::string descriptor() const override;
    std::optional<Ball> move(const Ball& current, const Cylinder& blocked) override;

private:
    PrimeSet P_;
    Rational beta_;
    std::uint64_t seed_;
    RandomSource rng_;
};

// Adapter running a blocking strategy inside the strong game: the inner
// strategy is consulted at parameter alpha * gamma and Alice answers with a
// sub-ball of radius alpha * r avoiding the returned cylinder.
class StrongFromCylinderAlice : public StrongAliceStrategy {
public:
    StrongFromCylinderAlice(PrimeSet P, Rational alpha, Rational gamma,
                            std::unique_ptr<AliceStrategy> inner);

    std::string name() const override { return "strong-adapter"; }
    std::string descriptor() const override;
    Ball move(const Ball& current) override;
    void observe(const Ball& reply) override;

    const AliceStrategy& inner() const { return *inner_; }
    const std::vector<Cylinder>& consulted() const { return consulted_; }

private:
    PrimeSet P_;
    Rational alpha_;
    Rational gamma_;
    std::unique_ptr<AliceStrategy> inner_;
    std::vector<Cylinder> consulted_;
};

// Strong-game Bob: concentric shrink by exactly gamma.
class ShrinkStrongBob : public StrongBobStrategy {
public:
    explicit ShrinkStrongBob(Rational gamma) : gamma_(std::move(gamma)) {}

    std::string name() const override { return "shrink"; }
    std::string descriptor() const override { return "shrink(gamma=" + gamma_.str() + ")"; }
    std::optional<Ball> move(const Ball& current) override {
        return Ball{current.center, gamma_ * current.radius, true};
    }

private:
    Rational gamma_;
};

// Constants of the change of variables Psi: expansion factors of Psi and its
// inverse, the stage modulus n, and the pullback inflation eta.
struct TransferParams {
    Rational lambda_psi;
    Rational lambda_psi_inv;
    long n = 1;
    Rational beta_prime;  // beta^n, the inner game's parameter
    Rational eta;         // (beta+1) beta^{n-1}; pullback radius factor
    bool isometry = false;
};

TransferParams transfer_params(const PrimeSet& P, const AffineMap& psi,
                               const Rational& beta);

// Plays a blocking strategy for the conjugated game: consults the inner
// strategy on the image ball Psi(B) at geometrically marked stages and pulls
// its cylinder back through Psi^{-1} with an inflated radius.
class TransferAlice : public AliceStrategy {
public:
    struct ConsultRecord {
        Ball outer;        // Bob's ball that triggered the consult
        Ball inner_ball;   // Psi-image ball handed to the inner strategy
        Cylinder inner_cyl;
        Cylinder pullback;
    };

    TransferAlice(PrimeSet P, AffineMap psi, Rational beta, TransferParams tp,
                  std::unique_ptr<AliceStrategy> inner);

    std::string name() const override { return "transfer"; }
    std::string descriptor() const override;
    AliceMove move(const Ball& current) override;

    const AliceStrategy& inner() const { return *inner_; }
    const TransferParams& params() const { return tp_; }
    const std::vector<ConsultRecord>& consults() const { return consults_; }

private:
    AliceMove consult(const Ball& current);

    PrimeSet P_;
    AffineMap psi_;
    Rational beta_;
    TransferParams tp_;
    std::unique_ptr<AliceStrategy> inner_;
    bool started_ = false;
    Rational mark_;
    std::vector<ConsultRecord> consults_;
};

// Audit regions for the inner game of a transfer: the exact Psi-images of
// the outer balls that followed each inner window move.
std::vector<WindowAuditEntry> transfer_window_entries(
    const PrimeSet& P, const AffineMap& psi,
    const std::vector<WindowRecord>& inner_records,
    const std::vector<TransferAlice::ConsultRecord>& consults);

}  // namespace solenoid
