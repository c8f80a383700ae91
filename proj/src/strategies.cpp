#include "solenoid/strategies.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "solenoid/errors.hpp"

namespace solenoid {

Cylinder idle_block(const PrimeSet& P, const Ball& b, const Rational& beta) {
    return make_cylinder(P, b.center, beta * b.radius, 0);
}

ProductBox resonant_set_box(const PrimeSet& P, const AffineMap& A,
                            const AvoidanceParams& params, const ResonantIndex& n) {
    ProductBox box;
    box.center = n.target;
    box.real_open = true;
    box.radii.push_back(params.delta);
    for (std::size_t j = 0; j < P.prime_count(); ++j) {
        unsigned long p = P.prime(j);
        box.radii.push_back(padic_floor_strict(Rational(p) * params.delta, p).value);
    }
    return map_box(P, A, -n.j, box);
}

namespace {

// All window-k candidates at a fixed backward depth j whose set meets the
// region, by enumerating z over the forward image of the region.
std::vector<ResonantIndex> hits_at_depth(const PrimeSet& P, const AffineMap& A,
                                         const AvoidanceParams& params,
                                         const ProductBox& region, long j,
                                         std::size_t* candidates_seen = nullptr) {
    std::vector<ResonantIndex> out;
    ProductBox fwd = map_box(P, A, j, region);
    LatticeBox box;
    Rational real_center = fwd.center.real - params.y.real;
    Rational real_reach = fwd.radii[0] + params.delta;
    box.real_lo = real_center - real_reach;
    box.real_hi = real_center + real_reach;
    for (std::size_t i = 1; i < P.places(); ++i) {
        unsigned long p = P.place_prime(i);
        Rational rho = padic_floor_strict(Rational(p) * params.delta, p).value;
        PlaceWindow w;
        w.center = fwd.center.padic[i - 1] - params.y.padic[i - 1];
        w.radius = max(fwd.radii[i], rho);
        box.windows.push_back(w);
    }
    for (const Rational& z : lattice_enumerate(P, params.a_scale, box)) {
        ResonantIndex n;
        n.j = j;
        n.z = z;
        n.target = add(params.y, diagonal(P, z));
        if (candidates_seen) ++*candidates_seen;
        if (box_intersects(P, region, resonant_set_box(P, A, params, n))) out.push_back(n);
    }
    return out;
}

}  // namespace

std::vector<ResonantIndex> window_hits(const PrimeSet& P, const AffineMap& A,
                                       const AvoidanceParams& params,
                                       const ProductBox& region, long k) {
    std::vector<ResonantIndex> hits;
    Rational lo = pow_int(params.mu, k + 1 - params.k0);
    Rational hi = pow_int(params.mu, k - params.k0);
    for (long j = 0;; ++j) {
        Rational lamj = pow_int(params.spectral.lambda_A, -j);
        if (lamj < lo) break;
        if (lamj >= hi) continue;
        for (ResonantIndex& n : hits_at_depth(P, A, params, region, j)) hits.push_back(std::move(n));
    }
    return hits;
}

std::optional<ResonantIndex> find_resonant(const PrimeSet& P, const AffineMap& A,
                                           const AvoidanceParams& params,
                                           const Ball& ball, long k) {
    std::vector<ResonantIndex> hits = window_hits(P, A, params, ball_box(P, ball), k);
    if (hits.empty()) return std::nullopt;
    // Hits on one backward orbit share the mapped center, so blocking the
    // smallest j covers them all; two distinct orbit classes would pierce
    // the ball with sets the separation constants keep apart.
    std::vector<ResonantIndex> classes;
    for (const ResonantIndex& h : hits) {
        bool matched = false;
        for (const ResonantIndex& rep : classes) {
            if (points_equal(h.target, apply_iter(P, A, h.j - rep.j, rep.target))) {
                matched = true;
                break;
            }
        }
        if (!matched) classes.push_back(h);
    }
    if (classes.size() > 1) {
        std::ostringstream os;
        os << "window " << k << " meets " << classes.size() << " distinct resonant orbits:";
        for (const ResonantIndex& c : classes) os << " (j=" << c.j << ", z=" << c.z.str() << ")";
        throw InvariantViolation(os.str());
    }
    return classes.front();
}

WindowAuditResult audit_windows(const PrimeSet& P, const AffineMap& A,
                                const AvoidanceParams& params,
                                const std::vector<WindowAuditEntry>& entries) {
    WindowAuditResult res;
    res.entries = entries.size();
    for (const WindowAuditEntry& e : entries) {
        // Cumulative check: once window k has fired, the surviving ball must
        // clear every depth assigned to windows 0..k.
        Rational bound = pow_int(params.mu, e.k + 1 - params.k0);
        for (long j = 0; pow_int(params.spectral.lambda_A, -j) >= bound; ++j) {
            std::size_t seen = 0;
            std::vector<ResonantIndex> bad = hits_at_depth(P, A, params, e.region, j, &seen);
            res.sets_checked += seen;
            for (const ResonantIndex& n : bad) {
                std::ostringstream os;
                os << "window k=" << e.k << " region meets resonant set j=" << n.j
                   << " z=" << n.z.str();
                res.violations.push_back(os.str());
            }
        }
    }
    res.ok = res.violations.empty();
    return res;
}

std::vector<WindowAuditEntry> window_entries(const PrimeSet& P,
                                             const std::vector<WindowRecord>& records) {
    std::vector<WindowAuditEntry> entries;
    for (const WindowRecord& r : records) {
        if (!r.has_reply) continue;
        entries.push_back({r.k, ball_box(P, r.reply)});
    }
    return entries;
}

OrbitCertificate orbit_certificate(const PrimeSet& P, const AffineMap& A,
                                   const AvoidanceParams& params,
                                   const Point& x_hat, long k_max) {
    OrbitCertificate cert;
    cert.threshold = params.delta / Rational(2);
    cert.min_distance = Rational(0);
    Rational bound = pow_int(params.mu, k_max - params.k0);
    for (long j = 0; pow_int(params.spectral.lambda_A, -j) >= bound; ++j) {
        Point orbit = apply_iter(P, A, j, x_hat);
        Rational d = lattice_distance(P, params.a_scale, sub(orbit, params.y));
        if (cert.horizon < 0 || d < cert.min_distance) cert.min_distance = d;
        cert.horizon = j;
    }
    cert.ok = cert.horizon < 0 || cert.min_distance >= cert.threshold;
    return cert;
}

AvoidanceAlice::AvoidanceAlice(PrimeSet P, AffineMap A, Point y, Rational beta)
    : P_(std::move(P)), A_(std::move(A)), y_(std::move(y)), beta_(std::move(beta)) {}

std::string AvoidanceAlice::name() const { return "orbit-avoidance"; }

std::string AvoidanceAlice::descriptor() const {
    return "orbit-avoidance(map=" + A_.linear.str() + "x+" + point_str(A_.translation) +
           ", y=" + point_str(y_) + ", beta=" + beta_.str() + ")";
}

const AvoidanceParams& AvoidanceAlice::params() const {
    if (!params_) throw DomainError("orbit-avoidance: parameters not derived yet");
    return *params_;
}

AliceMove AvoidanceAlice::move(const Ball& current) {
    if (!params_) {
        r0_ = current.radius;
        params_ = avoidance_params(P_, A_, y_, r0_, beta_);
    }
    // Every block, idle or not, constrains the dominant place, so the whole
    // strategy stays escapable for any beta below that one place's ceiling.
    std::size_t home = params_->spectral.dominant_place;
    if (current.radius <= pow_int(params_->mu, k_next_) * r0_) {
        long k = k_next_++;
        WindowRecord rec;
        rec.k = k;
        rec.stage = stage_;
        std::optional<ResonantIndex> hit = find_resonant(P_, A_, *params_, current, k);
        if (hit) {
            rec.blocked = true;
            rec.hit = *hit;
            pending_ = records_.size();
            records_.push_back(rec);
            ResonantImage img = resonant_enclosure(P_, A_, hit->target, hit->j, params_->delta);
            return AliceMove{img.enclosure, "window k=" + std::to_string(k) +
                                                ": block j=" + std::to_string(hit->j) +
                                                ", z=" + hit->z.str()};
        }
        pending_ = records_.size();
        records_.push_back(rec);
        return AliceMove{make_cylinder(P_, current.center, beta_ * current.radius, home),
                         "window k=" + std::to_string(k) + ": clear"};
    }
    return AliceMove{make_cylinder(P_, current.center, beta_ * current.radius, home), "idle"};
}

void AvoidanceAlice::observe(const Ball& reply) {
    ++stage_;
    if (pending_) {
        records_[*pending_].reply = reply;
        records_[*pending_].has_reply = true;
        pending_.reset();
    }
}

PointAvoidanceAlice::PointAvoidanceAlice(PrimeSet P, std::vector<Point> targets, Rational beta)
    : P_(std::move(P)), targets_(std::move(targets)), beta_(std::move(beta)) {
    if (targets_.empty()) throw DomainError("point-avoidance: needs at least one target");
    if (beta_.sign() <= 0 || beta_ >= Rational(1, 3))
        throw DomainError("point-avoidance: beta must lie in (0, 1/3)");
    for (const Point& t : targets_) check_point(P_, t);
}

std::string PointAvoidanceAlice::name() const { return "point-avoidance"; }

std::string PointAvoidanceAlice::descriptor() const {
    std::string s = "point-avoidance(beta=" + beta_.str() + ", targets=";
    for (std::size_t i = 0; i < targets_.size(); ++i) {
        if (i) s += "; ";
        s += point_str(targets_[i]);
    }
    return s + ")";
}

AliceMove PointAvoidanceAlice::move(const Ball& current) {
    const Point& t = targets_[turn_ % targets_.size()];
    std::size_t idx = turn_ % targets_.size();
    ++turn_;
    return AliceMove{make_cylinder(P_, t, beta_ * current.radius, 0),
                     "block target " + std::to_string(idx)};
}

InterleaveAlice::InterleaveAlice(std::vector<std::unique_ptr<AliceStrategy>> children)
    : children_(std::move(children)) {
    if (children_.empty()) throw DomainError("interleave: needs at least one child");
}

std::string InterleaveAlice::name() const { return "interleave"; }

std::string InterleaveAlice::descriptor() const {
    std::string s = "interleave(";
    for (std::size_t i = 0; i < children_.size(); ++i) {
        if (i) s += "; ";
        s += children_[i]->descriptor();
    }
    return s + ")";
}

AliceMove InterleaveAlice::move(const Ball& current) {
    std::size_t idx = turn_ % children_.size();
    ++turn_;
    AliceMove m = children_[idx]->move(current);
    m.note = "child " + std::to_string(idx) + ": " + m.note;
    return m;
}

void InterleaveAlice::observe(const Ball& reply) {
    for (auto& c : children_) c->observe(reply);
}

std::unique_ptr<AliceStrategy> avoidance_alice(const PrimeSet& P, const AffineMap& A,
                                               std::vector<Point> targets,
                                               const Rational& beta) {
    if (targets.empty()) throw DomainError("avoidance: needs at least one target");
    for (const Point& t : targets) check_point(P, t);
    if (A.linear == Rational(1) || A.linear == Rational(-1)) {
        std::vector<Point> pts;
        auto add_unique = [&pts](Point q) {
            for (const Point& e : pts)
                if (points_equal(e, q)) return;
            pts.push_back(std::move(q));
        };
        if (A.linear == Rational(1)) {
            if (!points_equal(A.translation, zero_point(P)))
                throw DomainError("avoidance: a nontrivial translation has no periodic points");
            for (Point& t : targets) add_unique(std::move(t));
        } else {
            // period-2 orbit {y, a - y}: block both
            for (const Point& t : targets) {
                add_unique(t);
                add_unique(apply_inverse(P, A, t));
            }
        }
        return std::make_unique<PointAvoidanceAlice>(P, std::move(pts), beta);
    }
    if (targets.size() == 1)
        return std::make_unique<AvoidanceAlice>(P, A, std::move(targets[0]), beta);
    // Round-robin intersection: each child acts every T-th turn, so its
    // effective shrink rate per acting turn is beta^T.
    Rational beta_eff = pow_int(beta, static_cast<long>(targets.size()));
    std::vector<std::unique_ptr<AliceStrategy>> children;
    children.reserve(targets.size());
    for (Point& t : targets)
        children.push_back(std::make_unique<AvoidanceAlice>(P, A, std::move(t), beta_eff));
    return std::make_unique<InterleaveAlice>(std::move(children));
}

AliceMove NeverBlockAlice::move(const Ball& current) {
    // anchored well outside the ball, so any legal Bob reply works
    Point far = current.center;
    far.real = far.real + Rational(10);
    Rational eps = beta_ * current.radius;
    return AliceMove{Cylinder{far, eps, 0, eps}, "no-op block"};
}

EscapeBob::EscapeBob(PrimeSet P, Rational beta) : P_(std::move(P)), beta_(std::move(beta)) {}

std::optional<Ball> EscapeBob::move(const Ball& current, const Cylinder& blocked) {
    return try_escape_ball(P_, current, blocked, beta_);
}

StayPutBob::StayPutBob(PrimeSet P, Rational beta) : P_(std::move(P)), beta_(std::move(beta)) {}

std::optional<Ball> StayPutBob::move(const Ball& current, const Cylinder& blocked) {
    if (legal_bob(P_, current, blocked, current, beta_).ok) return current;
    return std::nullopt;
}

RandomBob::RandomBob(PrimeSet P, Rational beta, std::uint64_t seed)
    : P_(std::move(P)), beta_(std::move(beta)), seed_(seed), rng_(seed) {}

std::string RandomBob::descriptor() const {
    return "random(beta=" + beta_.str() + ", seed=" + std::to_string(seed_) + ")";
}

std::optional<Ball> RandomBob::move(const Ball& current, const Cylinder& blocked) {
    if (rng_.below(16) == 0) return std::nullopt;  // resign; the engine assists
    const Rational& r = current.radius;
    Rational one(1);
    for (int attempt = 0; attempt < 8; ++attempt) {
        Rational radius = beta_ * r;
        if (rng_.below(4) == 0) radius = (beta_ + (one - beta_) / Rational(8)) * r;
        Point c = current.center;
        if (blocked.place == 0) {
            long num = rng_.range(-31, 31);
            c.real = c.real + Rational(num, 32) * (one - beta_) * r;
        } else {
            unsigned long p = P_.place_prime(blocked.place);
            long f = padic_floor(r, p).exponent;
            long depth = rng_.coin() ? f + 1 : f;
            long u = p > 2 ? rng_.range(1, static_cast<long>(p) - 1) : 1;
            c.padic[blocked.place - 1] =
                c.padic[blocked.place - 1] + Rational(u) * prime_power(p, -depth);
        }
        Ball cand{c, radius, true};
        if (legal_bob(P_, current, blocked, cand, beta_).ok) return cand;
    }
    return try_escape_ball(P_, current, blocked, beta_);
}

StrongFromCylinderAlice::StrongFromCylinderAlice(PrimeSet P, Rational alpha, Rational gamma,
                                                 std::unique_ptr<AliceStrategy> inner)
    : P_(std::move(P)), alpha_(std::move(alpha)), gamma_(std::move(gamma)),
      inner_(std::move(inner)) {
    Rational cap = min(Rational(1, 3), Rational(1, P_.largest()));
    if (!(Rational(0) < alpha_) || !(alpha_ < cap))
        throw DomainError("strong adapter: alpha must lie in ]0, min(1/3, 1/p_max)[");
    if (!(Rational(0) < gamma_) || !(gamma_ < Rational(1)))
        throw DomainError("strong adapter: gamma must lie in ]0, 1[");
}

std::string StrongFromCylinderAlice::descriptor() const {
    return "strong-adapter(alpha=" + alpha_.str() + ", gamma=" + gamma_.str() +
           ", inner=" + inner_->descriptor() + ")";
}

Ball StrongFromCylinderAlice::move(const Ball& current) {
    AliceMove am = inner_->move(current);
    consulted_.push_back(am.cylinder);
    const Cylinder& c = am.cylinder;
    const Rational& r = current.radius;
    Rational ar = alpha_ * r;
    std::vector<Ball> cands;
    cands.push_back(Ball{current.center, ar, true});
    if (c.place == 0) {
        Rational off = (Rational(1) - alpha_) * r;
        Point right = current.center;
        right.real = right.real + off;
        Point left = current.center;
        left.real = left.real - off;
        if (c.anchor.real <= current.center.real) {
            cands.push_back(Ball{right, ar, true});
            cands.push_back(Ball{left, ar, true});
        } else {
            cands.push_back(Ball{left, ar, true});
            cands.push_back(Ball{right, ar, true});
        }
    } else {
        unsigned long p = P_.place_prime(c.place);
        long f = padic_floor(r, p).exponent;
        Point z = current.center;
        z.padic[c.place - 1] = z.padic[c.place - 1] + prime_power(p, -(f + 1));
        cands.push_back(Ball{z, ar, true});
    }
    for (const Ball& cand : cands) {
        if (!legal_strong_alice(P_, current, cand, alpha_).ok) continue;
        if (!ball_cylinder_disjoint(P_, cand, c)) continue;
        return cand;
    }
    throw InvariantViolation("strong adapter: no admissible sub-ball avoids the consulted block");
}

void StrongFromCylinderAlice::observe(const Ball& reply) { inner_->observe(reply); }

TransferParams transfer_params(const PrimeSet& P, const AffineMap& psi,
                               const Rational& beta) {
    if (psi.linear.is_zero()) throw DomainError("transfer: linear part must be nonzero");
    if (!P.in_ring(psi.linear) || !P.in_ring(Rational(1) / psi.linear))
        throw DomainError("transfer: the map must be invertible over the ring");
    Rational cap = min(Rational(1, 3), Rational(1, P.largest()));
    if (!(Rational(0) < beta) || !(beta < cap))
        throw DomainError("transfer: beta must lie in ]0, min(1/3, 1/p_max)[");
    auto spread = [&P](const Rational& d) {
        Rational m = d.abs();
        for (std::size_t j = 0; j < P.prime_count(); ++j)
            m = max(m, padic_abs(d, P.prime(j)));
        return m;
    };
    TransferParams tp;
    tp.lambda_psi = spread(psi.linear);
    tp.lambda_psi_inv = spread(Rational(1) / psi.linear);
    Rational one(1);
    if (tp.lambda_psi == one && tp.lambda_psi_inv == one) {
        // |D| = 1 at every place: the pullback is an exact translate
        tp.isometry = true;
        tp.n = 1;
        tp.beta_prime = beta;
        tp.eta = one;
        return tp;
    }
    tp.n = 2;
    Rational ll = tp.lambda_psi * tp.lambda_psi_inv * (beta + one);
    while (ll * pow_int(beta, tp.n - 2) >= one) ++tp.n;
    tp.beta_prime = pow_int(beta, tp.n);
    tp.eta = (beta + one) * pow_int(beta, tp.n - 1);
    if (tp.lambda_psi * tp.lambda_psi_inv * tp.eta >= beta)
        throw InvariantViolation("transfer: pullback radius bound failed");
    return tp;
}

TransferAlice::TransferAlice(PrimeSet P, AffineMap psi, Rational beta, TransferParams tp,
                             std::unique_ptr<AliceStrategy> inner)
    : P_(std::move(P)), psi_(std::move(psi)), beta_(std::move(beta)), tp_(std::move(tp)),
      inner_(std::move(inner)) {}

std::string TransferAlice::descriptor() const {
    return "transfer(psi=" + psi_.linear.str() + "x+" + point_str(psi_.translation) +
           ", beta=" + beta_.str() + ", n=" + std::to_string(tp_.n) +
           ", inner=" + inner_->descriptor() + ")";
}

AliceMove TransferAlice::move(const Ball& current) {
    const Rational& r = current.radius;
    if (!started_) {
        // start once the image ball has radius below 1/2
        if (Rational(2) * tp_.lambda_psi * r < Rational(1)) {
            started_ = true;
            return consult(current);
        }
        return AliceMove{idle_block(P_, current, beta_), "transfer: waiting for start radius"};
    }
    if (r / mark_ < pow_int(beta_, tp_.n - 1)) return consult(current);
    return AliceMove{idle_block(P_, current, beta_), "transfer: between marks"};
}

AliceMove TransferAlice::consult(const Ball& current) {
    mark_ = current.radius;
    Ball image{apply(P_, psi_, current.center), tp_.lambda_psi * current.radius, true};
    if (!consults_.empty()) inner_->observe(image);
    AliceMove im = inner_->move(image);
    Rational eps = tp_.isometry
                       ? im.cylinder.epsilon
                       : tp_.lambda_psi * tp_.lambda_psi_inv * tp_.eta * current.radius;
    Cylinder pullback =
        make_cylinder(P_, apply_inverse(P_, psi_, im.cylinder.anchor), eps, im.cylinder.place);
    ConsultRecord rec;
    rec.outer = current;
    rec.inner_ball = image;
    rec.inner_cyl = im.cylinder;
    rec.pullback = pullback;
    consults_.push_back(std::move(rec));
    return AliceMove{pullback, "transfer consult " + std::to_string(consults_.size()) + ": " +
                                   im.note};
}

std::vector<WindowAuditEntry> transfer_window_entries(
    const PrimeSet& P, const AffineMap& psi,
    const std::vector<WindowRecord>& inner_records,
    const std::vector<TransferAlice::ConsultRecord>& consults) {
    std::vector<WindowAuditEntry> entries;
    for (const WindowRecord& rec : inner_records) {
        if (!rec.has_reply) continue;
        // the record's reply is the image ball of consult stage+1; the exact
        // image box of that consult's outer ball is a subset and still
        // contains the image of the limit point
        std::size_t ci = rec.stage + 1;
        if (ci >= consults.size()) continue;
        entries.push_back({rec.k, map_box(P, psi, 1, ball_box(P, consults[ci].outer))});
    }
    return entries;
}

}  // namespace solenoid
