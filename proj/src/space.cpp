#include "solenoid/space.hpp"

#include <sstream>

#include "solenoid/errors.hpp"

namespace solenoid {

PrimeSet::PrimeSet(std::vector<unsigned long> primes) : primes_(std::move(primes)) {
    if (primes_.empty()) throw DomainError("PrimeSet: need at least one prime");
    for (std::size_t j = 0; j < primes_.size(); ++j) {
        if (!is_prime(primes_[j]))
            throw DomainError("PrimeSet: " + std::to_string(primes_[j]) + " is not prime");
        if (j > 0 && primes_[j] <= primes_[j - 1])
            throw DomainError("PrimeSet: primes must be strictly increasing");
    }
}

bool PrimeSet::in_ring(const Rational& q) const {
    Int den = q.den();
    for (unsigned long p : primes_) {
        while (mpz_divisible_ui_p(den.get_mpz_t(), p)) {
            mpz_divexact_ui(den.get_mpz_t(), den.get_mpz_t(), p);
        }
    }
    return den == 1;
}

Point zero_point(const PrimeSet& P) {
    return Point{Rational(0), std::vector<Rational>(P.prime_count(), Rational(0))};
}

Point diagonal(const PrimeSet& P, const Rational& z) {
    return Point{z, std::vector<Rational>(P.prime_count(), z)};
}

Point add(const Point& a, const Point& b) {
    if (a.padic.size() != b.padic.size()) throw DomainError("Point add: mismatched places");
    Point r{a.real + b.real, {}};
    r.padic.reserve(a.padic.size());
    for (std::size_t j = 0; j < a.padic.size(); ++j) r.padic.push_back(a.padic[j] + b.padic[j]);
    return r;
}

Point sub(const Point& a, const Point& b) {
    if (a.padic.size() != b.padic.size()) throw DomainError("Point sub: mismatched places");
    Point r{a.real - b.real, {}};
    r.padic.reserve(a.padic.size());
    for (std::size_t j = 0; j < a.padic.size(); ++j) r.padic.push_back(a.padic[j] - b.padic[j]);
    return r;
}

Point scale(const Rational& c, const Point& x) {
    Point r{c * x.real, {}};
    r.padic.reserve(x.padic.size());
    for (const auto& v : x.padic) r.padic.push_back(c * v);
    return r;
}

bool points_equal(const Point& a, const Point& b) {
    if (a.real != b.real || a.padic.size() != b.padic.size()) return false;
    for (std::size_t j = 0; j < a.padic.size(); ++j)
        if (a.padic[j] != b.padic[j]) return false;
    return true;
}

void check_point(const PrimeSet& P, const Point& x) {
    if (x.padic.size() != P.prime_count())
        throw DomainError("Point has " + std::to_string(x.padic.size()) + " p-adic coordinates, prime set has " +
                          std::to_string(P.prime_count()));
}

Rational distance(const PrimeSet& P, const Point& a, const Point& b) {
    check_point(P, a);
    check_point(P, b);
    Rational d = (a.real - b.real).abs();
    for (std::size_t j = 0; j < P.prime_count(); ++j) {
        unsigned long p = P.prime(j);
        Rational term = padic_abs(a.padic[j] - b.padic[j], p) / Rational((long)p);
        d = max(d, term);
    }
    return d;
}

Rational cylinder_normalize(const PrimeSet& P, const Rational& epsilon, std::size_t place) {
    if (epsilon.sign() <= 0) throw DomainError("cylinder: radius must be positive");
    if (place >= P.places()) throw DomainError("cylinder: place index out of range");
    if (place == 0) return epsilon;
    unsigned long p = P.place_prime(place);
    return padic_floor_strict(Rational((long)p) * epsilon, p).value / Rational((long)p);
}

Cylinder make_cylinder(const PrimeSet& P, Point anchor, const Rational& epsilon, std::size_t place) {
    check_point(P, anchor);
    Rational norm = cylinder_normalize(P, epsilon, place);
    return Cylinder{std::move(anchor), epsilon, place, norm};
}

CoordinateBall ball_projection(const PrimeSet& P, const Ball& b, std::size_t place) {
    check_point(P, b.center);
    if (b.radius.sign() <= 0) throw DomainError("ball: radius must be positive");
    if (place >= P.places()) throw DomainError("ball projection: place index out of range");
    if (place == 0) return CoordinateBall{b.center.real, b.radius, b.closed};
    unsigned long p = P.place_prime(place);
    Rational scaled = Rational((long)p) * b.radius;
    // |w - c|_p takes only power-of-p values, so the projection is the closed
    // coordinate ball of the adjacent power radius either way.
    Rational coord = b.closed ? padic_floor(scaled, p).value : padic_floor_strict(scaled, p).value;
    return CoordinateBall{b.center.padic[place - 1], coord, true};
}

CoordinateBall cylinder_projection(const PrimeSet& P, const Cylinder& c) {
    check_point(P, c.anchor);
    if (c.place == 0) return CoordinateBall{c.anchor.real, c.normalized_radius, false};
    unsigned long p = P.place_prime(c.place);
    return CoordinateBall{c.anchor.padic[c.place - 1], Rational((long)p) * c.normalized_radius, true};
}

bool ball_contains_point(const PrimeSet& P, const Ball& b, const Point& x) {
    check_point(P, b.center);
    check_point(P, x);
    Rational dr = (x.real - b.center.real).abs();
    if (b.closed ? dr > b.radius : dr >= b.radius) return false;
    for (std::size_t place = 1; place < P.places(); ++place) {
        CoordinateBall proj = ball_projection(P, b, place);
        unsigned long p = P.place_prime(place);
        if (padic_abs(x.padic[place - 1] - proj.center, p) > proj.radius) return false;
    }
    return true;
}

bool cylinder_contains_point(const PrimeSet& P, const Cylinder& c, const Point& x) {
    check_point(P, c.anchor);
    check_point(P, x);
    CoordinateBall proj = cylinder_projection(P, c);
    if (c.place == 0) return (x.real - proj.center).abs() < proj.radius;
    unsigned long p = P.place_prime(c.place);
    return padic_abs(x.padic[c.place - 1] - proj.center, p) <= proj.radius;
}

namespace {

// Interval [c - r, c + r], open or closed, as one coordinate of a product set.
struct Iv {
    Rational lo, hi;
    bool closed;
};

Iv to_iv(const CoordinateBall& b) { return Iv{b.center - b.radius, b.center + b.radius, b.closed}; }

bool iv_contains(const Iv& outer, const Iv& inner) {
    if (inner.lo < outer.lo || inner.hi > outer.hi) return false;
    if (!outer.closed && inner.closed) {
        if (inner.lo == outer.lo || inner.hi == outer.hi) return false;
    }
    return true;
}

bool iv_disjoint(const Iv& a, const Iv& b) {
    if (a.hi < b.lo || b.hi < a.lo) return true;
    if (a.hi == b.lo) return !(a.closed && b.closed);
    if (b.hi == a.lo) return !(a.closed && b.closed);
    return false;
}

}  // namespace

bool ball_contains(const PrimeSet& P, const Ball& outer, const Ball& inner) {
    check_point(P, outer.center);
    check_point(P, inner.center);
    CoordinateBall po = ball_projection(P, outer, 0);
    CoordinateBall pi = ball_projection(P, inner, 0);
    if (!iv_contains(to_iv(po), to_iv(pi))) return false;
    for (std::size_t place = 1; place < P.places(); ++place) {
        po = ball_projection(P, outer, place);
        pi = ball_projection(P, inner, place);
        unsigned long p = P.place_prime(place);
        // Ultrametric containment: closed coordinate balls are nested exactly
        // when the smaller radius fits and the centers are close.
        if (pi.radius > po.radius) return false;
        if (padic_abs(pi.center - po.center, p) > po.radius) return false;
    }
    return true;
}

bool ball_cylinder_disjoint(const PrimeSet& P, const Ball& b, const Cylinder& c) {
    CoordinateBall pb = ball_projection(P, b, c.place);
    CoordinateBall pc = cylinder_projection(P, c);
    if (c.place == 0) return iv_disjoint(to_iv(pb), to_iv(pc));
    unsigned long p = P.place_prime(c.place);
    return padic_abs(pb.center - pc.center, p) > max(pb.radius, pc.radius);
}

Rational coordinate_ball_distance(const PrimeSet& P, std::size_t place,
                                  const CoordinateBall& a, const CoordinateBall& b) {
    if (place == 0) {
        Rational gap = (a.center - b.center).abs() - a.radius - b.radius;
        return gap.sign() > 0 ? gap : Rational(0);
    }
    unsigned long p = P.place_prime(place);
    Rational sep = padic_abs(a.center - b.center, p);
    if (sep <= max(a.radius, b.radius)) return Rational(0);
    // Disjoint closed ultrametric balls: every cross pair realises the center
    // distance, so the set distance is exactly the metric center distance.
    return sep / Rational((long)p);
}

Rational ball_distance(const PrimeSet& P, const Ball& a, const Ball& b) {
    Rational d(0);
    for (std::size_t place = 0; place < P.places(); ++place) {
        CoordinateBall pa = ball_projection(P, a, place);
        CoordinateBall pb = ball_projection(P, b, place);
        d = max(d, coordinate_ball_distance(P, place, pa, pb));
    }
    return d;
}

std::string point_str(const Point& x) {
    std::ostringstream os;
    os << "(" << x.real.str() << ";";
    for (std::size_t j = 0; j < x.padic.size(); ++j) os << (j ? "," : " ") << x.padic[j].str();
    os << ")";
    return os.str();
}

}  // namespace solenoid
