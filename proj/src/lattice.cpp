#include "solenoid/lattice.hpp"

#include <algorithm>

#include "solenoid/errors.hpp"

namespace solenoid {

bool in_scaled_ring(const PrimeSet& P, const Rational& scale, const Rational& q) {
    if (scale.is_zero()) throw DomainError("in_scaled_ring: scale must be nonzero");
    return P.in_ring(q / scale);
}

std::vector<Rational> lattice_enumerate(const PrimeSet& P, const Rational& scale,
                                        const LatticeBox& box, std::size_t limit) {
    if (scale.is_zero()) throw DomainError("lattice_enumerate: scale must be nonzero");
    if (box.windows.size() != P.prime_count())
        throw DomainError("lattice_enumerate: need one window per prime");
    std::vector<Rational> out;
    if (box.real_lo > box.real_hi) return out;

    // Write z = scale * w with w in the ring.  Each window turns into a
    // valuation bound v_p(w - q_p) >= g_p.  D clears every denominator w can
    // carry, so kappa = D * w is an integer forced into one residue class
    // modulo M = prod p^(h_p); the class is a superset of the solutions and
    // each candidate is verified exactly below.
    std::size_t k = P.prime_count();
    std::vector<Rational> q(k);
    std::vector<long> g(k), d(k), h(k);
    Int D(1);
    for (std::size_t j = 0; j < k; ++j) {
        unsigned long p = P.prime(j);
        const PlaceWindow& win = box.windows[j];
        if (win.radius.sign() <= 0) throw DomainError("lattice_enumerate: window radius must be positive");
        long c = -padic_floor(win.radius, p).exponent;
        g[j] = c - padic_valuation(scale, p);
        q[j] = win.center / scale;
        long vq_or_g = q[j].is_zero() ? g[j] : std::min(g[j], padic_valuation(q[j], p));
        d[j] = std::max(0L, -vq_or_g);
        h[j] = g[j] + d[j];
        if (d[j] > 0) {
            Int f;
            mpz_ui_pow_ui(f.get_mpz_t(), p, (unsigned long)d[j]);
            D *= f;
        }
    }

    Int M(1), r(0);
    for (std::size_t j = 0; j < k; ++j) {
        if (h[j] <= 0) continue;
        unsigned long p = P.prime(j);
        Int m;
        mpz_ui_pow_ui(m.get_mpz_t(), p, (unsigned long)h[j]);
        // kappa == D*q_j (mod p^h): D*q_j is a p-adic integer here, so its
        // denominator is invertible modulo p^h.
        Rational dq = Rational(D) * q[j];
        Int num = dq.num() % m;
        Int den_inv;
        if (mpz_invert(den_inv.get_mpz_t(), dq.den().get_mpz_t(), m.get_mpz_t()) == 0)
            throw InvariantViolation("lattice_enumerate: residue denominator not invertible");
        Int rj = (num * den_inv) % m;
        // Merge kappa == r (mod M) with kappa == rj (mod m); M and m coprime.
        Int Minv;
        mpz_invert(Minv.get_mpz_t(), M.get_mpz_t(), m.get_mpz_t());
        Int t = ((rj - r) * Minv) % m;
        mpz_mod(t.get_mpz_t(), t.get_mpz_t(), m.get_mpz_t());
        r += M * t;
        M *= m;
    }

    Rational wlo = box.real_lo / scale, whi = box.real_hi / scale;
    if (scale.sign() < 0) std::swap(wlo, whi);
    Int klo = ceil_int(Rational(D) * wlo);
    Int khi = floor_int(Rational(D) * whi);
    if (klo > khi) return out;

    Int off = r - klo;
    mpz_mod(off.get_mpz_t(), off.get_mpz_t(), M.get_mpz_t());
    Int first = klo + off;
    if (first > khi) return out;
    Int count = (khi - first) / M + 1;
    if (count > Int((unsigned long)limit))
        throw DomainError("lattice_enumerate: " + count.get_str() + " candidates exceeds limit");

    for (Int kappa = first; kappa <= khi; kappa += M) {
        Rational z = scale * Rational(kappa, D);
        if (z < box.real_lo || z > box.real_hi) continue;
        bool ok = true;
        for (std::size_t j = 0; j < k; ++j) {
            if (padic_abs(z - box.windows[j].center, P.prime(j)) > box.windows[j].radius) {
                ok = false;
                break;
            }
        }
        if (ok) out.push_back(z);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Rational> lattice_points_near(const PrimeSet& P, const Rational& scale,
                                          const Point& x, const Rational& r,
                                          std::size_t limit) {
    check_point(P, x);
    if (r.sign() < 0) return {};
    if (r.is_zero()) {
        // Degenerate box: the only candidate is x itself, when diagonal.
        for (const auto& v : x.padic)
            if (v != x.real) return {};
        if (in_scaled_ring(P, scale, x.real)) return {x.real};
        return {};
    }
    LatticeBox box;
    box.real_lo = x.real - r;
    box.real_hi = x.real + r;
    for (std::size_t j = 0; j < P.prime_count(); ++j) {
        unsigned long p = P.prime(j);
        box.windows.push_back(PlaceWindow{x.padic[j], Rational((long)p) * r});
    }
    return lattice_enumerate(P, scale, box, limit);
}

namespace {

// A lattice point near x, found constructively: pick per-prime matching
// depths m_p so the place errors |scale|_p * p^(-m_p-1) balance the real
// rounding pitch |scale| * prod p^(m_p), solve the congruences for a ring
// element agreeing with each coordinate of x/scale to depth m_p, then shift
// by the pitch to line up the real coordinate.  The resulting distance is
// bounded by a constant depending only on scale, never on the magnitude of
// x, which keeps the verified search box in lattice_distance small.
Rational ring_point_near(const PrimeSet& P, const Rational& scale, const Point& x) {
    std::size_t k = P.prime_count();
    std::vector<long> m(k, 0);
    Rational pitch = scale.abs();
    std::vector<Rational> err(k);
    for (std::size_t j = 0; j < k; ++j)
        err[j] = padic_abs(scale, P.prime(j)) / Rational((long)P.prime(j));
    for (;;) {
        std::size_t worst = k;
        for (std::size_t j = 0; j < k; ++j)
            if (err[j] > pitch && (worst == k || err[j] > err[worst])) worst = j;
        if (worst == k) break;
        Rational p((long)P.prime(worst));
        ++m[worst];
        err[worst] = err[worst] / p;
        pitch = pitch * p;
    }

    Int G(1), M(1), C(0);
    std::vector<Rational> u(k);
    std::vector<long> e(k);
    for (std::size_t j = 0; j < k; ++j) {
        unsigned long p = P.prime(j);
        u[j] = x.padic[j] / scale;
        long s = u[j].is_zero() ? 0 : std::max(0L, -padic_valuation(u[j], p));
        e[j] = m[j] + s;
        if (s > 0) {
            Int f;
            mpz_ui_pow_ui(f.get_mpz_t(), p, (unsigned long)s);
            G *= f;
        }
    }
    for (std::size_t j = 0; j < k; ++j) {
        if (e[j] <= 0) continue;
        unsigned long p = P.prime(j);
        Int mod;
        mpz_ui_pow_ui(mod.get_mpz_t(), p, (unsigned long)e[j]);
        // C/G == u_j to depth m_j means C == G*u_j mod p^e; G*u_j is a
        // p-adic integer so its denominator inverts.
        Rational gu = Rational(G) * u[j];
        Int num = gu.num() % mod;
        Int den_inv;
        if (mpz_invert(den_inv.get_mpz_t(), gu.den().get_mpz_t(), mod.get_mpz_t()) == 0)
            throw InvariantViolation("ring_point_near: residue denominator not invertible");
        Int rj = (num * den_inv) % mod;
        Int Minv;
        mpz_invert(Minv.get_mpz_t(), M.get_mpz_t(), mod.get_mpz_t());
        Int t = ((rj - C) * Minv) % mod;
        mpz_mod(t.get_mpz_t(), t.get_mpz_t(), mod.get_mpz_t());
        C += M * t;
        M *= mod;
    }
    // Shifting by multiples of M/G = prod p^(m_j) preserves every congruence.
    Rational w0 = Rational(C) / Rational(G);
    Rational step = scale * Rational(M) / Rational(G);
    Int n = floor_int((x.real - scale * w0) / step + Rational(1, 2));
    return scale * w0 + step * Rational(n);
}

}  // namespace

Rational lattice_distance(const PrimeSet& P, const Rational& scale, const Point& x) {
    check_point(P, x);
    if (scale.is_zero()) throw DomainError("lattice_distance: scale must be nonzero");
    Rational best(-1);
    for (const Rational& z : {Rational(0), scale * Rational(floor_int(x.real / scale)),
                              scale * Rational(ceil_int(x.real / scale)),
                              ring_point_near(P, scale, x)}) {
        Rational d = distance(P, diagonal(P, z), x);
        if (best.sign() < 0 || d < best) best = d;
    }
    if (best.is_zero()) return best;
    Rational out = best;
    for (const Rational& z : lattice_points_near(P, scale, x, best)) {
        Rational d = distance(P, diagonal(P, z), x);
        if (d < out) out = d;
    }
    return out;
}

Rational lattice_min_gap(const PrimeSet& P, const Rational& scale) {
    if (scale.is_zero()) throw DomainError("lattice_min_gap: scale must be nonzero");
    // scale * den(scale) = num(scale) is a nonzero element of the scaled
    // ring, and an integer n has d(0, diag(n)) = |n|; that seeds the search.
    Rational seed = Rational(scale.num()).abs();
    Point origin = zero_point(P);
    Rational best(0);
    for (const Rational& z : lattice_points_near(P, scale, origin, seed)) {
        if (z.is_zero()) continue;
        Rational d = distance(P, diagonal(P, z), origin);
        if (best.is_zero() || d < best) best = d;
    }
    if (best.is_zero()) throw InvariantViolation("lattice_min_gap: seed box missed every nonzero point");
    return best;
}

}  // namespace solenoid
