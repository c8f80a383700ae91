#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>

#include "solenoid/errors.hpp"

namespace solenoid {

using Int = mpz_class;

/// Arbitrary-precision rational in canonical form: gcd(num, den) = 1 and
/// den > 0, enforced on every construction path.  All comparisons and
/// arithmetic are exact; nothing in the library rounds through floating
/// point when making a set-theoretic or legality decision.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(int n) : v_(n) {}
    Rational(long n) : v_(n) {}
    Rational(unsigned long n) : v_(n) {}
    Rational(const Int& n) : v_(n) {}

    Rational(const Int& num, const Int& den) : v_(num, den) {
        if (den == 0) throw DomainError("Rational: zero denominator");
        v_.canonicalize();
    }
    Rational(long num, long den) : Rational(Int(num), Int(den)) {}

    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    /// Parses "num" or "num/den" with optional leading '-'.
    static Rational parse(const std::string& text);

    Int num() const { return v_.get_num(); }
    Int den() const { return v_.get_den(); }
    const mpq_class& raw() const { return v_; }

    int sign() const { return sgn(v_); }
    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }

    Rational abs() const {
        Rational r = *this;
        if (sgn(r.v_) < 0) r.v_ = -r.v_;
        return r;
    }

    Rational reciprocal() const {
        if (is_zero()) throw DomainError("Rational: reciprocal of zero");
        return Rational(den(), num());
    }

    /// Canonical text form: "num/den", with "/den" omitted when den == 1.
    std::string str() const {
        if (v_.get_den() == 1) return v_.get_num().get_str();
        return v_.get_num().get_str() + "/" + v_.get_den().get_str();
    }

    double approx() const { return v_.get_d(); }

    friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ + b.v_)); }
    friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ - b.v_)); }
    friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ * b.v_)); }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw DomainError("Rational: division by zero");
        return Rational(mpq_class(a.v_ / b.v_));
    }
    Rational operator-() const { return Rational(mpq_class(-v_)); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

    friend bool operator==(const Rational& a, const Rational& b) { return mpq_equal(a.v_.get_mpq_t(), b.v_.get_mpq_t()) != 0; }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) { return mpq_cmp(a.v_.get_mpq_t(), b.v_.get_mpq_t()) < 0; }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

private:
    mpq_class v_;
};

/// base^e for integer e of either sign; base must be nonzero when e < 0.
Rational pow_int(const Rational& base, long e);

/// p^e as an exact rational, p >= 2.
Rational prime_power(unsigned long p, long e);

/// Floor/ceil of an exact rational as an integer.
Int floor_int(const Rational& q);
Int ceil_int(const Rational& q);

inline Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace solenoid
