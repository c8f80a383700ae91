#include "solenoid/padic.hpp"

#include <cctype>
#include <cmath>

namespace solenoid {

Rational Rational::parse(const std::string& text) {
    if (text.empty()) throw DomainError("Rational::parse: empty string");
    const auto slash = text.find('/');
    auto check_int = [&](const std::string& s) {
        if (s.empty()) throw DomainError("Rational::parse: bad literal '" + text + "'");
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) throw DomainError("Rational::parse: bad literal '" + text + "'");
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i])))
                throw DomainError("Rational::parse: bad literal '" + text + "'");
    };
    if (slash == std::string::npos) {
        check_int(text);
        return Rational(Int(text));
    }
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    check_int(num);
    check_int(den);
    return Rational(Int(num), Int(den));
}

Rational pow_int(const Rational& base, long e) {
    if (e == 0) return Rational(1);
    if (base.is_zero()) {
        if (e < 0) throw DomainError("pow_int: zero base with negative exponent");
        return Rational(0);
    }
    const unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
    Int num, den;
    mpz_pow_ui(num.get_mpz_t(), base.num().get_mpz_t(), k);
    mpz_pow_ui(den.get_mpz_t(), base.den().get_mpz_t(), k);
    return e > 0 ? Rational(num, den) : Rational(den, num);
}

Rational prime_power(unsigned long p, long e) {
    if (p < 2) throw DomainError("prime_power: base must be >= 2");
    Int v;
    mpz_ui_pow_ui(v.get_mpz_t(), p, static_cast<unsigned long>(e < 0 ? -e : e));
    return e >= 0 ? Rational(v) : Rational(Int(1), v);
}

Int floor_int(const Rational& q) {
    Int out;
    mpz_fdiv_q(out.get_mpz_t(), q.num().get_mpz_t(), q.den().get_mpz_t());
    return out;
}

Int ceil_int(const Rational& q) {
    Int out;
    mpz_cdiv_q(out.get_mpz_t(), q.num().get_mpz_t(), q.den().get_mpz_t());
    return out;
}

bool is_prime(unsigned long n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (unsigned long d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

long padic_valuation(const Rational& q, unsigned long p) {
    if (q.is_zero()) throw DomainError("padic_valuation: zero has no finite valuation");
    if (p < 2) throw DomainError("padic_valuation: prime must be >= 2");
    const Int pz(static_cast<unsigned long>(p));
    Int tmp;
    const unsigned long vn = mpz_remove(tmp.get_mpz_t(), q.num().get_mpz_t(), pz.get_mpz_t());
    const unsigned long vd = mpz_remove(tmp.get_mpz_t(), q.den().get_mpz_t(), pz.get_mpz_t());
    return static_cast<long>(vn) - static_cast<long>(vd);
}

Rational padic_abs(const Rational& q, unsigned long p) {
    if (q.is_zero()) return Rational(0);
    return prime_power(p, -padic_valuation(q, p));
}

PowerFloor padic_floor(const Rational& r, unsigned long p) {
    if (r.sign() <= 0) throw DomainError("padic_floor: argument must be positive");
    if (p < 2) throw DomainError("padic_floor: base must be >= 2");
    // A floating log_p estimate lands within +-1 of the true exponent for
    // any base; exact comparisons finish the job.
    signed long en = 0, ed = 0;
    Int num = r.num(), den = r.den();
    const double mn = mpz_get_d_2exp(&en, num.get_mpz_t());
    const double md = mpz_get_d_2exp(&ed, den.get_mpz_t());
    const double log2r = (std::log2(mn) + static_cast<double>(en)) -
                         (std::log2(md) + static_cast<double>(ed));
    long j = static_cast<long>(std::floor(log2r / std::log2(static_cast<double>(p))));
    Rational value = prime_power(p, j);
    const Rational pq(static_cast<unsigned long>(p));
    while (value > r) {
        value /= pq;
        --j;
    }
    while (value * pq <= r) {
        value *= pq;
        ++j;
    }
    return PowerFloor{p, j, value};
}

PowerFloor padic_floor_strict(const Rational& r, unsigned long p) {
    PowerFloor f = padic_floor(r, p);
    if (f.value == r) {
        f.value /= Rational(static_cast<unsigned long>(p));
        f.exponent -= 1;
    }
    return f;
}

}  // namespace solenoid
