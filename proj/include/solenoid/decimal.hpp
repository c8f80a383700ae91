#pragma once

#include <boost/multiprecision/cpp_dec_float.hpp>

#include <string>

#include "solenoid/rational.hpp"

namespace solenoid {

/// 50-digit decimal used exclusively for logarithmic *reporting* (theta
/// sums, dimension bounds, bound margins).  Set-theoretic and legality
/// decisions never touch this type.
using Decimal = boost::multiprecision::cpp_dec_float_50;

inline Decimal to_decimal(const Rational& q) {
    return Decimal(q.num().get_str()) / Decimal(q.den().get_str());
}

/// Natural log of a positive rational, computed as ln(num) - ln(den) so the
/// argument of each log stays well inside the mantissa.
inline Decimal ln_rational(const Rational& q) {
    if (q.sign() <= 0) throw DomainError("ln_rational: argument must be positive");
    return log(Decimal(q.num().get_str())) - log(Decimal(q.den().get_str()));
}

inline std::string decimal_str(const Decimal& d, unsigned digits = 50) {
    return d.str(digits);
}

}  // namespace solenoid
