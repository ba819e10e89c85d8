#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace cmdp {

using Rational = mpq_class;

/// num/den in lowest terms. Prefer this over the two-argument mpq_class
/// constructor, which does not canonicalize.
inline Rational ratio(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Parses "num/den", "num" or a finite decimal such as "0.25" into a canonical rational.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

/// Best rational approximation with denominator at most max_den (continued fractions).
Rational rationalize(double x, long max_den = 1'000'000);

/// 2^{-k} as an exact rational.
Rational pow2_neg(unsigned k);

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace cmdp
