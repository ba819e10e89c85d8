#include <cmdp/errors.hpp>
#include <cmdp/rational.hpp>

#include <cctype>
#include <cmath>
#include <string>

namespace cmdp {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t start = s.find_first_not_of(" \t");
  if (start == std::string::npos) throw InvalidInput("empty rational literal");
  s = s.substr(start);

  try {
    if (auto dot = s.find('.'); dot != std::string::npos) {
      if (s.find('/') != std::string::npos) throw InvalidInput("malformed rational '" + s + "'");
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      if (digits.empty() || digits == "-") throw InvalidInput("malformed rational '" + s + "'");
      mpz_class num(digits, 10);
      mpz_class den;
      mpz_ui_pow_ui(den.get_mpz_t(), 10, s.size() - dot - 1);
      Rational q(num, den);
      q.canonicalize();
      return q;
    }
    Rational q(s, 10);
    if (q.get_den() == 0) throw InvalidInput("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw InvalidInput("malformed rational '" + s + "'");
  }
}

std::string to_string(const Rational& q) { return q.get_str(10); }

Rational rationalize(double x, long max_den) {
  if (!std::isfinite(x)) throw InvalidInput("cannot rationalize a non-finite value");
  // Continued-fraction convergents, stopping before the denominator bound.
  long double r = x;
  mpz_class h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  for (int iter = 0; iter < 64; ++iter) {
    long double a = std::floor(r);
    mpz_class ai(static_cast<double>(a));
    mpz_class h2 = ai * h1 + h0;
    mpz_class k2 = ai * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    long double frac = r - a;
    if (frac < 1e-18L) break;
    r = 1.0L / frac;
  }
  Rational q(h1, k1);
  q.canonicalize();
  return q;
}

Rational pow2_neg(unsigned k) {
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, k);
  return Rational(mpz_class(1), den);
}

}  // namespace cmdp
