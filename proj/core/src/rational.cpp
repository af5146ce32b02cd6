#include "ncgkit/rational.hpp"

#include "ncgkit/errors.hpp"

namespace ncg {

BigInt rat_floor(const Rational& q) {
  BigInt n = numerator(q), d = denominator(q);
  BigInt f = n / d;                 // truncates toward zero
  if (n < 0 && f * d != n) f -= 1;  // correct for negatives
  return f;
}

Rational rat_mod(const Rational& q, const Rational& m) {
  Rational r = q - m * Rational(rat_floor(q / m));
  if (r < 0) r += m;  // paranoia against edge rounding of exact arithmetic: never triggers
  return r;
}

Real rat_to_real(const Rational& q) {
  (void)precision_bits();
  return Real(numerator(q).str()) / Real(denominator(q).str());
}

Rational parse_rational(const std::string& s) {
  std::string t;
  for (char c : s)
    if (!isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) throw parameter_error("empty rational literal");
  try {
    Rational q(t);
    return q;
  } catch (const std::exception&) {
    throw parameter_error("bad rational literal: '" + s + "'");
  }
}

std::string rat_str(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

}  // namespace ncg
