#include "ncgkit/numeric.hpp"

#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <ostream>
#include <sstream>

namespace ncg {

namespace {
unsigned g_bits = 0;  // 0 = not yet initialised

unsigned bits_to_digits10(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398119521)) + 2;
}
}  // namespace

void set_precision_bits(unsigned bits) {
  if (bits < 24) bits = 24;
  g_bits = bits;
  Real::default_precision(bits_to_digits10(bits));
}

unsigned precision_bits() {
  if (g_bits == 0) set_precision_bits(128);
  return g_bits;
}

PrecisionGuard::PrecisionGuard(unsigned bits) : saved_(precision_bits()) {
  if (bits > saved_) set_precision_bits(bits);
}

PrecisionGuard::~PrecisionGuard() { set_precision_bits(saved_); }

Real pi_value() {
  (void)precision_bits();
  return boost::math::constants::pi<Real>();
}

Complex Complex::operator/(const Complex& o) const {
  Real d = o.norm2();
  return {(re * o.re + im * o.im) / d, (im * o.re - re * o.im) / d};
}

Real Complex::abs() const {
  using boost::multiprecision::sqrt;
  return sqrt(norm2());
}

Complex operator*(const Real& s, const Complex& z) { return {s * z.re, s * z.im}; }

Complex cexp(const Complex& z) {
  using boost::multiprecision::cos;
  using boost::multiprecision::exp;
  using boost::multiprecision::sin;
  Real m = exp(z.re);
  return {m * cos(z.im), m * sin(z.im)};
}

Complex cis(const Real& t) {
  using boost::multiprecision::cos;
  using boost::multiprecision::sin;
  return {cos(t), sin(t)};
}

std::ostream& operator<<(std::ostream& os, const Complex& z) {
  return os << "(" << z.re << (z.im.sign() < 0 ? "" : "+") << z.im << "i)";
}

std::string real_str(const Real& x, int digits) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

}  // namespace ncg
