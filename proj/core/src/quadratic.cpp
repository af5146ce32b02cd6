#include "ncgkit/quadratic.hpp"

#include "ncgkit/cyclotomic.hpp"
#include "ncgkit/errors.hpp"

namespace ncg {

QuadraticReal::QuadraticReal(Rational a, Rational b, unsigned D) : a_(std::move(a)), b_(std::move(b)) {
  if (b_ == 0) {
    d_ = 0;
    return;
  }
  if (D < 2) throw parameter_error("QuadraticReal: D must be >= 2 when b != 0");
  auto [d0, f] = squarefree_part(D);
  if (d0 == 1) {  // perfect square: value is rational after all
    a_ += b_ * Rational(BigInt(f));
    b_ = 0;
    d_ = 0;
    return;
  }
  b_ *= Rational(BigInt(f));
  d_ = static_cast<unsigned>(d0);
}

unsigned QuadraticReal::common_d(const QuadraticReal& x, const QuadraticReal& y) {
  if (x.d_ == 0) return y.d_;
  if (y.d_ == 0 || x.d_ == y.d_) return x.d_;
  throw parameter_error("QuadraticReal: mixed radicands " + std::to_string(x.d_) + " and " +
                        std::to_string(y.d_));
}

QuadraticReal QuadraticReal::operator+(const QuadraticReal& o) const {
  unsigned D = common_d(*this, o);
  QuadraticReal r;
  r.a_ = a_ + o.a_;
  r.b_ = b_ + o.b_;
  r.d_ = (r.b_ == 0) ? 0 : D;
  return r;
}

QuadraticReal QuadraticReal::operator-(const QuadraticReal& o) const { return *this + (-o); }

QuadraticReal QuadraticReal::operator-() const {
  QuadraticReal r;
  r.a_ = -a_;
  r.b_ = -b_;
  r.d_ = d_;
  return r;
}

QuadraticReal QuadraticReal::operator*(const QuadraticReal& o) const {
  unsigned D = common_d(*this, o);
  Rational d(D);
  QuadraticReal r;
  r.a_ = a_ * o.a_ + b_ * o.b_ * d;
  r.b_ = a_ * o.b_ + b_ * o.a_;
  r.d_ = (r.b_ == 0) ? 0 : D;
  return r;
}

QuadraticReal QuadraticReal::operator/(const QuadraticReal& o) const {
  if (o.is_zero()) throw numeric_error("QuadraticReal: division by zero");
  unsigned D = common_d(*this, o);
  Rational n = o.a_ * o.a_ - o.b_ * o.b_ * Rational(D);  // field norm of denominator
  QuadraticReal conj = o.conjugate();
  QuadraticReal num = *this * conj;
  num.a_ /= n;
  num.b_ /= n;
  if (num.b_ == 0) num.d_ = 0;
  return num;
}

QuadraticReal QuadraticReal::conjugate() const {
  QuadraticReal r = *this;
  r.b_ = -r.b_;
  return r;
}

int QuadraticReal::sign() const {
  auto sgn = [](const Rational& q) { return q == 0 ? 0 : (q > 0 ? 1 : -1); };
  int sa = sgn(a_), sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // opposite signs: compare a² with b²·D (equality impossible, D squarefree)
  return (a_ * a_ > b_ * b_ * Rational(d_)) ? sa : sb;
}

BigInt QuadraticReal::floor() const {
  if (d_ == 0) return rat_floor(a_);
  PrecisionGuard guard(precision_bits() + 64);
  BigInt n = boost::multiprecision::floor(to_real()).convert_to<BigInt>();
  // verify the bracket n <= value < n+1 exactly, adjust if rounding lied
  while ((*this - QuadraticReal(Rational(n))).sign() < 0) n -= 1;
  while ((*this - QuadraticReal(Rational(n + 1))).sign() >= 0) n += 1;
  return n;
}

Real QuadraticReal::to_real() const {
  using boost::multiprecision::sqrt;
  Real v = rat_to_real(a_);
  if (d_ != 0) v += rat_to_real(b_) * sqrt(Real(d_));
  return v;
}

std::string QuadraticReal::str() const {
  if (d_ == 0) return rat_str(a_);
  std::string s = rat_str(a_);
  s += (b_ > 0 ? " + " : " - ");
  Rational ab = b_ > 0 ? b_ : Rational(-b_);
  if (ab != 1) s += rat_str(ab) + "*";
  s += "sqrt(" + std::to_string(d_) + ")";
  return s;
}

bool QuadraticReal::key_less(const QuadraticReal& x, const QuadraticReal& y) {
  if (x.d_ != y.d_) return x.d_ < y.d_;
  if (x.a_ != y.a_) return x.a_ < y.a_;
  return x.b_ < y.b_;
}

}  // namespace ncg
