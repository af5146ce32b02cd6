#pragma once

#include <string>

#include "ncgkit/rational.hpp"

namespace ncg {

/// Exact element a + b·√D of a real quadratic field (D squarefree, > 1).
/// Pure rationals are the case b = 0 (stored with D = 0); mixed-field
/// arithmetic is rejected.
class QuadraticReal {
 public:
  QuadraticReal() : a_(0), b_(0), d_(0) {}
  QuadraticReal(Rational a) : a_(std::move(a)), b_(0), d_(0) {}  // NOLINT: implicit by design
  QuadraticReal(long long n) : a_(n), b_(0), d_(0) {}            // NOLINT
  QuadraticReal(Rational a, Rational b, unsigned D);

  const Rational& rat_part() const { return a_; }
  const Rational& irr_part() const { return b_; }
  unsigned D() const { return d_; }
  bool is_rational() const { return d_ == 0; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }

  QuadraticReal operator+(const QuadraticReal& o) const;
  QuadraticReal operator-(const QuadraticReal& o) const;
  QuadraticReal operator-() const;
  QuadraticReal operator*(const QuadraticReal& o) const;
  QuadraticReal operator/(const QuadraticReal& o) const;
  QuadraticReal& operator+=(const QuadraticReal& o) { return *this = *this + o; }
  QuadraticReal& operator-=(const QuadraticReal& o) { return *this = *this - o; }
  QuadraticReal& operator*=(const QuadraticReal& o) { return *this = *this * o; }

  /// Galois conjugate a − b√D.
  QuadraticReal conjugate() const;

  /// Exact sign (−1, 0, +1).
  int sign() const;
  bool operator==(const QuadraticReal& o) const { return (*this - o).is_zero(); }
  bool operator!=(const QuadraticReal& o) const { return !(*this == o); }
  bool operator<(const QuadraticReal& o) const { return (*this - o).sign() < 0; }
  bool operator<=(const QuadraticReal& o) const { return (*this - o).sign() <= 0; }
  bool operator>(const QuadraticReal& o) const { return (*this - o).sign() > 0; }
  bool operator>=(const QuadraticReal& o) const { return (*this - o).sign() >= 0; }

  /// Exact floor (uses a certified numeric bracket, verified exactly).
  BigInt floor() const;

  Real to_real() const;
  std::string str() const;

  /// Total order usable as a map key (componentwise, not numeric).
  static bool key_less(const QuadraticReal& x, const QuadraticReal& y);

 private:
  Rational a_, b_;
  unsigned d_;
  static unsigned common_d(const QuadraticReal& x, const QuadraticReal& y);
};

}  // namespace ncg
