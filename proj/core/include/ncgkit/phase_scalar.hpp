#pragma once

#include <map>
#include <string>

#include "ncgkit/cyclotomic.hpp"
#include "ncgkit/rational.hpp"

namespace ncg {

/// Exponent of one scalar term:  e^{2πi(a + bθ)} · (2πi)^tp,
/// with θ a formal real deformation parameter.
/// a is kept in [0,1); b is arbitrary rational; tp is an integer power
/// carried symbolically so derivation identities stay exact.
struct PhaseExp {
  Rational a{0};
  Rational b{0};
  int tp{0};

  friend bool operator<(const PhaseExp& x, const PhaseExp& y) {
    if (x.b != y.b) return x.b < y.b;
    if (x.tp != y.tp) return x.tp < y.tp;
    return x.a < y.a;
  }
  friend bool operator==(const PhaseExp& x, const PhaseExp& y) {
    return x.a == y.a && x.b == y.b && x.tp == y.tp;
  }
};

/// Element of the exact scalar ring
///     Σ q · e^{2πi(a + bθ)} · (2πi)^tp,   q ∈ ℚ.
///
/// Zero testing is exact: θ is formal and π is transcendental, so the scalar
/// vanishes iff for every (b, tp) the cyclotomic number
/// Σ_a q·2^tp·e^{2πi(a + tp/4)} vanishes, which is decided by reduction
/// modulo the cyclotomic polynomial of the common denominator.
/// Each (b, tp) slice is kept in that reduced form, so a stored zero is
/// always the empty map; distinct nonzero representations of equal values
/// are still possible, hence equality is defined as is_zero(difference).
class UniScalar {
 public:
  UniScalar() = default;
  UniScalar(const Rational& q) { add_term({}, q); }  // NOLINT: implicit by design
  UniScalar(long long n) { add_term({}, Rational(n)); }  // NOLINT
  UniScalar(int n) { add_term({}, Rational(n)); }        // NOLINT

  /// q · e^{2πi(a + bθ)}.
  static UniScalar phase(const Rational& a, const Rational& b = Rational(0),
                         const Rational& q = Rational(1));
  /// (2πi)^k.
  static UniScalar two_pi_i(int k = 1);
  /// The imaginary unit e^{2πi/4}.
  static UniScalar i();

  bool is_zero() const { return t_.empty(); }
  bool is_one() const { return *this == UniScalar(1); }
  /// True when the scalar has exact unit modulus, λ·λ̄ = 1 (decided
  /// exactly); rewrite swap rules require their phase to be such a unit.
  bool is_unit_phase() const;

  UniScalar operator+(const UniScalar& o) const;
  UniScalar operator-(const UniScalar& o) const;
  UniScalar operator-() const;
  UniScalar operator*(const UniScalar& o) const;
  UniScalar& operator+=(const UniScalar& o) { return *this = *this + o; }
  UniScalar& operator-=(const UniScalar& o) { return *this = *this - o; }
  UniScalar& operator*=(const UniScalar& o) { return *this = *this * o; }

  /// Complex conjugate: negates phase exponents; conj((2πi)^k) = (−1)^k(2πi)^k.
  UniScalar star() const;
  /// Multiplicative inverse of a single-term scalar; parameter_error otherwise.
  UniScalar inverse_of_term() const;

  bool operator==(const UniScalar& o) const { return (*this - o).is_zero(); }
  bool operator!=(const UniScalar& o) const { return !(*this == o); }

  /// Numeric value at a concrete θ (working precision).
  Complex eval(const Real& theta) const;

  const std::map<PhaseExp, Rational>& terms() const { return t_; }
  std::size_t term_count() const { return t_.size(); }
  std::string str() const;

 private:
  std::map<PhaseExp, Rational> t_;

  void add_term(PhaseExp e, const Rational& q);
  /// Canonically reduce every (b,tp) slice in the cyclotomic field; zero
  /// slices disappear entirely.
  void normalize();
};

UniScalar operator*(const Rational& q, const UniScalar& s);

}  // namespace ncg
