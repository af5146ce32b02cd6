#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ncgkit/phase_scalar.hpp"
#include "ncgkit/quadratic.hpp"

namespace ncg {

/// Integer matrix [[a,b],[c,d]] with determinant one.
struct SL2Mat {
  long long a, b, c, d;

  SL2Mat(long long a_, long long b_, long long c_, long long d_);
  static SL2Mat identity() { return {1, 0, 0, 1}; }

  SL2Mat operator*(const SL2Mat& o) const;
  bool operator==(const SL2Mat& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }

  /// The degree of the matrix is its lower-left entry.
  long long degree() const { return c; }

  std::string str() const;
};

/// Quadratic irrational θ = (p + s·√D)/q with s ≠ 0, kept in exact form.
class QuadIrr {
 public:
  explicit QuadIrr(const QuadraticReal& v);
  QuadIrr(long long p, long long s, unsigned D, long long q);

  const QuadraticReal& value() const { return v_; }

  /// Canonical integer data (q > 0, gcd(p, s, q) = 1).
  BigInt p() const;
  BigInt s() const;
  BigInt q() const;
  unsigned D() const { return v_.D(); }

  /// Parses the grammar "(p + s*sqrt(D))/q" (s may carry a sign, "s*" may be
  /// omitted when s = ±1, whitespace is free).
  static QuadIrr parse(const std::string& text);
  std::string str() const;

 private:
  QuadraticReal v_;
};

/// Complex-structure parameter τ with Im(τ) < 0.
struct ComplexStructure {
  Complex tau;
  explicit ComplexStructure(Complex t);
};

/// Finitely supported series Σ a_{n,m} Uⁿ Vᵐ over the exact scalar ring,
/// multiplied with the normally ordered monomial law
///     (Uⁿ Vᵐ)(Uᵖ Vᵠ) = e^{−2πiθ·mp} U^{n+p} V^{m+q},
/// the bilinear extension of U V = e^{2πiθ} V U.
class TorusElement {
 public:
  using Key = std::pair<long long, long long>;

  TorusElement() = default;

  static TorusElement zero() { return {}; }
  static TorusElement unit(const UniScalar& c = UniScalar(1)) { return mono(0, 0, c); }
  static TorusElement mono(long long n, long long m, const UniScalar& c = UniScalar(1));
  static TorusElement gen_u() { return mono(1, 0); }
  static TorusElement gen_v() { return mono(0, 1); }

  bool is_zero() const { return t_.empty(); }

  TorusElement operator+(const TorusElement& o) const;
  TorusElement operator-(const TorusElement& o) const;
  TorusElement operator-() const;
  TorusElement operator*(const UniScalar& c) const;
  TorusElement& operator+=(const TorusElement& o) { return *this = *this + o; }
  TorusElement& operator-=(const TorusElement& o) { return *this = *this - o; }

  bool operator==(const TorusElement& o) const { return (*this - o).is_zero(); }
  bool operator!=(const TorusElement& o) const { return !(*this == o); }

  /// Adjoint: (a UⁿVᵐ)* = conj(a)·e^{−2πiθ·nm}·U^{−n}V^{−m} (θ formal).
  TorusElement star() const;

  const std::map<Key, UniScalar>& terms() const { return t_; }
  UniScalar coeff(long long n, long long m) const;
  std::string str() const;

 private:
  std::map<Key, UniScalar> t_;
  void add(const Key& k, const UniScalar& c);
  friend TorusElement torus_mul(const TorusElement&, const TorusElement&);
  friend TorusElement torus_mul(const TorusElement&, const TorusElement&, const Rational&);
};

/// Product at formal θ: phases enter through the e^{2πibθ} slot of UniScalar.
TorusElement torus_mul(const TorusElement& x, const TorusElement& y);
/// Product at rational θ: phases fold into exact roots of unity.
TorusElement torus_mul(const TorusElement& x, const TorusElement& y, const Rational& theta);

/// The unique normalized trace: the coefficient at (0,0).
UniScalar trace_chi(const TorusElement& x);

/// Basic derivations δ₁(UⁿVᵐ) = 2πi·n·UⁿVᵐ and δ₂(UⁿVᵐ) = 2πi·m·UⁿVᵐ;
/// the 2πi is carried as an exact symbolic tag.
TorusElement delta(int j, const TorusElement& x);

/// Numeric-coefficient image of a torus element (used where τ enters, since τ
/// is not an element of the exact scalar ring).
struct NumTorus {
  std::map<TorusElement::Key, Complex> terms;

  NumTorus operator+(const NumTorus& o) const;
  NumTorus operator-(const NumTorus& o) const;
  /// Product with the monomial law at numeric θ.
  NumTorus mul(const NumTorus& o, const Real& theta) const;
  /// Largest coefficient modulus (0 for the zero element).
  Real max_abs() const;
};

/// Evaluate every coefficient at a concrete θ.
NumTorus to_numeric(const TorusElement& x, const Real& theta);

/// δ_τ = τ·δ₁ + δ₂: coefficient (n,m) is scaled by 2πi(nτ + m).
NumTorus delta_tau(const ComplexStructure& cs, const TorusElement& x, const Real& theta);

/// The K₀ rank pairing: (n, m) ↦ n + mθ as an exact quadratic number.
QuadraticReal k0_rank(long long n, long long m, const QuadIrr& theta);
/// Rank of the basic module attached to g: |c·θ + d|.
QuadraticReal module_rank(const SL2Mat& g, const QuadIrr& theta);

/// Fractional-linear action θ ↦ (aθ + b)/(cθ + d).
QuadIrr morita_theta(const SL2Mat& g, const QuadIrr& theta);

/// Every quadratic irrational generates a real quadratic field.
bool is_rm(const QuadIrr& theta);

/// All g with |entries| ≤ bound and gθ = θ exactly (always contains the
/// identity).
std::vector<SL2Mat> fixing_matrices(const QuadIrr& theta, long long bound);

/// Equivalence-preserving normalization θ ↦ θ − ⌊θ⌋, then θ ↦ 1 − θ when the
/// result exceeds ½. Exposed explicitly; no operation applies it silently.
QuadIrr canonicalize_theta(const QuadIrr& theta);

/// Degrees of two matrices and of their product, with a flag raised when two
/// positive-degree factors fail to produce a positive-degree product.
struct DegreeReport {
  long long deg1, deg2, deg12;
  bool positivity_violated;
};
DegreeReport tensor_degree_check(const SL2Mat& g1, const SL2Mat& g2);

}  // namespace ncg
