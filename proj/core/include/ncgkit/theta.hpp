#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ncgkit/numeric.hpp"
#include "ncgkit/rational.hpp"
#include "ncgkit/torus.hpp"

namespace ncg {

/// Value together with a certified absolute error bound.
struct CertComplex {
  Complex value;
  Real err{0};
};

/// Rational characteristic r and positive modulus scale l of a theta sum.
/// r and r+1 give the same sum (reindexing), so comparison folds r mod 1.
struct ThetaChar {
  Rational r{0};
  Rational l{1};

  bool operator==(const ThetaChar& o) const {
    return rat_mod1(r) == rat_mod1(o.r) && l == o.l;
  }
};

/// Truncation/precision plan for a certified theta sum: the proven tail bound
/// at window `radius` is < eps/2 and rounding at `bits` stays < eps/2.
struct PrecisionBudget {
  Real eps;
  unsigned bits;
  long long radius;
};

/// Smallest window M ≥ |r|+1 with tail bound 2|q|^{(M+1−|r|)²}/(1−|q|) < eps/2
/// (found by doubling then bisection), plus the matching precision.
PrecisionBudget plan_theta_sum(const Rational& r, const Real& q_abs, const Real& eps);

/// ϑ_r(l·τ_eff) = Σ_{n∈ℤ} exp[πi·(n+r)²·l·τ_eff], certified to eps.
/// The effective nome is q = exp(πi·l·τ_eff); |q| ≥ 1 raises
/// numeric_error("divergent nome"). Callers pick the convergent direction
/// explicitly (the structure-constant series uses τ_eff = −τ for Im τ < 0).
CertComplex theta_const(const ThetaChar& ch, const Complex& tau_eff, const Real& eps);

/// Arithmetic progression (residue, modulus) solving
///   n ≡ −c₁γ + c₁₂α (mod c₁₂c₁),  n ≡ c₂d₁₂γ − c₁₂d₂β (mod c₁₂c₂),
/// or nullopt when the pair is inconsistent.
std::optional<std::pair<long long, long long>> index_class(const SL2Mat& g1, const SL2Mat& g2,
                                                           long long alpha, long long beta,
                                                           long long gamma);

/// All solutions of the congruence pair inside [−window, window], ascending.
std::vector<long long> index_set(const SL2Mat& g1, const SL2Mat& g2, long long alpha,
                                 long long beta, long long gamma, long long window);

/// Structure constants C^γ_{α,β} (γ ≤ deg g₁g₂, α ≤ deg g₁, β ≤ deg g₂,
/// all 1-based), each entry certified to eps.
class StructTensor {
 public:
  StructTensor(long long c1, long long c2, long long c12);

  long long c1() const { return c1_; }
  long long c2() const { return c2_; }
  long long c12() const { return c12_; }

  CertComplex& at(long long gamma, long long alpha, long long beta);
  const CertComplex& at(long long gamma, long long alpha, long long beta) const;

 private:
  long long c1_, c2_, c12_;
  std::vector<CertComplex> e_;
  std::size_t idx(long long gamma, long long alpha, long long beta) const;
};

/// C^γ_{α,β} = Σ_{n ∈ I(α,β,γ)} exp[−πi·τ·n²/(2c₁c₂c₁₂)], each congruence
/// class summed as a certified theta value. Requires positive degrees,
/// Im(τ) < 0, and cθ+d > 0 for g₁, g₂ and g₁g₂ (the regime where degrees are
/// the dimensions of the graded pieces).
StructTensor struct_constants(const SL2Mat& g1, const SL2Mat& g2, const QuadIrr& theta,
                              const Complex& tau, const Real& eps);

}  // namespace ncg
