#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ncgkit/linalg.hpp"
#include "ncgkit/theta.hpp"

namespace ncg {

/// Coefficient vector with a certified per-entry error bound.
using ErrVec = std::vector<CertComplex>;

/// Graded ring ⊕_n ℋ_{gⁿ} attached to a fixed point gθ = θ and a complex
/// structure τ (Im τ < 0). Degree-n dimension is the lower-left entry of gⁿ
/// (valid in the regime cθ+d > 0, which every access checks); multiplication
/// tables are certified structure-constant tensors, cached per (n, m).
class GradedRing {
 public:
  GradedRing(const SL2Mat& g, const QuadIrr& theta, const Complex& tau, Real eps);

  const SL2Mat& g() const { return g_; }
  const QuadIrr& theta() const { return theta_; }
  const Complex& tau() const { return tau_; }
  const Real& eps() const { return eps_; }

  /// gⁿ for n ≥ 1.
  SL2Mat power(int n) const;
  /// deg(gⁿ); requires the degree positive and (gⁿ matrix)·θ denominator > 0.
  long long dim(int n) const;
  /// Multiplication tensor ℋ_{gⁿ} ⊗ ℋ_{gᵐ} → ℋ_{gⁿ⁺ᵐ}.
  const StructTensor& table(int n, int m);

 private:
  SL2Mat g_;
  QuadIrr theta_;
  Complex tau_;
  Real eps_;
  std::map<std::pair<int, int>, StructTensor> cache_;
};

/// Degree-d basis vector e_index (1-based), zero error.
ErrVec basis_vector(long long dim, long long index);

/// w_γ = Σ_{α,β} C^γ_{α,β} u_α v_β with certified error accumulation.
ErrVec ring_multiply(GradedRing& r, const ErrVec& u, int n, const ErrVec& v, int m);

/// Largest |(e_α·e_β)·e_γ − e_α·(e_β·e_γ)| coordinate over all basis triples
/// of degrees (n, m, k), together with the accumulated certified bound.
struct DefectReport {
  Real defect;
  Real certified;
};
DefectReport associativity_defect(GradedRing& r, int n, int m, int k);

/// Numerical kernel of the degree-(1,1) multiplication map: the matrix has
/// deg(g²) rows and deg(g)² columns (α-major column order); rank counts
/// singular values above tol·σ_max.
struct QuadKernel {
  std::size_t rank;
  std::size_t kernel_dim;
  CMatrix basis;            // deg(g)² × kernel_dim, orthonormal columns
  std::vector<Real> sigma;  // descending
};
QuadKernel quadratic_kernel(GradedRing& r, const Real& tol);

/// Numerical rank at log-spaced thresholds in [tol_lo, tol_hi] (plateau scan).
std::vector<std::pair<Real, std::size_t>> rank_sweep(const std::vector<Real>& sigma,
                                                     const Real& tol_lo, const Real& tol_hi,
                                                     int steps);

/// Inequality classifier on the matrix data (requires positive real
/// eigenvalues, i.e. trace ≥ 2 at determinant one):
///   c ≥ a+d → generated in degree one; c ≥ a+d+1 → quadratic;
///   c ≥ a+d+2 → koszul; otherwise outside.
enum class RingClass { outside, degree_one, quadratic, koszul };
const char* ring_class_name(RingClass c);
RingClass classify_ring(const SL2Mat& g);

/// JSON presentation {generators, relations, params, provenance}. Relations
/// are the quadratic-kernel basis vectors; requires the classifier to report
/// quadratic or koszul. Deterministic bytes for fixed inputs and seed.
std::string presentation_export(GradedRing& r, const Real& tol, unsigned long long seed);

}  // namespace ncg
