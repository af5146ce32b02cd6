#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <random>
#include <vector>

#include "ncgkit/free_algebra.hpp"
#include "ncgkit/linalg.hpp"
#include "ncgkit/rational.hpp"
#include "ncgkit/rewrite.hpp"
#include "ncgkit/tensor.hpp"

namespace ncg {

// ---------------------------------------------------------------------------
// Presented sphere algebras (rewrite-system backed)
// ---------------------------------------------------------------------------

/// A generator set with a terminating rewrite system (verified locally
/// confluent by the tests) and the defining relations; every relation
/// reduces to zero under the system.
struct PresentedAlgebra {
  RewriteSystem rs;
  std::vector<FreeElement> relations;
};

/// Commutative coordinate *-algebra of the unit 2-sphere on Hermitian
/// generators x < y < z; the sphere relation is oriented into the reducer
/// z² → 1 − x² − y².
PresentedAlgebra s2_algebra();

/// Rank-one projector ½[[1+z, x−iy], [x+iy, 1−z]] over the 2-sphere algebra.
AlgMatrix s2_projector();

/// Coordinate algebra of the deformed 4-sphere on ordered generators
/// a < a* < b < b* < x with λ = e^{2πiθ}:
///   a, b normal;  ab = λ·ba;  a*b = λ̄·ba*;  x = x* central;
///   x² = 1 − a*a − bb*   (oriented into the reducer for x²).
/// θ = 0 degenerates to the commutative 4-sphere presentation.
PresentedAlgebra s4_algebra(const Rational& theta);

/// Projector over the deformed 4-sphere:
///   ½·[[1+x, 0, a, b], [0, 1+x, −λb*, a*], [a*, −λ̄b, 1−x, 0], [b*, a, 0, 1−x]].
/// The ½ normalization is required for idempotency (the matrix in braces has
/// trace 4, twice the rank); see the decisions log for the rationale.
AlgMatrix s4_projector(const Rational& theta);

// ---------------------------------------------------------------------------
// Three-sphere / four-plane family
// ---------------------------------------------------------------------------

/// Torus parameters (φ₁, φ₂, φ₃), each taken modulo 1.  Rational values keep
/// every derived scalar cyclotomic (exact path); real values select the
/// arbitrary-precision numeric path.
class PhiParams {
 public:
  PhiParams(const Rational& f1, const Rational& f2, const Rational& f3);
  PhiParams(const Real& f1, const Real& f2, const Real& f3);

  bool exact() const { return exact_; }
  /// φ_{k+1} as an exact rational in [0,1); parameter_error on the numeric path.
  const Rational& frac(std::size_t k) const;
  /// φ_{k+1} at working precision (either path).
  Real value(std::size_t k) const;

 private:
  bool exact_;
  std::array<Rational, 3> r_{};
  std::array<Real, 3> x_{};
};

/// 4×4 star-structure matrix coupling the plane generators, z^{μ*} = Λ^μ_ν z^ν.
/// Entries are exact scalars (cyclotomic path) or complex numbers at working
/// precision; the admissibility requirement for presentations is ΛΛ* = 1 and
/// Λ = Λᵀ.
class LambdaMat {
 public:
  using ExactEntries = std::array<std::array<UniScalar, 4>, 4>;

  /// Diagonal family Λ(φ) = diag(1, e^{−2πiφ₁}, e^{−2πiφ₂}, e^{−2πiφ₃}).
  static LambdaMat from_phi(const PhiParams& phi);
  static LambdaMat exact(ExactEntries m);
  static LambdaMat numeric(CMatrix m);  // must be 4×4

  bool is_exact() const { return exact_; }
  /// Exact entry; parameter_error on the numeric path.
  const UniScalar& at(std::size_t i, std::size_t j) const;
  CMatrix to_numeric() const;

  bool unitary_exact() const;    // ΛΛ* = 1 decided exactly
  bool symmetric_exact() const;  // Λ = Λᵀ decided exactly
  Real unitarity_residual() const;
  Real symmetry_residual() const;

  /// parameter_error unless Λ is unitary and symmetric (exactly on the exact
  /// path, within tol on the numeric path).
  void require_unitary_symmetric(const Real& tol) const;
  void require_unitary_symmetric() const;  // tol = 1e−30

 private:
  bool exact_ = true;
  ExactEntries e_{};
  CMatrix n_;
};

/// Plane generators z⁰..z³ (indices 0..3) and their adjoints z⁰*..z³*
/// (indices 4..7).
GeneratorTable z_table();

/// Hermitian generators x⁰..x³ of the real form (indices 0..3).
GeneratorTable x_table();

/// The six defining quadratic relations of the noncommutative 4-plane in the
/// free *-algebra on z⁰..z³ (stars kept as independent generators):
///   [k]   z^k z^{0*} − z^0 z^{k*} + z^l z^{m*} − z^m z^{l*}
///   [3+k] z^{0*} z^k − z^{k*} z^0 + z^{l*} z^m − z^{m*} z^l
/// for (k,l,m) cyclic in (1,2,3).  The sign of the ε-sum is fixed by the
/// Pauli expansion of UU* and U*U (see unitarity_expansion); the tests verify
/// the component identities exactly.
std::vector<FreeElement> plane_relations_raw();

/// Substitute z^{μ*} → Σ_ν Λ^μ_ν z^ν in every word (exact Λ required).
FreeElement fold_stars(const FreeElement& f, const LambdaMat& lambda);
TensorElement fold_stars(const TensorElement& t, const LambdaMat& lambda);

/// Degree-2 relation list; elements live over z_table() (star-folded) or
/// x_table() (Hermitian form).
struct QuadraticRelationSet {
  std::vector<FreeElement> rels;
};

/// The six plane relations with the star structure folded in — elements in
/// z⁰..z³ only.  Requires Λ exact, unitary, symmetric.
QuadraticRelationSet r4_relations(const LambdaMat& lambda);

/// Plane relations plus the sphere element Σ_μ z^μ z^{μ*} − 1 (star-folded).
struct S3Presentation {
  QuadraticRelationSet relations;
  FreeElement sphere;
};
S3Presentation s3_relations(const LambdaMat& lambda);

/// The six relations on the Hermitian generators x⁰..x³ (exact φ required),
/// with (k,l,m) cyclic in (1,2,3) and all angles scaled by π:
///   [k−1]  cos(πφ_k)(x⁰x^k − x^k x⁰) − i·sin(π(φ_l−φ_m))(x^l x^m + x^m x^l)
///   [2+k]  cos(π(φ_l−φ_m))(x^l x^m − x^m x^l) + i·sin(πφ_k)(x⁰x^k + x^k x⁰)
/// These are exactly the star-folded plane relations rewritten through
/// x⁰ = z⁰, x^k = e^{−πiφ_k} z^k; the tests check both directions.
std::vector<FreeElement> hermitian_relations(const PhiParams& phi);

/// Rewrite an element over x_table() through x⁰ = z⁰, x^k = e^{−πiφ_k}z^k
/// into an element over z_table() (exact φ required).
FreeElement hermitian_to_z(const FreeElement& f, const PhiParams& phi);

// ---------------------------------------------------------------------------
// Pauli expansion and odd Chern components
// ---------------------------------------------------------------------------

/// τ₀ = 1₂, τ_k = iσ_k (orthonormal for ⟨a,b⟩ = ½Tr(a*b)); k = 1..3 for σ.
UniScalar tau_entry(std::size_t mu, std::size_t i, std::size_t j);
UniScalar sigma_entry(std::size_t k, std::size_t i, std::size_t j);

/// U = τ_μ z^μ as a 2×2 matrix over the free algebra on z_table().
/// The entries do not depend on Λ; unitary_matrix additionally enforces the
/// admissibility precondition on Λ.
AlgMatrix pauli_unitary();
AlgMatrix unitary_matrix(const LambdaMat& lambda);

/// σ_k-components of UU* and U*U (k = 1..3): the parts that must vanish for
/// both products to be scalar.  Each component equals i·(plane relation).
struct UnitarityExpansion {
  std::array<FreeElement, 3> uu_star;
  std::array<FreeElement, 3> star_uu;
};
UnitarityExpansion unitarity_expansion(const LambdaMat& lambda);

/// Odd Chern component of U at tensor arity 2, star-folded through Λ.
/// Closed form: 2 Σ_{μν} Λ^μ_ν (z^μ⊗z^ν − z^ν⊗z^μ); zero iff Λ = Λᵀ.
/// No admissibility precondition: the fold is defined for any Λ.
TensorElement ch_half_tensor(const LambdaMat& lambda);

/// Odd Chern component of U at tensor arity 4, star-folded through Λ; no
/// quotient by the quadratic relations is applied.
TensorElement ch32_tensor(const LambdaMat& lambda);

// ---------------------------------------------------------------------------
// Multilinearization and the characteristic variety
// ---------------------------------------------------------------------------

/// Exact 4×4 coefficient matrix of a homogeneous degree-2 element
/// f = Σ f_{μν} x^μ x^ν over x_table(); parameter_error otherwise.
struct CoeffMat4 {
  std::array<std::array<UniScalar, 4>, 4> m{};
};
CoeffMat4 multilinearize(const FreeElement& rel);

/// The six coefficient matrices B_i of the Hermitian relations, with the
/// derived pencil M(u) (rows uᵀB_i).  exact_b is populated on the exact path;
/// b always holds the matrices at working precision.
struct BilinearSystem {
  bool exact = false;
  std::vector<CoeffMat4> exact_b;
  std::vector<CMatrix> b;
};
BilinearSystem build_bilinear_system(const PhiParams& phi);

/// M(u): 6×4 matrix with rows uᵀB_i, so M(u)v = (f̌_i(u,v))_i.
CMatrix pencil_matrix(const BilinearSystem& sys, const CVec& u);
/// Transposed pencil N(v) with rows (B_i v)ᵀ, so N(v)u = (f̌_i(u,v))_i.
CMatrix pencil_matrix_right(const BilinearSystem& sys, const CVec& v);

/// σ₄/σ₁ of M(u): relative distance of u from the rank-≤3 locus.
Real rank_residual(const BilinearSystem& sys, const CVec& u);
/// max_i |f̌_i(û, v̂)| over the normalized pair.
Real bilinear_residual(const BilinearSystem& sys, const CVec& u, const CVec& v);

/// Numeric rank of M(u) at relative tolerance rel_tol (default 1e−8).
std::size_t char_variety_rank(const CVec& u, const BilinearSystem& sys,
                              const Real& rel_tol);
std::size_t char_variety_rank(const CVec& u, const BilinearSystem& sys);

/// The projective partner v with M(u)v = 0 when the rank is exactly 3
/// (unique kernel direction); nullopt otherwise.  v is normalized with its
/// largest component real positive.
std::optional<CVec> sigma_map(const CVec& u, const BilinearSystem& sys,
                              const Real& rel_tol);
std::optional<CVec> sigma_map(const CVec& u, const BilinearSystem& sys);

struct VarietyPointOptions {
  unsigned attempts = 60;    // random projective lines to probe
  unsigned alt_iters = 48;   // alternating kernel-vector refinements per seed
  unsigned gn_iters = 24;    // Gauss–Newton polish steps per seed
  Real accept = Real("1e-24");  // rank_residual acceptance threshold
};

/// Search for a point on the rank-≤3 locus: roots of a 4×4 minor of M(p+tq)
/// along random projective lines seed an alternating least-singular-vector
/// refinement plus a Gauss–Newton polish of the pair (u, v).  Deterministic
/// for a fixed generator state; nullopt when every seed fails.
std::optional<CVec> find_variety_point(const BilinearSystem& sys,
                                       std::mt19937_64& rng,
                                       const VarietyPointOptions& opt = {});

/// Refine u (and implicitly its partner) toward the rank-≤3 locus; returns
/// the refined point and its rank residual.
struct RefineResult {
  CVec u;
  CVec v;
  Real residual;
};
RefineResult refine_variety_point(const BilinearSystem& sys, const CVec& u0,
                                  unsigned alt_iters, unsigned gn_iters);

/// Iterate u ← σ(u) from a locus point: each iterate's rank residual is
/// measured before any refinement, so the report genuinely tests whether the
/// correspondence maps the locus into itself.  A refinement pass between
/// steps prevents drift accumulation.  Detects projective fixed points
/// (σ(u) ∥ u).
struct OrbitReport {
  std::vector<CVec> points;     // u0, σ(u0), σ²(u0), …
  std::vector<Real> residuals;  // rank residual of each point, pre-refinement
  Real worst;                   // max of residuals
  bool fixed_point = false;     // some step returned v ∥ u
  bool stayed_on_locus = true;  // every step admitted a sigma_map partner
};
OrbitReport sigma_orbit_check(const CVec& u0, const BilinearSystem& sys,
                              unsigned steps, const Real& rel_tol);

/// One row of the sampling report: a random direction, its pencil rank and
/// extreme singular values.
struct RankSample {
  CVec u;
  std::size_t rank;
  Real sigma_min;
  Real sigma_max;
};
std::vector<RankSample> sample_char_variety(const BilinearSystem& sys,
                                            std::size_t count,
                                            std::mt19937_64& rng,
                                            const Real& rel_tol);

// ---------------------------------------------------------------------------
// Exact linear algebra over the scalar ring
// ---------------------------------------------------------------------------

/// Rank of a matrix of exact scalars via fraction-free elimination (the
/// scalar ring is an integral domain, so cross-multiplication preserves row
/// spans over the fraction field).
std::size_t exact_rank(std::vector<std::vector<UniScalar>> rows);

/// Exact equality of the spans of two lists of free-algebra elements,
/// compared inside the common word basis.
bool exact_span_equal(const std::vector<FreeElement>& a,
                      const std::vector<FreeElement>& b);

}  // namespace ncg
