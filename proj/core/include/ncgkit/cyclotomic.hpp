#pragma once

#include <map>
#include <vector>

#include "ncgkit/rational.hpp"

namespace ncg {

/// Finite sum  Σ c_a · e^{2πi a}  with rational a ∈ [0,1).
using PhaseSum = std::map<Rational, Rational>;

/// Coefficients of the n-th cyclotomic polynomial Φ_n (ascending, integer).
const std::vector<BigInt>& cyclotomic_poly(unsigned n);

/// Canonical reduction: exponents folded into [0,1), each common-denominator
/// slice reduced modulo Φ_N.  A sum representing zero reduces to the empty map.
void reduce_phase_sum(PhaseSum& s);

/// Exact zero test in the cyclotomic field of the common denominator.
bool phase_sum_is_zero(const PhaseSum& s);

/// Convolution product (exponents add mod 1).
PhaseSum phase_sum_mul(const PhaseSum& x, const PhaseSum& y);

/// √D as an exact cyclotomic combination (D > 0 squarefree).
/// Uses quadratic Gauss sums: √p = Σ_k ζ_p^{k²} for p ≡ 1 (mod 4),
/// √p = −i·Σ_k ζ_p^{k²} for p ≡ 3 (mod 4), √2 = ζ₈ + ζ₈⁻¹.
PhaseSum sqrt_as_phases(unsigned D);

/// Numeric evaluation (used by cross-checking tests).
Complex phase_sum_eval(const PhaseSum& s);

/// Strip square factors: D = f²·D₀ with D₀ squarefree; returns {D₀, f}.
std::pair<unsigned long long, unsigned long long> squarefree_part(unsigned long long D);

}  // namespace ncg
