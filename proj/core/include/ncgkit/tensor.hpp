#pragma once

#include <map>
#include <string>
#include <vector>

#include "ncgkit/rewrite.hpp"

namespace ncg {

/// Element of A ⊗ Ã^{⊗(arity−1)} where Ã = A / ℂ1: a finite UniScalar
/// combination of word tuples.  Every slot except the first is a class
/// modulo constants, so expanded terms carrying the empty word in a
/// non-first slot are dropped on construction.
class TensorElement {
 public:
  explicit TensorElement(std::size_t arity) : arity_(arity) {}

  std::size_t arity() const { return arity_; }
  bool is_syntactically_zero() const { return t_.empty(); }

  /// Multilinear expansion of f₀ ⊗ f₁ ⊗ … (with constant stripping).
  static TensorElement product(const std::vector<FreeElement>& factors);

  TensorElement operator+(const TensorElement& o) const;
  TensorElement operator-(const TensorElement& o) const;
  TensorElement operator-() const;
  TensorElement operator*(const UniScalar& c) const;
  TensorElement& operator+=(const TensorElement& o) { return *this = *this + o; }
  TensorElement& operator-=(const TensorElement& o) { return *this = *this - o; }

  /// Reduce every slot to normal form under rs, re-expand, strip constants.
  TensorElement normalized(const RewriteSystem& rs) const;

  const std::map<std::vector<Word>, UniScalar>& terms() const { return t_; }
  std::string str(const GeneratorTable& gt) const;

 private:
  std::size_t arity_;
  std::map<std::vector<Word>, UniScalar> t_;

  void add(const std::vector<Word>& key, const UniScalar& c);
};

/// True iff t reduces to the zero tensor modulo rs (exact).
bool tensor_is_zero(const TensorElement& t, const RewriteSystem& rs);

/// Component ch_k of the Chern character of a self-adjoint idempotent:
/// Σ (e^{i₀}_{i₁} − ½δ) ⊗ e^{i₁}_{i₂} ⊗ … ⊗ e^{i_{2k}}_{i₀}, arity 2k+1.
/// Idempotency of e is NOT assumed here; callers verify it separately.
TensorElement chern_even(const AlgMatrix& e, unsigned k);

/// Component ch_{k+½} of the Chern character of a unitary matrix:
/// Σ U^{i₀}_{i₁} ⊗ U*^{i₁}_{i₂} ⊗ … ⊗ U*^{i_{2k+1}}_{i₀} minus the same
/// sum with U and U* exchanged; arity 2k+2.
TensorElement chern_odd(const AlgMatrix& u, unsigned k, const GeneratorTable& gt);

}  // namespace ncg
