#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ncgkit/free_algebra.hpp"

namespace ncg {

/// An overlap of two left-hand sides whose two reducts do not meet.
struct CriticalPair {
  Word overlap;
  FreeElement difference;  // normal form of (reduct A − reduct B), nonzero
};

/// Terminating word rewriting system over a generator table, built from
///  - swap rules  g_hi·g_lo → λ·g_lo·g_hi  (hi > lo, λ a unit phase), and
///  - substitution rules  lhs → rhs  with every rhs word deglex-below lhs.
///
/// Termination: substitutions strictly decrease the deglex order of the
/// rewritten word, swaps keep the length and strictly decrease the inversion
/// count, so the pair (deglex class, inversions) is a well-founded measure.
/// Confluence is not assumed; check_local_confluence verifies it for the
/// shipped systems by reducing all critical pairs.
class RewriteSystem {
 public:
  explicit RewriteSystem(GeneratorTable gt) : gt_(std::move(gt)) {}

  void add_swap(std::uint32_t hi, std::uint32_t lo, const UniScalar& lambda);
  void add_subst(Word lhs, FreeElement rhs);

  const GeneratorTable& gens() const { return gt_; }

  /// Fully reduce x: apply the leftmost redex (substitution preferred over a
  /// swap at the same position) until every word is irreducible.
  FreeElement normal_form(const FreeElement& x) const;

  /// Enumerate all overlaps/containments/duplicate left-hand sides and
  /// return the pairs whose reducts differ after full reduction.
  std::vector<CriticalPair> check_local_confluence() const;

  unsigned long long step_budget() const { return budget_; }
  void set_step_budget(unsigned long long b) { budget_ = b; }

 private:
  GeneratorTable gt_;
  std::map<std::pair<std::uint32_t, std::uint32_t>, UniScalar> swaps_;  // (hi,lo) → λ
  std::vector<std::pair<Word, FreeElement>> substs_;
  unsigned long long budget_ = 1000000;

  /// One leftmost rewrite step on a word; nullopt when irreducible.
  std::optional<FreeElement> step(const Word& w) const;
  /// All rules in lhs → rhs form (swaps included), for pair enumeration.
  std::vector<std::pair<Word, FreeElement>> all_rules() const;
};

}  // namespace ncg
