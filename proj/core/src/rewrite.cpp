#include "ncgkit/rewrite.hpp"

#include <algorithm>

#include "ncgkit/errors.hpp"

namespace ncg {

namespace {

FreeElement splice(const Word& w, std::size_t pos, std::size_t len, const FreeElement& mid) {
  Word pre(w.begin(), w.begin() + pos);
  Word post(w.begin() + pos + len, w.end());
  return FreeElement::monomial(pre) * mid * FreeElement::monomial(post);
}

}  // namespace

void RewriteSystem::add_swap(std::uint32_t hi, std::uint32_t lo, const UniScalar& lambda) {
  if (hi >= gt_.size() || lo >= gt_.size() || hi <= lo)
    throw parameter_error("swap rule must send a strictly larger generator past a smaller one");
  if (!lambda.is_unit_phase()) throw parameter_error("swap phase must be a unit phase");
  if (!swaps_.emplace(std::make_pair(hi, lo), lambda).second)
    throw parameter_error("duplicate swap rule");
}

void RewriteSystem::add_subst(Word lhs, FreeElement rhs) {
  if (lhs.empty()) throw parameter_error("substitution rule with empty left-hand side");
  for (auto g : lhs)
    if (g >= gt_.size()) throw parameter_error("substitution rule uses unknown generator");
  for (const auto& [w, c] : rhs.terms())
    if (!deglex_less(w, lhs))
      throw parameter_error("substitution right-hand side is not deglex-decreasing");
  substs_.emplace_back(std::move(lhs), std::move(rhs));
}

std::optional<FreeElement> RewriteSystem::step(const Word& w) const {
  for (std::size_t pos = 0; pos < w.size(); ++pos) {
    // substitutions take precedence at equal position (first added, first tried)
    for (const auto& [lhs, rhs] : substs_) {
      if (lhs.size() <= w.size() - pos && std::equal(lhs.begin(), lhs.end(), w.begin() + pos))
        return splice(w, pos, lhs.size(), rhs);
    }
    if (pos + 1 < w.size()) {
      auto it = swaps_.find({w[pos], w[pos + 1]});
      if (it != swaps_.end()) {
        FreeElement mid = FreeElement::monomial({w[pos + 1], w[pos]}, it->second);
        return splice(w, pos, 2, mid);
      }
    }
  }
  return std::nullopt;
}

FreeElement RewriteSystem::normal_form(const FreeElement& x) const {
  unsigned long long steps = 0;
  FreeElement done;
  std::vector<std::pair<Word, UniScalar>> work(x.terms().begin(), x.terms().end());
  while (!work.empty()) {
    auto [w, c] = std::move(work.back());
    work.pop_back();
    if (c.is_zero()) continue;
    auto r = step(w);
    if (!r) {
      done += FreeElement::monomial(std::move(w), std::move(c));
      continue;
    }
    if (++steps > budget_) throw rewrite_budget_error(budget_);
    for (const auto& [w2, c2] : r->terms()) work.emplace_back(w2, c * c2);
  }
  return done;
}

std::vector<std::pair<Word, FreeElement>> RewriteSystem::all_rules() const {
  std::vector<std::pair<Word, FreeElement>> rules = substs_;
  for (const auto& [hl, lambda] : swaps_)
    rules.emplace_back(Word{hl.first, hl.second},
                       FreeElement::monomial({hl.second, hl.first}, lambda));
  return rules;
}

std::vector<CriticalPair> RewriteSystem::check_local_confluence() const {
  auto rules = all_rules();
  std::vector<CriticalPair> unresolved;

  auto consider = [&](const Word& overlap, const FreeElement& ra, const FreeElement& rb) {
    FreeElement diff = normal_form(ra) - normal_form(rb);
    if (!diff.is_zero()) unresolved.push_back({overlap, std::move(diff)});
  };

  for (std::size_t i = 0; i < rules.size(); ++i) {
    const auto& [l1, r1] = rules[i];
    for (std::size_t j = 0; j < rules.size(); ++j) {
      const auto& [l2, r2] = rules[j];

      // duplicate left-hand sides (distinct rules)
      if (i < j && l1 == l2) consider(l1, r1, r2);

      // proper overlap: a suffix of l1 equals a prefix of l2
      for (std::size_t k = 1; k < std::min(l1.size(), l2.size()); ++k) {
        if (!std::equal(l2.begin(), l2.begin() + k, l1.end() - k)) continue;
        Word w = l1;
        w.insert(w.end(), l2.begin() + k, l2.end());
        FreeElement ra = r1 * FreeElement::monomial(Word(l2.begin() + k, l2.end()));
        FreeElement rb = FreeElement::monomial(Word(l1.begin(), l1.end() - k)) * r2;
        consider(w, ra, rb);
      }

      // containment: l2 occurs strictly inside l1
      if (i != j && l2.size() < l1.size()) {
        for (std::size_t p = 0; p + l2.size() <= l1.size(); ++p) {
          if (!std::equal(l2.begin(), l2.end(), l1.begin() + p)) continue;
          FreeElement rb = splice(l1, p, l2.size(), r2);
          consider(l1, r1, rb);
        }
      }
    }
  }
  return unresolved;
}

}  // namespace ncg
