#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ncgkit/phase_scalar.hpp"

namespace ncg {

/// Generator symbols of an involutive algebra, with the involution pairing
/// and the strict total order (index order) used by rewrite systems.
class GeneratorTable {
 public:
  GeneratorTable() = default;
  GeneratorTable(std::vector<std::string> names, std::vector<std::size_t> star_of);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t g) const { return names_.at(g); }
  std::size_t star(std::size_t g) const { return star_of_.at(g); }
  std::size_t index_of(const std::string& name) const;

 private:
  std::vector<std::string> names_;
  std::vector<std::size_t> star_of_;
};

/// A word in the generators; the empty word is the unit.
using Word = std::vector<std::uint32_t>;

/// Degree-lexicographic order: shorter first, then lexicographic by index.
bool deglex_less(const Word& x, const Word& y);

/// Finitely supported UniScalar-combination of words: an element of the free
/// involutive algebra over the generator set.
class FreeElement {
 public:
  FreeElement() = default;

  static FreeElement zero() { return {}; }
  static FreeElement unit(const UniScalar& c = UniScalar(1)) { return monomial(Word{}, c); }
  static FreeElement gen(std::uint32_t g, const UniScalar& c = UniScalar(1)) {
    return monomial(Word{g}, c);
  }
  static FreeElement monomial(Word w, UniScalar c = UniScalar(1));

  bool is_zero() const { return t_.empty(); }

  FreeElement operator+(const FreeElement& o) const;
  FreeElement operator-(const FreeElement& o) const;
  FreeElement operator-() const;
  FreeElement operator*(const FreeElement& o) const;  // concatenation, bilinear
  FreeElement operator*(const UniScalar& c) const;
  FreeElement& operator+=(const FreeElement& o) { return *this = *this + o; }
  FreeElement& operator-=(const FreeElement& o) { return *this = *this - o; }
  FreeElement& operator*=(const FreeElement& o) { return *this = *this * o; }

  /// Involution: reverses words, stars each generator, conjugates scalars.
  FreeElement star(const GeneratorTable& gt) const;

  /// Drops the empty-word (constant) term.
  FreeElement without_constant() const;
  UniScalar constant_term() const;

  bool operator==(const FreeElement& o) const { return (*this - o).is_zero(); }
  bool operator!=(const FreeElement& o) const { return !(*this == o); }

  const std::map<Word, UniScalar>& terms() const { return t_; }
  std::size_t max_degree() const;
  std::string str(const GeneratorTable& gt) const;

 private:
  std::map<Word, UniScalar> t_;
  void prune();
};

FreeElement operator*(const UniScalar& c, const FreeElement& x);

/// Square matrix over the free algebra.
class AlgMatrix {
 public:
  explicit AlgMatrix(std::size_t q) : q_(q), m_(q * q) {}
  static AlgMatrix identity(std::size_t q, const UniScalar& c = UniScalar(1));

  std::size_t dim() const { return q_; }
  FreeElement& at(std::size_t i, std::size_t j) { return m_.at(i * q_ + j); }
  const FreeElement& at(std::size_t i, std::size_t j) const { return m_.at(i * q_ + j); }

  AlgMatrix operator+(const AlgMatrix& o) const;
  AlgMatrix operator-(const AlgMatrix& o) const;
  AlgMatrix operator*(const AlgMatrix& o) const;
  AlgMatrix operator*(const UniScalar& c) const;

  /// Conjugate transpose: entrywise star plus transposition.
  AlgMatrix adjoint(const GeneratorTable& gt) const;

 private:
  std::size_t q_;
  std::vector<FreeElement> m_;
};

}  // namespace ncg
