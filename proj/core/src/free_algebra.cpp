#include "ncgkit/free_algebra.hpp"

#include <algorithm>
#include <sstream>

#include "ncgkit/errors.hpp"

namespace ncg {

GeneratorTable::GeneratorTable(std::vector<std::string> names, std::vector<std::size_t> star_of)
    : names_(std::move(names)), star_of_(std::move(star_of)) {
  if (names_.size() != star_of_.size())
    throw parameter_error("generator table: names/star size mismatch");
  for (std::size_t g = 0; g < star_of_.size(); ++g) {
    if (star_of_[g] >= star_of_.size() || star_of_[star_of_[g]] != g)
      throw parameter_error("generator table: star is not an involution");
  }
}

std::size_t GeneratorTable::index_of(const std::string& name) const {
  for (std::size_t g = 0; g < names_.size(); ++g)
    if (names_[g] == name) return g;
  throw parameter_error("unknown generator '" + name + "'");
}

bool deglex_less(const Word& x, const Word& y) {
  if (x.size() != y.size()) return x.size() < y.size();
  return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
}

FreeElement FreeElement::monomial(Word w, UniScalar c) {
  FreeElement x;
  if (!c.is_zero()) x.t_.emplace(std::move(w), std::move(c));
  return x;
}

FreeElement FreeElement::operator+(const FreeElement& o) const {
  FreeElement r = *this;
  for (const auto& [w, c] : o.t_) r.t_[w] += c;
  r.prune();
  return r;
}

FreeElement FreeElement::operator-(const FreeElement& o) const { return *this + (-o); }

FreeElement FreeElement::operator-() const {
  FreeElement r = *this;
  for (auto& [w, c] : r.t_) c = -c;
  return r;
}

FreeElement FreeElement::operator*(const FreeElement& o) const {
  FreeElement r;
  for (const auto& [w1, c1] : t_)
    for (const auto& [w2, c2] : o.t_) {
      Word w = w1;
      w.insert(w.end(), w2.begin(), w2.end());
      r.t_[std::move(w)] += c1 * c2;
    }
  r.prune();
  return r;
}

FreeElement FreeElement::operator*(const UniScalar& c) const {
  FreeElement r;
  for (const auto& [w, q] : t_) r.t_[w] = q * c;
  r.prune();
  return r;
}

FreeElement FreeElement::star(const GeneratorTable& gt) const {
  FreeElement r;
  for (const auto& [w, c] : t_) {
    Word sw(w.rbegin(), w.rend());
    for (auto& g : sw) g = static_cast<std::uint32_t>(gt.star(g));
    r.t_[std::move(sw)] += c.star();
  }
  r.prune();
  return r;
}

FreeElement FreeElement::without_constant() const {
  FreeElement r = *this;
  r.t_.erase(Word{});
  return r;
}

UniScalar FreeElement::constant_term() const {
  auto it = t_.find(Word{});
  return it == t_.end() ? UniScalar() : it->second;
}

std::size_t FreeElement::max_degree() const {
  std::size_t d = 0;
  for (const auto& [w, c] : t_) d = std::max(d, w.size());
  return d;
}

std::string FreeElement::str(const GeneratorTable& gt) const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : t_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")";
    for (auto g : w) os << "*" << gt.name(g);
  }
  return os.str();
}

void FreeElement::prune() {
  for (auto it = t_.begin(); it != t_.end();)
    it = it->second.is_zero() ? t_.erase(it) : std::next(it);
}

FreeElement operator*(const UniScalar& c, const FreeElement& x) { return x * c; }

AlgMatrix AlgMatrix::identity(std::size_t q, const UniScalar& c) {
  AlgMatrix e(q);
  for (std::size_t i = 0; i < q; ++i) e.at(i, i) = FreeElement::unit(c);
  return e;
}

AlgMatrix AlgMatrix::operator+(const AlgMatrix& o) const {
  if (q_ != o.q_) throw parameter_error("matrix dimension mismatch");
  AlgMatrix r(q_);
  for (std::size_t k = 0; k < m_.size(); ++k) r.m_[k] = m_[k] + o.m_[k];
  return r;
}

AlgMatrix AlgMatrix::operator-(const AlgMatrix& o) const {
  if (q_ != o.q_) throw parameter_error("matrix dimension mismatch");
  AlgMatrix r(q_);
  for (std::size_t k = 0; k < m_.size(); ++k) r.m_[k] = m_[k] - o.m_[k];
  return r;
}

AlgMatrix AlgMatrix::operator*(const AlgMatrix& o) const {
  if (q_ != o.q_) throw parameter_error("matrix dimension mismatch");
  AlgMatrix r(q_);
  for (std::size_t i = 0; i < q_; ++i)
    for (std::size_t j = 0; j < q_; ++j) {
      FreeElement s;
      for (std::size_t k = 0; k < q_; ++k) s += at(i, k) * o.at(k, j);
      r.at(i, j) = std::move(s);
    }
  return r;
}

AlgMatrix AlgMatrix::operator*(const UniScalar& c) const {
  AlgMatrix r(q_);
  for (std::size_t k = 0; k < m_.size(); ++k) r.m_[k] = m_[k] * c;
  return r;
}

AlgMatrix AlgMatrix::adjoint(const GeneratorTable& gt) const {
  AlgMatrix r(q_);
  for (std::size_t i = 0; i < q_; ++i)
    for (std::size_t j = 0; j < q_; ++j) r.at(i, j) = at(j, i).star(gt);
  return r;
}

}  // namespace ncg
