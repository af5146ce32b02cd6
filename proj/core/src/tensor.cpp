#include "ncgkit/tensor.hpp"

#include <sstream>

#include "ncgkit/errors.hpp"

namespace ncg {

void TensorElement::add(const std::vector<Word>& key, const UniScalar& c) {
  for (std::size_t s = 1; s < key.size(); ++s)
    if (key[s].empty()) return;  // constant in a non-first slot: zero class
  auto it = t_.find(key);
  if (it == t_.end()) {
    if (!c.is_zero()) t_.emplace(key, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) t_.erase(it);
}

TensorElement TensorElement::product(const std::vector<FreeElement>& factors) {
  TensorElement r(factors.size());
  std::vector<Word> key(factors.size());
  UniScalar coeff;

  // iterative multilinear expansion over the terms of each factor
  std::vector<std::map<Word, UniScalar>::const_iterator> pos(factors.size());
  for (std::size_t s = 0; s < factors.size(); ++s) {
    if (factors[s].is_zero()) return r;
    pos[s] = factors[s].terms().begin();
  }
  while (true) {
    UniScalar c(1);
    for (std::size_t s = 0; s < factors.size(); ++s) {
      key[s] = pos[s]->first;
      c *= pos[s]->second;
    }
    r.add(key, c);
    std::size_t s = factors.size();
    while (s-- > 0) {
      if (++pos[s] != factors[s].terms().end()) break;
      if (s == 0) return r;
      pos[s] = factors[s].terms().begin();
    }
  }
}

TensorElement TensorElement::operator+(const TensorElement& o) const {
  if (arity_ != o.arity_) throw parameter_error("tensor arity mismatch");
  TensorElement r = *this;
  for (const auto& [k, c] : o.t_) r.add(k, c);
  return r;
}

TensorElement TensorElement::operator-(const TensorElement& o) const { return *this + (-o); }

TensorElement TensorElement::operator-() const {
  TensorElement r = *this;
  for (auto& [k, c] : r.t_) c = -c;
  return r;
}

TensorElement TensorElement::operator*(const UniScalar& c) const {
  TensorElement r(arity_);
  for (const auto& [k, q] : t_) r.add(k, q * c);
  return r;
}

TensorElement TensorElement::normalized(const RewriteSystem& rs) const {
  TensorElement r(arity_);
  std::vector<FreeElement> factors(arity_);
  for (const auto& [k, c] : t_) {
    for (std::size_t s = 0; s < arity_; ++s) factors[s] = rs.normal_form(FreeElement::monomial(k[s]));
    r += TensorElement::product(factors) * c;
  }
  return r;
}

std::string TensorElement::str(const GeneratorTable& gt) const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : t_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")*[";
    for (std::size_t s = 0; s < k.size(); ++s) {
      if (s) os << " (x) ";
      if (k[s].empty()) os << "1";
      for (auto g : k[s]) os << gt.name(g);
    }
    os << "]";
  }
  return os.str();
}

bool tensor_is_zero(const TensorElement& t, const RewriteSystem& rs) {
  return t.normalized(rs).is_syntactically_zero();
}

TensorElement chern_even(const AlgMatrix& e, unsigned k) {
  const std::size_t q = e.dim();
  const std::size_t arity = 2 * k + 1;
  TensorElement total(arity);
  std::vector<std::size_t> idx(arity + 1);  // i₀ … i_{2k}, then i₀ again
  std::vector<FreeElement> factors(arity);
  const UniScalar half(Rational(1, 2));

  std::vector<std::size_t> chain(arity, 0);
  while (true) {
    for (std::size_t s = 0; s < arity; ++s) idx[s] = chain[s];
    idx[arity] = chain[0];
    factors[0] = e.at(idx[0], idx[1]);
    if (idx[0] == idx[1]) factors[0] -= FreeElement::unit(half);
    for (std::size_t s = 1; s < arity; ++s) factors[s] = e.at(idx[s], idx[s + 1]);
    total += TensorElement::product(factors);

    std::size_t s = arity;
    while (s-- > 0) {
      if (++chain[s] < q) break;
      chain[s] = 0;
      if (s == 0) return total;
    }
  }
}

TensorElement chern_odd(const AlgMatrix& u, unsigned k, const GeneratorTable& gt) {
  const std::size_t q = u.dim();
  const std::size_t arity = 2 * k + 2;
  const AlgMatrix us = u.adjoint(gt);
  TensorElement total(arity);
  std::vector<FreeElement> factors(arity);

  std::vector<std::size_t> chain(arity, 0);
  while (true) {
    for (int starred_first = 0; starred_first < 2; ++starred_first) {
      for (std::size_t s = 0; s < arity; ++s) {
        const bool starred = (s % 2 == 1) != (starred_first == 1);
        const std::size_t row = chain[s];
        const std::size_t col = chain[(s + 1) % arity];
        factors[s] = starred ? us.at(row, col) : u.at(row, col);
      }
      TensorElement part = TensorElement::product(factors);
      total += (starred_first == 0) ? part : -part;
    }
    std::size_t s = arity;
    while (s-- > 0) {
      if (++chain[s] < q) break;
      chain[s] = 0;
      if (s == 0) return total;
    }
  }
}

}  // namespace ncg
