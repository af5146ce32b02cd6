#include "ncgkit/phase_scalar.hpp"

#include <sstream>

#include "ncgkit/errors.hpp"

namespace ncg {

UniScalar UniScalar::phase(const Rational& a, const Rational& b, const Rational& q) {
  UniScalar s;
  s.add_term({rat_mod1(a), b, 0}, q);
  return s;
}

UniScalar UniScalar::two_pi_i(int k) {
  UniScalar s;
  s.add_term({Rational(0), Rational(0), k}, Rational(1));
  return s;
}

UniScalar UniScalar::i() { return phase(Rational(1, 4)); }

bool UniScalar::is_unit_phase() const {
  if (t_.empty()) return false;
  // Exact unit modulus, λ·λ̄ = 1.  The check must be semantic rather than
  // "single stored term": cyclotomic reduction stores e.g. e^{4πi/3} as
  // −1 − e^{2πi/3}, which is still a unit.
  return (*this * star()) == UniScalar(1);
}

UniScalar UniScalar::operator+(const UniScalar& o) const {
  UniScalar r = *this;
  for (const auto& [e, q] : o.t_) r.t_[e] += q;
  r.normalize();
  return r;
}

UniScalar UniScalar::operator-(const UniScalar& o) const { return *this + (-o); }

UniScalar UniScalar::operator-() const {
  UniScalar r = *this;
  for (auto& [e, q] : r.t_) q = -q;
  return r;
}

UniScalar UniScalar::operator*(const UniScalar& o) const {
  UniScalar r;
  for (const auto& [e1, q1] : t_)
    for (const auto& [e2, q2] : o.t_) {
      PhaseExp e{rat_mod1(e1.a + e2.a), e1.b + e2.b, e1.tp + e2.tp};
      r.t_[e] += q1 * q2;
    }
  r.normalize();
  return r;
}

UniScalar UniScalar::star() const {
  UniScalar r;
  for (const auto& [e, q] : t_) {
    PhaseExp f{rat_mod1(-e.a), -e.b, e.tp};
    r.t_[f] += (e.tp % 2 == 0) ? q : -q;
  }
  r.normalize();
  return r;
}

UniScalar UniScalar::inverse_of_term() const {
  if (t_.size() != 1) throw parameter_error("scalar inverse requires a single term");
  const auto& [e, q] = *t_.begin();
  if (e.tp != 0) throw parameter_error("scalar inverse requires no 2\xCF\x80i factor");
  UniScalar r;
  r.add_term({rat_mod1(-e.a), -e.b, 0}, Rational(1) / q);
  return r;
}

Complex UniScalar::eval(const Real& theta) const {
  Real two_pi = 2 * pi_value();
  Complex total;
  for (const auto& [e, q] : t_) {
    Real arg = two_pi * (rat_to_real(e.a) + rat_to_real(e.b) * theta);
    Complex term = rat_to_real(q) * cis(arg);
    if (e.tp != 0) {
      Complex tpi(Real(0), two_pi);
      Complex p(Real(1), Real(0));
      for (int k = 0; k < (e.tp > 0 ? e.tp : -e.tp); ++k) p *= tpi;
      if (e.tp < 0) p = Complex(Real(1), Real(0)) / p;
      term *= p;
    }
    total += term;
  }
  return total;
}

void UniScalar::add_term(PhaseExp e, const Rational& q) {
  e.a = rat_mod1(e.a);
  t_[e] += q;
  normalize();
}

void UniScalar::normalize() {
  auto it = t_.begin();
  while (it != t_.end()) {
    // one (b,tp) slice is a contiguous key range
    auto first = it;
    const Rational b = first->first.b;
    const int tp = first->first.tp;
    PhaseSum slice;
    while (it != t_.end() && it->first.b == b && it->first.tp == tp) {
      slice[it->first.a] += it->second;
      ++it;
    }
    reduce_phase_sum(slice);
    it = t_.erase(first, it);
    for (const auto& [a, q] : slice) it = std::next(t_.insert(it, {{a, b, tp}, q}));
  }
}

std::string UniScalar::str() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool firstterm = true;
  for (const auto& [e, q] : t_) {
    if (!firstterm) os << " + ";
    firstterm = false;
    os << rat_str(q);
    if (e.a != 0 || e.b != 0) {
      os << "*e^{2pi i(" << rat_str(e.a);
      if (e.b != 0) os << " + " << rat_str(e.b) << "*theta";
      os << ")}";
    }
    if (e.tp != 0) os << "*(2pi i)^" << e.tp;
  }
  return os.str();
}

UniScalar operator*(const Rational& q, const UniScalar& s) { return UniScalar(q) * s; }

}  // namespace ncg
