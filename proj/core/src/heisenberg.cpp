#include "ncgkit/heisenberg.hpp"

#include <json.hpp>

#include <algorithm>
#include <utility>

#include "ncgkit/errors.hpp"

namespace ncg {

// ---------------------------------------------------------------------------
// ExactCx

ExactCx::ExactCx(QuadraticReal q) {
  if (!q.is_zero()) t_.emplace(CxKey{}, std::move(q));
}

ExactCx::ExactCx(long long n) : ExactCx(QuadraticReal(n)) {}

ExactCx ExactCx::monomial(CxKey k, const QuadraticReal& q) {
  ExactCx r;
  if (!q.is_zero()) r.t_.emplace(k, q);
  return r;
}

void ExactCx::put(const CxKey& k, const QuadraticReal& q) {
  auto it = t_.find(k);
  if (it == t_.end()) {
    if (!q.is_zero()) t_.emplace(k, q);
    return;
  }
  it->second += q;
  if (it->second.is_zero()) t_.erase(it);
}

ExactCx ExactCx::operator+(const ExactCx& o) const {
  ExactCx r = *this;
  for (const auto& [k, q] : o.t_) r.put(k, q);
  return r;
}

ExactCx ExactCx::operator-(const ExactCx& o) const {
  ExactCx r = *this;
  for (const auto& [k, q] : o.t_) r.put(k, -q);
  return r;
}

ExactCx ExactCx::operator-() const {
  ExactCx r;
  for (const auto& [k, q] : t_) r.t_.emplace(k, -q);
  return r;
}

ExactCx ExactCx::operator*(const ExactCx& o) const {
  ExactCx r;
  for (const auto& [ka, qa] : t_)
    for (const auto& [kb, qb] : o.t_)
      r.put(CxKey{ka.p + kb.p, ka.t + kb.t, ka.z + kb.z}, qa * qb);
  return r;
}

int ExactCx::compare(const ExactCx& x, const ExactCx& y) {
  auto ia = x.t_.begin(), ib = y.t_.begin();
  for (; ia != x.t_.end() && ib != y.t_.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return ia->first < ib->first ? -1 : 1;
    if (QuadraticReal::key_less(ia->second, ib->second)) return -1;
    if (QuadraticReal::key_less(ib->second, ia->second)) return 1;
  }
  if (ia != x.t_.end()) return 1;
  if (ib != y.t_.end()) return -1;
  return 0;
}

Complex ExactCx::eval(const Complex& tau, const Complex& z) const {
  const Complex two_pi_i(Real(0), 2 * pi_value());
  Complex total;
  for (const auto& [k, q] : t_) {
    Complex v(q.to_real());
    for (int i = 0; i < k.p; ++i) v = v * two_pi_i;
    for (int i = 0; i < k.t; ++i) v = v * tau;
    for (int i = 0; i < k.z; ++i) v = v * z;
    total += v;
  }
  return total;
}

std::string ExactCx::str() const {
  if (t_.empty()) return "0";
  std::string out;
  for (const auto& [k, q] : t_) {
    if (!out.empty()) out += " + ";
    out += q.str();
    auto pow = [&](const char* sym, int e) {
      if (e == 0) return;
      out += std::string("*") + sym;
      if (e > 1) out += "^" + std::to_string(e);
    };
    pow("twopii", k.p);
    pow("tau", k.t);
    pow("z", k.z);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Polynomials with ExactCx coefficients (coefficient k multiplies x^k)

namespace {

using Poly = std::vector<ExactCx>;

void poly_strip(Poly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

Poly poly_add(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  poly_strip(r);
  return r;
}

Poly poly_scale(const Poly& a, const ExactCx& s) {
  Poly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
  poly_strip(r);
  return r;
}

Poly poly_shift_up(const Poly& a) {  // multiply by x
  if (a.empty()) return {};
  Poly r(a.size() + 1);
  for (std::size_t i = 0; i < a.size(); ++i) r[i + 1] = a[i];
  return r;
}

Poly poly_derivative(const Poly& a) {
  if (a.size() <= 1) return {};
  Poly r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * ExactCx(static_cast<long long>(i));
  poly_strip(r);
  return r;
}

/// poly(x − s) by binomial expansion; s exact.
Poly poly_translate(const Poly& a, const QuadraticReal& s) {
  if (a.empty()) return {};
  const std::size_t n = a.size();
  // powers of (−s)
  std::vector<QuadraticReal> pw(n);
  pw[0] = QuadraticReal(1);
  for (std::size_t i = 1; i < n; ++i) pw[i] = pw[i - 1] * (-s);
  // binomial row built incrementally
  std::vector<std::vector<Rational>> binom(n);
  for (std::size_t j = 0; j < n; ++j) {
    binom[j].resize(j + 1);
    binom[j][0] = 1;
    binom[j][j] = 1;
    for (std::size_t k = 1; k < j; ++k) binom[j][k] = binom[j - 1][k - 1] + binom[j - 1][k];
  }
  Poly r(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (a[j].is_zero()) continue;
    for (std::size_t k = 0; k <= j; ++k)
      r[k] += a[j] * ExactCx(QuadraticReal(binom[j][k]) * pw[j - k]);
  }
  poly_strip(r);
  return r;
}

long long fold_class(long long alpha, long long c) {
  long long r = alpha % c;
  return r < 0 ? r + c : r;
}

ExactCx two_pi_i_times(const QuadraticReal& q) {
  return ExactCx::monomial({1, 0, 0}, q);
}

/// Reduces the constant phase: exp(2πi·(r + s√D)) depends on the rational
/// part of r only modulo 1.
void reduce_phase(ExactCx& e) {
  const CxKey lin{1, 0, 0};
  auto it = e.terms().find(lin);
  if (it == e.terms().end()) return;
  const QuadraticReal& v = it->second;
  Rational frac = rat_mod1(v.rat_part());
  if (frac == v.rat_part()) return;
  e -= two_pi_i_times(QuadraticReal(v.rat_part() - frac));
}

/// x ↦ x − s applied to one term.
GaussTerm term_translate(const GaussTerm& t, const QuadraticReal& s) {
  GaussTerm r;
  r.kappa = t.kappa;
  ExactCx es(s);
  r.beta = t.beta - t.kappa * ExactCx(QuadraticReal(2) * s);
  r.e = t.e + t.kappa * ExactCx(s * s) - t.beta * es;
  r.poly = poly_translate(t.poly, s);
  return r;
}

}  // namespace

GaussTerm GaussTerm::gaussian(ExactCx kappa, ExactCx beta, ExactCx e) {
  GaussTerm t;
  t.kappa = std::move(kappa);
  t.beta = std::move(beta);
  t.e = std::move(e);
  t.poly = {ExactCx(1)};
  return t;
}

// ---------------------------------------------------------------------------
// GaussPolyPacket

GaussPolyPacket::GaussPolyPacket(long long c) {
  if (c <= 0) throw parameter_error("class count must be positive");
  c_.resize(static_cast<std::size_t>(c));
}

const std::vector<GaussTerm>& GaussPolyPacket::cls(long long alpha) const {
  return c_[static_cast<std::size_t>(fold_class(alpha, class_count()))];
}

void GaussPolyPacket::add_term(long long alpha, GaussTerm t) {
  c_[static_cast<std::size_t>(fold_class(alpha, class_count()))].push_back(std::move(t));
  normalize();
}

void GaussPolyPacket::normalize() {
  for (auto& terms : c_) {
    for (auto& t : terms) {
      reduce_phase(t.e);
      poly_strip(t.poly);
    }
    auto key_cmp = [](const GaussTerm& x, const GaussTerm& y) {
      if (int c = ExactCx::compare(x.kappa, y.kappa)) return c < 0;
      if (int c = ExactCx::compare(x.beta, y.beta)) return c < 0;
      return ExactCx::compare(x.e, y.e) < 0;
    };
    std::stable_sort(terms.begin(), terms.end(), key_cmp);
    std::vector<GaussTerm> merged;
    for (auto& t : terms) {
      if (!merged.empty() && !key_cmp(merged.back(), t) && !key_cmp(t, merged.back())) {
        merged.back().poly = poly_add(merged.back().poly, t.poly);
      } else {
        merged.push_back(std::move(t));
      }
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const GaussTerm& t) { return t.poly.empty(); }),
                 merged.end());
    terms = std::move(merged);
  }
}

bool GaussPolyPacket::is_zero() const {
  for (const auto& terms : c_)
    if (!terms.empty()) return false;
  return true;
}

GaussPolyPacket GaussPolyPacket::operator+(const GaussPolyPacket& o) const {
  if (class_count() != o.class_count()) throw parameter_error("class count mismatch");
  GaussPolyPacket r = *this;
  for (std::size_t a = 0; a < o.c_.size(); ++a)
    for (const auto& t : o.c_[a]) r.c_[a].push_back(t);
  r.normalize();
  return r;
}

GaussPolyPacket GaussPolyPacket::operator-(const GaussPolyPacket& o) const {
  return *this + o.scaled(ExactCx(-1), ExactCx());
}

GaussPolyPacket GaussPolyPacket::scaled(const ExactCx& coeff, const ExactCx& e_shift) const {
  GaussPolyPacket r(class_count());
  if (coeff.is_zero()) return r;
  for (std::size_t a = 0; a < c_.size(); ++a)
    for (const auto& t : c_[a]) {
      GaussTerm s = t;
      s.poly = poly_scale(s.poly, coeff);
      s.e += e_shift;
      r.c_[a].push_back(std::move(s));
    }
  r.normalize();
  return r;
}

// ---------------------------------------------------------------------------
// Module parameters and actions

ModuleParams::ModuleParams(SL2Mat g_, QuadIrr theta_, ExactCx z_)
    : g(g_), theta(std::move(theta_)), z(std::move(z_)) {
  if (g.c <= 0) throw parameter_error("module degree (lower-left entry) must be positive");
}

QuadraticReal ModuleParams::c_theta_d() const {
  return QuadraticReal(Rational(g.c)) * theta.value() + QuadraticReal(Rational(g.d));
}

namespace {

void check_classes(const GaussPolyPacket& f, const ModuleParams& p) {
  if (f.class_count() != p.g.c) throw parameter_error("packet class count does not match degree");
}

}  // namespace

GaussPolyPacket act_right_U(const GaussPolyPacket& f, const ModuleParams& p) {
  check_classes(f, p);
  const QuadraticReal step = p.c_theta_d() / QuadraticReal(Rational(p.g.c));
  GaussPolyPacket r(p.g.c);
  for (long long alpha = 0; alpha < p.g.c; ++alpha)
    for (const auto& t : f.cls(alpha - 1)) r.add_term(alpha, term_translate(t, step));
  return r;
}

GaussPolyPacket act_right_V(const GaussPolyPacket& f, const ModuleParams& p) {
  check_classes(f, p);
  GaussPolyPacket r(p.g.c);
  for (long long alpha = 0; alpha < p.g.c; ++alpha)
    for (const auto& t : f.cls(alpha)) {
      GaussTerm s = t;
      s.beta += ExactCx::two_pi_i();
      s.e += two_pi_i_times(QuadraticReal(Rational(-alpha * p.g.d, p.g.c)));
      r.add_term(alpha, std::move(s));
    }
  return r;
}

GaussPolyPacket act_left_U(const GaussPolyPacket& f, const ModuleParams& p) {
  check_classes(f, p);
  const QuadraticReal step{Rational(1, p.g.c)};
  GaussPolyPacket r(p.g.c);
  for (long long alpha = 0; alpha < p.g.c; ++alpha)
    for (const auto& t : f.cls(alpha - p.g.a)) r.add_term(alpha, term_translate(t, step));
  return r;
}

GaussPolyPacket act_left_V(const GaussPolyPacket& f, const ModuleParams& p) {
  check_classes(f, p);
  const QuadraticReal slope = QuadraticReal(1) / p.c_theta_d();
  GaussPolyPacket r(p.g.c);
  for (long long alpha = 0; alpha < p.g.c; ++alpha)
    for (const auto& t : f.cls(alpha)) {
      GaussTerm s = t;
      s.beta += two_pi_i_times(slope);
      s.e += two_pi_i_times(QuadraticReal(Rational(-alpha, p.g.c)));
      r.add_term(alpha, std::move(s));
    }
  return r;
}

GaussPolyPacket act_right_word(const GaussPolyPacket& f, const ModuleParams& p,
                               const std::string& word) {
  GaussPolyPacket r = f;
  for (char ch : word) {
    if (ch == 'U')
      r = act_right_U(r, p);
    else if (ch == 'V')
      r = act_right_V(r, p);
    else
      throw parameter_error("word letters must be U or V");
  }
  return r;
}

GaussPolyPacket nabla_z(const GaussPolyPacket& f, const ModuleParams& p) {
  check_classes(f, p);
  const QuadraticReal denom = p.c_theta_d();
  if (!(denom.sign() > 0)) throw parameter_error("c*theta + d must be positive");
  // slope of the x-linear part: 2πi·τ·d/(cθ+d)
  const ExactCx slope =
      ExactCx::monomial({1, 1, 0}, QuadraticReal(Rational(p.g.d)) / denom);
  const ExactCx z_part = ExactCx::two_pi_i() * p.z;

  GaussPolyPacket r(p.g.c);
  for (long long alpha = 0; alpha < p.g.c; ++alpha)
    for (const auto& t : f.cls(alpha)) {
      GaussTerm s;
      s.kappa = t.kappa;
      s.beta = t.beta;
      s.e = t.e;
      ExactCx xcoef = t.kappa * ExactCx(2) + slope;
      s.poly = poly_add(poly_derivative(t.poly),
                        poly_add(poly_scale(poly_shift_up(t.poly), xcoef),
                                 poly_scale(t.poly, t.beta + z_part)));
      if (!s.poly.empty()) r.add_term(alpha, std::move(s));
    }
  return r;
}

Complex eval_packet(const GaussPolyPacket& f, const Complex& x, long long alpha,
                    const Complex& tau, const Complex& z) {
  Complex total;
  for (const auto& t : f.cls(alpha)) {
    Complex val;
    for (std::size_t k = t.poly.size(); k-- > 0;) val = val * x + t.poly[k].eval(tau, z);
    Complex arg = t.kappa.eval(tau, z) * (x * x) + t.beta.eval(tau, z) * x + t.e.eval(tau, z);
    total += val * cexp(arg);
  }
  return total;
}

void verify_decay(const GaussPolyPacket& f, const Complex& tau) {
  for (long long alpha = 0; alpha < f.class_count(); ++alpha)
    for (const auto& t : f.cls(alpha)) {
      Complex k = t.kappa.eval(tau, Complex());
      if (!(k.re < 0)) throw numeric_error("packet violates Gaussian decay (Re kappa >= 0)");
    }
}

GaussPolyPacket basis_gaussian(const ModuleParams& p, GaussianBasis basis, long long alpha) {
  const QuadraticReal denom = p.c_theta_d();
  if (!(denom.sign() > 0)) throw parameter_error("c*theta + d must be positive");
  ExactCx kappa;
  switch (basis) {
    case GaussianBasis::connection_kernel:
      // exponent annihilated by nabla at z = 0: κ = −πi·dτ/(cθ+d)
      kappa = ExactCx::monomial({1, 1, 0}, QuadraticReal(Rational(-p.g.d, 2)) / denom);
      break;
    case GaussianBasis::alternate_exponent:
      // alternate normalization −cτ/(2(cθ+d))·x²
      kappa = ExactCx::monomial({0, 1, 0}, QuadraticReal(Rational(-p.g.c, 2)) / denom);
      break;
  }
  GaussPolyPacket f(p.g.c);
  f.add_term(alpha, GaussTerm::gaussian(kappa));
  return f;
}

std::string packet_to_json(const GaussPolyPacket& f) {
  nlohmann::ordered_json j;
  j["classes"] = nlohmann::ordered_json::array();
  for (long long alpha = 0; alpha < f.class_count(); ++alpha) {
    nlohmann::ordered_json terms = nlohmann::ordered_json::array();
    for (const auto& t : f.cls(alpha)) {
      nlohmann::ordered_json poly = nlohmann::ordered_json::array();
      for (const auto& c : t.poly) poly.push_back(c.str());
      terms.push_back({{"kappa", t.kappa.str()},
                       {"beta", t.beta.str()},
                       {"exp", t.e.str()},
                       {"poly", poly}});
    }
    j["classes"].push_back(terms);
  }
  return j.dump(2) + "\n";
}

}  // namespace ncg
