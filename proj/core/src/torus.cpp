#include "ncgkit/torus.hpp"

#include <regex>
#include <sstream>

#include "ncgkit/errors.hpp"

namespace ncg {

// ---------------------------------------------------------------------------
// SL2Mat

SL2Mat::SL2Mat(long long a_, long long b_, long long c_, long long d_)
    : a(a_), b(b_), c(c_), d(d_) {
  if (a * d - b * c != 1) throw parameter_error("matrix determinant must be 1");
}

SL2Mat SL2Mat::operator*(const SL2Mat& o) const {
  return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

std::string SL2Mat::str() const {
  std::ostringstream os;
  os << "[[" << a << "," << b << "],[" << c << "," << d << "]]";
  return os.str();
}

// ---------------------------------------------------------------------------
// QuadIrr

QuadIrr::QuadIrr(const QuadraticReal& v) : v_(v) {
  if (v.irr_part() == 0) throw parameter_error("theta must be irrational (s != 0)");
}

QuadIrr::QuadIrr(long long p, long long s, unsigned D, long long q)
    : QuadIrr(QuadraticReal(Rational(p, q), Rational(s, q), D)) {
  if (q == 0) throw parameter_error("q must be nonzero");
}

namespace {

// Common denominator data of θ = a + b√D as integers (p + s√D)/q.
struct PsqForm {
  BigInt p, s, q;
};

PsqForm psq_of(const QuadraticReal& v) {
  const Rational& a = v.rat_part();
  const Rational& b = v.irr_part();
  const BigInt da = boost::multiprecision::denominator(a);
  const BigInt db = boost::multiprecision::denominator(b);
  BigInt q = boost::multiprecision::lcm(da, db);
  BigInt p = BigInt(boost::multiprecision::numerator(a)) * (q / da);
  BigInt s = BigInt(boost::multiprecision::numerator(b)) * (q / db);
  const BigInt ap = p < 0 ? BigInt(-p) : p;
  const BigInt as = s < 0 ? BigInt(-s) : s;
  BigInt g = boost::multiprecision::gcd(BigInt(boost::multiprecision::gcd(ap, as)), q);
  if (g > 1) {
    p /= g;
    s /= g;
    q /= g;
  }
  return {p, s, q};
}

}  // namespace

BigInt QuadIrr::p() const { return psq_of(v_).p; }
BigInt QuadIrr::s() const { return psq_of(v_).s; }
BigInt QuadIrr::q() const { return psq_of(v_).q; }

QuadIrr QuadIrr::parse(const std::string& text) {
  // "(p + s*sqrt(D))/q"; the "s*" factor may be absent (meaning ±1).
  static const std::regex grammar(
      R"(^\s*\(\s*(-?\d+)\s*([+-])\s*(?:(\d+)\s*\*\s*)?sqrt\s*\(\s*(\d+)\s*\)\s*\)\s*/\s*(-?\d+)\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, grammar))
    throw parameter_error("cannot parse theta '" + text + "'; expected \"(p + s*sqrt(D))/q\"");
  BigInt p(m[1].str());
  BigInt s = m[3].matched ? BigInt(m[3].str()) : BigInt(1);
  if (m[2].str() == "-") s = -s;
  unsigned long D = std::stoul(m[4].str());
  BigInt q(m[5].str());
  if (q == 0) throw parameter_error("q must be nonzero");
  if (D == 0) throw parameter_error("radicand must be positive");
  return QuadIrr(QuadraticReal(Rational(p, q), Rational(s, q), static_cast<unsigned>(D)));
}

std::string QuadIrr::str() const {
  PsqForm f = psq_of(v_);
  std::ostringstream os;
  const BigInt as = f.s < 0 ? BigInt(-f.s) : f.s;
  os << "(" << f.p.str() << (f.s < 0 ? " - " : " + ") << as.str() << "*sqrt(" << v_.D() << "))/"
     << f.q.str();
  return os.str();
}

// ---------------------------------------------------------------------------
// ComplexStructure

ComplexStructure::ComplexStructure(Complex t) : tau(std::move(t)) {
  if (!(tau.im < 0)) throw parameter_error("Im(tau) must be negative");
}

// ---------------------------------------------------------------------------
// TorusElement

void TorusElement::add(const Key& k, const UniScalar& c) {
  auto it = t_.find(k);
  if (it == t_.end()) {
    if (!c.is_zero()) t_.emplace(k, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) t_.erase(it);
}

TorusElement TorusElement::mono(long long n, long long m, const UniScalar& c) {
  TorusElement x;
  x.add({n, m}, c);
  return x;
}

TorusElement TorusElement::operator+(const TorusElement& o) const {
  TorusElement r = *this;
  for (const auto& [k, c] : o.t_) r.add(k, c);
  return r;
}

TorusElement TorusElement::operator-(const TorusElement& o) const { return *this + (-o); }

TorusElement TorusElement::operator-() const {
  TorusElement r;
  for (const auto& [k, c] : t_) r.t_.emplace(k, -c);
  return r;
}

TorusElement TorusElement::operator*(const UniScalar& c) const {
  TorusElement r;
  for (const auto& [k, v] : t_) r.add(k, v * c);
  return r;
}

TorusElement TorusElement::star() const {
  TorusElement r;
  for (const auto& [k, c] : t_) {
    const auto [n, m] = k;
    r.add({-n, -m}, c.star() * UniScalar::phase(Rational(0), Rational(-n * m)));
  }
  return r;
}

UniScalar TorusElement::coeff(long long n, long long m) const {
  auto it = t_.find({n, m});
  return it == t_.end() ? UniScalar() : it->second;
}

std::string TorusElement::str() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : t_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")";
    if (k.first != 0) os << "*U^" << k.first;
    if (k.second != 0) os << "*V^" << k.second;
  }
  return os.str();
}

TorusElement torus_mul(const TorusElement& x, const TorusElement& y) {
  TorusElement r;
  for (const auto& [kx, cx] : x.t_)
    for (const auto& [ky, cy] : y.t_) {
      const auto [n, m] = kx;
      const auto [p, q] = ky;
      UniScalar phase = UniScalar::phase(Rational(0), Rational(-m * p));
      r.add({n + p, m + q}, cx * cy * phase);
    }
  return r;
}

TorusElement torus_mul(const TorusElement& x, const TorusElement& y, const Rational& theta) {
  TorusElement r;
  for (const auto& [kx, cx] : x.t_)
    for (const auto& [ky, cy] : y.t_) {
      const auto [n, m] = kx;
      const auto [p, q] = ky;
      UniScalar phase = UniScalar::phase(rat_mod1(Rational(-m * p) * theta));
      r.add({n + p, m + q}, cx * cy * phase);
    }
  return r;
}

UniScalar trace_chi(const TorusElement& x) { return x.coeff(0, 0); }

TorusElement delta(int j, const TorusElement& x) {
  if (j != 1 && j != 2) throw parameter_error("derivation index must be 1 or 2");
  TorusElement r;
  for (const auto& [k, c] : x.terms()) {
    long long w = (j == 1) ? k.first : k.second;
    if (w == 0) continue;
    r += TorusElement::mono(k.first, k.second, c * UniScalar::two_pi_i() * UniScalar(Rational(w)));
  }
  return r;
}

// ---------------------------------------------------------------------------
// NumTorus

namespace {

void num_add(std::map<TorusElement::Key, Complex>& t, const TorusElement::Key& k,
             const Complex& c) {
  auto it = t.find(k);
  if (it == t.end()) {
    t.emplace(k, c);
    return;
  }
  it->second = it->second + c;
}

}  // namespace

NumTorus NumTorus::operator+(const NumTorus& o) const {
  NumTorus r = *this;
  for (const auto& [k, c] : o.terms) num_add(r.terms, k, c);
  return r;
}

NumTorus NumTorus::operator-(const NumTorus& o) const {
  NumTorus r = *this;
  for (const auto& [k, c] : o.terms) num_add(r.terms, k, -c);
  return r;
}

NumTorus NumTorus::mul(const NumTorus& o, const Real& theta) const {
  NumTorus r;
  for (const auto& [kx, cx] : terms)
    for (const auto& [ky, cy] : o.terms) {
      Real ang = -2 * pi_value() * theta * Real(kx.second) * Real(ky.first);
      num_add(r.terms, {kx.first + ky.first, kx.second + ky.second}, cx * cy * cis(ang));
    }
  return r;
}

Real NumTorus::max_abs() const {
  Real m = 0;
  for (const auto& [k, c] : terms) {
    (void)k;
    Real a = c.abs();
    if (a > m) m = a;
  }
  return m;
}

NumTorus to_numeric(const TorusElement& x, const Real& theta) {
  NumTorus r;
  for (const auto& [k, c] : x.terms()) num_add(r.terms, k, c.eval(theta));
  return r;
}

NumTorus delta_tau(const ComplexStructure& cs, const TorusElement& x, const Real& theta) {
  NumTorus r;
  const Complex two_pi_i{Real(0), 2 * pi_value()};
  for (const auto& [k, c] : x.terms()) {
    Complex scale = two_pi_i * (cs.tau * Complex{Real(k.first), Real(0)} +
                                Complex{Real(k.second), Real(0)});
    num_add(r.terms, k, c.eval(theta) * scale);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Rank, Morita action, fixed matrices

QuadraticReal k0_rank(long long n, long long m, const QuadIrr& theta) {
  return QuadraticReal(Rational(n)) + QuadraticReal(Rational(m)) * theta.value();
}

QuadraticReal module_rank(const SL2Mat& g, const QuadIrr& theta) {
  QuadraticReal r = k0_rank(g.d, g.c, theta);
  return r.sign() < 0 ? -r : r;
}

QuadIrr morita_theta(const SL2Mat& g, const QuadIrr& theta) {
  const QuadraticReal& th = theta.value();
  QuadraticReal den = QuadraticReal(Rational(g.c)) * th + QuadraticReal(Rational(g.d));
  if (den.is_zero()) throw parameter_error("pole of the fractional-linear action");
  QuadraticReal num = QuadraticReal(Rational(g.a)) * th + QuadraticReal(Rational(g.b));
  return QuadIrr(num / den);
}

bool is_rm(const QuadIrr& theta) {
  (void)theta;
  return true;  // the type stores an irrational quadratic by construction
}

std::vector<SL2Mat> fixing_matrices(const QuadIrr& theta, long long bound) {
  // gθ = θ  ⇔  cθ² + (d−a)θ − b = 0, decided exactly.
  std::vector<SL2Mat> out;
  const QuadraticReal& th = theta.value();
  QuadraticReal th2 = th * th;
  for (long long a = -bound; a <= bound; ++a)
    for (long long b = -bound; b <= bound; ++b)
      for (long long c = -bound; c <= bound; ++c)
        for (long long d = -bound; d <= bound; ++d) {
          if (a * d - b * c != 1) continue;
          QuadraticReal lhs = QuadraticReal(Rational(c)) * th2 +
                              QuadraticReal(Rational(d - a)) * th - QuadraticReal(Rational(b));
          if (lhs.is_zero()) out.push_back({a, b, c, d});
        }
  if (bound < 1) out.push_back(SL2Mat::identity());
  return out;
}

QuadIrr canonicalize_theta(const QuadIrr& theta) {
  QuadraticReal t = theta.value() - QuadraticReal(Rational(theta.value().floor()));
  if (t > QuadraticReal(Rational(1, 2))) t = QuadraticReal(Rational(1)) - t;
  return QuadIrr(t);
}

DegreeReport tensor_degree_check(const SL2Mat& g1, const SL2Mat& g2) {
  SL2Mat g12 = g1 * g2;
  DegreeReport r{g1.degree(), g2.degree(), g12.degree(), false};
  r.positivity_violated = r.deg1 > 0 && r.deg2 > 0 && r.deg12 <= 0;
  return r;
}

}  // namespace ncg
