#include "ncgkit/theta.hpp"

#include <algorithm>

#include "ncgkit/errors.hpp"

namespace ncg {

PrecisionBudget plan_theta_sum(const Rational& r, const Real& q_abs, const Real& eps) {
  if (!(q_abs < 1)) throw numeric_error("divergent nome");
  if (!(eps > 0)) throw parameter_error("eps must be positive");

  Real rabs = abs(rat_to_real(r));
  Real logq = log(q_abs);  // negative
  Real target = eps / 2;
  auto tail = [&](long long m) -> Real {
    Real e = Real(m) + 1 - rabs;
    return Real(2 * exp(logq * e * e) / (1 - q_abs));
  };

  // The geometric tail bound needs the exponent (n − |r|)² to grow by at
  // least one per step past the cutoff, so require M ≥ |r| + 1.
  const long long floor_r = rat_floor(r < 0 ? -r : r).convert_to<long long>();
  long long lo = floor_r + 2;
  long long hi = std::max<long long>(lo, 2);
  const long long hard_cap = 50000000;
  while (!(tail(hi) < target)) {
    hi *= 2;
    if (hi > hard_cap) throw numeric_error("truncation radius too large");
  }
  while (lo < hi) {
    long long mid = lo + (hi - lo) / 2;
    if (tail(mid) < target)
      hi = mid;
    else
      lo = mid + 1;
  }

  // Rounding room: the sum has ≤ 2M+1 terms of modulus ≤ 1, each produced by
  // O(1) operations, so log2(1/eps) + log2(M) + margin bits keep rounding
  // under eps/2.
  Real l2 = -log(eps) / log(Real(2));
  long long be = l2.convert_to<long long>();
  if (be < 0) be = 0;
  int log2m = 1;
  for (long long v = hi + 2; v > 0; v >>= 1) ++log2m;
  unsigned bits = static_cast<unsigned>(be + 40 + log2m);
  if (bits < precision_bits()) bits = precision_bits();
  return {eps, bits, hi};
}

CertComplex theta_const(const ThetaChar& ch, const Complex& tau_eff, const Real& eps) {
  if (!(ch.l > 0)) throw parameter_error("modulus scale must be positive");
  // Fold the characteristic into [−1/2, 1/2] (an exact reindexing).
  Rational r = ch.r - Rational(rat_floor(ch.r + Rational(1, 2)));

  Real labs = rat_to_real(ch.l);
  Real q_abs = exp(-pi_value() * labs * tau_eff.im);
  PrecisionBudget plan = plan_theta_sum(r, q_abs, eps);

  PrecisionGuard guard(plan.bits);
  Real rv = rat_to_real(r);
  Complex base = Complex(Real(0), pi_value() * rat_to_real(ch.l)) * tau_eff;  // πi·l·τ
  Complex total;
  for (long long n = -plan.radius; n <= plan.radius; ++n) {
    Real x = Real(n) + rv;
    total += cexp(base * (x * x));
  }
  return {total, eps};
}

// ---------------------------------------------------------------------------
// Congruence bookkeeping

namespace {

long long egcd(long long a, long long b, long long& x, long long& y) {
  if (b == 0) {
    x = 1;
    y = 0;
    return a;
  }
  long long x1, y1;
  long long g = egcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

std::optional<std::pair<long long, long long>> crt(long long r1, long long m1, long long r2,
                                                   long long m2) {
  long long x, y;
  long long g = egcd(m1, m2, x, y);
  long long diff = r2 - r1;
  if (diff % g != 0) return std::nullopt;
  long long m2g = m2 / g;
  long long l = m1 * m2g;  // lcm
  long long k = ((diff / g) % m2g) * (x % m2g) % m2g;
  long long n0 = (r1 + m1 * k) % l;
  if (n0 < 0) n0 += l;
  return std::make_pair(n0, l);
}

}  // namespace

std::optional<std::pair<long long, long long>> index_class(const SL2Mat& g1, const SL2Mat& g2,
                                                           long long alpha, long long beta,
                                                           long long gamma) {
  SL2Mat g12 = g1 * g2;
  long long c1 = g1.c, c2 = g2.c, c12 = g12.c;
  if (c1 <= 0 || c2 <= 0 || c12 <= 0) throw parameter_error("degrees must be positive");
  long long r1 = -c1 * gamma + c12 * alpha;
  long long r2 = c2 * g12.d * gamma - c12 * g2.d * beta;
  return crt(r1, c12 * c1, r2, c12 * c2);
}

std::vector<long long> index_set(const SL2Mat& g1, const SL2Mat& g2, long long alpha,
                                 long long beta, long long gamma, long long window) {
  std::vector<long long> out;
  auto cls = index_class(g1, g2, alpha, beta, gamma);
  if (!cls) return out;
  auto [n0, l] = *cls;
  // smallest representative ≥ −window
  long long start = n0 - ((n0 + window) / l) * l;
  while (start < -window) start += l;
  for (long long n = start; n <= window; n += l) out.push_back(n);
  return out;
}

// ---------------------------------------------------------------------------
// Structure constants

StructTensor::StructTensor(long long c1, long long c2, long long c12)
    : c1_(c1), c2_(c2), c12_(c12) {
  if (c1 <= 0 || c2 <= 0 || c12 <= 0) throw parameter_error("degrees must be positive");
  e_.resize(static_cast<std::size_t>(c1 * c2 * c12));
}

std::size_t StructTensor::idx(long long gamma, long long alpha, long long beta) const {
  if (gamma < 1 || gamma > c12_ || alpha < 1 || alpha > c1_ || beta < 1 || beta > c2_)
    throw parameter_error("structure-constant index out of range");
  return static_cast<std::size_t>(((gamma - 1) * c1_ + (alpha - 1)) * c2_ + (beta - 1));
}

CertComplex& StructTensor::at(long long gamma, long long alpha, long long beta) {
  return e_[idx(gamma, alpha, beta)];
}

const CertComplex& StructTensor::at(long long gamma, long long alpha, long long beta) const {
  return e_[idx(gamma, alpha, beta)];
}

StructTensor struct_constants(const SL2Mat& g1, const SL2Mat& g2, const QuadIrr& theta,
                              const Complex& tau, const Real& eps) {
  if (!(tau.im < 0)) throw parameter_error("Im(tau) must be negative");
  SL2Mat g12 = g1 * g2;
  StructTensor t(g1.c, g2.c, g12.c);
  for (const SL2Mat& g : {g1, g2, g12}) {
    QuadraticReal pos = QuadraticReal(Rational(g.c)) * theta.value() + QuadraticReal(Rational(g.d));
    if (!(pos.sign() > 0)) throw parameter_error("c*theta + d must be positive");
  }

  const long long n2 = 2 * g1.c * g2.c * g12.c;
  for (long long gamma = 1; gamma <= t.c12(); ++gamma)
    for (long long alpha = 1; alpha <= t.c1(); ++alpha)
      for (long long beta = 1; beta <= t.c2(); ++beta) {
        auto cls = index_class(g1, g2, alpha, beta, gamma);
        if (!cls) {
          t.at(gamma, alpha, beta) = CertComplex{Complex(), Real(0)};
          continue;
        }
        auto [n0, l] = *cls;
        // Σ_{n ≡ n0 (l)} exp(−πiτn²/n2) = ϑ_{n0/l} at scale l²/n2, direction −τ.
        ThetaChar ch{Rational(n0, l), Rational(l * l, n2)};
        t.at(gamma, alpha, beta) = theta_const(ch, -tau, eps);
      }
  return t;
}

}  // namespace ncg
