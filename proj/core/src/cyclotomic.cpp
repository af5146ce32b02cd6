#include "ncgkit/cyclotomic.hpp"

#include <mutex>

#include "ncgkit/errors.hpp"

namespace ncg {

namespace {

// exact division of integer polynomials (num divisible by den, den monic)
std::vector<BigInt> poly_div_exact(std::vector<BigInt> r, const std::vector<BigInt>& den) {
  size_t qn = r.size() - den.size() + 1;
  std::vector<BigInt> q(qn, 0);
  for (size_t k = qn; k-- > 0;) {
    BigInt f = r[k + den.size() - 1];
    q[k] = f;
    if (f != 0)
      for (size_t j = 0; j < den.size(); ++j) r[k + j] -= f * den[j];
  }
  return q;
}

std::vector<BigInt> poly_mul(const std::vector<BigInt>& x, const std::vector<BigInt>& y) {
  std::vector<BigInt> r(x.size() + y.size() - 1, 0);
  for (size_t i = 0; i < x.size(); ++i)
    for (size_t j = 0; j < y.size(); ++j) r[i + j] += x[i] * y[j];
  return r;
}

}  // namespace

const std::vector<BigInt>& cyclotomic_poly(unsigned n) {
  static std::map<unsigned, std::vector<BigInt>> cache = {{1, {-1, 1}}};
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  if (n == 0) throw parameter_error("cyclotomic_poly(0)");
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  // bottom-up over divisors of n: Phi_d = (x^d - 1) / prod_{e|d, e<d} Phi_e
  for (unsigned d = 2; d <= n; ++d) {
    if (n % d != 0 || cache.count(d)) continue;
    std::vector<BigInt> num(d + 1, 0);
    num[0] = -1;
    num[d] = 1;
    std::vector<BigInt> acc = {1};
    for (unsigned e = 1; e < d; ++e)
      if (d % e == 0) acc = poly_mul(acc, cache.at(e));
    cache[d] = poly_div_exact(std::move(num), acc);
  }
  return cache.at(n);
}

void reduce_phase_sum(PhaseSum& s) {
  PhaseSum folded;
  for (auto& [a, c] : s) {
    if (c == 0) continue;
    Rational r = rat_mod1(a);
    auto [it, inserted] = folded.try_emplace(r, c);
    if (!inserted) it->second += c;
  }
  for (;;) {
    for (auto it = folded.begin(); it != folded.end();)
      it = (it->second == 0) ? folded.erase(it) : std::next(it);
    if (folded.empty()) break;
    BigInt N = 1;
    for (auto& [a, c] : folded) N = lcm(N, denominator(a));
    if (N == 1) break;  // plain rational, nothing to reduce
    if (N > 100000) throw numeric_error("cyclotomic order too large: " + N.str());
    unsigned n = N.convert_to<unsigned>();
    const auto& phi = cyclotomic_poly(n);
    size_t deg = phi.size() - 1;  // = totient(n)
    std::vector<Rational> coef(n, Rational(0));
    for (auto& [a, c] : folded)
      coef[(numerator(a) * (N / denominator(a))).convert_to<size_t>()] += c;
    // remainder modulo the monic polynomial Phi_N
    for (size_t i = n; i-- > deg;) {
      if (coef[i] == 0) continue;
      Rational f = coef[i];
      for (size_t j = 0; j <= deg; ++j) coef[i - deg + j] -= f * Rational(phi[j]);
    }
    PhaseSum reduced;
    for (size_t k = 0; k < deg; ++k)
      if (coef[k] != 0) reduced.emplace(Rational(BigInt(k), N), coef[k]);
    bool same = reduced.size() == folded.size() &&
                std::equal(reduced.begin(), reduced.end(), folded.begin());
    folded = std::move(reduced);
    if (same) break;  // representation stable; otherwise denominators shrank, go again
  }
  s = std::move(folded);
}

bool phase_sum_is_zero(const PhaseSum& s) {
  PhaseSum t = s;
  reduce_phase_sum(t);
  return t.empty();
}

PhaseSum phase_sum_mul(const PhaseSum& x, const PhaseSum& y) {
  PhaseSum r;
  for (auto& [a, c] : x)
    for (auto& [b, d] : y) {
      Rational e = rat_mod1(a + b);
      r[e] += c * d;
    }
  reduce_phase_sum(r);
  return r;
}

std::pair<unsigned long long, unsigned long long> squarefree_part(unsigned long long D) {
  unsigned long long d0 = 1, f = 1;
  for (unsigned long long p = 2; p * p <= D; ++p) {
    unsigned e = 0;
    while (D % p == 0) {
      D /= p;
      ++e;
    }
    for (unsigned k = 0; k < e / 2; ++k) f *= p;
    if (e % 2) d0 *= p;
  }
  d0 *= D;  // leftover prime (or 1)
  return {d0, f};
}

PhaseSum sqrt_as_phases(unsigned D) {
  if (D == 0) throw parameter_error("sqrt_as_phases(0)");
  auto [d0, f] = squarefree_part(D);
  if (d0 != D) throw parameter_error("sqrt_as_phases: D must be squarefree");
  PhaseSum acc{{Rational(0), Rational(1)}};  // 1
  unsigned rem = D;
  for (unsigned p = 2; p <= rem; ++p) {
    if (rem % p != 0) continue;
    rem /= p;
    PhaseSum fac;
    if (p == 2) {
      fac[Rational(1, 8)] += 1;
      fac[Rational(7, 8)] += 1;
    } else {
      // quadratic Gauss sum: sum_k ζ_p^{k²} equals √p (p≡1 mod 4) or i√p (p≡3 mod 4)
      for (unsigned k = 0; k < p; ++k) {
        Rational a(BigInt(k) * k % p, p);
        if (p % 4 == 3) a += Rational(3, 4);  // multiply by −i
        auto [it, inserted] = fac.try_emplace(rat_mod1(a), Rational(1));
        if (!inserted) it->second += 1;
      }
    }
    acc = phase_sum_mul(acc, fac);
  }
  return acc;
}

Complex phase_sum_eval(const PhaseSum& s) {
  Complex z;
  Real two_pi = 2 * pi_value();
  for (auto& [a, c] : s) z += rat_to_real(c) * cis(two_pi * rat_to_real(a));
  return z;
}

}  // namespace ncg
