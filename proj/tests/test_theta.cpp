// Certified theta sums, congruence index sets, structure-constant tensors.
#include <doctest.h>

#include <random>

#include "ncgkit/errors.hpp"
#include "ncgkit/theta.hpp"

using namespace ncg;

namespace {

// Independent brute-force sum Σ_{|n| ≤ N} exp(πi(n+r)²·l·τ).
Complex brute_theta(const Rational& r, const Rational& l, const Complex& tau, long long n_max) {
  Complex total;
  Real rv = rat_to_real(r);
  Complex base = Complex(Real(0), pi_value() * rat_to_real(l)) * tau;
  for (long long n = -n_max; n <= n_max; ++n) {
    Real x = Real(n) + rv;
    total += cexp(base * (x * x));
  }
  return total;
}

const Complex kTauI(0.0, 1.0);  // effective parameter giving nome e^{−π}

}  // namespace

TEST_CASE("theta value at nome e^{-pi}: brute force and closed form") {
  Real eps("1e-14");
  CertComplex v = theta_const(ThetaChar{Rational(0), Rational(1)}, kTauI, eps);

  // spot value from the spec'd digits
  CHECK(abs(v.value.re - Real("1.086434811213308")) < Real("1e-12"));
  CHECK(abs(v.value.im) < Real("1e-14"));

  // brute-force window far beyond the certified one
  Complex bf = brute_theta(Rational(0), Rational(1), kTauI, 60);
  CHECK((v.value - bf).abs() < eps);

  // classical closed form π^{1/4}/Γ(3/4)
  Real closed = pow(pi_value(), Real(1) / 4) / tgamma(Real(3) / 4);
  CHECK(abs(v.value.re - closed) < Real("1e-13"));
}

TEST_CASE("characteristic periodicity and evenness, 100 random pairs") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<long long> num(-30, 30);
  std::uniform_int_distribution<long long> den(1, 12);
  std::uniform_real_distribution<double> im(0.35, 2.0);
  std::uniform_real_distribution<double> re(-1.0, 1.0);
  Real eps("1e-13");
  for (int it = 0; it < 100; ++it) {
    Rational r(num(rng), den(rng));
    Complex tau(re(rng), im(rng));
    ThetaChar base{r, Rational(1)};
    CertComplex a = theta_const(base, tau, eps);
    CertComplex b = theta_const(ThetaChar{r + 1, Rational(1)}, tau, eps);
    CertComplex c = theta_const(ThetaChar{-r, Rational(1)}, tau, eps);
    CHECK((a.value - b.value).abs() < 2 * eps);
    CHECK((a.value - c.value).abs() < 2 * eps);
  }
}

TEST_CASE("divergent and invalid parameters are rejected") {
  CHECK_THROWS_AS((void)theta_const(ThetaChar{Rational(0), Rational(1)}, Complex(0.3, -1.0),
                                    Real("1e-10")),
                  numeric_error);
  CHECK_THROWS_AS((void)theta_const(ThetaChar{Rational(0), Rational(1)}, Complex(0.5, 0.0),
                                    Real("1e-10")),
                  numeric_error);  // |q| = 1
  CHECK_THROWS_AS((void)theta_const(ThetaChar{Rational(0), Rational(-1)}, kTauI, Real("1e-10")),
                  parameter_error);
  CHECK_THROWS_AS((void)theta_const(ThetaChar{Rational(0), Rational(1)}, kTauI, Real(0)),
                  parameter_error);
}

TEST_CASE("truncation plan certifies the tail") {
  // enlarging the window beyond the certified radius changes nothing above eps
  Real eps("1e-12");
  ThetaChar ch{Rational(1, 3), Rational(2)};
  Complex tau(0.7, 0.9);
  CertComplex v = theta_const(ch, tau, eps);
  Complex wide = brute_theta(ch.r, ch.l, tau, 120);
  CHECK((v.value - wide).abs() < eps);

  PrecisionBudget plan = plan_theta_sum(Rational(1, 3), exp(-pi_value() * 2 * Real("0.9")),
                                        eps);
  CHECK(plan.radius >= 1);
  CHECK(plan.bits >= precision_bits());
}

TEST_CASE("congruence index sets") {
  SL2Mat h(1, 0, 1, 1);
  // both congruences force odd n for γ=1...
  auto odd = index_set(h, h, 1, 1, 1, 9);
  CHECK(odd == std::vector<long long>{-9, -7, -5, -3, -1, 1, 3, 5, 7, 9});
  // ...and even n for γ=2
  auto even = index_set(h, h, 1, 1, 2, 8);
  CHECK(even == std::vector<long long>{-8, -6, -4, -2, 0, 2, 4, 6, 8});

  // inconsistent pair: residues differ by an odd multiple of the gcd's cofactor
  SL2Mat g2(1, 0, 2, 1);
  CHECK(index_set(g2, g2, 1, 1, 1, 50).empty());
  CHECK_FALSE(index_class(g2, g2, 1, 1, 1).has_value());
  CHECK(index_class(g2, g2, 1, 1, 2).has_value());

  CHECK_THROWS_AS((void)index_set(SL2Mat::identity(), h, 1, 1, 1, 5), parameter_error);
}

TEST_CASE("structure constants for the shear pair at tau = -i") {
  SL2Mat h(1, 0, 1, 1);
  QuadIrr theta(0, 1, 2, 2);  // √2/2, keeps every cθ+d positive
  Complex tau(0.0, -1.0);
  Real eps("1e-13");
  StructTensor t = struct_constants(h, h, theta, tau, eps);
  REQUIRE(t.c1() == 1);
  REQUIRE(t.c2() == 1);
  REQUIRE(t.c12() == 2);

  // parity-split oracle: Σ_{n even / odd} exp(−π n²/4)
  Complex even_sum, odd_sum;
  for (long long n = -80; n <= 80; ++n) {
    Complex term = cexp(Complex(-pi_value() * Real(n) * Real(n) / 4, Real(0)));
    if (n % 2 == 0)
      even_sum += term;
    else
      odd_sum += term;
  }
  // γ: class of n ≡ −γ + 2α (mod 2); α=β=1 ⇒ γ=2 collects even n, γ=1 odd n
  CHECK((t.at(2, 1, 1).value - even_sum).abs() < eps);
  CHECK((t.at(1, 1, 1).value - odd_sum).abs() < eps);

  // the even entry is ϑ₀ at nome e^{−π}
  CertComplex v0 = theta_const(ThetaChar{Rational(0), Rational(1)}, Complex(0.0, 1.0), eps);
  CHECK((t.at(2, 1, 1).value - v0.value).abs() < 2 * eps);

  // entries are stable when recomputed at tighter eps (window enlargement)
  StructTensor t2 = struct_constants(h, h, theta, tau, Real("1e-20"));
  CHECK((t.at(1, 1, 1).value - t2.at(1, 1, 1).value).abs() < eps);
  CHECK((t.at(2, 1, 1).value - t2.at(2, 1, 1).value).abs() < eps);
}

TEST_CASE("structure constants with an empty congruence class vanish exactly") {
  SL2Mat g(1, 0, 2, 1);
  QuadIrr theta(0, 1, 2, 2);
  StructTensor t = struct_constants(g, g, theta, Complex(0.0, -1.0), Real("1e-10"));
  CHECK(t.at(1, 1, 1).value.is_zero());
  CHECK(t.at(1, 1, 1).err.is_zero());
  CHECK_FALSE(t.at(2, 1, 1).value.is_zero());
}

TEST_CASE("structure-constant preconditions") {
  SL2Mat h(1, 0, 1, 1);
  QuadIrr theta(0, 1, 2, 2);
  CHECK_THROWS_AS((void)struct_constants(h, h, theta, Complex(0.0, 1.0), Real("1e-10")),
                  parameter_error);  // Im τ must be negative
  QuadIrr bad(-3, -1, 2, 2);         // ≈ −2.2 makes cθ+d negative
  CHECK_THROWS_AS((void)struct_constants(h, h, bad, Complex(0.0, -1.0), Real("1e-10")),
                  parameter_error);
}
