// Scalar ring: phases e^{2πi(a+bθ)} with a symbolic (2πi)-power tag.
#include <doctest.h>

#include <random>

#include "ncgkit/errors.hpp"
#include "ncgkit/phase_scalar.hpp"

using namespace ncg;

TEST_CASE("construction and zero detection") {
  CHECK(UniScalar().is_zero());
  CHECK(UniScalar(0).is_zero());
  CHECK_FALSE(UniScalar(1).is_zero());
  CHECK(UniScalar(1).is_one());

  // 1 + ζ₃ + ζ₃² = 0 collapses already at construction
  UniScalar s = UniScalar(1) + UniScalar::phase(Rational(1, 3)) + UniScalar::phase(Rational(2, 3));
  CHECK(s.is_zero());
  CHECK(s.term_count() == 0);

  // e^{iπ} = −1
  CHECK(UniScalar::phase(Rational(1, 2)) == UniScalar(-1));
  // i² = −1 and i·(−i) = 1
  CHECK(UniScalar::i() * UniScalar::i() == UniScalar(-1));
  CHECK(UniScalar::i() * UniScalar::i().star() == UniScalar(1));
}

TEST_CASE("theta slices are independent") {
  UniScalar x = UniScalar::phase(Rational(0), Rational(1));  // e^{2πiθ}
  CHECK_FALSE(x.is_zero());
  CHECK_FALSE((x - UniScalar(1)).is_zero());
  CHECK(x * x.star() == UniScalar(1));
  // e^{2πiθ}·e^{−2πiθ·} products add b-exponents
  UniScalar y = UniScalar::phase(Rational(1, 2), Rational(-1));
  CHECK(x * y == UniScalar(-1));
}

TEST_CASE("2πi tags multiply and conjugate correctly") {
  UniScalar d = UniScalar::two_pi_i();
  CHECK(d * d == UniScalar::two_pi_i(2));
  CHECK(d.star() == -d);                        // conj(2πi) = −2πi
  CHECK(UniScalar::two_pi_i(2).star() == UniScalar::two_pi_i(2));
  CHECK_FALSE((d - UniScalar(1)).is_zero());    // π is not rational
  CHECK_FALSE((d * d + UniScalar(1)).is_zero());
}

TEST_CASE("star is an involutive ring anti-automorphism (commutative here)") {
  UniScalar s = UniScalar::phase(Rational(1, 8), Rational(2), Rational(3, 5)) +
                UniScalar::two_pi_i(1) * UniScalar(7);
  UniScalar t = UniScalar::phase(Rational(2, 3), Rational(-1)) - UniScalar(2);
  CHECK(s.star().star() == s);
  CHECK((s * t).star() == s.star() * t.star());
  CHECK((s + t).star() == s.star() + t.star());
}

TEST_CASE("associativity and distributivity on random scalars") {
  std::mt19937_64 rng(7);
  auto rnd = [&]() {
    UniScalar s;
    for (int t = 0; t < 3; ++t) {
      Rational a(static_cast<long long>(rng() % 12), 12);
      Rational b(static_cast<long long>(rng() % 5) - 2);
      Rational q(static_cast<long long>(rng() % 7) - 3, 1 + static_cast<long long>(rng() % 4));
      s += UniScalar::phase(a, b, q) * UniScalar::two_pi_i(static_cast<int>(rng() % 3));
    }
    return s;
  };
  for (int it = 0; it < 25; ++it) {
    UniScalar x = rnd(), y = rnd(), z = rnd();
    CHECK((x * y) * z == x * (y * z));
    CHECK(x * (y + z) == x * y + x * z);
    CHECK(x * y == y * x);
  }
}

TEST_CASE("exact zero test agrees with floating evaluation at random irrational theta") {
  set_precision_bits(128);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int it = 0; it < 10; ++it) {
    // a scalar that IS zero: (x − 1)(x + 1) − x² + 1 for random x
    UniScalar x = UniScalar::phase(Rational(static_cast<long long>(rng() % 24), 24),
                                   Rational(static_cast<long long>(rng() % 9) - 4));
    UniScalar z = (x - UniScalar(1)) * (x + UniScalar(1)) - x * x + UniScalar(1);
    CHECK(z.is_zero());

    // and one that is not
    UniScalar nz = x + UniScalar(1);
    nz += UniScalar::phase(Rational(1, 5));
    Real theta(uni(rng));
    theta += Real("1e-7") * Real(uni(rng));  // irrational-ish probe
    if (nz.is_zero()) continue;              // (construction made it zero: skip)
    CHECK(nz.eval(theta).abs() > Real("1e-25"));
    CHECK(z.eval(theta).abs() < Real("1e-30"));
  }
}

TEST_CASE("unit phases and single-term inverses") {
  CHECK(UniScalar::phase(Rational(1, 3)).is_unit_phase());
  // e^{4πi/3} reduces to the two-term form −1 − e^{2πi/3}; still a unit
  CHECK(UniScalar::phase(Rational(2, 3)).is_unit_phase());
  CHECK(UniScalar(-1).is_unit_phase());
  CHECK_FALSE(UniScalar(2).is_unit_phase());
  CHECK_FALSE(UniScalar(0).is_unit_phase());
  CHECK_FALSE((UniScalar(1) + UniScalar::phase(Rational(1, 5))).is_unit_phase());
  CHECK_FALSE(UniScalar::two_pi_i().is_unit_phase());

  UniScalar p = UniScalar::phase(Rational(2, 7), Rational(3), Rational(-5, 4));
  CHECK(p * p.inverse_of_term() == UniScalar(1));
  CHECK_THROWS_AS((UniScalar(1) + p).inverse_of_term(), parameter_error);
}

TEST_CASE("numeric evaluation matches closed forms") {
  set_precision_bits(128);
  Real theta(0);
  Complex v = UniScalar::two_pi_i().eval(theta);  // 2πi
  CHECK(boost::multiprecision::abs(v.re) < Real("1e-35"));
  CHECK(boost::multiprecision::abs(v.im - 2 * pi_value()) < Real("1e-35"));
  Complex w = UniScalar::phase(Rational(1, 2)).eval(theta);  // −1
  CHECK(boost::multiprecision::abs(w.re + 1) < Real("1e-35"));
}
