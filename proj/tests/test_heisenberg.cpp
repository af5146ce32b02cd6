#include <doctest.h>
#include <json.hpp>

#include <random>
#include <string>
#include <vector>

#include "ncgkit/errors.hpp"
#include "ncgkit/heisenberg.hpp"

using namespace ncg;

namespace {

const QuadIrr kTheta(0, 1, 2, 1);  // √2

QuadraticReal sqrt2(long long num, long long den) {
  return QuadraticReal(Rational(0), Rational(num, den), 2);
}

ExactCx p_times(const QuadraticReal& q) { return ExactCx::monomial({1, 0, 0}, q); }

/// Deterministic packet with a few mixed terms per class; decay holds for any τ.
GaussPolyPacket random_packet(long long c, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> small(-3, 3);
  GaussPolyPacket f(c);
  for (long long alpha = 0; alpha < c; ++alpha) {
    int terms = 1 + static_cast<int>(rng() % 2);
    for (int t = 0; t < terms; ++t) {
      GaussTerm g;
      g.kappa = ExactCx(QuadraticReal(Rational(-1 - static_cast<int>(rng() % 3), 2)) +
                        sqrt2(small(rng), 23));
      g.beta = ExactCx(QuadraticReal(Rational(small(rng), 3))) +
               p_times(QuadraticReal(Rational(small(rng), 5))) +
               ExactCx::z_sym() * ExactCx(QuadraticReal(Rational(small(rng), 7)));
      int deg = static_cast<int>(rng() % 3);
      for (int k = 0; k <= deg; ++k)
        g.poly.push_back(ExactCx(QuadraticReal(Rational(small(rng), 2))));
      g.poly[0] += ExactCx(2);  // never the zero polynomial
      f.add_term(alpha, std::move(g));
    }
  }
  return f;
}

GaussPolyPacket unit_gaussian() {
  GaussPolyPacket f(1);
  f.add_term(0, GaussTerm::gaussian(ExactCx(-1)));
  return f;
}

}  // namespace

TEST_CASE("exact scalars: arithmetic and numeric evaluation") {
  ExactCx p = ExactCx::two_pi_i(), t = ExactCx::tau_sym(), z = ExactCx::z_sym();
  CHECK((p + t) * (p - t) == p * p - t * t);
  CHECK((p * t - t * p).is_zero());
  CHECK(ExactCx(QuadraticReal(Rational(1, 2))) + ExactCx(QuadraticReal(Rational(1, 2))) ==
        ExactCx(1));

  Complex tau(Real("0.3"), Real("-1.0"));
  Complex zv(Real("0.2"), Real("0.1"));
  Complex tpi(Real(0), 2 * pi_value());
  ExactCx expr = p * t + z * z * ExactCx(QuadraticReal(Rational(3, 4))) - ExactCx(2);
  Complex want = tpi * tau + zv * zv * Complex(Real(3) / 4) - Complex(Real(2));
  CHECK((expr.eval(tau, zv) - want).abs() < Real("1e-70"));

  // √2 coefficient survives into evaluation
  ExactCx irr = ExactCx(sqrt2(1, 1));
  CHECK(abs(irr.eval(tau, zv).re - sqrt(Real(2))) < Real("1e-70"));
  CHECK(irr.str() == "0 + sqrt(2)");
}

TEST_CASE("right action: recentering, plain modulation, commutation phase") {
  // degree-one matrix with d = 0: the step (cθ+d)/c is θ itself
  ModuleParams p(SL2Mat(0, -1, 1, 0), kTheta);
  GaussPolyPacket f = unit_gaussian();

  GaussPolyPacket fu = act_right_U(f, p);
  GaussPolyPacket expected(1);
  {
    // exp(−(x−θ)²) = exp(−x² + 2θx − θ²)
    GaussTerm t = GaussTerm::gaussian(ExactCx(-1), ExactCx(sqrt2(2, 1)),
                                      ExactCx(QuadraticReal(-2)));
    expected.add_term(0, std::move(t));
  }
  CHECK(fu == expected);

  // single class, d = 0: V is the plain modulation β += 2πi
  GaussPolyPacket fv = act_right_V(f, p);
  GaussPolyPacket expected_v(1);
  expected_v.add_term(0, GaussTerm::gaussian(ExactCx(-1), ExactCx::two_pi_i()));
  CHECK(fv == expected_v);

  // (fU)V = e^{2πiθ}·(fV)U, exactly, for single- and multi-class instances
  for (const SL2Mat& g : {SL2Mat(0, -1, 1, 0), SL2Mat(1, 0, 1, 1), SL2Mat(1, 0, 2, 1)}) {
    ModuleParams q(g, kTheta);
    std::mt19937_64 rng(17);
    GaussPolyPacket h = random_packet(g.c, rng);
    GaussPolyPacket lhs = act_right_V(act_right_U(h, q), q);
    GaussPolyPacket rhs = act_right_U(act_right_V(h, q), q);
    CHECK(lhs == rhs.scaled(ExactCx(1), p_times(kTheta.value())));
    CHECK((lhs - rhs.scaled(ExactCx(1), p_times(kTheta.value()))).is_zero());
    CHECK(lhs != rhs);  // the phase matters
  }
}

TEST_CASE("left action: translation and exact commutation with the right action") {
  // single class: the left translation step 1/c is 1
  ModuleParams p(SL2Mat(0, -1, 1, 0), kTheta);
  GaussPolyPacket f = unit_gaussian();
  GaussPolyPacket lu = act_left_U(f, p);
  GaussPolyPacket expected(1);
  expected.add_term(
      0, GaussTerm::gaussian(ExactCx(-1), ExactCx(2), ExactCx(QuadraticReal(-1))));
  CHECK(lu == expected);

  // every left generator commutes with every right generator
  for (const SL2Mat& g : {SL2Mat(1, 0, 2, 1), SL2Mat(2, 1, 3, 2)}) {
    ModuleParams q(g, kTheta);
    std::mt19937_64 rng(23);
    GaussPolyPacket h = random_packet(g.c, rng);
    using Act = GaussPolyPacket (*)(const GaussPolyPacket&, const ModuleParams&);
    for (Act left : {static_cast<Act>(act_left_U), static_cast<Act>(act_left_V)})
      for (Act right : {static_cast<Act>(act_right_U), static_cast<Act>(act_right_V)})
        CHECK(left(right(h, q), q) == right(left(h, q), q));
  }
}

TEST_CASE("right-module law: words up to length four match their normal order") {
  for (const SL2Mat& g : {SL2Mat(1, 0, 1, 1), SL2Mat(1, 0, 2, 1)}) {
    ModuleParams p(g, kTheta);
    std::mt19937_64 rng(31);
    GaussPolyPacket f = random_packet(g.c, rng);
    for (int len = 1; len <= 4; ++len)
      for (int mask = 0; mask < (1 << len); ++mask) {
        std::string word;
        for (int i = 0; i < len; ++i) word += (mask >> i) & 1 ? 'V' : 'U';
        long long us = 0, vs = 0, inversions = 0;
        for (char ch : word) {
          if (ch == 'U') {
            ++us;
            inversions += vs;  // pairs (V ... U)
          } else {
            ++vs;
          }
        }
        GaussPolyPacket via_word = act_right_word(f, p, word);
        GaussPolyPacket normal =
            act_right_word(f, p, std::string(us, 'U') + std::string(vs, 'V'));
        // word = e^{−2πiθ·inversions} · UᵃVᵇ in the algebra
        GaussPolyPacket adjusted =
            normal.scaled(ExactCx(1), p_times(kTheta.value() * QuadraticReal(-inversions)));
        CHECK(via_word == adjusted);
      }
  }
}

TEST_CASE("holomorphic structure: kernel Gaussian, z-linearity, commutation defect") {
  const Complex tau(Real("0.3"), Real("-1.0"));

  SUBCASE("the kernel-normalized Gaussian is annihilated exactly") {
    for (const SL2Mat& g : {SL2Mat(1, 0, 1, 1), SL2Mat(1, 0, 2, 1)}) {
      ModuleParams p(g, kTheta);
      for (long long alpha = 0; alpha < g.c; ++alpha) {
        GaussPolyPacket f = basis_gaussian(p, GaussianBasis::connection_kernel, alpha);
        verify_decay(f, tau);
        CHECK(nabla_z(f, p).is_zero());
      }
    }
  }

  SUBCASE("the alternate normalization is not annihilated; the defect is recorded") {
    ModuleParams p(SL2Mat(1, 0, 1, 1), kTheta);
    GaussPolyPacket alt = basis_gaussian(p, GaussianBasis::alternate_exponent, 0);
    GaussPolyPacket ker = basis_gaussian(p, GaussianBasis::connection_kernel, 0);
    CHECK(alt != ker);
    GaussPolyPacket defect = nabla_z(alt, p);
    CHECK_FALSE(defect.is_zero());
    MESSAGE("alternate-basis defect: " << packet_to_json(defect));
  }

  SUBCASE("shifting z adds 2πi·z times the packet") {
    SL2Mat g(1, 0, 2, 1);
    ModuleParams p0(g, kTheta);
    ModuleParams pz(g, kTheta, ExactCx::z_sym());
    std::mt19937_64 rng(41);
    GaussPolyPacket f = random_packet(g.c, rng);
    GaussPolyPacket shift = f.scaled(ExactCx::two_pi_i() * ExactCx::z_sym(), ExactCx());
    CHECK(nabla_z(f, pz) == nabla_z(f, p0) + shift);
  }

  SUBCASE("commutation with the right action: V is compatible, U leaves a defect") {
    // The derivation on the algebra side scales UⁿVᵐ by 2πi(τn + m); the
    // measured commutator defect is 2πi·τ·n·(d/c − 1) times the acted packet.
    SL2Mat g(1, 0, 2, 1);  // d/c = 1/2
    ModuleParams p(g, kTheta);
    std::mt19937_64 rng(43);
    GaussPolyPacket f = random_packet(g.c, rng);

    auto defect = [&](long long n, long long m) {
      std::string w = std::string(n, 'U') + std::string(m, 'V');
      GaussPolyPacket fw = act_right_word(f, p, w);
      ExactCx scalar = ExactCx::monomial({1, 1, 0}, QuadraticReal(Rational(n))) +
                       p_times(QuadraticReal(Rational(m)));
      return nabla_z(fw, p) - act_right_word(nabla_z(f, p), p, w) -
             fw.scaled(scalar, ExactCx());
    };

    CHECK(defect(0, 1).is_zero());
    CHECK(defect(0, 2).is_zero());
    GaussPolyPacket d10 = defect(1, 0);
    CHECK_FALSE(d10.is_zero());
    ExactCx expected_scale =
        ExactCx::monomial({1, 1, 0}, QuadraticReal(Rational(g.d, g.c)) - QuadraticReal(1));
    CHECK(d10 == act_right_word(f, p, "U").scaled(expected_scale, ExactCx()));
    CHECK(defect(1, 1) == act_right_word(f, p, "UV").scaled(expected_scale, ExactCx()));
  }
}

TEST_CASE("pointwise evaluation agrees with the exact bookkeeping") {
  const Complex tau(Real("0.3"), Real("-1.0"));
  const Complex zv;

  GaussPolyPacket f = unit_gaussian();
  Complex at0 = eval_packet(f, Complex(), 0, tau, zv);
  CHECK((at0 - Complex(1.0)).abs() < Real("1e-70"));

  // exact-zero packets evaluate to literal zero everywhere
  std::mt19937_64 rng(53);
  GaussPolyPacket h = random_packet(2, rng);
  GaussPolyPacket zero = h - h;
  CHECK(zero.is_zero());
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 10; ++i) {
    Complex x(u(rng), u(rng));
    CHECK(eval_packet(zero, x, static_cast<long long>(rng() % 2), tau, zv).is_zero());
  }

  // numeric confirmation of (fU)V = e^{2πiθ}(fV)U, comparing raw values
  PrecisionGuard guard(128);
  ModuleParams p(SL2Mat(1, 0, 2, 1), kTheta);
  GaussPolyPacket g2 = random_packet(2, rng);
  GaussPolyPacket lhs = act_right_V(act_right_U(g2, p), p);
  GaussPolyPacket rhs = act_right_U(act_right_V(g2, p), p);
  Complex phase = cis(2 * pi_value() * kTheta.value().to_real());
  for (int i = 0; i < 10; ++i) {
    Complex x(u(rng), u(rng));
    long long alpha = static_cast<long long>(rng() % 2);
    Complex a = eval_packet(lhs, x, alpha, tau, zv);
    Complex b = phase * eval_packet(rhs, x, alpha, tau, zv);
    CHECK((a - b).abs() < Real("1e-30"));
  }
}

TEST_CASE("packet invariants: classes, decay, closure, validation") {
  const Complex tau(Real("0.3"), Real("-1.0"));

  SUBCASE("class-count mismatches and bad words are rejected") {
    ModuleParams p1(SL2Mat(0, -1, 1, 0), kTheta);
    GaussPolyPacket two(2);
    two.add_term(0, GaussTerm::gaussian(ExactCx(-1)));
    CHECK_THROWS_AS(act_right_U(two, p1), parameter_error);
    CHECK_THROWS_AS(act_left_V(two, p1), parameter_error);
    CHECK_THROWS_AS(nabla_z(two, p1), parameter_error);
    CHECK_THROWS_AS(act_right_word(unit_gaussian(), p1, "UX"), parameter_error);
    CHECK_THROWS_AS(GaussPolyPacket(0), parameter_error);
    CHECK_THROWS_AS(ModuleParams(SL2Mat(1, 0, 0, 1), kTheta), parameter_error);
  }

  SUBCASE("growth-direction Gaussians are refused") {
    GaussPolyPacket bad(1);
    bad.add_term(0, GaussTerm::gaussian(ExactCx(1)));
    CHECK_THROWS_AS(verify_decay(bad, tau), numeric_error);
  }

  SUBCASE("negative c*theta + d blocks the holomorphic structure") {
    QuadIrr neg(0, -1, 2, 1);  // −√2
    ModuleParams p(SL2Mat(0, -1, 1, 0), neg);
    CHECK_THROWS_AS(nabla_z(unit_gaussian(), p), parameter_error);
    CHECK_THROWS_AS(basis_gaussian(p, GaussianBasis::connection_kernel, 0),
                    parameter_error);
  }

  SUBCASE("actions preserve decay; nabla raises polynomial degree by at most one") {
    SL2Mat g(1, 0, 2, 1);
    ModuleParams p(g, kTheta);
    std::mt19937_64 rng(61);
    GaussPolyPacket f = random_packet(g.c, rng);
    verify_decay(f, tau);
    GaussPolyPacket chained = act_left_V(act_left_U(act_right_V(act_right_U(f, p), p), p), p);
    verify_decay(chained, tau);

    auto max_deg = [](const GaussPolyPacket& q) {
      std::size_t d = 0;
      for (long long a = 0; a < q.class_count(); ++a)
        for (const auto& t : q.cls(a)) d = std::max(d, t.poly.size());
      return d;
    };
    GaussPolyPacket der = nabla_z(f, p);
    verify_decay(der, tau);
    CHECK(max_deg(der) <= max_deg(f) + 1);
  }

  SUBCASE("JSON rendering exposes per-class term data") {
    GaussPolyPacket f = unit_gaussian();
    auto j = nlohmann::json::parse(packet_to_json(f));
    REQUIRE(j.contains("classes"));
    REQUIRE(j["classes"].size() == 1);
    REQUIRE(j["classes"][0].size() == 1);
    CHECK(j["classes"][0][0]["kappa"] == "-1");
    CHECK(j["classes"][0][0]["poly"].size() == 1);
  }
}
