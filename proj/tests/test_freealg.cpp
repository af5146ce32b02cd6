// Free algebra, rewriting, confluence, tensors and Chern characters.
#include <doctest.h>

#include <random>

#include "ncgkit/errors.hpp"
#include "ncgkit/tensor.hpp"

using namespace ncg;

namespace {

// Two unitaries with the swap V·U → e^{−2πiθ}·U·V (θ formal): the normal
// ordering puts U-powers before V-powers.
struct TorusAlg {
  GeneratorTable gt{{"U", "Us", "V", "Vs"}, {1, 0, 3, 2}};
  RewriteSystem rs{gt};
  std::uint32_t U = 0, Us = 1, V = 2, Vs = 3;
  TorusAlg() {
    UniScalar lam = UniScalar::phase(Rational(0), Rational(1));  // e^{2πiθ}
    // V U → λ⁻¹ U V and the star-consistent companions
    rs.add_swap(V, U, lam.inverse_of_term());
    rs.add_swap(Vs, U, lam);
    rs.add_swap(V, Us, lam);
    rs.add_swap(Vs, Us, lam.inverse_of_term());
    rs.add_swap(Us, U, UniScalar(1));  // unitarity: U*U = UU* = 1
    rs.add_swap(Vs, V, UniScalar(1));
    rs.add_subst({U, Us}, FreeElement::unit());
    rs.add_subst({Us, U}, FreeElement::unit());
    rs.add_subst({V, Vs}, FreeElement::unit());
    rs.add_subst({Vs, V}, FreeElement::unit());
  }
};

}  // namespace

TEST_CASE("free algebra arithmetic") {
  GeneratorTable gt({"x", "y"}, {0, 1});
  FreeElement x = FreeElement::gen(0), y = FreeElement::gen(1);
  CHECK((x * y - x * y).is_zero());
  CHECK_FALSE((x * y - y * x).is_zero());
  CHECK((x + y) * (x - y) == x * x - x * y + y * x - y * y);
  CHECK(((x + y) * (x + y)).max_degree() == 2);
  // star on Hermitian generators reverses words
  CHECK((x * y).star(gt) == y * x);
  CHECK((UniScalar::i() * x).star(gt) == -UniScalar::i() * x);
}

TEST_CASE("deglex order") {
  CHECK(deglex_less({}, {0}));
  CHECK(deglex_less({1}, {0, 0}));
  CHECK(deglex_less({0, 1}, {1, 0}));
  CHECK_FALSE(deglex_less({1, 0}, {0, 1}));
  CHECK_FALSE(deglex_less({0}, {0}));
}

TEST_CASE("torus normal form: V·U picks up the inverse phase") {
  TorusAlg T;
  FreeElement vu = FreeElement::gen(T.V) * FreeElement::gen(T.U);
  FreeElement nf = T.rs.normal_form(vu);
  FreeElement expected =
      FreeElement::monomial({T.U, T.V}, UniScalar::phase(Rational(0), Rational(-1)));
  CHECK(nf == expected);
  // unit word stays put
  CHECK(T.rs.normal_form(FreeElement::unit()) == FreeElement::unit());
}

TEST_CASE("normal form is idempotent and multiplicative on random words") {
  TorusAlg T;
  std::mt19937_64 rng(3);
  auto rnd_word = [&](std::size_t len) {
    Word w;
    for (std::size_t k = 0; k < len; ++k) w.push_back(static_cast<std::uint32_t>(rng() % 4));
    return w;
  };
  for (int it = 0; it < 40; ++it) {
    FreeElement x = FreeElement::monomial(rnd_word(rng() % 5));
    FreeElement y = FreeElement::monomial(rnd_word(rng() % 5));
    FreeElement nx = T.rs.normal_form(x);
    CHECK(T.rs.normal_form(nx) == nx);
    CHECK(T.rs.normal_form(x * y) == T.rs.normal_form(nx * T.rs.normal_form(y)));
  }
}

TEST_CASE("confluence: torus system clean, conflicting duplicate rules flagged") {
  TorusAlg T;
  CHECK(T.rs.check_local_confluence().empty());

  // deliberately inconsistent pair: same left-hand side, different scalars
  GeneratorTable gt({"V", "U"}, {0, 1});  // order V < U so U·V can rewrite down
  RewriteSystem bad(gt);
  bad.add_subst({1, 0}, FreeElement::monomial({0, 1}));
  bad.add_subst({1, 0}, FreeElement::monomial({0, 1}, UniScalar(2)));
  auto pairs = bad.check_local_confluence();
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0].overlap == Word{1, 0});
  CHECK_FALSE(pairs[0].difference.is_zero());
}

TEST_CASE("rewrite budget trips on a non-terminating-in-budget workload") {
  TorusAlg T;
  T.rs.set_step_budget(5);
  FreeElement w = FreeElement::monomial({T.V, T.V, T.V, T.U, T.U, T.U});
  CHECK_THROWS_AS((void)T.rs.normal_form(w), rewrite_budget_error);
}

TEST_CASE("substitution validation rejects non-decreasing right-hand sides") {
  GeneratorTable gt({"x", "y"}, {0, 1});
  RewriteSystem rs(gt);
  CHECK_THROWS_AS(rs.add_subst({0}, FreeElement::monomial({0, 1})), parameter_error);
  CHECK_THROWS_AS(rs.add_swap(0, 1, UniScalar(1)), parameter_error);
  CHECK_THROWS_AS(rs.add_swap(1, 0, UniScalar(2)), parameter_error);
}

TEST_CASE("tensor elements strip constants in non-first slots") {
  GeneratorTable gt({"x", "y"}, {0, 1});
  FreeElement x = FreeElement::gen(0), y = FreeElement::gen(1);
  FreeElement one = FreeElement::unit();
  TensorElement a = TensorElement::product({x, y + one});
  TensorElement b = TensorElement::product({x, y});
  CHECK((a - b).is_syntactically_zero());
  // ...but not in the first slot
  TensorElement c = TensorElement::product({x + one, y});
  CHECK_FALSE((c - b).is_syntactically_zero());
}

TEST_CASE("tensor slots are not multiplied together") {
  GeneratorTable gt({"x", "y"}, {0, 1});
  RewriteSystem rs(gt);
  rs.add_swap(1, 0, UniScalar(1));  // commutative system
  FreeElement x = FreeElement::gen(0), y = FreeElement::gen(1);
  TensorElement t = TensorElement::product({x, y}) - TensorElement::product({y, x});
  CHECK_FALSE(tensor_is_zero(t, rs));
  // while equal slot-wise contents do cancel
  TensorElement z = TensorElement::product({x * y, x}) - TensorElement::product({y * x, x});
  CHECK(tensor_is_zero(z, rs));
}

TEST_CASE("chern_even on the unit 1x1 idempotent") {
  GeneratorTable gt({"x"}, {0});
  RewriteSystem rs(gt);
  AlgMatrix e = AlgMatrix::identity(1);
  TensorElement ch0 = chern_even(e, 0);
  // Tr(1 − ½) = ½
  TensorElement expected(1);
  expected += TensorElement::product({FreeElement::unit(UniScalar(Rational(1, 2)))});
  CHECK(tensor_is_zero(ch0 - expected, rs));
  // ch₁ of the unit: e⊗e⊗e has constants everywhere → stripped to zero
  CHECK(tensor_is_zero(chern_even(e, 1), rs));
}

TEST_CASE("chern_odd on the unit unitary vanishes") {
  GeneratorTable gt({"x"}, {0});
  RewriteSystem rs(gt);
  AlgMatrix u = AlgMatrix::identity(1);
  CHECK(tensor_is_zero(chern_odd(u, 0, gt), rs));
  CHECK(tensor_is_zero(chern_odd(u, 1, gt), rs));
}

TEST_CASE("chern characters match a naive definitional loop on 2x2 input") {
  GeneratorTable gt({"p", "q"}, {0, 1});
  RewriteSystem rs(gt);
  FreeElement p = FreeElement::gen(0), q = FreeElement::gen(1);
  AlgMatrix e(2);
  e.at(0, 0) = p;
  e.at(0, 1) = p * q;
  e.at(1, 0) = q + FreeElement::unit();
  e.at(1, 1) = q * q - p;

  // independent naive triple loop for k=1 (arity 3)
  TensorElement naive(3);
  const UniScalar half(Rational(1, 2));
  for (std::size_t i0 = 0; i0 < 2; ++i0)
    for (std::size_t i1 = 0; i1 < 2; ++i1)
      for (std::size_t i2 = 0; i2 < 2; ++i2) {
        FreeElement f0 = e.at(i0, i1);
        if (i0 == i1) f0 -= FreeElement::unit(half);
        naive += TensorElement::product({f0, e.at(i1, i2), e.at(i2, i0)});
      }
  CHECK(tensor_is_zero(chern_even(e, 1) - naive, rs));

  // odd character, k=0 (arity 2), against its own naive double loop
  AlgMatrix u(2);
  u.at(0, 0) = p;
  u.at(0, 1) = q * p;
  u.at(1, 0) = -q;
  u.at(1, 1) = FreeElement::unit(UniScalar::i());
  AlgMatrix us = u.adjoint(gt);
  TensorElement naive_odd(2);
  for (std::size_t i0 = 0; i0 < 2; ++i0)
    for (std::size_t i1 = 0; i1 < 2; ++i1) {
      naive_odd += TensorElement::product({u.at(i0, i1), us.at(i1, i0)});
      naive_odd -= TensorElement::product({us.at(i0, i1), u.at(i1, i0)});
    }
  CHECK(tensor_is_zero(chern_odd(u, 0, gt) - naive_odd, rs));
}

TEST_CASE("matrix algebra over the free algebra") {
  GeneratorTable gt({"x", "y"}, {0, 1});
  AlgMatrix a(2);
  a.at(0, 1) = FreeElement::gen(0, UniScalar::i());
  AlgMatrix b = a.adjoint(gt);
  CHECK(b.at(1, 0) == FreeElement::gen(0, -UniScalar::i()));
  CHECK(b.at(0, 1).is_zero());
  AlgMatrix ab = a * b;
  CHECK(ab.at(0, 0) == FreeElement::gen(0) * FreeElement::gen(0));
}
