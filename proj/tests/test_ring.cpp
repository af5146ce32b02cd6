// Graded coordinate rings at a quadratic fixed point: multiplication,
// associativity defect, quadratic relations, classifier, presentation export.
#include <doctest.h>

#include <json.hpp>
#include <random>

#include "ncgkit/errors.hpp"
#include "ncgkit/ring.hpp"

using namespace ncg;

namespace {

const SL2Mat kG(4, -1, 5, -1);          // fixes (5−√5)/10, degree 5
const QuadIrr kTheta(5, -1, 5, 10);     // (5−√5)/10
const Complex kTau(0.3, -1.0);

GradedRing make_ring(const Real& eps = Real("1e-12")) {
  return GradedRing(kG, kTheta, kTau, eps);
}

}  // namespace

TEST_CASE("ring construction guards") {
  CHECK_THROWS_AS(GradedRing(SL2Mat(1, 1, 0, 1), kTheta, kTau, Real("1e-10")),
                  parameter_error);  // does not fix θ
  CHECK_THROWS_AS(GradedRing(kG, kTheta, Complex(0.3, 1.0), Real("1e-10")), parameter_error);
  CHECK_THROWS_AS(GradedRing(kG, kTheta, kTau, Real(0)), parameter_error);

  GradedRing ident(SL2Mat::identity(), kTheta, kTau, Real("1e-10"));
  CHECK_THROWS_AS((void)ident.dim(1), parameter_error);  // degree 0
}

TEST_CASE("dimensions follow the matrix powers") {
  GradedRing r = make_ring();
  CHECK(r.dim(1) == 5);
  CHECK(r.dim(2) == 15);
  CHECK(r.dim(3) == 40);
  CHECK(r.power(2) == SL2Mat(11, -3, 15, -4));
  CHECK(r.power(3) == SL2Mat(29, -8, 40, -11));
}

TEST_CASE("ring multiplication: bilinearity, degree additivity, table consistency") {
  GradedRing r = make_ring();
  long long d1 = r.dim(1);

  // u = 0 → 0
  ErrVec zero(static_cast<std::size_t>(d1));
  ErrVec w0 = ring_multiply(r, zero, 1, basis_vector(d1, 1), 1);
  CHECK(w0.size() == static_cast<std::size_t>(r.dim(2)));
  for (const auto& e : w0) CHECK(e.value.is_zero());

  // basis products reproduce the structure tensor columnwise
  const StructTensor& t = r.table(1, 1);
  for (long long alpha = 1; alpha <= d1; ++alpha)
    for (long long beta = 1; beta <= d1; ++beta) {
      ErrVec w = ring_multiply(r, basis_vector(d1, alpha), 1, basis_vector(d1, beta), 1);
      for (long long gamma = 1; gamma <= r.dim(2); ++gamma)
        CHECK((w[static_cast<std::size_t>(gamma - 1)].value - t.at(gamma, alpha, beta).value)
                  .abs() < Real("1e-30"));
    }

  // bilinearity within certified error
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  auto rnd_vec = [&](long long n) {
    ErrVec v(static_cast<std::size_t>(n));
    for (auto& e : v) e = CertComplex{Complex(d(rng), d(rng)), Real(0)};
    return v;
  };
  ErrVec u1 = rnd_vec(d1), u2 = rnd_vec(d1), v = rnd_vec(d1);
  ErrVec sum(u1.size());
  for (std::size_t i = 0; i < u1.size(); ++i)
    sum[i] = CertComplex{u1[i].value + u2[i].value, Real(0)};
  ErrVec lhs = ring_multiply(r, sum, 1, v, 1);
  ErrVec r1 = ring_multiply(r, u1, 1, v, 1), r2 = ring_multiply(r, u2, 1, v, 1);
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    CHECK((lhs[i].value - r1[i].value - r2[i].value).abs() <
          lhs[i].err + r1[i].err + r2[i].err + Real("1e-30"));
  }

  CHECK_THROWS_AS((void)ring_multiply(r, rnd_vec(3), 1, v, 1), parameter_error);
}

TEST_CASE("associativity defect is at certified-error scale") {
  GradedRing r = make_ring();
  DefectReport rep = associativity_defect(r, 1, 1, 1);
  CHECK(rep.defect <= Real("1e-9"));
  CHECK(rep.defect <= 10 * rep.certified);

  // tightening eps tightens the defect envelope monotonically
  Real prev = rep.defect;
  for (const char* e : {"1e-8", "1e-10", "1e-12"}) {
    GradedRing rr(kG, kTheta, kTau, Real(e));
    Real d = associativity_defect(rr, 1, 1, 1).defect;
    // envelope: each tighter eps keeps the defect within the looser bound
    CHECK(d <= prev * 2 + Real(e));
  }

  GradedRing ident(SL2Mat::identity(), kTheta, kTau, Real("1e-10"));
  DefectReport z = associativity_defect(ident, 1, 1, 1);
  CHECK(z.defect.is_zero());
}

TEST_CASE("quadratic kernel: rank 15, kernel 10, plateau, invariances") {
  GradedRing r = make_ring();
  QuadKernel k = quadratic_kernel(r, Real("1e-8"));
  CHECK(k.rank == 15);
  CHECK(k.kernel_dim == 10);
  REQUIRE(k.basis.cols() == 10);
  REQUIRE(k.basis.rows() == 25);

  // kernel vectors genuinely annihilate the multiplication map
  const StructTensor& t = r.table(1, 1);
  CMatrix a(15, 25);
  for (long long gamma = 1; gamma <= 15; ++gamma)
    for (long long alpha = 1; alpha <= 5; ++alpha)
      for (long long beta = 1; beta <= 5; ++beta)
        a.at(static_cast<std::size_t>(gamma - 1),
             static_cast<std::size_t>((alpha - 1) * 5 + (beta - 1))) =
            t.at(gamma, alpha, beta).value;
  for (std::size_t j = 0; j < 10; ++j)
    CHECK(vec_norm(a.apply(k.basis.column(j))) < Real("1e-10"));

  // stable rank across the tolerance sweep
  auto sweep = rank_sweep(k.sigma, Real("1e-10"), Real("1e-6"), 9);
  for (const auto& [tol, rank] : sweep) CHECK(rank == 15);

  // scale invariance
  CMatrix a2 = a * Complex(2.0, 0.0);
  SvdResult s2 = svd(a2);
  CHECK(numeric_rank(s2.sigma, Real("1e-8")) == 15);

  // unitary change of basis on the degree-1 space: A → A·(W ⊗ W)
  std::mt19937_64 rng(42);
  CMatrix w = random_unitary(5, rng);
  CMatrix kron(25, 25);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j)
      for (std::size_t p = 0; p < 5; ++p)
        for (std::size_t q = 0; q < 5; ++q)
          kron.at(i * 5 + j, p * 5 + q) = w.at(i, p) * w.at(j, q);
  SvdResult s3 = svd(a * kron);
  CHECK(numeric_rank(s3.sigma, Real("1e-8")) == 15);
}

TEST_CASE("matrix-data classifier") {
  CHECK(classify_ring(SL2Mat(4, -1, 5, -1)) == RingClass::koszul);
  CHECK(classify_ring(SL2Mat(2, 1, 1, 1)) == RingClass::outside);
  CHECK(classify_ring(SL2Mat(0, -1, 1, 0)) == RingClass::outside);  // complex eigenvalues
  CHECK(classify_ring(SL2Mat(1, 0, 2, 1)) == RingClass::degree_one);
  CHECK(classify_ring(SL2Mat(1, 0, 3, 1)) == RingClass::quadratic);
  CHECK(classify_ring(SL2Mat(1, 0, 4, 1)) == RingClass::koszul);
  CHECK(classify_ring(SL2Mat(1, 1, 0, 1)) == RingClass::outside);
  CHECK(std::string(ring_class_name(RingClass::koszul)) == "koszul");
}

TEST_CASE("presentation export") {
  GradedRing r = make_ring(Real("1e-10"));
  std::string text = presentation_export(r, Real("1e-8"), 7);
  nlohmann::json j = nlohmann::json::parse(text);
  CHECK(j["generators"].size() == 5);
  CHECK(j["relations"].size() == 10);
  CHECK(j["provenance"]["seed"] == 7);
  CHECK(j["params"]["classifier"] == "koszul");
  for (const auto& rel : j["relations"]) {
    CHECK(!rel.empty());
    for (const auto& term : rel) {
      long long i = term["i"], jj = term["j"];
      CHECK(i >= 1);
      CHECK(i <= 5);
      CHECK(jj >= 1);
      CHECK(jj <= 5);
    }
  }

  // determinism: identical call → identical bytes
  GradedRing r2 = make_ring(Real("1e-10"));
  CHECK(presentation_export(r2, Real("1e-8"), 7) == text);

  // relation subspaces at two eps settings agree to tiny principal angles
  GradedRing r3 = make_ring(Real("1e-12"));
  QuadKernel k1 = quadratic_kernel(r, Real("1e-8"));
  QuadKernel k2 = quadratic_kernel(r3, Real("1e-8"));
  auto cos_angles = principal_angle_cosines(k1.basis, k2.basis);
  REQUIRE(cos_angles.size() == 10);
  for (const Real& ca : cos_angles) CHECK(1 - ca < Real("1e-12"));

  // classifier gate: a non-quadratic instance refuses to export
  GradedRing ident(SL2Mat::identity(), kTheta, kTau, Real("1e-10"));
  CHECK_THROWS_AS((void)presentation_export(ident, Real("1e-8"), 1), parameter_error);
}
