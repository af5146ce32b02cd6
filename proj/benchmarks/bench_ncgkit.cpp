// Micro-benchmarks for the hot paths: certified theta sums, torus products,
// graded-ring multiplication, rewrite normal forms, and the rank-locus
// numerics.
#include <benchmark/benchmark.h>

#include <random>

#include "ncgkit/ring.hpp"
#include "ncgkit/spheres.hpp"
#include "ncgkit/theta.hpp"
#include "ncgkit/torus.hpp"

using namespace ncg;

namespace {

TorusElement random_torus(std::mt19937_64& rng, int terms) {
  std::uniform_int_distribution<long long> e(-6, 6);
  std::uniform_int_distribution<long long> num(-9, 9);
  TorusElement x;
  for (int t = 0; t < terms; ++t) {
    long long q = num(rng);
    if (q == 0) q = 1;
    x += TorusElement::mono(e(rng), e(rng),
                            UniScalar::phase(Rational(num(rng), 12), Rational(0), Rational(q, 3)));
  }
  return x;
}

void BM_theta_const(benchmark::State& state) {
  const Real eps = pow(Real(10), -static_cast<int>(state.range(0)));
  const Complex tau_eff(Real("0.21"), Real("1.07"));
  const ThetaChar ch{Rational(1, 3), Rational(1)};
  for (auto _ : state) benchmark::DoNotOptimize(theta_const(ch, tau_eff, eps));
}
BENCHMARK(BM_theta_const)->Arg(12)->Arg(30)->Unit(benchmark::kMicrosecond);

void BM_torus_mul(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const TorusElement x = random_torus(rng, static_cast<int>(state.range(0)));
  const TorusElement y = random_torus(rng, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(torus_mul(x, y));
}
BENCHMARK(BM_torus_mul)->Arg(8)->Arg(24)->Unit(benchmark::kMicrosecond);

void BM_ring_multiply(benchmark::State& state) {
  static GradedRing ring(SL2Mat(4, -1, 5, -1), QuadIrr(5, -1, 5, 10),
                         Complex(Real("0.3"), Real("-1.0")), Real("1e-12"));
  ring.table(1, 1);  // cache the structure constants outside the timed loop
  const ErrVec u = basis_vector(5, 2);
  const ErrVec v = basis_vector(5, 4);
  for (auto _ : state) benchmark::DoNotOptimize(ring_multiply(ring, u, 1, v, 1));
}
BENCHMARK(BM_ring_multiply)->Unit(benchmark::kMicrosecond);

void BM_s4_normal_form(benchmark::State& state) {
  static PresentedAlgebra s4 = s4_algebra(Rational(1, 3));
  FreeElement sum;
  for (std::uint32_t g = 0; g < 5; ++g) sum += FreeElement::gen(g);
  const FreeElement cubic = sum * sum * sum;
  for (auto _ : state) benchmark::DoNotOptimize(s4.rs.normal_form(cubic));
}
BENCHMARK(BM_s4_normal_form)->Unit(benchmark::kMicrosecond);

void BM_rank_residual(benchmark::State& state) {
  static BilinearSystem sys =
      build_bilinear_system(PhiParams(Rational(1, 3), Rational(1, 4), Rational(1, 5)));
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  CVec u(4);
  for (auto& z : u) {
    const double re = d(rng), im = d(rng);
    z = Complex(re, im);
  }
  for (auto _ : state) benchmark::DoNotOptimize(rank_residual(sys, u));
}
BENCHMARK(BM_rank_residual)->Unit(benchmark::kMicrosecond);

void BM_sigma_map(benchmark::State& state) {
  static BilinearSystem sys =
      build_bilinear_system(PhiParams(Rational(0), Rational(0), Rational(0)));
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  CVec u(4);
  for (auto& z : u) {
    const double re = d(rng), im = d(rng);
    z = Complex(re, im);
  }
  for (auto _ : state) benchmark::DoNotOptimize(sigma_map(u, sys, Real("1e-8")));
}
BENCHMARK(BM_sigma_map)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
