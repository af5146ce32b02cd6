#include "ncgkit/verify.hpp"

#include <chrono>
#include <cstdint>
#include <functional>
#include <random>
#include <utility>
#include <vector>

#include "ncgkit/errors.hpp"
#include "ncgkit/heisenberg.hpp"
#include "ncgkit/ring.hpp"
#include "ncgkit/spheres.hpp"
#include "ncgkit/tensor.hpp"
#include "ncgkit/theta.hpp"
#include "ncgkit/torus.hpp"

namespace ncg {

const char* claim_status_name(ClaimStatus s) {
  switch (s) {
    case ClaimStatus::exact_pass: return "exact-pass";
    case ClaimStatus::numeric_pass: return "numeric-pass";
    case ClaimStatus::fail: return "fail";
    case ClaimStatus::deviation_noted: return "deviation-noted";
  }
  return "?";
}

bool claim_ok(ClaimStatus s) { return s != ClaimStatus::fail; }

const char* fault_name(FaultKind f) {
  switch (f) {
    case FaultKind::none: return "none";
    case FaultKind::torus_phase: return "torus_phase";
    case FaultKind::s4_scale: return "s4_scale";
    case FaultKind::lambda_symmetry: return "lambda_symmetry";
  }
  return "?";
}

FaultKind parse_fault(const std::string& name) {
  for (FaultKind f : {FaultKind::none, FaultKind::torus_phase, FaultKind::s4_scale,
                      FaultKind::lambda_symmetry})
    if (name == fault_name(f)) return f;
  throw parameter_error("unknown fault kind: " + name);
}

bool VerificationReport::all_ok() const {
  for (const ClaimResult& c : claims)
    if (!claim_ok(c.status)) return false;
  return true;
}

namespace {

using Clock = std::chrono::steady_clock;
using TorusMul = std::function<TorusElement(const TorusElement&, const TorusElement&)>;

struct ClaimRunner {
  const SuiteConfig& cfg;
  VerificationReport& rep;

  bool selected(const std::string& id, const std::string& module_name) const {
    if (cfg.only.empty()) return true;
    if (cfg.only == module_name) return true;
    return id.rfind(cfg.only, 0) == 0;
  }

  template <class Body>
  void run(const char* id, const char* module_name, const char* statement, Body&& body) {
    if (!selected(id, module_name)) return;
    ClaimResult res;
    res.id = id;
    res.module_name = module_name;
    res.statement = statement;
    const auto t0 = Clock::now();
    try {
      body(res);
    } catch (const std::exception& e) {
      res.status = ClaimStatus::fail;
      res.note = std::string("exception: ") + e.what();
    }
    res.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    rep.claims.push_back(std::move(res));
  }
};

// ---------------------------------------------------------------------------
// shared generators
// ---------------------------------------------------------------------------

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

// Deliberately wrong commutation phase e^{−2πiθ(mp+m)} (the product law a
// buggy implementation with an off-by-one cocycle would compute).
TorusElement faulty_torus_mul(const TorusElement& x, const TorusElement& y) {
  TorusElement out;
  for (const auto& [kx, a] : x.terms())
    for (const auto& [ky, b] : y.terms()) {
      const long long m = kx.second, p = ky.first;
      out += TorusElement::mono(kx.first + ky.first, kx.second + ky.second,
                                a * b * UniScalar::phase(Rational(0), Rational(-(m * p + m))));
    }
  return out;
}

GaussPolyPacket random_packet(long long c, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> small(-3, 3);
  auto rt2 = [](long long n, long long d) {
    return QuadraticReal(Rational(0), Rational(n, d), 2);
  };
  GaussPolyPacket f(c);
  for (long long alpha = 0; alpha < c; ++alpha) {
    const int terms = 1 + static_cast<int>(rng() % 2);
    for (int t = 0; t < terms; ++t) {
      GaussTerm g;
      g.kappa = ExactCx(QuadraticReal(Rational(-1 - static_cast<int>(rng() % 3), 2)) +
                        rt2(small(rng), 23));
      g.beta = ExactCx(QuadraticReal(Rational(small(rng), 3))) +
               ExactCx::monomial({1, 0, 0}, QuadraticReal(Rational(small(rng), 5))) +
               ExactCx::z_sym() * ExactCx(QuadraticReal(Rational(small(rng), 7)));
      const int deg = static_cast<int>(rng() % 3);
      for (int k = 0; k <= deg; ++k)
        g.poly.push_back(ExactCx(QuadraticReal(Rational(small(rng), 2))));
      g.poly[0] += ExactCx(2);
      f.add_term(alpha, std::move(g));
    }
  }
  return f;
}

// Random exact non-symmetric unitary: a phased non-involutive permutation.
LambdaMat random_nonsymmetric_unitary(std::mt19937_64& rng) {
  static const std::size_t cycles[2][4] = {{1, 2, 3, 0},   // 4-cycle
                                           {1, 2, 0, 3}};  // 3-cycle
  const std::size_t* perm = cycles[rng() % 2];
  LambdaMat::ExactEntries m{};
  for (std::size_t i = 0; i < 4; ++i)
    m[i][perm[i]] = UniScalar::phase(Rational(static_cast<long long>(rng() % 24), 24));
  return LambdaMat::exact(m);
}

} // namespace

VerificationReport run_claim_suite(const SuiteConfig& cfg) {
  VerificationReport rep;
  ClaimRunner r{cfg, rep};
  const bool f_torus = cfg.inject == FaultKind::torus_phase;
  const bool f_scale = cfg.inject == FaultKind::s4_scale;
  const bool f_lambda = cfg.inject == FaultKind::lambda_symmetry;

  const TorusMul mul = f_torus ? TorusMul(faulty_torus_mul)
                               : TorusMul([](const TorusElement& x, const TorusElement& y) {
                                   return torus_mul(x, y);
                                 });

  // -------------------------------------------------------------- theta ----
  r.run("theta.oracle", "theta",
        "theta sum at characteristic 0, effective modulus i (nome e^{-pi}), matches "
        "brute-force summation and pi^{1/4}/Gamma(3/4)",
        [&](ClaimResult& res) {
          const Complex tau_eff(Real(0), Real(1));
          const CertComplex v = theta_const({Rational(0), Rational(1)}, tau_eff, cfg.eps);
          Complex brute;
          for (long long n = -60; n <= 60; ++n) {
            // exp[pi*i*n^2*(i)] = exp(-pi n^2)
            brute += cexp(Complex(-pi_value() * Real(n) * Real(n), Real(0)));
          }
          const Real closed = pow(pi_value(), Real(1) / 4) / tgamma(Real(3) / 4);
          Real worst = (v.value - brute).abs();
          const Real dc = (v.value - Complex(closed)).abs();
          if (dc > worst) worst = dc;
          res.residual = worst;
          res.status = worst < cfg.eps ? ClaimStatus::numeric_pass : ClaimStatus::fail;
        });

  r.run("theta.symmetry", "theta",
        "theta sums are invariant under r -> r+1 and r -> -r (100 random characteristics)",
        [&](ClaimResult& res) {
          std::mt19937_64 rng(cfg.seed + 101);
          std::uniform_int_distribution<long long> num(-30, 30), den(1, 12);
          const Complex tau_eff(Real("0.21"), Real("1.07"));
          Real worst(0);
          for (int t = 0; t < 100; ++t) {
            const Rational rr(num(rng), den(rng));
            const CertComplex a = theta_const({rr, Rational(1)}, tau_eff, cfg.eps);
            const CertComplex b = theta_const({rr + Rational(1), Rational(1)}, tau_eff, cfg.eps);
            const CertComplex c = theta_const({-rr, Rational(1)}, tau_eff, cfg.eps);
            const Real d1 = (a.value - b.value).abs();
            const Real d2 = (a.value - c.value).abs();
            if (d1 > worst) worst = d1;
            if (d2 > worst) worst = d2;
          }
          res.residual = worst;
          res.status = worst < 2 * cfg.eps ? ClaimStatus::numeric_pass : ClaimStatus::fail;
        });

  r.run("theta.parity_split", "theta",
        "structure constants for g1 = g2 = [[1,0],[1,1]] at tau = -i equal the "
        "even/odd restricted theta sums",
        [&](ClaimResult& res) {
          const SL2Mat g1(1, 0, 1, 1);
          const QuadIrr th(0, 1, 2, 2);  // sqrt(2)/2 keeps every degree positive
          const Complex tau(Real(0), Real(-1));
          const StructTensor t = struct_constants(g1, g1, th, tau, cfg.eps);
          Real worst(0);
          // gamma = 2 collects even n, gamma = 1 odd n; at tau = -i each class
          // is the real sum over exp(-pi n^2/4)
          for (long long gamma = 1; gamma <= 2; ++gamma) {
            Complex direct;
            for (long long n = -80; n <= 80; ++n) {
              if (((n % 2) + 2) % 2 != gamma % 2) continue;
              direct += cexp(Complex(-pi_value() * Real(n) * Real(n) / 4, Real(0)));
            }
            const Real d = (t.at(gamma, 1, 1).value - direct).abs();
            if (d > worst) worst = d;
          }
          res.residual = worst;
          res.status = worst < cfg.eps ? ClaimStatus::numeric_pass : ClaimStatus::fail;
        });

  // -------------------------------------------------------------- torus ----
  r.run("torus.assoc", "torus",
        "the torus product is associative (exact, 40 random 12-term elements)",
        [&](ClaimResult& res) {
          std::mt19937_64 rng(cfg.seed + 202);
          for (int t = 0; t < 40; ++t) {
            const TorusElement x = random_torus(rng, 12);
            const TorusElement y = random_torus(rng, 12);
            const TorusElement z = random_torus(rng, 12);
            if (mul(mul(x, y), z) != mul(x, mul(y, z))) {
              res.status = ClaimStatus::fail;
              res.note = "associativity defect at trial " + std::to_string(t);
              return;
            }
          }
          res.status = ClaimStatus::exact_pass;
        });

  r.run("torus.trace_cyclic", "torus",
        "the normalized trace is cyclic, chi(xy) = chi(yx) (exact, 100 random pairs)",
        [&](ClaimResult& res) {
          std::mt19937_64 rng(cfg.seed + 203);
          for (int t = 0; t < 100; ++t) {
            const TorusElement x = random_torus(rng, 20);
            const TorusElement y = random_torus(rng, 20);
            if (trace_chi(mul(x, y)) != trace_chi(mul(y, x))) {
              res.status = ClaimStatus::fail;
              res.note = "cyclicity defect at trial " + std::to_string(t);
              return;
            }
          }
          res.status = ClaimStatus::exact_pass;
        });

  r.run("torus.leibniz", "torus",
        "delta_1, delta_2 satisfy the Leibniz rule exactly; delta_tau = tau*delta_1 + "
        "delta_2 satisfies it at working precision",
        [&](ClaimResult& res) {
          std::mt19937_64 rng(cfg.seed + 204);
          const ComplexStructure cs(Complex(Real("0.3"), Real("-1.0")));
          const Real th = rat_to_real(Rational(1, 3)) + Real("1e-3");
          Real worst(0);
          for (int t = 0; t < 100; ++t) {
            const TorusElement x = random_torus(rng, 12);
            const TorusElement y = random_torus(rng, 12);
            const TorusElement xy = torus_mul(x, y);
            for (int j = 1; j <= 2; ++j) {
              if (delta(j, xy) != torus_mul(delta(j, x), y) + torus_mul(x, delta(j, y))) {
                res.status = ClaimStatus::fail;
                res.note = "delta_" + std::to_string(j) + " Leibniz defect at trial " +
                           std::to_string(t);
                return;
              }
            }
            const NumTorus lhs = delta_tau(cs, xy, th);
            const NumTorus rhs = delta_tau(cs, x, th).mul(to_numeric(y, th), th) +
                                 to_numeric(x, th).mul(delta_tau(cs, y, th), th);
            const Real d = (lhs - rhs).max_abs();
            if (d > worst) worst = d;
          }
          res.residual = worst;
          res.status = worst < Real("1e-25") ? ClaimStatus::numeric_pass : ClaimStatus::fail;
          res.note = "delta_1, delta_2 exact; delta_tau residual at working precision";
        });

  // --------------------------------------------------------- heisenberg ----
  r.run("heisenberg.module_swap", "heisenberg",
        "(fU)V = e^{2 pi i theta} (fV)U as an exact packet identity "
        "(50 random packets, c in {1,2,3,5})",
        [&](ClaimResult& res) {
          const QuadIrr th(0, 1, 2, 1);
          std::mt19937_64 rng(cfg.seed + 301);
          const ExactCx phase = ExactCx::monomial({1, 0, 0}, th.value());
          for (long long c : {1, 2, 3, 5}) {
            const ModuleParams p(SL2Mat(1, 0, c, 1), th);
            for (int t = 0; t < 13; ++t) {
              const GaussPolyPacket f = random_packet(c, rng);
              const GaussPolyPacket lhs = act_right_V(act_right_U(f, p), p);
              const GaussPolyPacket rhs = act_right_U(act_right_V(f, p), p);
              if (lhs != rhs.scaled(ExactCx(1), phase)) {
                res.status = ClaimStatus::fail;
                res.note = "swap identity defect at c = " + std::to_string(c);
                return;
              }
            }
          }
          res.status = ClaimStatus::exact_pass;
        });

  r.run("heisenberg.left_right", "heisenberg",
        "every left generator action commutes with every right generator action "
        "(exact packet identities, c in {1,2,3,5})",
        [&](ClaimResult& res) {
          const QuadIrr th(0, 1, 2, 1);
          std::mt19937_64 rng(cfg.seed + 302);
          using Act = GaussPolyPacket (*)(const GaussPolyPacket&, const ModuleParams&);
          for (long long c : {1, 2, 3, 5}) {
            const ModuleParams p(SL2Mat(1, 0, c, 1), th);
            for (int t = 0; t < 4; ++t) {
              const GaussPolyPacket f = random_packet(c, rng);
              for (Act left : {static_cast<Act>(act_left_U), static_cast<Act>(act_left_V)})
                for (Act right : {static_cast<Act>(act_right_U), static_cast<Act>(act_right_V)})
                  if (left(right(f, p), p) != right(left(f, p), p)) {
                    res.status = ClaimStatus::fail;
                    res.note = "left/right commutation defect at c = " + std::to_string(c);
                    return;
                  }
            }
          }
          res.status = ClaimStatus::exact_pass;
        });

  // --------------------------------------------------------------- ring ----
  r.run("ring.assoc", "ring",
        "graded product of the standard instance (g = [[4,-1],[5,-1]], theta = "
        "(5-sqrt(5))/10, tau = 0.3-1.0i) is associative in degrees (1,1,1) within 1e-9",
        [&](ClaimResult& res) {
          GradedRing ring(SL2Mat(4, -1, 5, -1), QuadIrr(5, -1, 5, 10),
                          Complex(Real("0.3"), Real("-1.0")), cfg.eps);
          const DefectReport d = associativity_defect(ring, 1, 1, 1);
          res.residual = d.defect;
          res.note = "certified bound " + real_str(d.certified, 6);
          res.status = d.defect < Real("1e-9") ? ClaimStatus::numeric_pass : ClaimStatus::fail;
        });

  r.run("ring.presentation", "ring",
        "the standard instance has 5 generators; the degree-(1,1) multiplication "
        "matrix has rank 15 and a 10-dimensional kernel, stable for tol in "
        "[1e-10, 1e-6]; the inequality classifier reports koszul",
        [&](ClaimResult& res) {
          GradedRing ring(SL2Mat(4, -1, 5, -1), QuadIrr(5, -1, 5, 10),
                          Complex(Real("0.3"), Real("-1.0")), cfg.eps);
          if (ring.dim(1) != 5 || ring.dim(2) != 15) {
            res.status = ClaimStatus::fail;
            res.note = "unexpected graded dimensions";
            return;
          }
          const QuadKernel k = quadratic_kernel(ring, cfg.tol);
          bool stable = k.rank == 15 && k.kernel_dim == 10;
          for (const auto& [tol, rank] : rank_sweep(k.sigma, Real("1e-10"), Real("1e-6"), 9))
            if (rank != 15) stable = false;
          if (!stable) {
            res.status = ClaimStatus::fail;
            res.note = "rank/kernel not stable across the tolerance sweep";
            return;
          }
          if (classify_ring(ring.g()) != RingClass::koszul) {
            res.status = ClaimStatus::fail;
            res.note = "classifier did not report koszul";
            return;
          }
          res.status = ClaimStatus::exact_pass;
          res.note = "rank 15 / kernel 10 across tol in [1e-10,1e-6]; classifier koszul";
        });

  // ------------------------------------------------------------ spheres ----
  r.run("s2.projector", "spheres",
        "the 2-sphere rewrite system is locally confluent and the standard projector "
        "satisfies e = e^2 = e^* modulo the relations",
        [&](ClaimResult& res) {
          PresentedAlgebra s2 = s2_algebra();
          if (!s2.rs.check_local_confluence().empty()) {
            res.status = ClaimStatus::fail;
            res.note = "unresolved critical pairs";
            return;
          }
          for (const FreeElement& rel : s2.relations)
            if (!s2.rs.normal_form(rel).is_zero()) {
              res.status = ClaimStatus::fail;
              res.note = "a defining relation does not reduce to zero";
              return;
            }
          const AlgMatrix e = s2_projector();
          const AlgMatrix es = e.adjoint(s2.rs.gens());
          const AlgMatrix ee = e * e;
          for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j)
              if (es.at(i, j) != e.at(i, j) ||
                  !s2.rs.normal_form(ee.at(i, j) - e.at(i, j)).is_zero()) {
                res.status = ClaimStatus::fail;
                res.note = "projector identity violated";
                return;
              }
          res.status = ClaimStatus::exact_pass;
        });

  r.run("s2.chern", "spheres",
        "the 2-sphere projector has ch_0(e) = 0 and ch_1(e) equal to the "
        "antisymmetrized volume tensor with constant i/4 (exact)",
        [&](ClaimResult& res) {
          PresentedAlgebra s2 = s2_algebra();
          const AlgMatrix e = s2_projector();
          if (!tensor_is_zero(chern_even(e, 0), s2.rs)) {
            res.status = ClaimStatus::fail;
            res.note = "ch_0(e) is nonzero";
            return;
          }
          const UniScalar c = UniScalar::i() * UniScalar(Rational(1, 4));
          TensorElement expected(3);
          const int perms[6][4] = {{0, 1, 2, +1}, {0, 2, 1, -1}, {1, 2, 0, +1},
                                   {1, 0, 2, -1}, {2, 0, 1, +1}, {2, 1, 0, -1}};
          for (const auto& p : perms)
            expected = expected +
                       TensorElement::product({FreeElement::gen(static_cast<std::uint32_t>(p[0])),
                                               FreeElement::gen(static_cast<std::uint32_t>(p[1])),
                                               FreeElement::gen(static_cast<std::uint32_t>(p[2]))}) *
                           (p[3] > 0 ? c : -c);
          if (!tensor_is_zero(chern_even(e, 1) - expected, s2.rs)) {
            res.status = ClaimStatus::fail;
            res.note = "ch_1(e) differs from the antisymmetrized volume tensor";
            return;
          }
          res.status = ClaimStatus::deviation_noted;
          res.note = "prefactor established as i/4 by direct expansion; deviates from "
                     "the conventionally stated i/2";
        });

  r.run("s4.projector", "spheres",
        "the deformed 4-sphere system at theta = 1/3 is locally confluent and the "
        "projector satisfies e = e^2 = e^* modulo the relations",
        [&](ClaimResult& res) {
          const Rational theta(1, 3);
          PresentedAlgebra s4 = s4_algebra(theta);
          if (!s4.rs.check_local_confluence().empty()) {
            res.status = ClaimStatus::fail;
            res.note = "unresolved critical pairs";
            return;
          }
          for (const FreeElement& rel : s4.relations)
            if (!s4.rs.normal_form(rel).is_zero()) {
              res.status = ClaimStatus::fail;
              res.note = "a defining relation does not reduce to zero";
              return;
            }
          AlgMatrix e = s4_projector(theta);
          if (f_scale) e = e * UniScalar(2);  // drop the 1/2 normalization
          const AlgMatrix es = e.adjoint(s4.rs.gens());
          const AlgMatrix ee = e * e;
          for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
              if (!s4.rs.normal_form(es.at(i, j) - e.at(i, j)).is_zero() ||
                  !s4.rs.normal_form(ee.at(i, j) - e.at(i, j)).is_zero()) {
                res.status = ClaimStatus::fail;
                res.note = "projector identity violated";
                return;
              }
          res.status = ClaimStatus::deviation_noted;
          res.note = "the 1/2 normalization and central-x augmentation are required "
                     "for e = e^2 = e*";
        });

  r.run("s4.chern", "spheres",
        "the deformed 4-sphere projector at theta = 1/3 has ch_0(e) = ch_1(e) = 0 "
        "exactly under the confluent rewrite system",
        [&](ClaimResult& res) {
          const Rational theta(1, 3);
          PresentedAlgebra s4 = s4_algebra(theta);
          AlgMatrix e = s4_projector(theta);
          if (f_scale) e = e * UniScalar(2);
          if (!tensor_is_zero(chern_even(e, 0), s4.rs)) {
            res.status = ClaimStatus::fail;
            res.note = "ch_0(e) is nonzero";
            return;
          }
          if (!tensor_is_zero(chern_even(e, 1), s4.rs)) {
            res.status = ClaimStatus::fail;
            res.note = "ch_1(e) is nonzero";
            return;
          }
          res.status = ClaimStatus::exact_pass;
        });

  r.run("s3.ch_half", "spheres",
        "the arity-2 odd character vanishes exactly for the diagonal star-structure "
        "family (20 random rational phi) and is nonzero for 20 random non-symmetric "
        "unitary matrices",
        [&](ClaimResult& res) {
          std::mt19937_64 rng(cfg.seed + 401);
          std::uniform_int_distribution<long long> num(0, 23);
          for (int t = 0; t < 20; ++t) {
            const PhiParams phi(Rational(num(rng), 24), Rational(num(rng), 24),
                                Rational(num(rng), 24));
            LambdaMat lam = LambdaMat::from_phi(phi);
            if (f_lambda) lam = random_nonsymmetric_unitary(rng);
            if (!ch_half_tensor(lam).is_syntactically_zero()) {
              res.status = ClaimStatus::fail;
              res.note = "nonzero arity-2 character on the symmetric family";
              return;
            }
          }
          for (int t = 0; t < 20; ++t) {
            if (ch_half_tensor(random_nonsymmetric_unitary(rng)).is_syntactically_zero()) {
              res.status = ClaimStatus::fail;
              res.note = "arity-2 character vanished for a non-symmetric matrix";
              return;
            }
          }
          res.status = ClaimStatus::exact_pass;
        });

  r.run("s3.spans", "spheres",
        "the sigma-components of UU* and U*U equal i times the plane relations, and "
        "the Hermitian relations span the folded relations exactly (degree 2)",
        [&](ClaimResult& res) {
          const PhiParams phi(Rational(1, 3), Rational(1, 4), Rational(1, 5));
          LambdaMat lam = LambdaMat::from_phi(phi);
          if (f_lambda) {
            std::mt19937_64 rng(cfg.seed + 402);
            lam = random_nonsymmetric_unitary(rng);
          }
          const UnitarityExpansion ue = unitarity_expansion(lam);
          const std::vector<FreeElement> raw = plane_relations_raw();
          for (std::size_t k = 0; k < 3; ++k)
            if (ue.uu_star[k] != raw[k] * UniScalar::i() ||
                ue.star_uu[k] != raw[3 + k] * UniScalar::i()) {
              res.status = ClaimStatus::fail;
              res.note = "sigma-component identity violated";
              return;
            }
          const std::vector<FreeElement> folded = r4_relations(lam).rels;
          std::vector<FreeElement> herm_z;
          for (const FreeElement& h : hermitian_relations(phi))
            herm_z.push_back(hermitian_to_z(h, phi));
          if (!exact_span_equal(herm_z, folded)) {
            res.status = ClaimStatus::fail;
            res.note = "degree-2 spans differ";
            return;
          }
          res.status = ClaimStatus::exact_pass;
        });

  // ----------------------------------------------------------- charvar -----
  r.run("charvar.diagonal", "spheres",
        "at phi = 0 the relation pencil has rank 3 everywhere and the partner map "
        "fixes every direction (25 random points)",
        [&](ClaimResult& res) {
          const BilinearSystem sys =
              build_bilinear_system(PhiParams(Rational(0), Rational(0), Rational(0)));
          std::mt19937_64 rng(cfg.seed + 501);
          std::uniform_real_distribution<double> d(-1.0, 1.0);
          Real worst(0);
          for (int t = 0; t < 25; ++t) {
            CVec u(4);
            for (auto& z : u) {
              const double re = d(rng), im = d(rng);
              z = Complex(re, im);
            }
            if (char_variety_rank(u, sys, cfg.tol) != 3) {
              res.status = ClaimStatus::fail;
              res.note = "rank exceeded 3 on the diagonal family";
              return;
            }
            const std::optional<CVec> v = sigma_map(u, sys, cfg.tol);
            if (!v) {
              res.status = ClaimStatus::fail;
              res.note = "partner map undefined on the diagonal family";
              return;
            }
            const Real align = Real(dot(u, *v).abs());
            const Real denom = Real(vec_norm(u) * vec_norm(*v));
            if (Real(1) - align / denom > Real("1e-20")) {
              res.status = ClaimStatus::fail;
              res.note = "partner map moved a direction";
              return;
            }
            const Real rr = rank_residual(sys, u);
            if (rr > worst) worst = rr;
          }
          res.residual = worst;
          res.status = ClaimStatus::numeric_pass;
        });

  r.run("charvar.generic", "spheres",
        "at generic rational phi random directions have full pencil rank, and the "
        "line search lands on the rank-3 locus with a residual-bounded orbit",
        [&](ClaimResult& res) {
          const BilinearSystem sys = build_bilinear_system(
              PhiParams(Rational(1, 3), Rational(1, 4), Rational(1, 5)));
          std::mt19937_64 rng(cfg.seed + 502);
          std::uniform_real_distribution<double> d(-1.0, 1.0);
          for (int t = 0; t < 25; ++t) {
            CVec u(4);
            for (auto& z : u) {
              const double re = d(rng), im = d(rng);
              z = Complex(re, im);
            }
            if (char_variety_rank(u, sys, cfg.tol) != 4) {
              res.status = ClaimStatus::fail;
              res.note = "random direction failed to have full rank";
              return;
            }
          }
          const std::optional<CVec> pt = find_variety_point(sys, rng);
          if (!pt) {
            res.status = ClaimStatus::fail;
            res.note = "line search found no rank-3 point";
            return;
          }
          const OrbitReport orbit = sigma_orbit_check(*pt, sys, 3, cfg.tol);
          res.residual = orbit.worst;
          if (!orbit.stayed_on_locus || orbit.worst > Real("1e-8")) {
            res.status = ClaimStatus::fail;
            res.note = "orbit left the rank-3 locus";
            return;
          }
          res.status = ClaimStatus::numeric_pass;
        });

  return rep;
}

}  // namespace ncg
