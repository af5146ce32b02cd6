#include <doctest.h>

#include <set>
#include <string>
#include <vector>

#include "ncgkit/errors.hpp"
#include "ncgkit/verify.hpp"

using namespace ncg;

namespace {

const ClaimResult& find_claim(const VerificationReport& rep, const std::string& id) {
  for (const ClaimResult& c : rep.claims)
    if (c.id == id) return c;
  REQUIRE_MESSAGE(false, "claim not found: ", id);
  static ClaimResult dummy;
  return dummy;
}

}  // namespace

TEST_CASE("claim suite: baseline run passes every claim") {
  SuiteConfig cfg;
  const VerificationReport rep = run_claim_suite(cfg);

  const std::vector<std::string> expected = {
      "theta.oracle",      "theta.symmetry",   "theta.parity_split",
      "torus.assoc",       "torus.trace_cyclic", "torus.leibniz",
      "heisenberg.module_swap", "heisenberg.left_right",
      "ring.assoc",        "ring.presentation",
      "s2.projector",      "s2.chern",
      "s4.projector",      "s4.chern",
      "s3.ch_half",        "s3.spans",
      "charvar.diagonal",  "charvar.generic"};
  REQUIRE(rep.claims.size() == expected.size());
  std::set<std::string> seen;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CHECK(rep.claims[i].id == expected[i]);
    seen.insert(rep.claims[i].id);
  }
  CHECK(seen.size() == expected.size());  // ids unique

  for (const ClaimResult& c : rep.claims) {
    INFO("claim ", c.id, ": ", c.note);
    CHECK(claim_ok(c.status));
    CHECK_FALSE(c.statement.empty());
    CHECK(c.seconds >= 0.0);
  }
  CHECK(rep.all_ok());

  // corrected-constant and normalization claims surface as noted deviations
  CHECK(find_claim(rep, "s2.chern").status == ClaimStatus::deviation_noted);
  CHECK(find_claim(rep, "s4.projector").status == ClaimStatus::deviation_noted);
  // exact claims report exact status
  CHECK(find_claim(rep, "torus.assoc").status == ClaimStatus::exact_pass);
  CHECK(find_claim(rep, "s4.chern").status == ClaimStatus::exact_pass);
  // numeric claims carry a residual below their thresholds
  CHECK(find_claim(rep, "theta.oracle").status == ClaimStatus::numeric_pass);
  CHECK(find_claim(rep, "theta.oracle").residual < cfg.eps);
  CHECK(find_claim(rep, "ring.assoc").residual < Real("1e-9"));
}

TEST_CASE("claim suite: selection by module name and id prefix") {
  SuiteConfig cfg;
  cfg.only = "theta";
  const VerificationReport theta_only = run_claim_suite(cfg);
  REQUIRE(theta_only.claims.size() == 3);
  for (const ClaimResult& c : theta_only.claims) CHECK(c.module_name == "theta");

  cfg.only = "charvar";  // id prefix; the claims live in the spheres module
  const VerificationReport charvar_only = run_claim_suite(cfg);
  REQUIRE(charvar_only.claims.size() == 2);
  CHECK(charvar_only.claims[0].id == "charvar.diagonal");
  CHECK(charvar_only.claims[1].id == "charvar.generic");

  cfg.only = "spheres";  // module name collects the sphere and charvar claims
  const VerificationReport spheres_only = run_claim_suite(cfg);
  CHECK(spheres_only.claims.size() == 8);

  cfg.only = "no.such.claim";
  CHECK(run_claim_suite(cfg).claims.empty());
}

TEST_CASE("claim suite: wrong torus commutation phase is detected") {
  SuiteConfig cfg;
  cfg.only = "torus";
  cfg.inject = FaultKind::torus_phase;
  const VerificationReport rep = run_claim_suite(cfg);
  REQUIRE(rep.claims.size() == 3);
  CHECK_FALSE(rep.all_ok());
  CHECK(find_claim(rep, "torus.assoc").status == ClaimStatus::fail);
  CHECK(find_claim(rep, "torus.trace_cyclic").status == ClaimStatus::fail);
  // the derivation claim multiplies with the correct product, so it is
  // unaffected by the injected product law
  CHECK(claim_ok(find_claim(rep, "torus.leibniz").status));
}

TEST_CASE("claim suite: dropped projector normalization is detected") {
  SuiteConfig cfg;
  cfg.only = "s4";
  cfg.inject = FaultKind::s4_scale;
  const VerificationReport rep = run_claim_suite(cfg);
  REQUIRE(rep.claims.size() == 2);
  CHECK(find_claim(rep, "s4.projector").status == ClaimStatus::fail);
  CHECK(find_claim(rep, "s4.chern").status == ClaimStatus::fail);

  // the fault does not leak into other modules
  cfg.only = "s2";
  const VerificationReport other = run_claim_suite(cfg);
  CHECK(other.all_ok());
}

TEST_CASE("claim suite: non-symmetric star-structure matrix is detected") {
  SuiteConfig cfg;
  cfg.only = "s3";
  cfg.inject = FaultKind::lambda_symmetry;
  const VerificationReport rep = run_claim_suite(cfg);
  REQUIRE(rep.claims.size() == 2);
  CHECK(find_claim(rep, "s3.ch_half").status == ClaimStatus::fail);
  CHECK(find_claim(rep, "s3.spans").status == ClaimStatus::fail);
}

TEST_CASE("fault kinds parse and print round-trip") {
  for (FaultKind f : {FaultKind::none, FaultKind::torus_phase, FaultKind::s4_scale,
                      FaultKind::lambda_symmetry})
    CHECK(parse_fault(fault_name(f)) == f);
  CHECK_THROWS_AS((void)parse_fault("bogus"), parameter_error);

  CHECK(std::string(claim_status_name(ClaimStatus::exact_pass)) == "exact-pass");
  CHECK(std::string(claim_status_name(ClaimStatus::fail)) == "fail");
  CHECK(claim_ok(ClaimStatus::deviation_noted));
  CHECK_FALSE(claim_ok(ClaimStatus::fail));
}
