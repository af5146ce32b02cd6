#pragma once

#include <string>
#include <vector>

#include "ncgkit/numeric.hpp"

namespace ncg {

/// Outcome of one verified claim.  `exact_pass` means the statement was
/// decided in exact arithmetic; `numeric_pass` means it holds within the
/// reported residual at working precision; `deviation_noted` is a pass whose
/// verified formulation deviates from a source display (the note says how);
/// `fail` is a genuine violation (or an unexpected exception).
enum class ClaimStatus { exact_pass, numeric_pass, fail, deviation_noted };

const char* claim_status_name(ClaimStatus s);
bool claim_ok(ClaimStatus s);  // everything except fail

/// Deliberate corruption switches used to demonstrate that the suite detects
/// wrong implementations (mutation testing):
///   torus_phase     — wrong commutation phase in the torus product
///   s4_scale        — drops the ½ normalization of the 4-sphere projector
///   lambda_symmetry — breaks the symmetry of the star-structure matrix Λ
enum class FaultKind { none, torus_phase, s4_scale, lambda_symmetry };

const char* fault_name(FaultKind f);
/// Parses the names accepted by fault_name; parameter_error otherwise.
FaultKind parse_fault(const std::string& name);

struct ClaimResult {
  std::string id;           // stable identifier, e.g. "torus.trace_cyclic"
  std::string module_name;  // theta | torus | heisenberg | ring | spheres
  std::string statement;    // the verified statement, in mathematical terms
  ClaimStatus status = ClaimStatus::fail;
  Real residual{0};         // 0 for exactly decided claims
  double seconds = 0.0;
  std::string note;         // deviation descriptions / failure details
};

struct SuiteConfig {
  std::string only;  // empty = all; else a module name or a claim-id prefix
  FaultKind inject = FaultKind::none;
  Real eps = Real("1e-12");  // certified-series accuracy for theta-backed claims
  Real tol = Real("1e-8");   // numerical-rank relative tolerance
  unsigned long long seed = 1;
};

struct VerificationReport {
  std::vector<ClaimResult> claims;
  bool all_ok() const;
};

/// Runs the claim suite (restricted by cfg.only, corrupted by cfg.inject).
/// Individual claim failures are collected, never fatal mid-run.
VerificationReport run_claim_suite(const SuiteConfig& cfg);

}  // namespace ncg
