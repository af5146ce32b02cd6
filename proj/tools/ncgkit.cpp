// Command-line front end: certified theta evaluation, section-ring exports,
// the verification suite, and the characteristic-variety sampler.
//
// Exit codes: 0 success, 1 verification failure, 2 numeric-domain error,
// 3 parameter-domain error (including argument parsing).

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ncgkit/errors.hpp"
#include "ncgkit/io_util.hpp"
#include "ncgkit/ring.hpp"
#include "ncgkit/spheres.hpp"
#include "ncgkit/theta.hpp"
#include "ncgkit/torus.hpp"
#include "ncgkit/verify.hpp"
#include "ncgkit/version.hpp"

using namespace ncg;

namespace {

// All option values arrive as strings and are converted only after the
// working precision has been configured, so every Real is built at the final
// precision.
struct RunConfig {
  std::string r = "0";
  std::string l = "1";
  std::string theta;
  std::string tau = "0,-1";
  std::string g = "1,0,1,1";
  std::string phi = "0,0,0";
  std::string eps = "1e-12";
  std::string tol = "1e-8";
  int n = 100;
  unsigned long long seed = 1;
  std::string out;
  std::string format = "json";
  std::string only;
  std::string inject = "none";
  bool line_search = false;
};

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

Real parse_positive_real(const std::string& s, const std::string& what) {
  Real x;
  try {
    x = Real(s);
  } catch (const std::exception&) {
    throw parameter_error(what + " is not a decimal number: " + s);
  }
  if (!(x > 0)) throw parameter_error(what + " must be positive");
  return x;
}

/// "re,im" -> complex number at working precision.
Complex parse_complex_pair(const std::string& s, const std::string& what) {
  const std::vector<std::string> parts = split_commas(s);
  if (parts.size() != 2) throw parameter_error(what + " must be \"re,im\"");
  try {
    return Complex(Real(parts[0]), Real(parts[1]));
  } catch (const std::exception&) {
    throw parameter_error(what + " is not a decimal pair: " + s);
  }
}

/// "a,b,c,d" -> unimodular integer matrix.
SL2Mat parse_matrix(const std::string& s) {
  const std::vector<std::string> parts = split_commas(s);
  if (parts.size() != 4) throw parameter_error("--g must be four integers \"a,b,c,d\"");
  long long v[4];
  for (int i = 0; i < 4; ++i) {
    try {
      std::size_t used = 0;
      v[i] = std::stoll(parts[i], &used);
      if (used != parts[i].size()) throw std::invalid_argument(parts[i]);
    } catch (const std::exception&) {
      throw parameter_error("--g entry is not an integer: " + parts[i]);
    }
  }
  return SL2Mat(v[0], v[1], v[2], v[3]);
}

int decimal_digits(const Real& eps) {
  const Real lg = Real(-log10(eps));
  long d = lg.convert_to<long>();
  if (Real(d) < lg) ++d;  // ceil
  if (d < 1) d = 1;
  if (d > 60) d = 60;
  return static_cast<int>(d);
}

/// Value formatting: the imaginary part is dropped exactly when it is below
/// the certified error (the value is then real up to the stated uncertainty).
std::string format_value(const Complex& v, int digits, const Real& err) {
  const Real im_abs = Real(abs(v.im));
  if (im_abs <= err) return real_str(v.re, digits);
  std::string s = real_str(v.re, digits);
  s += v.im < 0 ? " - " : " + ";
  s += real_str(im_abs, digits);
  s += "i";
  return s;
}

// ---------------------------------------------------------------------------
// theta: certified theta-sum evaluation
// ---------------------------------------------------------------------------

int cmd_theta(const RunConfig& cfg) {
  const Rational r = rat_mod1(parse_rational(cfg.r));  // theta is 1-periodic in r
  const Rational l = parse_rational(cfg.l);
  const Real eps = parse_positive_real(cfg.eps, "--eps");
  const Complex tau = parse_complex_pair(cfg.tau, "--tau");

  // The sum runs at the effective modulus -tau (nome e^{-pi} for tau = -i).
  // Convergence is the evaluator's decision: Im(tau) >= 0 makes the nome
  // modulus reach 1 and surfaces as a numeric-domain error.
  const Complex tau_eff(-tau.re, -tau.im);
  const CertComplex v = theta_const(ThetaChar{r, l}, tau_eff, eps);

  const int digits = std::max(6, decimal_digits(eps) + 4);
  std::string line = format_value(v.value, digits, v.err);
  line += " ± ";
  line += real_str(eps, 6);
  line += "\n";
  std::cout << line;
  if (!cfg.out.empty()) atomic_write_file(cfg.out, line);
  return 0;
}

// ---------------------------------------------------------------------------
// ring: structure-constant CSV and presentation JSON for a fixed-point ring
// ---------------------------------------------------------------------------

int cmd_ring(const RunConfig& cfg) {
  if (cfg.theta.empty()) throw parameter_error("--theta is required");
  if (cfg.out.empty()) throw parameter_error("--out prefix is required");
  const Real eps = parse_positive_real(cfg.eps, "--eps");
  const Real tol = parse_positive_real(cfg.tol, "--tol");
  const Complex tau = parse_complex_pair(cfg.tau, "--tau");
  if (!(tau.im < 0)) throw parameter_error("--tau must have negative imaginary part");
  const SL2Mat g = parse_matrix(cfg.g);
  const QuadIrr theta = QuadIrr::parse(cfg.theta);

  if (g.degree() <= 0)
    throw parameter_error("matrix degree " + std::to_string(g.degree()) +
                          " is not positive; the graded ring is undefined");
  if (morita_theta(g, theta).value() != theta.value())
    throw parameter_error("theta is not fixed by g");

  GradedRing ring(g, theta, tau, eps);
  const StructTensor& t = ring.table(1, 1);

  std::string csv = csv_line({"gamma", "alpha", "beta", "re", "im", "err"});
  long long rows = 0;
  for (long long gamma = 1; gamma <= t.c12(); ++gamma)
    for (long long alpha = 1; alpha <= t.c1(); ++alpha)
      for (long long beta = 1; beta <= t.c2(); ++beta) {
        const CertComplex& c = t.at(gamma, alpha, beta);
        csv += csv_line({std::to_string(gamma), std::to_string(alpha), std::to_string(beta),
                         real_str(c.value.re, 20), real_str(c.value.im, 20),
                         real_str(c.err, 6)});
        ++rows;
      }
  const std::string csv_path = cfg.out + "_struct.csv";
  atomic_write_file(csv_path, csv);

  const std::string json_path = cfg.out + "_presentation.json";
  atomic_write_file(json_path, presentation_export(ring, tol, cfg.seed));

  const QuadKernel k = quadratic_kernel(ring, tol);
  std::cout << "wrote " << csv_path << " (" << rows << " rows) and " << json_path << " ("
            << ring.dim(1) << " generators, " << k.kernel_dim << " relations)\n";
  return 0;
}

// ---------------------------------------------------------------------------
// verify: the claim suite with optional fault injection
// ---------------------------------------------------------------------------

std::string residual_str(const Real& x) { return x == 0 ? "0" : real_str(x, 3); }

int cmd_verify(const RunConfig& cfg) {
  SuiteConfig sc;
  sc.only = cfg.only;
  sc.inject = parse_fault(cfg.inject);
  sc.eps = parse_positive_real(cfg.eps, "--eps");
  sc.tol = parse_positive_real(cfg.tol, "--tol");
  sc.seed = cfg.seed;
  if (cfg.format != "json" && cfg.format != "csv")
    throw parameter_error("--format must be json or csv");

  const VerificationReport rep = run_claim_suite(sc);

  std::printf("%-26s %-16s %-12s %8s  %s\n", "claim", "status", "residual", "time", "note");
  for (const ClaimResult& c : rep.claims)
    std::printf("%-26s %-16s %-12s %7.2fs  %s\n", c.id.c_str(), claim_status_name(c.status),
                residual_str(c.residual).c_str(), c.seconds, c.note.c_str());
  std::size_t ok = 0;
  for (const ClaimResult& c : rep.claims) ok += claim_ok(c.status) ? 1 : 0;
  std::printf("%zu/%zu claims ok\n", ok, rep.claims.size());

  if (!cfg.out.empty()) {
    if (cfg.format == "json") {
      nlohmann::ordered_json j;
      j["fault"] = fault_name(sc.inject);
      j["only"] = sc.only;
      j["all_ok"] = rep.all_ok();
      j["claims"] = nlohmann::ordered_json::array();
      for (const ClaimResult& c : rep.claims)
        j["claims"].push_back({{"id", c.id},
                               {"module", c.module_name},
                               {"statement", c.statement},
                               {"status", claim_status_name(c.status)},
                               {"residual", residual_str(c.residual)},
                               {"seconds", c.seconds},
                               {"note", c.note}});
      atomic_write_file(cfg.out, j.dump(2) + "\n");
    } else {
      std::string csv =
          csv_line({"claim", "module", "status", "residual", "seconds", "statement", "note"});
      for (const ClaimResult& c : rep.claims) {
        char secs[32];
        std::snprintf(secs, sizeof secs, "%.3f", c.seconds);
        csv += csv_line({c.id, c.module_name, claim_status_name(c.status),
                         residual_str(c.residual), secs, c.statement, c.note});
      }
      atomic_write_file(cfg.out, csv);
    }
  }
  return rep.all_ok() ? 0 : 1;
}

// ---------------------------------------------------------------------------
// charvar: sampling the rank locus of the relation pencil
// ---------------------------------------------------------------------------

void append_point_row(std::string& csv, const std::string& kind, const CVec& u,
                      std::size_t rank, const Real& residual, const std::optional<CVec>& v) {
  std::vector<std::string> row{kind};
  for (const Complex& z : u) {
    row.push_back(real_str(z.re, 20));
    row.push_back(real_str(z.im, 20));
  }
  row.push_back(std::to_string(rank));
  row.push_back(real_str(residual, 20));
  if (v) {
    for (const Complex& z : *v) {
      row.push_back(real_str(z.re, 20));
      row.push_back(real_str(z.im, 20));
    }
  } else {
    for (int i = 0; i < 8; ++i) row.push_back("");
  }
  csv += csv_line(row);
}

int cmd_charvar(const RunConfig& cfg) {
  const std::vector<std::string> parts = split_commas(cfg.phi);
  if (parts.size() != 3) throw parameter_error("--phi must be three rationals \"f1,f2,f3\"");
  const PhiParams phi(parse_rational(parts[0]), parse_rational(parts[1]),
                      parse_rational(parts[2]));
  const Real tol = parse_positive_real(cfg.tol, "--tol");
  if (cfg.n < 0) throw parameter_error("--n must be nonnegative");

  const BilinearSystem sys = build_bilinear_system(phi);
  std::mt19937_64 rng(cfg.seed);

  std::string csv = csv_line({"kind", "u_re0", "u_im0", "u_re1", "u_im1", "u_re2", "u_im2",
                              "u_re3", "u_im3", "rank", "residual", "v_re0", "v_im0", "v_re1",
                              "v_im1", "v_re2", "v_im2", "v_re3", "v_im3"});

  for (const RankSample& s :
       sample_char_variety(sys, static_cast<std::size_t>(cfg.n), rng, tol)) {
    const Real rr = Real(s.sigma_min / s.sigma_max);
    const std::optional<CVec> v = s.rank <= 3 ? sigma_map(s.u, sys, tol) : std::nullopt;
    append_point_row(csv, "sample", s.u, s.rank, rr, v);
  }

  if (cfg.line_search) {
    const std::optional<CVec> pt = find_variety_point(sys, rng);
    if (!pt) {
      std::cerr << "warning: line search found no low-rank point\n";
    } else {
      append_point_row(csv, "locus", *pt, char_variety_rank(*pt, sys, tol),
                       rank_residual(sys, *pt), sigma_map(*pt, sys, tol));
      const OrbitReport orbit = sigma_orbit_check(*pt, sys, 5, tol);
      for (std::size_t i = 0; i < orbit.points.size(); ++i)
        append_point_row(csv, "orbit", orbit.points[i],
                         char_variety_rank(orbit.points[i], sys, tol), orbit.residuals[i],
                         sigma_map(orbit.points[i], sys, tol));
    }
  }

  if (cfg.out.empty())
    std::cout << csv;
  else
    atomic_write_file(cfg.out, csv);
  return 0;
}

unsigned resolve_bits(unsigned flag_bits) {
  unsigned bits = 0;
  if (flag_bits != 0) {
    bits = flag_bits;
  } else if (const char* env = std::getenv("NCGKIT_BITS")) {
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument(env);
      bits = static_cast<unsigned>(v);
    } catch (const std::exception&) {
      throw parameter_error("NCGKIT_BITS must be an integer number of bits");
    }
  }
  if (bits == 0) return 0;  // keep the library default
  if (bits < 64 || bits > 16384)
    throw parameter_error("precision must be between 64 and 16384 bits");
  return bits;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact and certified computation for noncommutative tori: theta sums, "
               "graded section rings, sphere algebras, and their verification suite"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  RunConfig cfg;
  unsigned flag_bits = 0;
  app.add_option("--bits", flag_bits,
                 "working precision in bits (64..16384; overrides NCGKIT_BITS)");

  CLI::App* theta = app.add_subcommand(
      "theta", "evaluate a theta sum with rational characteristic to a certified error");
  theta->add_option("--r", cfg.r, "rational characteristic (default 0)");
  theta->add_option("--l", cfg.l, "positive rational modulus scale (default 1)");
  theta->add_option("--tau", cfg.tau,
                    "complex-structure parameter \"re,im\" with im < 0 (default 0,-1)");
  theta->add_option("--eps", cfg.eps, "certified absolute error budget (default 1e-12)");
  theta->add_option("--out", cfg.out, "also write the result line to this file");

  CLI::App* ring = app.add_subcommand(
      "ring", "export structure constants and the quadratic presentation of a section ring");
  ring->add_option("--g", cfg.g, "unimodular integer matrix \"a,b,c,d\" fixing theta");
  ring->add_option("--theta", cfg.theta, "quadratic irrational \"(p + s*sqrt(D))/q\"");
  ring->add_option("--tau", cfg.tau, "complex-structure parameter \"re,im\" with im < 0");
  ring->add_option("--eps", cfg.eps, "certified error budget for table entries");
  ring->add_option("--tol", cfg.tol, "relative singular-value tolerance for the kernel");
  ring->add_option("--seed", cfg.seed, "provenance seed recorded in the presentation");
  ring->add_option("--out", cfg.out, "output prefix: writes <out>_struct.csv and "
                                     "<out>_presentation.json");

  CLI::App* verify = app.add_subcommand(
      "verify", "run the library's verification suite and report per-claim results");
  verify->add_option("--only", cfg.only, "restrict to a module name or claim-id prefix");
  verify->add_option("--inject", cfg.inject,
                     "inject a known fault (none, torus_phase, s4_scale, lambda_symmetry)");
  verify->add_option("--eps", cfg.eps, "certified error budget for numeric claims");
  verify->add_option("--tol", cfg.tol, "rank tolerance for kernel claims");
  verify->add_option("--seed", cfg.seed, "seed for randomized claims");
  verify->add_option("--out", cfg.out, "write the report to this file");
  verify->add_option("--format", cfg.format, "report file format: json (default) or csv");

  CLI::App* charvar = app.add_subcommand(
      "charvar", "sample the rank locus of the quadratic relation pencil");
  charvar->add_option("--phi", cfg.phi, "three rationals \"f1,f2,f3\" (default 0,0,0)");
  charvar->add_option("--n", cfg.n, "number of random directions to sample (default 100)");
  charvar->add_option("--seed", cfg.seed, "random seed (default 1)");
  charvar->add_option("--tol", cfg.tol, "relative rank tolerance (default 1e-8)");
  charvar->add_flag("--line-search", cfg.line_search,
                    "additionally search for a rank-3 point and follow its partner orbit");
  charvar->add_option("--out", cfg.out, "write the CSV here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help or the parse error
    return code == 0 ? 0 : 3;
  }

  try {
    const unsigned bits = resolve_bits(flag_bits);
    if (bits != 0) set_precision_bits(bits);
    if (theta->parsed()) return cmd_theta(cfg);
    if (ring->parsed()) return cmd_ring(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    if (charvar->parsed()) return cmd_charvar(cfg);
    throw parameter_error("no subcommand given");
  } catch (const numeric_error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 2;
  } catch (const parameter_error& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
