#include "ncgkit/ring.hpp"

#include <json.hpp>

#include "ncgkit/errors.hpp"
#include "ncgkit/version.hpp"

namespace ncg {

GradedRing::GradedRing(const SL2Mat& g, const QuadIrr& theta, const Complex& tau, Real eps)
    : g_(g), theta_(theta), tau_(tau), eps_(std::move(eps)) {
  if (!(eps_ > 0)) throw parameter_error("eps must be positive");
  if (!(tau_.im < 0)) throw parameter_error("Im(tau) must be negative");
  const QuadraticReal& th = theta_.value();
  QuadraticReal fix = QuadraticReal(Rational(g_.c)) * th * th +
                      QuadraticReal(Rational(g_.d - g_.a)) * th - QuadraticReal(Rational(g_.b));
  if (!fix.is_zero()) throw parameter_error("theta is not fixed by g");
}

SL2Mat GradedRing::power(int n) const {
  if (n < 1) throw parameter_error("degree must be at least 1");
  SL2Mat p = g_;
  for (int k = 1; k < n; ++k) p = p * g_;
  return p;
}

long long GradedRing::dim(int n) const {
  SL2Mat p = power(n);
  if (p.c <= 0) throw parameter_error("degree must be positive");
  QuadraticReal pos =
      QuadraticReal(Rational(p.c)) * theta_.value() + QuadraticReal(Rational(p.d));
  if (!(pos.sign() > 0)) throw parameter_error("c*theta + d must be positive");
  return p.c;
}

const StructTensor& GradedRing::table(int n, int m) {
  auto key = std::make_pair(n, m);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  StructTensor t = struct_constants(power(n), power(m), theta_, tau_, eps_);
  return cache_.emplace(key, std::move(t)).first->second;
}

ErrVec basis_vector(long long dim, long long index) {
  if (index < 1 || index > dim) throw parameter_error("basis index out of range");
  ErrVec v(static_cast<std::size_t>(dim));
  v[static_cast<std::size_t>(index - 1)] = CertComplex{Complex(1.0), Real(0)};
  return v;
}

ErrVec ring_multiply(GradedRing& r, const ErrVec& u, int n, const ErrVec& v, int m) {
  const StructTensor& t = r.table(n, m);
  if (u.size() != static_cast<std::size_t>(t.c1()) ||
      v.size() != static_cast<std::size_t>(t.c2()))
    throw parameter_error("coefficient vector length mismatch");

  ErrVec w(static_cast<std::size_t>(t.c12()));
  const Real round_unit =
      boost::multiprecision::ldexp(Real(1), -static_cast<int>(precision_bits()) + 8);
  for (long long gamma = 1; gamma <= t.c12(); ++gamma) {
    Complex acc;
    Real err = 0, mag = 0;
    long long terms = 0;
    for (long long alpha = 1; alpha <= t.c1(); ++alpha) {
      const CertComplex& ua = u[static_cast<std::size_t>(alpha - 1)];
      if (ua.value.is_zero() && ua.err.is_zero()) continue;
      Real au = ua.value.abs();
      for (long long beta = 1; beta <= t.c2(); ++beta) {
        const CertComplex& vb = v[static_cast<std::size_t>(beta - 1)];
        if (vb.value.is_zero() && vb.err.is_zero()) continue;
        const CertComplex& c = t.at(gamma, alpha, beta);
        Real ac = c.value.abs(), av = vb.value.abs();
        acc += c.value * ua.value * vb.value;
        err += (ac + c.err) * (au + ua.err) * (av + vb.err) - ac * au * av;
        mag += ac * au * av;
        ++terms;
      }
    }
    err += Real(terms + 1) * round_unit * (mag + 1);
    w[static_cast<std::size_t>(gamma - 1)] = CertComplex{acc, err};
  }
  return w;
}

DefectReport associativity_defect(GradedRing& r, int n, int m, int k) {
  if (r.power(n).c <= 0 || r.power(m).c <= 0 || r.power(k).c <= 0) return {Real(0), Real(0)};

  long long dn = r.dim(n), dm = r.dim(m), dk = r.dim(k);
  Real worst = 0, cert = 0;
  for (long long alpha = 1; alpha <= dn; ++alpha)
    for (long long beta = 1; beta <= dm; ++beta) {
      ErrVec ab = ring_multiply(r, basis_vector(dn, alpha), n, basis_vector(dm, beta), m);
      for (long long gamma = 1; gamma <= dk; ++gamma) {
        ErrVec left = ring_multiply(r, ab, n + m, basis_vector(dk, gamma), k);
        ErrVec bc = ring_multiply(r, basis_vector(dm, beta), m, basis_vector(dk, gamma), k);
        ErrVec right = ring_multiply(r, basis_vector(dn, alpha), n, bc, m + k);
        for (std::size_t i = 0; i < left.size(); ++i) {
          Real d = (left[i].value - right[i].value).abs();
          Real e = left[i].err + right[i].err;
          if (d > worst) worst = d;
          if (e > cert) cert = e;
        }
      }
    }
  return {worst, cert};
}

QuadKernel quadratic_kernel(GradedRing& r, const Real& tol) {
  const StructTensor& t = r.table(1, 1);
  const long long c = t.c1(), c2 = t.c12();
  CMatrix a(static_cast<std::size_t>(c2), static_cast<std::size_t>(c * c));
  for (long long gamma = 1; gamma <= c2; ++gamma)
    for (long long alpha = 1; alpha <= c; ++alpha)
      for (long long beta = 1; beta <= c; ++beta)
        a.at(static_cast<std::size_t>(gamma - 1),
             static_cast<std::size_t>((alpha - 1) * c + (beta - 1))) =
            t.at(gamma, alpha, beta).value;

  SvdResult s = svd(a);
  QuadKernel q;
  q.rank = numeric_rank(s.sigma, tol);
  q.basis = nullspace(s, tol);
  q.kernel_dim = q.basis.cols();
  q.sigma = s.sigma;
  return q;
}

std::vector<std::pair<Real, std::size_t>> rank_sweep(const std::vector<Real>& sigma,
                                                     const Real& tol_lo, const Real& tol_hi,
                                                     int steps) {
  if (steps < 2 || !(tol_lo > 0) || !(tol_hi > tol_lo))
    throw parameter_error("bad tolerance sweep");
  std::vector<std::pair<Real, std::size_t>> out;
  Real llo = log(tol_lo), lhi = log(tol_hi);
  for (int i = 0; i < steps; ++i) {
    Real t = exp(llo + (lhi - llo) * i / (steps - 1));
    out.emplace_back(t, numeric_rank(sigma, t));
  }
  return out;
}

const char* ring_class_name(RingClass c) {
  switch (c) {
    case RingClass::degree_one: return "generated-in-degree-1";
    case RingClass::quadratic: return "quadratic";
    case RingClass::koszul: return "koszul";
    default: return "outside";
  }
}

RingClass classify_ring(const SL2Mat& g) {
  long long tr = g.a + g.d;
  // positive real eigenvalues at determinant one ⇔ trace ≥ 2
  if (tr < 2) return RingClass::outside;
  if (g.c >= tr + 2) return RingClass::koszul;
  if (g.c >= tr + 1) return RingClass::quadratic;
  if (g.c >= tr) return RingClass::degree_one;
  return RingClass::outside;
}

std::string presentation_export(GradedRing& r, const Real& tol, unsigned long long seed) {
  RingClass klass = classify_ring(r.g());
  if (klass != RingClass::quadratic && klass != RingClass::koszul)
    throw parameter_error(std::string("ring is not presented by quadratic relations "
                                      "(classifier: ") +
                          ring_class_name(klass) + ")");

  const long long c = r.dim(1);
  QuadKernel k = quadratic_kernel(r, tol);

  // Rebuild the map matrix for residual certificates.
  const StructTensor& t = r.table(1, 1);
  CMatrix a(static_cast<std::size_t>(t.c12()), static_cast<std::size_t>(c * c));
  Real entry_err = 0;
  for (long long gamma = 1; gamma <= t.c12(); ++gamma)
    for (long long alpha = 1; alpha <= c; ++alpha)
      for (long long beta = 1; beta <= c; ++beta) {
        const CertComplex& e = t.at(gamma, alpha, beta);
        a.at(static_cast<std::size_t>(gamma - 1),
             static_cast<std::size_t>((alpha - 1) * c + (beta - 1))) = e.value;
        if (e.err > entry_err) entry_err = e.err;
      }

  nlohmann::ordered_json j;
  j["generators"] = nlohmann::ordered_json::array();
  for (long long i = 1; i <= c; ++i) j["generators"].push_back("x" + std::to_string(i));

  j["relations"] = nlohmann::ordered_json::array();
  for (std::size_t col = 0; col < k.kernel_dim; ++col) {
    CVec v = k.basis.column(col);
    Real max_v = vec_max_abs(v), l1 = 0;
    for (const auto& z : v) l1 += z.abs();
    Real residual = vec_max_abs(a.apply(v)) + entry_err * l1;
    Real drop = tol * max_v;
    nlohmann::ordered_json rel = nlohmann::ordered_json::array();
    for (long long alpha = 1; alpha <= c; ++alpha)
      for (long long beta = 1; beta <= c; ++beta) {
        const Complex& z = v[static_cast<std::size_t>((alpha - 1) * c + (beta - 1))];
        if (z.abs() <= drop) continue;
        nlohmann::ordered_json term;
        term["i"] = alpha;
        term["j"] = beta;
        term["re"] = real_str(z.re);
        term["im"] = real_str(z.im);
        term["err"] = real_str(residual);
        rel.push_back(term);
      }
    j["relations"].push_back(rel);
  }

  j["params"] = {{"theta", r.theta().str()},
                 {"tau", {{"re", real_str(r.tau().re)}, {"im", real_str(r.tau().im)}}},
                 {"g", {{r.g().a, r.g().b}, {r.g().c, r.g().d}}},
                 {"epsilon", real_str(r.eps())},
                 {"tol", real_str(tol)},
                 {"classifier", ring_class_name(klass)}};
  j["provenance"] = {{"version", kVersion}, {"seed", seed}};
  return j.dump(2) + "\n";
}

}  // namespace ncg
