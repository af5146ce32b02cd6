#include "ncgkit/spheres.hpp"

#include <utility>

#include "ncgkit/errors.hpp"

namespace ncg {

namespace {

const Rational kHalf(1, 2);

// cos(πf) and i·sin(πf) as exact scalars: πf = 2π·(f/2).
UniScalar cos_pi(const Rational& f) {
  const Rational h = f / 2;
  return kHalf * (UniScalar::phase(h) + UniScalar::phase(-h));
}

UniScalar i_sin_pi(const Rational& f) {
  const Rational h = f / 2;
  return kHalf * (UniScalar::phase(h) - UniScalar::phase(-h));
}

// Cyclic completion of k ∈ {1,2,3}: k=1→(2,3), k=2→(3,1), k=3→(1,2).
std::pair<std::size_t, std::size_t> cyclic_pair(std::size_t k) {
  const std::size_t l = (k % 3) + 1;
  return {l, (l % 3) + 1};
}

}  // namespace

// ---------------------------------------------------------------------------
// 2-sphere
// ---------------------------------------------------------------------------

PresentedAlgebra s2_algebra() {
  GeneratorTable gt({"x", "y", "z"}, {0, 1, 2});
  RewriteSystem rs(gt);
  const UniScalar one(1);
  rs.add_swap(1, 0, one);
  rs.add_swap(2, 0, one);
  rs.add_swap(2, 1, one);
  const FreeElement x = FreeElement::gen(0), y = FreeElement::gen(1),
                    z = FreeElement::gen(2);
  rs.add_subst(Word{2, 2}, FreeElement::unit() - x * x - y * y);

  std::vector<FreeElement> relations;
  relations.push_back(x * y - y * x);
  relations.push_back(x * z - z * x);
  relations.push_back(y * z - z * y);
  relations.push_back(x * x + y * y + z * z - FreeElement::unit());
  return {std::move(rs), std::move(relations)};
}

AlgMatrix s2_projector() {
  const FreeElement x = FreeElement::gen(0), y = FreeElement::gen(1),
                    z = FreeElement::gen(2);
  const FreeElement iy = y * UniScalar::i();
  AlgMatrix e(2);
  e.at(0, 0) = FreeElement::unit() + z;
  e.at(0, 1) = x - iy;
  e.at(1, 0) = x + iy;
  e.at(1, 1) = FreeElement::unit() - z;
  return e * UniScalar(kHalf);
}

// ---------------------------------------------------------------------------
// Deformed 4-sphere; generator indices a=0, a*=1, b=2, b*=3, x=4.
// ---------------------------------------------------------------------------

PresentedAlgebra s4_algebra(const Rational& theta) {
  GeneratorTable gt({"a", "a*", "b", "b*", "x"}, {1, 0, 3, 2, 4});
  RewriteSystem rs(gt);
  const UniScalar one(1);
  const UniScalar lam = UniScalar::phase(theta);
  const UniScalar lam_conj = UniScalar::phase(-theta);

  rs.add_swap(1, 0, one);            // a*a = aa*
  rs.add_swap(3, 2, one);            // b*b = bb*
  rs.add_swap(2, 0, lam_conj);       // ba = λ̄·ab        (from ab = λ·ba)
  rs.add_swap(2, 1, lam);            // ba* = λ·a*b       (from a*b = λ̄·ba*)
  rs.add_swap(3, 0, lam);            // b*a = λ·ab*       (adjoint of the above)
  rs.add_swap(3, 1, lam_conj);       // b*a* = λ̄·a*b*    (adjoint of ab = λ·ba)
  for (std::uint32_t g = 0; g < 4; ++g) rs.add_swap(4, g, one);  // x central

  const FreeElement a = FreeElement::gen(0), as = FreeElement::gen(1),
                    b = FreeElement::gen(2), bs = FreeElement::gen(3),
                    x = FreeElement::gen(4);
  rs.add_subst(Word{4, 4}, FreeElement::unit() - a * as - b * bs);

  std::vector<FreeElement> relations;
  relations.push_back(as * a - a * as);
  relations.push_back(bs * b - b * bs);
  relations.push_back(a * b - (b * a) * lam);
  relations.push_back(as * b - (b * as) * lam_conj);
  relations.push_back(x * a - a * x);
  relations.push_back(x * b - b * x);
  relations.push_back(x * x + as * a + b * bs - FreeElement::unit());
  return {std::move(rs), std::move(relations)};
}

AlgMatrix s4_projector(const Rational& theta) {
  const UniScalar lam = UniScalar::phase(theta);
  const UniScalar lam_conj = UniScalar::phase(-theta);
  const FreeElement a = FreeElement::gen(0), as = FreeElement::gen(1),
                    b = FreeElement::gen(2), bs = FreeElement::gen(3),
                    x = FreeElement::gen(4);
  const FreeElement one = FreeElement::unit();

  AlgMatrix p(4);
  p.at(0, 0) = one + x;
  p.at(0, 2) = a;
  p.at(0, 3) = b;
  p.at(1, 1) = one + x;
  p.at(1, 2) = bs * (-lam);
  p.at(1, 3) = as;
  p.at(2, 0) = as;
  p.at(2, 1) = b * (-lam_conj);
  p.at(2, 2) = one - x;
  p.at(3, 0) = bs;
  p.at(3, 1) = a;
  p.at(3, 3) = one - x;
  return p * UniScalar(kHalf);
}

// ---------------------------------------------------------------------------
// Torus parameters and the star-structure matrix
// ---------------------------------------------------------------------------

PhiParams::PhiParams(const Rational& f1, const Rational& f2, const Rational& f3)
    : exact_(true), r_{rat_mod1(f1), rat_mod1(f2), rat_mod1(f3)} {
  for (std::size_t k = 0; k < 3; ++k) x_[k] = rat_to_real(r_[k]);
}

PhiParams::PhiParams(const Real& f1, const Real& f2, const Real& f3)
    : exact_(false), x_{f1, f2, f3} {
  for (auto& v : x_) {
    Real f = floor(v);
    v -= f;
  }
}

const Rational& PhiParams::frac(std::size_t k) const {
  if (!exact_) throw parameter_error("exact torus parameters required");
  return r_.at(k);
}

Real PhiParams::value(std::size_t k) const { return x_.at(k); }

LambdaMat LambdaMat::from_phi(const PhiParams& phi) {
  if (phi.exact()) {
    ExactEntries m{};
    m[0][0] = UniScalar(1);
    for (std::size_t k = 1; k < 4; ++k)
      m[k][k] = UniScalar::phase(-phi.frac(k - 1));
    return exact(std::move(m));
  }
  CMatrix m(4, 4);
  m.at(0, 0) = Complex(Real(1), Real(0));
  const Real two_pi = 2 * pi_value();
  for (std::size_t k = 1; k < 4; ++k) {
    Real arg = -two_pi * phi.value(k - 1);
    m.at(k, k) = cis(arg);
  }
  return numeric(std::move(m));
}

LambdaMat LambdaMat::exact(ExactEntries m) {
  LambdaMat l;
  l.exact_ = true;
  l.e_ = std::move(m);
  return l;
}

LambdaMat LambdaMat::numeric(CMatrix m) {
  if (m.rows() != 4 || m.cols() != 4)
    throw parameter_error("star-structure matrix must be 4x4");
  LambdaMat l;
  l.exact_ = false;
  l.n_ = std::move(m);
  return l;
}

const UniScalar& LambdaMat::at(std::size_t i, std::size_t j) const {
  if (!exact_)
    throw parameter_error("exact star-structure matrix required");
  return e_.at(i).at(j);
}

CMatrix LambdaMat::to_numeric() const {
  if (!exact_) return n_;
  CMatrix m(4, 4);
  const Real theta0(0);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) m.at(i, j) = e_[i][j].eval(theta0);
  return m;
}

bool LambdaMat::unitary_exact() const {
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      UniScalar s;
      for (std::size_t k = 0; k < 4; ++k) s += at(i, k) * at(j, k).star();
      if (s != UniScalar(i == j ? 1 : 0)) return false;
    }
  return true;
}

bool LambdaMat::symmetric_exact() const {
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j)
      if (at(i, j) != at(j, i)) return false;
  return true;
}

Real LambdaMat::unitarity_residual() const {
  const CMatrix m = to_numeric();
  return (m * m.adjoint() - CMatrix::identity(4)).max_abs();
}

Real LambdaMat::symmetry_residual() const {
  const CMatrix m = to_numeric();
  Real worst(0);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) {
      Real d = (m.at(i, j) - m.at(j, i)).abs();
      if (d > worst) worst = d;
    }
  return worst;
}

void LambdaMat::require_unitary_symmetric(const Real& tol) const {
  if (exact_) {
    if (!unitary_exact())
      throw parameter_error("star-structure matrix is not unitary");
    if (!symmetric_exact())
      throw parameter_error("star-structure matrix is not symmetric");
    return;
  }
  if (unitarity_residual() > tol)
    throw parameter_error("star-structure matrix is not unitary");
  if (symmetry_residual() > tol)
    throw parameter_error("star-structure matrix is not symmetric");
}

void LambdaMat::require_unitary_symmetric() const {
  require_unitary_symmetric(Real("1e-30"));
}

// ---------------------------------------------------------------------------
// Plane relations
// ---------------------------------------------------------------------------

GeneratorTable z_table() {
  return GeneratorTable({"z0", "z1", "z2", "z3", "z0*", "z1*", "z2*", "z3*"},
                        {4, 5, 6, 7, 0, 1, 2, 3});
}

GeneratorTable x_table() {
  return GeneratorTable({"x0", "x1", "x2", "x3"}, {0, 1, 2, 3});
}

std::vector<FreeElement> plane_relations_raw() {
  auto mono = [](std::uint32_t g, std::uint32_t h) {
    return FreeElement::monomial(Word{g, h});
  };
  std::vector<FreeElement> rels;
  for (std::uint32_t k = 1; k <= 3; ++k) {
    const auto [lz, mz] = cyclic_pair(k);
    const auto l = static_cast<std::uint32_t>(lz);
    const auto m = static_cast<std::uint32_t>(mz);
    rels.push_back(mono(k, 4) - mono(0, k + 4) + mono(l, m + 4) - mono(m, l + 4));
  }
  for (std::uint32_t k = 1; k <= 3; ++k) {
    const auto [lz, mz] = cyclic_pair(k);
    const auto l = static_cast<std::uint32_t>(lz);
    const auto m = static_cast<std::uint32_t>(mz);
    rels.push_back(mono(4, k) - mono(k + 4, 0) + mono(l + 4, m) - mono(m + 4, l));
  }
  return rels;
}

FreeElement fold_stars(const FreeElement& f, const LambdaMat& lambda) {
  if (!lambda.is_exact())
    throw parameter_error("exact star-structure matrix required for folding");
  FreeElement out;
  for (const auto& [w, c] : f.terms()) {
    FreeElement prod = FreeElement::unit(c);
    for (const std::uint32_t g : w) {
      if (g < 4) {
        prod *= FreeElement::gen(g);
        continue;
      }
      FreeElement sub;
      for (std::uint32_t nu = 0; nu < 4; ++nu) {
        const UniScalar& lam = lambda.at(g - 4, nu);
        if (!lam.is_zero()) sub += FreeElement::gen(nu, lam);
      }
      prod *= sub;
    }
    out += prod;
  }
  return out;
}

TensorElement fold_stars(const TensorElement& t, const LambdaMat& lambda) {
  TensorElement out(t.arity());
  for (const auto& [ws, c] : t.terms()) {
    std::vector<FreeElement> factors;
    factors.reserve(ws.size());
    for (const Word& w : ws)
      factors.push_back(fold_stars(FreeElement::monomial(w), lambda));
    out += TensorElement::product(factors) * c;
  }
  return out;
}

QuadraticRelationSet r4_relations(const LambdaMat& lambda) {
  if (!lambda.is_exact())
    throw parameter_error("exact star-structure matrix required for relations");
  lambda.require_unitary_symmetric();
  QuadraticRelationSet set;
  const std::vector<FreeElement> raw = plane_relations_raw();
  set.rels.reserve(raw.size());
  for (const FreeElement& r : raw) set.rels.push_back(fold_stars(r, lambda));
  return set;
}

S3Presentation s3_relations(const LambdaMat& lambda) {
  S3Presentation pres{r4_relations(lambda), {}};
  FreeElement sphere;
  for (std::uint32_t mu = 0; mu < 4; ++mu)
    sphere += FreeElement::monomial(Word{mu, mu + 4});
  sphere -= FreeElement::unit();
  pres.sphere = fold_stars(sphere, lambda);
  return pres;
}

std::vector<FreeElement> hermitian_relations(const PhiParams& phi) {
  if (!phi.exact())
    throw parameter_error("exact torus parameters required for relations");
  auto f = [&phi](std::size_t idx) {  // φ_idx with φ₀ = 0
    return idx == 0 ? Rational(0) : phi.frac(idx - 1);
  };
  auto mono = [](std::uint32_t g, std::uint32_t h) {
    return FreeElement::monomial(Word{g, h});
  };
  std::vector<FreeElement> rels(6);
  for (std::uint32_t k = 1; k <= 3; ++k) {
    const auto [lz, mz] = cyclic_pair(k);
    const auto l = static_cast<std::uint32_t>(lz);
    const auto m = static_cast<std::uint32_t>(mz);
    const FreeElement comm0k = mono(0, k) - mono(k, 0);
    const FreeElement anti0k = mono(0, k) + mono(k, 0);
    const FreeElement commlm = mono(l, m) - mono(m, l);
    const FreeElement antilm = mono(l, m) + mono(m, l);
    rels[k - 1] = comm0k * cos_pi(f(k)) - antilm * i_sin_pi(f(l) - f(m));
    rels[2 + k] = commlm * cos_pi(f(l) - f(m)) + anti0k * i_sin_pi(f(k));
  }
  return rels;
}

FreeElement hermitian_to_z(const FreeElement& f, const PhiParams& phi) {
  if (!phi.exact())
    throw parameter_error("exact torus parameters required for substitution");
  FreeElement out;
  for (const auto& [w, c] : f.terms()) {
    UniScalar coeff = c;
    for (const std::uint32_t g : w) {
      if (g >= 4)
        throw parameter_error("substitution expects Hermitian generators only");
      if (g > 0) coeff *= UniScalar::phase(-phi.frac(g - 1) / 2);
    }
    out += FreeElement::monomial(w, coeff);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pauli expansion
// ---------------------------------------------------------------------------

namespace {

using Mat2 = std::array<std::array<UniScalar, 2>, 2>;

const std::array<Mat2, 3>& sigma_matrices() {
  static const std::array<Mat2, 3> sigmas = [] {
    const UniScalar one(1), im = UniScalar::i();
    std::array<Mat2, 3> s{};
    s[0][0][1] = one;
    s[0][1][0] = one;
    s[1][0][1] = -im;
    s[1][1][0] = im;
    s[2][0][0] = one;
    s[2][1][1] = -one;
    return s;
  }();
  return sigmas;
}

const std::array<Mat2, 4>& tau_matrices() {
  static const std::array<Mat2, 4> taus = [] {
    const UniScalar im = UniScalar::i();
    std::array<Mat2, 4> t{};
    t[0][0][0] = UniScalar(1);
    t[0][1][1] = UniScalar(1);
    for (std::size_t k = 0; k < 3; ++k)
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
          t[k + 1][i][j] = im * sigma_matrices()[k][i][j];
    return t;
  }();
  return taus;
}

// σ_k-component of a 2×2 matrix M = c₀·1 + Σ c_k σ_k over the free algebra:
// c_k = ½ Σ_{ij} (σ_k)_{ji} M_{ij}.
FreeElement sigma_component(const AlgMatrix& m, std::size_t k) {
  const Mat2& s = sigma_matrices().at(k - 1);
  FreeElement out;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      if (s[j][i].is_zero()) continue;
      out += m.at(i, j) * (s[j][i] * UniScalar(kHalf));
    }
  return out;
}

}  // namespace

UniScalar tau_entry(std::size_t mu, std::size_t i, std::size_t j) {
  if (mu > 3 || i > 1 || j > 1) throw parameter_error("tau index out of range");
  return tau_matrices()[mu][i][j];
}

UniScalar sigma_entry(std::size_t k, std::size_t i, std::size_t j) {
  if (k < 1 || k > 3 || i > 1 || j > 1)
    throw parameter_error("sigma index out of range");
  return sigma_matrices()[k - 1][i][j];
}

AlgMatrix pauli_unitary() {
  AlgMatrix u(2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      FreeElement entry;
      for (std::uint32_t mu = 0; mu < 4; ++mu) {
        const UniScalar t = tau_entry(mu, i, j);
        if (!t.is_zero()) entry += FreeElement::gen(mu, t);
      }
      u.at(i, j) = entry;
    }
  return u;
}

AlgMatrix unitary_matrix(const LambdaMat& lambda) {
  lambda.require_unitary_symmetric();
  return pauli_unitary();
}

UnitarityExpansion unitarity_expansion(const LambdaMat& lambda) {
  lambda.require_unitary_symmetric();
  const GeneratorTable gt = z_table();
  const AlgMatrix u = pauli_unitary();
  const AlgMatrix us = u.adjoint(gt);
  const AlgMatrix uu = u * us;
  const AlgMatrix su = us * u;
  UnitarityExpansion out;
  for (std::size_t k = 1; k <= 3; ++k) {
    out.uu_star[k - 1] = sigma_component(uu, k);
    out.star_uu[k - 1] = sigma_component(su, k);
  }
  return out;
}

TensorElement ch_half_tensor(const LambdaMat& lambda) {
  return fold_stars(chern_odd(pauli_unitary(), 0, z_table()), lambda);
}

TensorElement ch32_tensor(const LambdaMat& lambda) {
  return fold_stars(chern_odd(pauli_unitary(), 1, z_table()), lambda);
}

// ---------------------------------------------------------------------------
// Multilinearization and the bilinear system
// ---------------------------------------------------------------------------

CoeffMat4 multilinearize(const FreeElement& rel) {
  CoeffMat4 out;
  for (const auto& [w, c] : rel.terms()) {
    if (w.size() != 2)
      throw parameter_error("multilinearization expects a homogeneous degree-2 element");
    if (w[0] > 3 || w[1] > 3)
      throw parameter_error("multilinearization expects Hermitian generators only");
    out.m[w[0]][w[1]] += c;
  }
  return out;
}

BilinearSystem build_bilinear_system(const PhiParams& phi) {
  BilinearSystem sys;
  if (phi.exact()) {
    sys.exact = true;
    const std::vector<FreeElement> rels = hermitian_relations(phi);
    const Real theta0(0);
    for (const FreeElement& r : rels) {
      CoeffMat4 cm = multilinearize(r);
      CMatrix b(4, 4);
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) b.at(i, j) = cm.m[i][j].eval(theta0);
      sys.exact_b.push_back(std::move(cm));
      sys.b.push_back(std::move(b));
    }
    return sys;
  }

  sys.exact = false;
  const Real pi = pi_value();
  auto f = [&phi, &pi](std::size_t idx) -> Real {
    return idx == 0 ? Real(0) : Real(pi * phi.value(idx - 1));
  };
  sys.b.assign(6, CMatrix(4, 4));
  for (std::size_t k = 1; k <= 3; ++k) {
    const auto [l, m] = cyclic_pair(k);
    const Real ck = cos(f(k)), sk = sin(f(k));
    const Real dlm = f(l) - f(m);
    const Real clm = cos(dlm), slm = sin(dlm);
    CMatrix& b1 = sys.b[k - 1];
    b1.at(0, k) += Complex(ck, Real(0));
    b1.at(k, 0) -= Complex(ck, Real(0));
    b1.at(l, m) -= Complex(Real(0), slm);
    b1.at(m, l) -= Complex(Real(0), slm);
    CMatrix& b2 = sys.b[2 + k];
    b2.at(l, m) += Complex(clm, Real(0));
    b2.at(m, l) -= Complex(clm, Real(0));
    b2.at(0, k) += Complex(Real(0), sk);
    b2.at(k, 0) += Complex(Real(0), sk);
  }
  return sys;
}

CMatrix pencil_matrix(const BilinearSystem& sys, const CVec& u) {
  if (u.size() != 4) throw parameter_error("pencil expects a point in C^4");
  CMatrix m(sys.b.size(), 4);
  for (std::size_t i = 0; i < sys.b.size(); ++i)
    for (std::size_t nu = 0; nu < 4; ++nu) {
      Complex acc;
      for (std::size_t mu = 0; mu < 4; ++mu) acc += u[mu] * sys.b[i].at(mu, nu);
      m.at(i, nu) = acc;
    }
  return m;
}

CMatrix pencil_matrix_right(const BilinearSystem& sys, const CVec& v) {
  if (v.size() != 4) throw parameter_error("pencil expects a point in C^4");
  CMatrix m(sys.b.size(), 4);
  for (std::size_t i = 0; i < sys.b.size(); ++i)
    for (std::size_t mu = 0; mu < 4; ++mu) {
      Complex acc;
      for (std::size_t nu = 0; nu < 4; ++nu) acc += sys.b[i].at(mu, nu) * v[nu];
      m.at(i, mu) = acc;
    }
  return m;
}

namespace {

CVec normalize_projective(CVec v) {
  std::size_t arg = 0;
  Real best(0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    Real a = v[i].abs();
    if (a > best) {
      best = a;
      arg = i;
    }
  }
  if (best.is_zero()) throw parameter_error("cannot normalize the zero vector");
  const Complex phase = v[arg].conj() / Complex(best);
  for (auto& z : v) z *= phase;
  const Real n = vec_norm(v);
  for (auto& z : v) z = z * (Real(1) / n);
  return v;
}

}  // namespace

Real rank_residual(const BilinearSystem& sys, const CVec& u) {
  const SvdResult s = svd(pencil_matrix(sys, u));
  if (s.sigma.front().is_zero()) return Real(0);
  return Real(s.sigma.back() / s.sigma.front());
}

Real bilinear_residual(const BilinearSystem& sys, const CVec& u, const CVec& v) {
  const CVec un = normalize_projective(u);
  const CVec vn = normalize_projective(v);
  const CVec fu = pencil_matrix(sys, un).apply(vn);
  return vec_max_abs(fu);
}

std::size_t char_variety_rank(const CVec& u, const BilinearSystem& sys,
                              const Real& rel_tol) {
  if (vec_norm(u).is_zero()) throw parameter_error("rank expects a nonzero point");
  const SvdResult s = svd(pencil_matrix(sys, u));
  return numeric_rank(s.sigma, rel_tol);
}

std::size_t char_variety_rank(const CVec& u, const BilinearSystem& sys) {
  return char_variety_rank(u, sys, Real("1e-8"));
}

std::optional<CVec> sigma_map(const CVec& u, const BilinearSystem& sys,
                              const Real& rel_tol) {
  if (vec_norm(u).is_zero()) throw parameter_error("sigma expects a nonzero point");
  const SvdResult s = svd(pencil_matrix(sys, u));
  if (numeric_rank(s.sigma, rel_tol) != 3) return std::nullopt;
  const CMatrix kern = nullspace(s, rel_tol);
  if (kern.cols() != 1) return std::nullopt;
  return normalize_projective(kern.column(0));
}

std::optional<CVec> sigma_map(const CVec& u, const BilinearSystem& sys) {
  return sigma_map(u, sys, Real("1e-8"));
}

// ---------------------------------------------------------------------------
// Locus search
// ---------------------------------------------------------------------------

namespace {

CVec random_cvec4(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  CVec v(4);
  for (auto& z : v) {
    const double re = d(rng);
    const double im = d(rng);
    z = Complex(re, im);
  }
  return v;
}

Complex det3(const std::array<Complex, 9>& m) {
  return m[0] * (m[4] * m[8] - m[5] * m[7]) -
         m[1] * (m[3] * m[8] - m[5] * m[6]) +
         m[2] * (m[3] * m[7] - m[4] * m[6]);
}

// Determinant of the 4 selected rows of a 6×4 matrix (Laplace along row 0).
Complex det4_rows(const CMatrix& m, const std::array<int, 4>& rows) {
  Complex acc;
  int sign = 1;
  for (std::size_t skip = 0; skip < 4; ++skip) {
    std::array<Complex, 9> sub;
    std::size_t pos = 0;
    for (std::size_t r = 1; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c) {
        if (c == skip) continue;
        sub[pos++] = m.at(static_cast<std::size_t>(rows[r]), c);
      }
    const Complex term = m.at(static_cast<std::size_t>(rows[0]), skip) * det3(sub);
    acc += (sign > 0) ? term : -term;
    sign = -sign;
  }
  return acc;
}

// Monic-normalized roots of Σ c_k t^k via Durand–Kerner at working precision.
std::vector<Complex> poly_roots(std::vector<Complex> c) {
  Real maxc(0);
  for (const Complex& z : c) {
    Real a = z.abs();
    if (a > maxc) maxc = a;
  }
  if (maxc.is_zero()) return {};
  const Real drop = Real(maxc * Real("1e-30"));
  while (c.size() > 1 && c.back().abs() < drop) c.pop_back();
  const std::size_t deg = c.size() - 1;
  if (deg < 1) return {};
  const Complex lead = c.back();
  for (auto& z : c) z = z / lead;

  std::vector<Complex> roots(deg);
  const Complex seed(0.4, 0.9);
  Complex p(1.0, 0.0);
  for (auto& r : roots) {
    p *= seed;
    r = p;
  }
  const Real small = Real("1e-34");
  for (int it = 0; it < 200; ++it) {
    bool converged = true;
    for (std::size_t k = 0; k < deg; ++k) {
      Complex num;  // Horner evaluation of the monic polynomial at roots[k]
      num = Complex(Real(1), Real(0));
      for (std::size_t j = deg; j-- > 0;) num = num * roots[k] + c[j];
      Complex den(Real(1), Real(0));
      for (std::size_t j = 0; j < deg; ++j)
        if (j != k) den *= roots[k] - roots[j];
      if (den.abs() < small) {
        roots[k] += Complex(0.01, 0.007);
        converged = false;
        continue;
      }
      const Complex delta = num / den;
      roots[k] -= delta;
      if (delta.abs() > small) converged = false;
    }
    if (converged) break;
  }
  return roots;
}

// Coefficients of the degree-≤4 polynomial t ↦ det(rows of M(p+tq)) by Newton
// interpolation at t ∈ {0, 1, −1, 2, −2}.
std::vector<Complex> minor_polynomial(const BilinearSystem& sys, const CVec& p,
                                      const CVec& q,
                                      const std::array<int, 4>& rows) {
  const std::array<double, 5> nodes{0.0, 1.0, -1.0, 2.0, -2.0};
  std::array<Complex, 5> t;
  std::array<Complex, 5> y;
  for (std::size_t n = 0; n < 5; ++n) {
    t[n] = Complex(nodes[n], 0.0);
    CVec u(4);
    for (std::size_t i = 0; i < 4; ++i) u[i] = p[i] + t[n] * q[i];
    y[n] = det4_rows(pencil_matrix(sys, u), rows);
  }
  std::array<Complex, 5> dd = y;  // divided differences
  for (std::size_t j = 1; j < 5; ++j)
    for (std::size_t i = 4; i >= j; --i)
      dd[i] = (dd[i] - dd[i - 1]) / (t[i] - t[i - j]);
  // Expand the Newton form to monomial coefficients.
  std::vector<Complex> mono{dd[4]};
  for (std::size_t k = 4; k-- > 0;) {
    std::vector<Complex> next(mono.size() + 1);
    for (std::size_t i = 0; i < mono.size(); ++i) {
      next[i + 1] += mono[i];
      next[i] -= mono[i] * t[k];
    }
    next[0] += dd[k];
    mono = std::move(next);
  }
  return mono;
}

constexpr std::array<std::array<int, 4>, 15> kRowSubsets{{
    {0, 1, 2, 3}, {0, 1, 2, 4}, {0, 1, 2, 5}, {0, 1, 3, 4}, {0, 1, 3, 5},
    {0, 1, 4, 5}, {0, 2, 3, 4}, {0, 2, 3, 5}, {0, 2, 4, 5}, {0, 3, 4, 5},
    {1, 2, 3, 4}, {1, 2, 3, 5}, {1, 2, 4, 5}, {1, 3, 4, 5}, {2, 3, 4, 5},
}};

}  // namespace

RefineResult refine_variety_point(const BilinearSystem& sys, const CVec& u0,
                                  unsigned alt_iters, unsigned gn_iters) {
  CVec u = normalize_projective(u0);
  CVec v = normalize_projective(least_singular_vector(pencil_matrix(sys, u)));
  for (unsigned it = 0; it < alt_iters; ++it) {
    u = normalize_projective(least_singular_vector(pencil_matrix_right(sys, v)));
    v = normalize_projective(least_singular_vector(pencil_matrix(sys, u)));
  }
  const Real gn_tol("1e-28");
  for (unsigned it = 0; it < gn_iters; ++it) {
    CVec f(6);
    const CMatrix mu = pencil_matrix(sys, u);   // rows uᵀB_i
    const CMatrix nv = pencil_matrix_right(sys, v);  // rows (B_i v)ᵀ
    CMatrix jac(6, 8);
    for (std::size_t i = 0; i < 6; ++i) {
      Complex fi;
      for (std::size_t nu = 0; nu < 4; ++nu) fi += mu.at(i, nu) * v[nu];
      f[i] = -fi;
      for (std::size_t mu_i = 0; mu_i < 4; ++mu_i) jac.at(i, mu_i) = nv.at(i, mu_i);
      for (std::size_t nu = 0; nu < 4; ++nu) jac.at(i, 4 + nu) = mu.at(i, nu);
    }
    const CVec step = pinv_solve(svd(jac), f, gn_tol);
    for (std::size_t k = 0; k < 4; ++k) {
      u[k] += step[k];
      v[k] += step[4 + k];
    }
    u = normalize_projective(u);
    v = normalize_projective(v);
  }
  return {u, v, rank_residual(sys, u)};
}

std::optional<CVec> find_variety_point(const BilinearSystem& sys,
                                       std::mt19937_64& rng,
                                       const VarietyPointOptions& opt) {
  for (unsigned attempt = 0; attempt < opt.attempts; ++attempt) {
    const CVec p = random_cvec4(rng);
    const CVec q = random_cvec4(rng);
    const auto& rows = kRowSubsets[rng() % kRowSubsets.size()];
    const std::vector<Complex> poly = minor_polynomial(sys, p, q, rows);
    const std::vector<Complex> roots = poly_roots(poly);
    for (const Complex& t : roots) {
      CVec u(4);
      for (std::size_t i = 0; i < 4; ++i) u[i] = p[i] + t * q[i];
      if (vec_norm(u) < Real("1e-12")) continue;
      const RefineResult r =
          refine_variety_point(sys, u, opt.alt_iters, opt.gn_iters);
      if (r.residual < opt.accept) return r.u;
    }
  }
  return std::nullopt;
}

OrbitReport sigma_orbit_check(const CVec& u0, const BilinearSystem& sys,
                              unsigned steps, const Real& rel_tol) {
  OrbitReport rep;
  CVec u = normalize_projective(u0);
  rep.points.push_back(u);
  rep.residuals.push_back(rank_residual(sys, u));
  const Real parallel_gap("1e-12");
  for (unsigned step = 0; step < steps; ++step) {
    const std::optional<CVec> v = sigma_map(u, sys, rel_tol);
    if (!v) {
      rep.stayed_on_locus = false;
      break;
    }
    // Measure before any refinement: this is the evidence that the
    // correspondence maps the locus into itself.
    rep.points.push_back(*v);
    rep.residuals.push_back(rank_residual(sys, *v));
    Real cosangle = dot(u, *v).abs();  // both unit vectors
    if (cosangle > Real(1) - parallel_gap) rep.fixed_point = true;
    u = refine_variety_point(sys, *v, 8, 8).u;
  }
  rep.worst = Real(0);
  for (const Real& r : rep.residuals)
    if (r > rep.worst) rep.worst = r;
  return rep;
}

std::vector<RankSample> sample_char_variety(const BilinearSystem& sys,
                                            std::size_t count,
                                            std::mt19937_64& rng,
                                            const Real& rel_tol) {
  std::vector<RankSample> samples;
  samples.reserve(count);
  for (std::size_t n = 0; n < count; ++n) {
    const CVec u = normalize_projective(random_cvec4(rng));
    const SvdResult s = svd(pencil_matrix(sys, u));
    samples.push_back({u, numeric_rank(s.sigma, rel_tol), s.sigma.back(),
                       s.sigma.front()});
  }
  return samples;
}

// ---------------------------------------------------------------------------
// Exact linear algebra
// ---------------------------------------------------------------------------

std::size_t exact_rank(std::vector<std::vector<UniScalar>> rows) {
  if (rows.empty()) return 0;
  const std::size_t ncols = rows.front().size();
  for (const auto& r : rows)
    if (r.size() != ncols) throw parameter_error("ragged matrix");
  std::size_t rank = 0;
  for (std::size_t col = 0; col < ncols && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col].is_zero()) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t j = rank + 1; j < rows.size(); ++j) {
      if (rows[j][col].is_zero()) continue;
      const UniScalar f = rows[j][col];
      const UniScalar p = rows[rank][col];
      for (std::size_t c = col; c < ncols; ++c)
        rows[j][c] = rows[j][c] * p - rows[rank][c] * f;
    }
    ++rank;
  }
  return rank;
}

bool exact_span_equal(const std::vector<FreeElement>& a,
                      const std::vector<FreeElement>& b) {
  std::map<Word, std::size_t> cols;
  auto index_words = [&cols](const std::vector<FreeElement>& list) {
    for (const FreeElement& f : list)
      for (const auto& [w, c] : f.terms()) cols.emplace(w, cols.size());
  };
  index_words(a);
  index_words(b);
  auto to_rows = [&cols](const std::vector<FreeElement>& list) {
    std::vector<std::vector<UniScalar>> rows;
    rows.reserve(list.size());
    for (const FreeElement& f : list) {
      std::vector<UniScalar> row(cols.size());
      for (const auto& [w, c] : f.terms()) row[cols.at(w)] = c;
      rows.push_back(std::move(row));
    }
    return rows;
  };
  const auto rows_a = to_rows(a);
  const auto rows_b = to_rows(b);
  std::vector<std::vector<UniScalar>> rows_ab = rows_a;
  rows_ab.insert(rows_ab.end(), rows_b.begin(), rows_b.end());
  const std::size_t rank_ab = exact_rank(rows_ab);
  return exact_rank(rows_a) == rank_ab && exact_rank(rows_b) == rank_ab;
}

}  // namespace ncg
