#include "ncgkit/linalg.hpp"

#include <algorithm>
#include <numeric>

#include "ncgkit/errors.hpp"

namespace ncg {

Real vec_norm(const CVec& v) {
  Real s = 0;
  for (const auto& z : v) s += z.norm2();
  return sqrt(s);
}

Real vec_max_abs(const CVec& v) {
  Real m = 0;
  for (const auto& z : v) {
    Real a = z.abs();
    if (a > m) m = a;
  }
  return m;
}

Complex dot(const CVec& x, const CVec& y) {
  if (x.size() != y.size()) throw parameter_error("vector length mismatch");
  Complex s;
  for (std::size_t k = 0; k < x.size(); ++k) s += x[k].conj() * y[k];
  return s;
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix r(n, n);
  for (std::size_t i = 0; i < n; ++i) r.at(i, i) = Complex(1.0);
  return r;
}

CMatrix CMatrix::operator+(const CMatrix& o) const {
  if (r_ != o.r_ || c_ != o.c_) throw parameter_error("matrix shape mismatch");
  CMatrix r(r_, c_);
  for (std::size_t k = 0; k < m_.size(); ++k) r.m_[k] = m_[k] + o.m_[k];
  return r;
}

CMatrix CMatrix::operator-(const CMatrix& o) const {
  if (r_ != o.r_ || c_ != o.c_) throw parameter_error("matrix shape mismatch");
  CMatrix r(r_, c_);
  for (std::size_t k = 0; k < m_.size(); ++k) r.m_[k] = m_[k] - o.m_[k];
  return r;
}

CMatrix CMatrix::operator*(const CMatrix& o) const {
  if (c_ != o.r_) throw parameter_error("matrix shape mismatch");
  CMatrix r(r_, o.c_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t k = 0; k < c_; ++k) {
      const Complex& aik = at(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < o.c_; ++j) r.at(i, j) += aik * o.at(k, j);
    }
  return r;
}

CMatrix CMatrix::operator*(const Complex& s) const {
  CMatrix r(r_, c_);
  for (std::size_t k = 0; k < m_.size(); ++k) r.m_[k] = m_[k] * s;
  return r;
}

CMatrix CMatrix::adjoint() const {
  CMatrix r(c_, r_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) r.at(j, i) = at(i, j).conj();
  return r;
}

CVec CMatrix::apply(const CVec& x) const {
  if (x.size() != c_) throw parameter_error("vector length mismatch");
  CVec y(r_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) y[i] += at(i, j) * x[j];
  return y;
}

CVec CMatrix::column(std::size_t j) const {
  CVec y(r_);
  for (std::size_t i = 0; i < r_; ++i) y[i] = at(i, j);
  return y;
}

Real CMatrix::frobenius() const {
  Real s = 0;
  for (const auto& z : m_) s += z.norm2();
  return sqrt(s);
}

Real CMatrix::max_abs() const {
  Real m = 0;
  for (const auto& z : m_) {
    Real a = z.abs();
    if (a > m) m = a;
  }
  return m;
}

// ---------------------------------------------------------------------------
// One-sided Jacobi SVD.  Columns of the work matrix are rotated pairwise until
// mutually orthogonal; the accumulated rotations form V, the column norms the
// singular values, the normalized columns U.

SvdResult svd(const CMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  CMatrix w = a;
  CMatrix v = CMatrix::identity(n);

  Real eps = boost::multiprecision::ldexp(Real(1), -static_cast<int>(precision_bits()) + 8);
  Real eps2 = eps * eps;
  const int max_sweeps = 120;

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        // Gram data of the column pair.
        Real aii = 0, ajj = 0;
        Complex g;
        for (std::size_t k = 0; k < m; ++k) {
          aii += w.at(k, i).norm2();
          ajj += w.at(k, j).norm2();
          g += w.at(k, i).conj() * w.at(k, j);
        }
        if (g.norm2() <= eps2 * aii * ajj || g.is_zero()) continue;
        rotated = true;

        // Phase that makes the off-diagonal real, then a real Jacobi rotation.
        Real gabs = g.abs();
        Complex phase = g * (Real(1) / gabs);  // e^{iφ}
        Real tau = (ajj - aii) / (2 * gabs);
        Real t = (tau >= 0 ? Real(1) : Real(-1)) / (abs(tau) + sqrt(1 + tau * tau));
        Real c = 1 / sqrt(1 + t * t);
        Real s = t * c;

        for (std::size_t k = 0; k < m; ++k) {
          Complex wi = w.at(k, i);
          Complex wj = w.at(k, j) * phase.conj();
          w.at(k, i) = wi * c - wj * s;
          w.at(k, j) = wi * s + wj * c;
        }
        for (std::size_t k = 0; k < n; ++k) {
          Complex vi = v.at(k, i);
          Complex vj = v.at(k, j) * phase.conj();
          v.at(k, i) = vi * c - vj * s;
          v.at(k, j) = vi * s + vj * c;
        }
      }
    if (!rotated) break;
  }

  // Column norms, sorted descending.
  std::vector<Real> sig(n);
  for (std::size_t j = 0; j < n; ++j) {
    Real s2 = 0;
    for (std::size_t k = 0; k < m; ++k) s2 += w.at(k, j).norm2();
    sig[j] = sqrt(s2);
  }
  std::vector<std::size_t> ord(n);
  std::iota(ord.begin(), ord.end(), 0);
  std::stable_sort(ord.begin(), ord.end(),
                   [&](std::size_t x, std::size_t y) { return sig[x] > sig[y]; });

  SvdResult r;
  r.u = CMatrix(m, n);
  r.v = CMatrix(n, n);
  r.sigma.resize(n);
  for (std::size_t jj = 0; jj < n; ++jj) {
    std::size_t j = ord[jj];
    r.sigma[jj] = sig[j];
    if (!sig[j].is_zero())
      for (std::size_t k = 0; k < m; ++k) r.u.at(k, jj) = w.at(k, j) * (Real(1) / sig[j]);
    for (std::size_t k = 0; k < n; ++k) r.v.at(k, jj) = v.at(k, j);
  }
  return r;
}

std::size_t numeric_rank(const std::vector<Real>& sigma, const Real& tol) {
  if (sigma.empty()) return 0;
  Real cut = tol * sigma.front();
  std::size_t r = 0;
  for (const Real& s : sigma)
    if (s > cut) ++r;
  return r;
}

CMatrix nullspace(const SvdResult& s, const Real& tol) {
  std::size_t n = s.v.rows();
  std::size_t r = numeric_rank(s.sigma, tol);
  CMatrix k(n, n - r);
  for (std::size_t j = r; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) k.at(i, j - r) = s.v.at(i, j);
  return k;
}

CVec pinv_solve(const SvdResult& s, const CVec& b, const Real& tol) {
  std::size_t n = s.v.rows();
  std::size_t r = numeric_rank(s.sigma, tol);
  CVec x(n);
  for (std::size_t j = 0; j < r; ++j) {
    Complex c = dot(s.u.column(j), b) * (Real(1) / s.sigma[j]);
    for (std::size_t i = 0; i < n; ++i) x[i] += s.v.at(i, j) * c;
  }
  return x;
}

CVec least_singular_vector(const CMatrix& a) {
  SvdResult s = svd(a);
  return s.v.column(a.cols() - 1);
}

std::vector<Real> principal_angle_cosines(const CMatrix& b1, const CMatrix& b2) {
  SvdResult s = svd(b1.adjoint() * b2);
  // clamp to [0,1] against rounding
  for (Real& x : s.sigma)
    if (x > 1) x = 1;
  return s.sigma;
}

CMatrix random_unitary(std::size_t n, std::mt19937_64& rng) {
  CMatrix u = CMatrix::identity(n);
  std::uniform_real_distribution<double> ang(0.0, 6.283185307179586);
  for (std::size_t pass = 0; pass < 4 * n; ++pass) {
    std::size_t i = rng() % n, j = rng() % n;
    if (i == j) continue;
    Real a = Real(ang(rng));
    Real c = cos(a), s = sin(a);
    Complex phase = cis(Real(ang(rng)));
    for (std::size_t k = 0; k < n; ++k) {
      Complex ui = u.at(k, i);
      Complex uj = u.at(k, j) * phase;
      u.at(k, i) = ui * c - uj * s;
      u.at(k, j) = ui * s + uj * c;
    }
  }
  return u;
}

}  // namespace ncg
