#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "ncgkit/numeric.hpp"

namespace ncg {

using CVec = std::vector<Complex>;

Real vec_norm(const CVec& v);
Real vec_max_abs(const CVec& v);
Complex dot(const CVec& x, const CVec& y);  // conjugate-linear in the first slot

/// Dense complex matrix at working precision (row-major).
class CMatrix {
 public:
  CMatrix() : r_(0), c_(0) {}
  CMatrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), m_(rows * cols) {}
  static CMatrix identity(std::size_t n);

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  Complex& at(std::size_t i, std::size_t j) { return m_[i * c_ + j]; }
  const Complex& at(std::size_t i, std::size_t j) const { return m_[i * c_ + j]; }

  CMatrix operator+(const CMatrix& o) const;
  CMatrix operator-(const CMatrix& o) const;
  CMatrix operator*(const CMatrix& o) const;
  CMatrix operator*(const Complex& s) const;
  CMatrix adjoint() const;

  CVec apply(const CVec& x) const;
  CVec column(std::size_t j) const;
  Real frobenius() const;
  Real max_abs() const;

 private:
  std::size_t r_, c_;
  std::vector<Complex> m_;
};

/// A = U·diag(sigma)·V*, sigma descending.  U is m×n with orthonormal columns
/// wherever sigma > 0 (zero columns otherwise); V is n×n unitary.  Computed by
/// one-sided Jacobi rotations on the columns, which also handles wide and
/// rank-deficient inputs (zero singular values simply appear).
struct SvdResult {
  CMatrix u;
  std::vector<Real> sigma;
  CMatrix v;
};

SvdResult svd(const CMatrix& a);

/// Count of singular values above tol·max(sigma).
std::size_t numeric_rank(const std::vector<Real>& sigma, const Real& tol);

/// Orthonormal basis (columns) of the numerical kernel at relative tol.
CMatrix nullspace(const SvdResult& s, const Real& tol);

/// Minimum-norm least-squares solve via the pseudoinverse at relative tol.
CVec pinv_solve(const SvdResult& s, const CVec& b, const Real& tol);

/// Right singular vector attached to the smallest singular value.
CVec least_singular_vector(const CMatrix& a);

/// Cosines of the principal angles between the column spans of two matrices
/// with orthonormal columns (descending; 1 = shared direction).
std::vector<Real> principal_angle_cosines(const CMatrix& b1, const CMatrix& b2);

/// Haar-ish random unitary (product of random phased rotations); exact
/// unitarity up to rounding. Deterministic for a fixed generator state.
CMatrix random_unitary(std::size_t n, std::mt19937_64& rng);

}  // namespace ncg
