#include "formkit/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace formkit {

void Tolerance::validate() const {
  if (!(rank_rel > 0.0) || !(eq_abs > 0.0) || !(psd_clamp > 0.0)) {
    throw_invariant("tolerance fields must be strictly positive");
  }
  if (!(rank_rel < 1.0)) throw_invariant("tolerance rank_rel must be below 1");
}

double Tolerance::relative_cutoff(Eigen::Index rows, Eigen::Index cols, double sigma_max) const {
  const double floor_coef = 64.0 * kMachineEps * static_cast<double>(std::max<Eigen::Index>({rows, cols, 1}));
  return std::max(rank_rel, floor_coef) * sigma_max;
}

double Tolerance::rank_cutoff(Eigen::Index rows, Eigen::Index cols, double sigma_max) const {
  // Absolute floor: singular values below eq_abs cannot be told apart from zero.
  return std::max(relative_cutoff(rows, cols, sigma_max), eq_abs);
}

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) throw_invariant(std::string(what) + ": entries must be finite");
}

namespace {

struct ThinSvd {
  Matrix u;
  RealVector sigma;
  Matrix v;
  Eigen::Index rank = 0;
};

ThinSvd thin_svd(const Matrix& m, const Tolerance& tol) {
  ThinSvd out;
  if (m.rows() == 0 || m.cols() == 0) {
    out.u = Matrix(m.rows(), 0);
    out.v = Matrix(m.cols(), 0);
    return out;
  }
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  out.u = svd.matrixU();
  out.v = svd.matrixV();
  out.sigma = svd.singularValues();
  const double cutoff = tol.rank_cutoff(m.rows(), m.cols(), out.sigma(0));
  while (out.rank < out.sigma.size() && out.sigma(out.rank) > cutoff) ++out.rank;
  return out;
}

// Ordered Gram-Schmidt on the projected unit vectors P e_0, P e_1, ...
// The projector is a function of the subspace alone, so the result is too.
Matrix canonical_basis(const Matrix& projector, Eigen::Index dim) {
  const Eigen::Index n = projector.rows();
  Matrix out(n, dim);
  if (dim == 0) return out;
  const double pivot_floor = 0.5 / static_cast<double>(n);
  Eigen::Index found = 0;
  for (Eigen::Index i = 0; i < n && found < dim; ++i) {
    Vector v = projector.col(i);
    for (int pass = 0; pass < 2; ++pass) {
      v -= out.leftCols(found) * (out.leftCols(found).adjoint() * v);
    }
    const double norm = v.norm();
    if (norm * norm < pivot_floor) continue;
    out.col(found++) = v / norm;
  }
  // Greedy pass can only fall short through rounding; finish with the largest residuals.
  while (found < dim) {
    Matrix residual = projector - out.leftCols(found) * out.leftCols(found).adjoint();
    Eigen::Index best = 0;
    residual.colwise().norm().maxCoeff(&best);
    Vector v = residual.col(best);
    out.col(found++) = v / v.norm();
  }
  return out;
}

}  // namespace

Subspace::Subspace(Eigen::Index ambient) : basis_(ambient, 0) {}

Subspace Subspace::from_orthonormal(Matrix basis, const Tolerance& tol) {
  require_finite(basis, "subspace basis");
  if (basis.cols() > basis.rows()) throw_invariant("subspace basis has more columns than rows");
  const Matrix gram = basis.adjoint() * basis;
  const Matrix id = Matrix::Identity(basis.cols(), basis.cols());
  if (basis.cols() > 0 && (gram - id).cwiseAbs().maxCoeff() > tol.eq_abs) {
    throw_invariant("subspace basis is not orthonormal");
  }
  Subspace s;
  s.basis_ = std::move(basis);
  return s;
}

Subspace Subspace::full(Eigen::Index ambient) {
  return from_orthonormal(Matrix::Identity(ambient, ambient));
}

Subspace Subspace::coordinate(Eigen::Index ambient, std::initializer_list<Eigen::Index> indices) {
  Matrix b = Matrix::Zero(ambient, static_cast<Eigen::Index>(indices.size()));
  Eigen::Index j = 0;
  for (Eigen::Index i : indices) {
    if (i < 0 || i >= ambient) throw_precondition("coordinate index out of range");
    b(i, j++) = 1.0;
  }
  return orthonormalize(b);
}

Subspace Subspace::canonical(const Tolerance&) const {
  Subspace s;
  s.basis_ = canonical_basis(projector(), dim());
  return s;
}

bool Subspace::contains(const Vector& v, const Tolerance& tol) const {
  if (v.size() != ambient()) throw_precondition("vector has wrong ambient dimension");
  const Vector residual = v - basis_ * (basis_.adjoint() * v);
  return residual.norm() <= tol.eq_abs * std::max(1.0, v.norm());
}

bool Subspace::contains(const Subspace& other, const Tolerance& tol) const {
  if (other.ambient() != ambient()) throw_precondition("subspace ambient dimension mismatch");
  if (other.dim() == 0) return true;
  const Matrix residual = other.basis() - basis_ * (basis_.adjoint() * other.basis());
  return norm2(residual) <= tol.eq_abs;
}

bool Subspace::same_as(const Subspace& other, const Tolerance& tol) const {
  if (other.ambient() != ambient()) return false;
  if (other.dim() != dim()) return false;
  return norm2(projector() - other.projector()) <= tol.eq_abs;
}

Subspace orthonormalize(const Matrix& columns, const Tolerance& tol) {
  require_finite(columns, "orthonormalize");
  const ThinSvd svd = thin_svd(columns, tol);
  const Matrix u = svd.u.leftCols(svd.rank);
  return Subspace::from_orthonormal(canonical_basis(u * u.adjoint(), svd.rank), tol);
}

Eigen::Index numerical_rank(const Matrix& m, const Tolerance& tol) {
  require_finite(m, "rank");
  return thin_svd(m, tol).rank;
}

Subspace null_space(const Matrix& m, const Tolerance& tol) {
  require_finite(m, "null space");
  const Eigen::Index n = m.cols();
  if (m.rows() == 0 || n == 0) return Subspace::full(n);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const RealVector& sigma = svd.singularValues();
  const double cutoff = tol.rank_cutoff(m.rows(), m.cols(), sigma(0));
  Eigen::Index rank = 0;
  while (rank < sigma.size() && sigma(rank) > cutoff) ++rank;
  const Matrix v = svd.matrixV().rightCols(n - rank);
  return Subspace::from_orthonormal(canonical_basis(v * v.adjoint(), n - rank), tol);
}

Subspace sum(const Subspace& a, const Subspace& b, const Tolerance& tol) {
  if (a.ambient() != b.ambient()) throw_precondition("subspace sum: ambient dimension mismatch");
  Matrix cols(a.ambient(), a.dim() + b.dim());
  cols << a.basis(), b.basis();
  return orthonormalize(cols, tol);
}

Subspace complement(const Subspace& a, const Tolerance& tol) {
  if (a.dim() == 0) return Subspace::full(a.ambient());
  return null_space(a.basis().adjoint(), tol);
}

Subspace intersect(const Subspace& a, const Subspace& b, const Tolerance& tol) {
  if (a.ambient() != b.ambient()) {
    throw_precondition("subspace intersection: ambient dimension mismatch");
  }
  return complement(sum(complement(a, tol), complement(b, tol), tol), tol);
}

Matrix project(const Subspace& a) { return a.projector(); }

Matrix require_hermitian(const Matrix& m, const Tolerance& tol, const char* what) {
  require_finite(m, what);
  if (m.rows() != m.cols()) throw_invariant(std::string(what) + ": matrix is not square");
  if (m.size() > 0 && (m - m.adjoint()).cwiseAbs().maxCoeff() > tol.eq_abs) {
    throw_invariant(std::string(what) + ": matrix is not Hermitian");
  }
  return (m + m.adjoint()) / 2.0;
}

HermitianEigen hermitian_eigen(const Matrix& m, const Tolerance& tol) {
  const Matrix h = require_hermitian(m, tol, "eigendecomposition");
  if (h.rows() == 0) return {RealVector(0), Matrix(0, 0)};
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  return {es.eigenvalues(), es.eigenvectors()};
}

double min_eigenvalue(const Matrix& m, const Tolerance& tol) {
  if (m.rows() == 0) return std::numeric_limits<double>::infinity();
  return hermitian_eigen(m, tol).values(0);
}

bool is_psd(const Matrix& m, const Tolerance& tol) {
  return min_eigenvalue(m, tol) >= -tol.psd_clamp;
}

Matrix psd_sqrt(const Matrix& m, const Tolerance& tol) {
  const HermitianEigen eig = hermitian_eigen(m, tol);
  const Eigen::Index n = eig.values.size();
  if (n == 0) return Matrix(0, 0);
  if (eig.values(0) < -tol.psd_clamp) {
    throw_precondition("square root: matrix is not positive semidefinite");
  }
  const double scale = eig.values.cwiseAbs().maxCoeff();
  const double zero_below = std::max(tol.psd_clamp, tol.relative_cutoff(n, n, scale));
  RealVector roots(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    roots(i) = eig.values(i) <= zero_below ? 0.0 : std::sqrt(eig.values(i));
  }
  return eig.vectors * roots.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

Matrix pinv(const Matrix& m, const Tolerance& tol) {
  require_finite(m, "pseudoinverse");
  const ThinSvd svd = thin_svd(m, tol);
  Matrix out = Matrix::Zero(m.cols(), m.rows());
  for (Eigen::Index i = 0; i < svd.rank; ++i) {
    out += svd.v.col(i) * (1.0 / svd.sigma(i)) * svd.u.col(i).adjoint();
  }
  return out;
}

double norm2(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

}  // namespace formkit
