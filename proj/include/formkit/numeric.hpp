#pragma once

// Tolerance-aware dense complex linear algebra. Every "closed subspace" or
// "range closure" question is turned into a rank decision here, under one
// global cutoff policy.

#include <Eigen/Dense>

#include <complex>
#include <limits>

#include "formkit/error.hpp"

namespace formkit {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kMachineEps = std::numeric_limits<double>::epsilon();

/// Numerical tolerances.
///
/// `rank_rel` scales the largest singular value to give the rank cutoff. The
/// effective coefficient is never smaller than 64 eps max(rows, cols), which
/// is also the default.
struct Tolerance {
  double rank_rel = 64.0 * kMachineEps;
  double eq_abs = 1e-9;
  double psd_clamp = 1e-10;

  /// Throws an invariant error unless every field is positive and rank_rel < 1.
  void validate() const;

  /// max(rank_rel, 64 eps max(rows, cols)) * sigma_max
  double relative_cutoff(Eigen::Index rows, Eigen::Index cols, double sigma_max) const;
  /// Singular values at or below this count as zero: the relative cutoff,
  /// floored at eq_abs.
  double rank_cutoff(Eigen::Index rows, Eigen::Index cols, double sigma_max) const;
};

/// A subspace of C^n carried by an orthonormal basis (n x r).
class Subspace {
 public:
  /// The zero subspace of C^n.
  explicit Subspace(Eigen::Index ambient = 0);

  /// Wraps a basis that is already orthonormal. Checked against `tol`.
  static Subspace from_orthonormal(Matrix basis, const Tolerance& tol = {});
  static Subspace zero(Eigen::Index ambient) { return Subspace(ambient); }
  static Subspace full(Eigen::Index ambient);
  /// span{e_i : i in indices}
  static Subspace coordinate(Eigen::Index ambient, std::initializer_list<Eigen::Index> indices);

  Eigen::Index ambient() const noexcept { return basis_.rows(); }
  Eigen::Index dim() const noexcept { return basis_.cols(); }
  const Matrix& basis() const noexcept { return basis_; }

  /// Orthogonal projection onto the subspace.
  Matrix projector() const { return basis_ * basis_.adjoint(); }

  /// Deterministic orthonormal basis of the same subspace. Two equal subspaces
  /// canonicalize to entry-wise equal bases (up to rounding).
  Subspace canonical(const Tolerance& tol = {}) const;

  bool contains(const Vector& v, const Tolerance& tol = {}) const;
  /// other is a subset of this
  bool contains(const Subspace& other, const Tolerance& tol = {}) const;
  bool same_as(const Subspace& other, const Tolerance& tol = {}) const;

 private:
  Matrix basis_;
};

/// Canonical orthonormal basis of the numerical column space of `columns`.
Subspace orthonormalize(const Matrix& columns, const Tolerance& tol = {});

/// Numerical rank under the global cutoff policy.
Eigen::Index numerical_rank(const Matrix& m, const Tolerance& tol = {});

/// Orthonormal basis of {x : m x = 0}.
Subspace null_space(const Matrix& m, const Tolerance& tol = {});

Subspace intersect(const Subspace& a, const Subspace& b, const Tolerance& tol = {});
Subspace sum(const Subspace& a, const Subspace& b, const Tolerance& tol = {});
Subspace complement(const Subspace& a, const Tolerance& tol = {});
/// The n x n orthogonal projection onto `a`.
Matrix project(const Subspace& a);

/// Hermitian part (M + M*)/2 after checking |M - M*| <= eq_abs entry-wise.
Matrix require_hermitian(const Matrix& m, const Tolerance& tol, const char* what);

struct HermitianEigen {
  RealVector values;  // ascending
  Matrix vectors;
};
HermitianEigen hermitian_eigen(const Matrix& m, const Tolerance& tol = {});

/// Smallest eigenvalue of a Hermitian matrix, +infinity for a 0x0 matrix.
double min_eigenvalue(const Matrix& m, const Tolerance& tol = {});

/// Hermitian and lambda_min >= -psd_clamp.
bool is_psd(const Matrix& m, const Tolerance& tol = {});

/// Square root of a nonnegative Hermitian matrix.
///
/// Eigenvalues in [-psd_clamp, 0) are clamped to zero, as are nonnegative
/// eigenvalues below the rank cutoff, so that numerically zero directions stay
/// exactly zero in the root.
Matrix psd_sqrt(const Matrix& m, const Tolerance& tol = {});

/// Moore-Penrose pseudoinverse with the global rank cutoff.
Matrix pinv(const Matrix& m, const Tolerance& tol = {});

/// Spectral norm; 0 for empty matrices.
double norm2(const Matrix& m);

/// Throws an invariant error if any entry is NaN or infinite.
void require_finite(const Matrix& m, const char* what);

}  // namespace formkit
