#pragma once

// Seeded generators for randomized tests. All draws go through one
// std::mt19937_64 so a failing instance is reproducible from its seed.

#include <random>

#include "formkit/decomp.hpp"
#include "formkit/form.hpp"
#include "formkit/numeric.hpp"

namespace formkit::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline Matrix gaussian(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = Complex(g(rng), g(rng));
  return m;
}

inline Vector gaussian_vector(Rng& rng, Eigen::Index n) { return gaussian(rng, n, 1).col(0); }

inline Matrix random_unitary(Rng& rng, Eigen::Index n) {
  Eigen::HouseholderQR<Matrix> qr(gaussian(rng, n, n));
  Matrix q = qr.householderQ();
  // fix the phases so the distribution does not depend on the QR convention
  const Matrix r = qr.matrixQR();
  for (Eigen::Index k = 0; k < n; ++k) {
    const double a = std::abs(r(k, k));
    if (a > 0) q.col(k) *= r(k, k) / a;
  }
  return q;
}

inline Subspace random_subspace(Rng& rng, Eigen::Index n, Eigen::Index d) {
  return Subspace::from_orthonormal(random_unitary(rng, n).leftCols(d));
}

// U diag(eigs) U*
inline Matrix with_spectrum(Rng& rng, const RealVector& eigs) {
  const Matrix u = random_unitary(rng, eigs.size());
  Matrix m = u * eigs.cast<Complex>().asDiagonal() * u.adjoint();
  return (m + m.adjoint()) / 2.0;
}

inline RealVector uniform_spectrum(Rng& rng, Eigen::Index n, double lo, double hi) {
  RealVector e(n);
  for (Eigen::Index i = 0; i < n; ++i) e(i) = uniform(rng, lo, hi);
  return e;
}

inline Matrix random_hermitian(Rng& rng, Eigen::Index n, double lo, double hi) {
  return with_spectrum(rng, uniform_spectrum(rng, n, lo, hi));
}

// PSD of the given rank with nonzero eigenvalues in [lo, hi]
inline Matrix random_psd(Rng& rng, Eigen::Index n, Eigen::Index rank, double lo = 0.5, double hi = 3.0) {
  RealVector e = RealVector::Zero(n);
  for (Eigen::Index i = 0; i < rank; ++i) e(i) = uniform(rng, lo, hi);
  return with_spectrum(rng, e);
}

// Form on a random d-dimensional domain of C^n with spectrum in [lo, hi].
inline HermitianForm random_form(Rng& rng, Eigen::Index n, Eigen::Index d, double lo, double hi) {
  return HermitianForm(random_subspace(rng, n, d), random_hermitian(rng, d, lo, hi));
}

// Form whose domain is a proper subspace (d < n) whenever n > 1.
inline HermitianForm random_proper_form(Rng& rng, double lo = -2.0, double hi = 3.0) {
  const int n = uniform_int(rng, 2, 8);
  const int d = uniform_int(rng, 1, n - 1);
  return random_form(rng, n, d, lo, hi);
}

// Exact projection when `projection`, otherwise eigenvalues strictly inside
// (0, 1) apart from an optional block of zeros and ones.
inline ContractionParam random_contraction(Rng& rng, Eigen::Index d, bool projection) {
  RealVector e(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    e(i) = projection ? static_cast<double>(uniform_int(rng, 0, 1)) : uniform(rng, 0.05, 0.95);
  }
  if (!projection && d > 1) {
    // keep a few exact 0/1 eigenvalues so non-projections are not all generic
    for (Eigen::Index i = 0; i + 1 < d; ++i) {
      if (uniform_int(rng, 0, 3) == 0) e(i) = static_cast<double>(uniform_int(rng, 0, 1));
    }
  }
  return ContractionParam(with_spectrum(rng, e));
}

inline double distance(const Matrix& a, const Matrix& b) { return norm2(a - b); }

}  // namespace formkit::testing
