#include <gtest/gtest.h>

#include <cmath>

#include "formkit/error.hpp"
#include "formkit/form.hpp"
#include "random.hpp"

using namespace formkit;
using namespace formkit::testing;

namespace {

HermitianForm f1() {
  Matrix m(1, 1);
  m << 2;
  return HermitianForm(Subspace::coordinate(2, {0}), m);
}

HermitianForm diag_form(std::initializer_list<double> d) {
  RealVector v(static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (double x : d) v(i++) = x;
  return HermitianForm::everywhere(v.cast<Complex>().asDiagonal());
}

Vector e(Eigen::Index n, Eigen::Index i) { return Vector::Unit(n, i); }

}  // namespace

TEST(Eval, IdentityAndF1) {
  EXPECT_NEAR(std::abs(eval(diag_form({1, 1}), e(2, 0), e(2, 0)) - Complex(1)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(eval(f1(), e(2, 0), e(2, 0)) - Complex(2)), 0.0, 1e-15);
}

TEST(Eval, OutsideDomainRejected) {
  try {
    eval(f1(), e(2, 1), e(2, 0));
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::precondition);
  }
}

TEST(Eval, ConjugateSymmetricAndSesquilinear) {
  Rng rng(201);
  for (int trial = 0; trial < 100; ++trial) {
    const HermitianForm t = random_form(rng, 5, 3, -2, 2);
    const Vector x = t.domain().basis() * gaussian_vector(rng, 3);
    const Vector y = t.domain().basis() * gaussian_vector(rng, 3);
    EXPECT_LE(std::abs(eval(t, x, y) - std::conj(eval(t, y, x))), 1e-12);
    EXPECT_LE(std::abs(eval(t, x, x).imag()), 1e-12);
    const Complex a(0.3, -1.2);
    EXPECT_LE(std::abs(eval(t, a * x, y) - a * eval(t, x, y)), 1e-11);
    EXPECT_LE(std::abs(eval(t, x, a * y) - std::conj(a) * eval(t, x, y)), 1e-11);
  }
}

TEST(LowerBound, DiagonalAndF1) {
  EXPECT_DOUBLE_EQ(lower_bound(diag_form({2, 5})), 2.0);
  EXPECT_DOUBLE_EQ(lower_bound(f1()), 2.0);
  EXPECT_TRUE(std::isinf(lower_bound(HermitianForm::zero(Subspace::zero(3)))));
}

TEST(LowerBound, MatchesRayleighSampling) {
  Rng rng(202);
  const HermitianForm t = HermitianForm::everywhere(random_hermitian(rng, 6, -1, 4));
  // minimize the Rayleigh quotient over random unit vectors, then polish
  // the best sample with inverse iteration as an independent oracle
  double best = std::numeric_limits<double>::infinity();
  Vector best_x;
  for (int i = 0; i < 100000; ++i) {
    const Vector x = gaussian_vector(rng, 6).normalized();
    const double r = eval(t, x, x).real();
    if (r < best) {
      best = r;
      best_x = x;
    }
  }
  const double m = lower_bound(t);
  EXPECT_LE(m, best + 1e-12);
  const Matrix shifted = t.matrix() - (m - 1e-3) * Matrix::Identity(6, 6);
  Vector x = best_x;
  for (int i = 0; i < 20; ++i) x = shifted.fullPivLu().solve(x).normalized();
  EXPECT_NEAR(eval(t, x, x).real(), m, 1e-6);
}

TEST(Shift, F1ShiftedToZeroKernel) {
  const HermitianForm s = shift(f1(), -2);
  EXPECT_LE(norm2(s.matrix()), 1e-15);
  EXPECT_TRUE(kernel(s, 0).same_as(Subspace::coordinate(2, {0})));
}

TEST(Add, DiagonalPiecesSumToIdentity) {
  EXPECT_TRUE(add(diag_form({1, 0}), diag_form({0, 1})).same_as(diag_form({1, 1})));
}

TEST(Add, DomainMismatchRejected) { EXPECT_THROW(add(f1(), diag_form({1, 1})), Error); }

TEST(Kernel, EigenvectorReadOff) {
  EXPECT_TRUE(kernel(diag_form({2, 5}), 2).same_as(Subspace::coordinate(2, {0})));
  EXPECT_EQ(kernel(diag_form({2, 5}), 1).dim(), 0);
  EXPECT_THROW(kernel(diag_form({2, 5}), 3), Error);
}

TEST(Leq, Basic) {
  EXPECT_TRUE(leq(diag_form({1, 1}), diag_form({2, 3})));
  EXPECT_FALSE(leq(diag_form({2, 3}), diag_form({1, 1})));
  const HermitianForm t = diag_form({1, 4});
  EXPECT_TRUE(leq(t, t.restricted_to(Subspace::coordinate(2, {0}))));
  EXPECT_FALSE(leq(t.restricted_to(Subspace::coordinate(2, {0})), t));
}

TEST(LeqProperties, EquivalentToContractiveDomination) {
  Rng rng(203);
  int agreements_true = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = uniform_int(rng, 1, 6);
    const Matrix u = random_unitary(rng, n);
    const int d1 = uniform_int(rng, 1, n);
    const int d2 = uniform_int(rng, 1, d1);
    const HermitianForm t1(Subspace::from_orthonormal(u.leftCols(d1)), random_hermitian(rng, d1, 0.2, 2));
    // half the time build t2 above t1 on a subdomain, otherwise arbitrary
    Matrix m2;
    if (trial % 2 == 0) {
      m2 = t1.restricted_to(Subspace::from_orthonormal(u.leftCols(d2))).matrix() +
           random_psd(rng, d2, uniform_int(rng, 0, d2));
    } else {
      m2 = random_hermitian(rng, d2, 0.2, 2);
    }
    const Matrix v = trial % 3 == 0 ? Matrix(u.leftCols(d2)) : Matrix(random_subspace(rng, n, d2).basis());
    const HermitianForm t2(Subspace::from_orthonormal(trial % 2 == 0 ? Matrix(u.leftCols(d2)) : v), m2);
    const bool by_forms = leq(t1, t2);
    const bool by_maps =
        dominates_contractively(representing_map(t1, 0, true).as_relation(), representing_map(t2, 0, true).as_relation());
    EXPECT_EQ(by_forms, by_maps);
    agreements_true += by_forms;
  }
  EXPECT_GT(agreements_true, 50);
}

TEST(RepresentingMap, F1AtZero) {
  const RepresentingMap q = representing_map(f1(), 0, true);
  ASSERT_EQ(q.codomain_dim, 1);
  EXPECT_NEAR(std::abs(q.q(0, 0)), std::sqrt(2.0), 1e-14);
}

TEST(RepresentingMap, IdentityAtLowerBoundIsZero) {
  const RepresentingMap q = representing_map(diag_form({1, 1}), 1, true);
  EXPECT_EQ(q.codomain_dim, 0);
  EXPECT_TRUE(q.minimal);
  const RepresentingMap full = representing_map(diag_form({1, 1}), 1, false);
  EXPECT_EQ(full.codomain_dim, 2);
  EXPECT_FALSE(full.minimal);
}

TEST(RepresentingMap, RejectsShiftAboveLowerBound) {
  try {
    representing_map(f1(), 2.5, true);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::precondition);
    EXPECT_NE(std::string(err.what()).find("not a lower bound"), std::string::npos);
  }
}

TEST(RepresentingMapProperties, ReconstructionAndInfIdentity) {
  Rng rng(204);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = uniform_int(rng, 1, 8);
    const HermitianForm t = random_form(rng, n, uniform_int(rng, 1, n), -3, 3);
    const double m = lower_bound(t);
    for (double c : {m, m - 1, m - 10}) {
      for (bool minimal : {true, false}) {
        const RepresentingMap q = representing_map(t, c, minimal);
        const Matrix& b = t.domain().basis();
        double worst = 0;
        for (Eigen::Index i = 0; i < b.cols(); ++i) {
          for (Eigen::Index k = 0; k < b.cols(); ++k) {
            const Complex lhs = eval(t, b.col(i), b.col(k)) - c * b.col(k).dot(b.col(i));
            const Complex rhs = q.apply(b.col(k)).dot(q.apply(b.col(i)));
            worst = std::max(worst, std::abs(lhs - rhs));
          }
        }
        EXPECT_LE(worst, 1e-10);
        EXPECT_NEAR(min_eigenvalue(q.q.adjoint() * q.q), m - c, 1e-9);
        EXPECT_EQ(numerical_rank(q.q) == q.codomain_dim, q.minimal);
        if (c < m) {
          EXPECT_EQ(numerical_rank(q.q), t.domain_dim());
        }
      }
    }
  }
}

TEST(Connect, UnitaryRotation) {
  Rng rng(205);
  for (int trial = 0; trial < 50; ++trial) {
    const HermitianForm t = random_form(rng, 5, 4, 0.5, 3);
    const RepresentingMap q1 = representing_map(t, 0, true);
    RepresentingMap q2 = q1;
    const Matrix u = random_unitary(rng, q1.codomain_dim);
    q2.q = u * q1.q;
    const Matrix v = connect_representations(q1, q2);
    EXPECT_LE(distance(v * q1.q, q2.q), 1e-9);
    EXPECT_LE(distance(v, u), 1e-9);
  }
}

TEST(Connect, SameMapGivesRangeProjection) {
  Rng rng(206);
  const HermitianForm t = random_form(rng, 4, 3, 0, 2);
  const RepresentingMap q = representing_map(t, lower_bound(t), false);
  const Matrix v = connect_representations(q, q);
  EXPECT_LE(distance(v, project(orthonormalize(q.q))), 1e-9);
}

TEST(Connect, PaddedCodomainEmbeds) {
  Rng rng(207);
  const HermitianForm t = random_form(rng, 4, 3, 0.5, 2);
  const RepresentingMap q1 = representing_map(t, 0, true);
  RepresentingMap q2 = q1;
  q2.q = Matrix::Zero(q1.codomain_dim + 1, q1.q.cols());
  q2.q.topRows(q1.codomain_dim) = q1.q;
  q2.codomain_dim += 1;
  q2.minimal = false;
  const Matrix v = connect_representations(q1, q2);
  ASSERT_EQ(v.rows(), q1.codomain_dim + 1);
  EXPECT_LE(distance(v.adjoint() * v, project(orthonormalize(q1.q))), 1e-9);
  EXPECT_LE(distance(v * q1.q, q2.q), 1e-9);
}

TEST(Connect, DifferentFormsRejected) {
  const RepresentingMap q1 = representing_map(diag_form({1, 2}), 0, true);
  const RepresentingMap q2 = representing_map(diag_form({1, 3}), 0, true);
  EXPECT_THROW(connect_representations(q1, q2), Error);
}

TEST(ConnectProperties, IndependentMapsOfSameForm) {
  Rng rng(208);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = uniform_int(rng, 1, 8);
    const HermitianForm t = random_form(rng, n, uniform_int(rng, 1, n), -1, 2);
    const double c = lower_bound(t) - uniform(rng, 0, 1) * (trial % 2);
    const RepresentingMap q1 = representing_map(t, c, trial % 3 != 0);
    // Cholesky-like factor in an unrelated basis, padded into a larger codomain
    RepresentingMap q2 = representing_map(t, c, false);
    const Eigen::Index k = q2.codomain_dim + uniform_int(rng, 0, 2);
    const Matrix w = random_unitary(rng, k).leftCols(q2.codomain_dim);
    q2.q = w * random_unitary(rng, q2.codomain_dim) * q2.q;
    q2.codomain_dim = k;
    const Matrix v = connect_representations(q1, q2);
    EXPECT_LE(distance(v * q1.q, q2.q), 1e-9);
    EXPECT_LE(distance(v.adjoint() * v, project(orthonormalize(q1.q))), 1e-9);
  }
}

TEST(Classify, F1AndZeroForm) {
  const FormClass a = classify(f1());
  EXPECT_TRUE(a.closable);
  EXPECT_TRUE(a.closed);
  EXPECT_FALSE(a.singular);
  const FormClass z = classify(HermitianForm::zero(Subspace::coordinate(2, {0})));
  EXPECT_TRUE(z.closable);
  EXPECT_TRUE(z.closed);
  EXPECT_TRUE(z.singular);
  EXPECT_FALSE(z.certificate.empty());
}

TEST(ClassifyProperties, NonzeroPsdIsNotSingularAndShiftInvariant) {
  Rng rng(209);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = uniform_int(rng, 1, 6);
    const int d = uniform_int(rng, 1, n);
    const HermitianForm t(random_subspace(rng, n, d), random_psd(rng, d, uniform_int(rng, 1, d)));
    EXPECT_FALSE(classify(t).singular);
    const FormClass s = classify(shift(t, uniform(rng, -5, 5)));
    EXPECT_TRUE(s.closable);
    EXPECT_TRUE(s.closed);
  }
}

TEST(Closure, IsIdentity) {
  Rng rng(210);
  const HermitianForm t = random_form(rng, 4, 2, -1, 1);
  EXPECT_TRUE(t.closure().same_as(t));
}
