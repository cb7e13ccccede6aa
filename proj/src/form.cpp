#include "formkit/form.hpp"

#include <cmath>
#include <limits>
#include <utility>

namespace formkit {

HermitianForm::HermitianForm(Subspace domain, const Matrix& matrix, const Tolerance& tol)
    : domain_(std::move(domain)) {
  if (matrix.rows() != domain_.dim() || matrix.cols() != domain_.dim()) {
    throw_invariant("form matrix must be d x d for a domain of dimension d");
  }
  matrix_ = require_hermitian(matrix, tol, "form matrix");
}

HermitianForm HermitianForm::everywhere(const Matrix& matrix, const Tolerance& tol) {
  return HermitianForm(Subspace::full(matrix.rows()), matrix, tol);
}

HermitianForm HermitianForm::zero(const Subspace& domain) {
  return HermitianForm(domain, Matrix::Zero(domain.dim(), domain.dim()));
}

HermitianForm HermitianForm::scalar(const Subspace& domain, double c) {
  return HermitianForm(domain, c * Matrix::Identity(domain.dim(), domain.dim()));
}

Vector HermitianForm::coordinates(const Vector& x, const Tolerance& tol) const {
  if (!domain_.contains(x, tol)) throw_precondition("vector is not in the domain of the form");
  return domain_.basis().adjoint() * x;
}

HermitianForm HermitianForm::restricted_to(const Subspace& sub, const Tolerance& tol) const {
  if (sub.ambient() != ambient()) throw_precondition("restriction: ambient dimension mismatch");
  if (!domain_.contains(sub, tol)) throw_precondition("restriction: subspace is not inside dom t");
  const Matrix c = domain_.basis().adjoint() * sub.basis();
  return HermitianForm(sub, c.adjoint() * matrix_ * c, tol);
}

bool HermitianForm::same_as(const HermitianForm& other, const Tolerance& tol) const {
  return domain_.same_as(other.domain_, tol) &&
         norm2(ambient_matrix() - other.ambient_matrix()) <= tol.eq_abs;
}

Complex eval(const HermitianForm& t, const Vector& x, const Vector& y, const Tolerance& tol) {
  const Vector cx = t.coordinates(x, tol);
  const Vector cy = t.coordinates(y, tol);
  return cy.dot(t.matrix() * cx);  // Eigen's dot conjugates its left operand
}

double lower_bound(const HermitianForm& t, const Tolerance& tol) {
  return min_eigenvalue(t.matrix(), tol);
}

HermitianForm shift(const HermitianForm& t, double a) {
  const Eigen::Index d = t.domain_dim();
  return HermitianForm(t.domain(), t.matrix() + a * Matrix::Identity(d, d));
}

HermitianForm add(const HermitianForm& t1, const HermitianForm& t2, const Tolerance& tol) {
  if (!t1.domain().same_as(t2.domain(), tol)) throw_precondition("add: forms have different domains");
  const HermitianForm aligned = t2.restricted_to(t1.domain(), tol);
  return HermitianForm(t1.domain(), t1.matrix() + aligned.matrix(), tol);
}

HermitianForm subtract(const HermitianForm& t1, const HermitianForm& t2, const Tolerance& tol) {
  if (!t1.domain().same_as(t2.domain(), tol)) {
    throw_precondition("subtract: forms have different domains");
  }
  const HermitianForm aligned = t2.restricted_to(t1.domain(), tol);
  return HermitianForm(t1.domain(), t1.matrix() - aligned.matrix(), tol);
}

Subspace kernel(const HermitianForm& t, double c, const Tolerance& tol) {
  if (t.is_vacuous()) return Subspace(t.ambient());
  if (c > lower_bound(t, tol) + tol.psd_clamp) throw_precondition("kernel: c is not a lower bound");
  const Eigen::Index d = t.domain_dim();
  const HermitianEigen eig = hermitian_eigen(t.matrix() - c * Matrix::Identity(d, d), tol);
  Eigen::Index k = 0;
  while (k < d && eig.values(k) <= tol.psd_clamp) ++k;
  return orthonormalize(t.domain().basis() * eig.vectors.leftCols(k), tol);
}

bool leq(const HermitianForm& t1, const HermitianForm& t2, const Tolerance& tol) {
  if (t1.ambient() != t2.ambient()) throw_precondition("leq: ambient dimension mismatch");
  if (!t1.domain().contains(t2.domain(), tol)) return false;
  if (t2.is_vacuous()) return true;
  const HermitianForm below = t1.restricted_to(t2.domain(), tol);
  return is_psd(t2.matrix() - below.matrix(), tol);
}

Vector RepresentingMap::apply(const Vector& x, const Tolerance& tol) const {
  if (!domain.contains(x, tol)) throw_precondition("vector is not in the domain of the map");
  return q * (domain.basis().adjoint() * x);
}

LinearRelation RepresentingMap::as_relation(const Tolerance& tol) const {
  return LinearRelation::from_operator(domain, q, tol);
}

HermitianForm RepresentingMap::represented_form() const {
  return HermitianForm(domain, q.adjoint() * q);
}

RepresentingMap minimalized(const RepresentingMap& q, const Tolerance& tol) {
  const Subspace range = orthonormalize(q.q, tol);
  RepresentingMap out = q;
  out.q = range.basis().adjoint() * q.q;
  out.codomain_dim = range.dim();
  out.minimal = true;
  return out;
}

RepresentingMap representing_map(const HermitianForm& t, double c, bool minimal, const Tolerance& tol) {
  if (!std::isfinite(c)) throw_precondition("representing map: shift must be finite");
  const Eigen::Index d = t.domain_dim();
  if (!t.is_vacuous() && c > lower_bound(t, tol) + tol.psd_clamp) {
    throw_precondition("representing map: c is not a lower bound of the form");
  }
  RepresentingMap out;
  out.domain = t.domain();
  out.shift = c;
  out.q = psd_sqrt(t.matrix() - c * Matrix::Identity(d, d), tol);
  out.codomain_dim = d;
  out.minimal = numerical_rank(out.q, tol) == d;
  return minimal ? minimalized(out, tol) : out;
}

Matrix connect_representations(const RepresentingMap& q1, const RepresentingMap& q2, const Tolerance& tol) {
  if (!q1.domain.same_as(q2.domain, tol)) throw_precondition("connect: maps have different domains");
  if (std::abs(q1.shift - q2.shift) > tol.eq_abs) throw_precondition("connect: maps use different shifts");
  // q2 in the coordinates of q1's domain basis.
  const Matrix q2_aligned = q2.q * (q2.domain.basis().adjoint() * q1.domain.basis());
  const Matrix g1 = q1.q.adjoint() * q1.q;
  const Matrix g2 = q2_aligned.adjoint() * q2_aligned;
  const double scale = std::max(1.0, norm2(g1));
  if (norm2(g1 - g2) > tol.eq_abs * scale) {
    throw_precondition("connect: maps represent different forms");
  }
  return q2_aligned * pinv(q1.q, tol);
}

FormClass classify(const HermitianForm& t, const Tolerance& tol) {
  FormClass out;
  out.singular = norm2(t.matrix()) <= tol.eq_abs;
  out.certificate = out.singular
                        ? "finite dimension: every form is closed; the zero form is the only singular form"
                        : "finite dimension: every form is closed; a nonzero form is not singular";
  return out;
}

}  // namespace formkit
