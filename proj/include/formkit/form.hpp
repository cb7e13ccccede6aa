#pragma once

// Semibounded Hermitian sesquilinear forms on subspaces of C^n, and their
// representing maps t[x, y] - c <x, y> = <Q x, Q y>.

#include <string>

#include "formkit/numeric.hpp"
#include "formkit/relation.hpp"

namespace formkit {

/// A Hermitian form t on dom t, stored as its matrix in an orthonormal basis
/// of the domain: t[x, y] = <M D* x, D* y> for x, y in dom t.
///
/// A form whose domain is {0} is a legal value; its lower bound is +infinity.
class HermitianForm {
 public:
  HermitianForm() = default;
  HermitianForm(Subspace domain, const Matrix& matrix, const Tolerance& tol = {});

  /// Form on all of C^n with the given n x n matrix.
  static HermitianForm everywhere(const Matrix& matrix, const Tolerance& tol = {});
  static HermitianForm zero(const Subspace& domain);
  /// c <x, y> on `domain`.
  static HermitianForm scalar(const Subspace& domain, double c);

  Eigen::Index ambient() const noexcept { return domain_.ambient(); }
  Eigen::Index domain_dim() const noexcept { return domain_.dim(); }
  const Subspace& domain() const noexcept { return domain_; }
  const Matrix& matrix() const noexcept { return matrix_; }
  bool is_vacuous() const noexcept { return domain_.dim() == 0; }

  /// n x n matrix D M D*, which vanishes on the orthogonal complement of dom t.
  Matrix ambient_matrix() const { return domain_.basis() * matrix_ * domain_.basis().adjoint(); }

  /// Coordinates of x in the domain basis. Throws if x is not in dom t.
  Vector coordinates(const Vector& x, const Tolerance& tol = {}) const;

  /// The same form expressed in another orthonormal basis of the same domain,
  /// or restricted to a subspace of the domain.
  HermitianForm restricted_to(const Subspace& sub, const Tolerance& tol = {}) const;

  const HermitianForm& closure() const noexcept { return *this; }

  bool same_as(const HermitianForm& other, const Tolerance& tol = {}) const;

 private:
  Subspace domain_;
  Matrix matrix_;
};

/// t[x, y], linear in x and antilinear in y.
Complex eval(const HermitianForm& t, const Vector& x, const Vector& y, const Tolerance& tol = {});

/// m(t) = inf t[x] / |x|^2, or +infinity for the form on {0}.
double lower_bound(const HermitianForm& t, const Tolerance& tol = {});

HermitianForm shift(const HermitianForm& t, double a);
/// Sum of two forms with equal domains.
HermitianForm add(const HermitianForm& t1, const HermitianForm& t2, const Tolerance& tol = {});
/// t1 - t2 on a common domain.
HermitianForm subtract(const HermitianForm& t1, const HermitianForm& t2, const Tolerance& tol = {});
/// ker(t - c) for c <= m(t).
Subspace kernel(const HermitianForm& t, double c, const Tolerance& tol = {});

/// t1 <= t2: dom t2 within dom t1 and t1[x] <= t2[x] on dom t2.
bool leq(const HermitianForm& t1, const HermitianForm& t2, const Tolerance& tol = {});

/// Q with t[x, y] - c <x, y> = <Q x, Q y> on dom t = dom Q.
struct RepresentingMap {
  Subspace domain;
  double shift = 0.0;
  Matrix q;  ///< codomain_dim x dim(domain), in domain coordinates
  Eigen::Index codomain_dim = 0;
  bool minimal = false;

  /// Q applied to a vector of dom Q given in ambient coordinates.
  Vector apply(const Vector& x, const Tolerance& tol = {}) const;
  /// Q as an operator relation from C^n to C^codomain_dim.
  LinearRelation as_relation(const Tolerance& tol = {}) const;
  /// t - c reconstructed from Q, as a form on dom Q.
  HermitianForm represented_form() const;
};

/// Canonical representing map: q = (M - c)^{1/2}. With `minimal`, the rows
/// are compressed onto an orthonormal basis of ran q.
RepresentingMap representing_map(const HermitianForm& t, double c, bool minimal,
                                 const Tolerance& tol = {});

/// Same map with its codomain cut down to the closure of its range.
RepresentingMap minimalized(const RepresentingMap& q, const Tolerance& tol = {});

/// Partial isometry V with V q1 = q2, initial space ran q1.
Matrix connect_representations(const RepresentingMap& q1, const RepresentingMap& q2,
                               const Tolerance& tol = {});

struct FormClass {
  bool closable = true;
  bool closed = true;
  bool singular = false;
  std::string certificate;
};

/// In finite dimension every form is closed; the only singular one is zero.
FormClass classify(const HermitianForm& t, const Tolerance& tol = {});

}  // namespace formkit
