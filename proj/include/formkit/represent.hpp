#pragma once

// Correspondence between closed semibounded forms and semibounded selfadjoint
// relations: A_t = Q* Q + c, and back again t[x, y] = <(A_reg - c)^{1/2} x,
// (A_reg - c)^{1/2} y> + c <x, y>.

#include "formkit/form.hpp"
#include "formkit/relation.hpp"

namespace formkit {

/// A selfadjoint relation on C^n together with its operator part
/// A_reg = (I - P_mul) A, stored on dom A = (mul A)^perp.
class SelfadjointRelation {
 public:
  SelfadjointRelation() = default;

  /// Checks A = A* and extracts the operator part.
  static SelfadjointRelation from_relation(LinearRelation rel, const Tolerance& tol = {});
  /// Operator part `op` (Hermitian, dim(domain) square) on `domain`, and
  /// multivalued part domain^perp.
  static SelfadjointRelation from_operator_part(const Subspace& domain, const Matrix& op,
                                                const Tolerance& tol = {});

  const LinearRelation& rel() const noexcept { return rel_; }
  Eigen::Index ambient() const noexcept { return rel_.dim_h(); }
  /// dom A, the space the operator part acts on.
  const Subspace& domain() const noexcept { return domain_; }
  const Subspace& mul() const noexcept { return mul_; }
  /// Operator part in the basis of domain().
  const Matrix& operator_part() const noexcept { return operator_part_; }
  /// lambda_min of the operator part; +infinity when dom A = {0}.
  double lower_bound() const noexcept { return lower_bound_; }

 private:
  LinearRelation rel_ = LinearRelation::zero(0, 0);
  Subspace domain_;
  Subspace mul_;
  Matrix operator_part_;
  double lower_bound_ = 0.0;
};

/// S_t = Q_c* Q_c + c. Since Q_c** = Q_c, this is also A~_t = Q_c* Q_c** + c.
/// Throws an invariant error if the result depends on c, if mul differs from
/// (dom t)^perp, or if its lower bound differs from m(t).
SelfadjointRelation represent_form(const HermitianForm& t, double c, const Tolerance& tol = {});

/// Checks t[x, y] = <x', y> for every (x, x') in A and y in dom t, and that
/// A and a sub-relation of A both sit inside S_t.
bool verify_first_representation(const HermitianForm& t, const SelfadjointRelation& a,
                                 const Tolerance& tol = {});

/// The closed form associated with A, built from (A_reg - c)^{1/2}.
HermitianForm form_from_relation(const SelfadjointRelation& a, double c, const Tolerance& tol = {});

/// H1 <= H2 for relations bounded below by c: dom H2^{1/2} within dom H1^{1/2}
/// and |(H1 - c)^{1/2} x| <= |(H2 - c)^{1/2} x| there.
bool relation_leq(const SelfadjointRelation& h1, const SelfadjointRelation& h2, double c,
                  const Tolerance& tol = {});

/// (A - lambda)^{-1} as an n x n matrix; it vanishes on mul A.
Matrix resolvent(const SelfadjointRelation& a, double lambda, const Tolerance& tol = {});

/// The selfadjoint relation whose resolvent at lambda is `r`:
/// {(r g, g + lambda r g) : g in C^n}.
SelfadjointRelation relation_from_resolvent(const Matrix& r, double lambda, const Tolerance& tol = {});

}  // namespace formkit
