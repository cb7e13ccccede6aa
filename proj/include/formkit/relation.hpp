#pragma once

// Linear relations between C^h and C^k, stored as graph subspaces of
// C^h (+) C^k. The first h coordinates of a graph vector are its
// H-component, the remaining k its K-component.
//
// All graphs are finite-dimensional subspaces and therefore closed, so every
// relation coincides with its closure; closure() returns its argument.

#include "formkit/numeric.hpp"

namespace formkit {

class LinearRelation {
 public:
  /// Graph spanned by the columns of `columns` ((h + k) x m, any rank).
  static LinearRelation from_columns(Eigen::Index dim_h, Eigen::Index dim_k, const Matrix& columns,
                                     const Tolerance& tol = {});
  static LinearRelation from_graph(Eigen::Index dim_h, Eigen::Index dim_k, Subspace graph);
  /// Everywhere defined operator given by a k x h matrix.
  static LinearRelation from_matrix(const Matrix& m, const Tolerance& tol = {});
  /// Operator defined on `domain` acting as `action` (k x dim(domain)) in the
  /// coordinates of domain.basis().
  static LinearRelation from_operator(const Subspace& domain, const Matrix& action,
                                      const Tolerance& tol = {});
  /// The zero relation {(0, 0)} from C^h to C^k.
  static LinearRelation zero(Eigen::Index dim_h, Eigen::Index dim_k);

  Eigen::Index dim_h() const noexcept { return dim_h_; }
  Eigen::Index dim_k() const noexcept { return dim_k_; }
  const Subspace& graph() const noexcept { return graph_; }

  /// Basis of the graph split into its H-rows and K-rows.
  Matrix h_part() const { return graph_.basis().topRows(dim_h_); }
  Matrix k_part() const { return graph_.basis().bottomRows(dim_k_); }

  bool is_operator(const Tolerance& tol = {}) const;

  /// For an operator (mul = 0): the k x h matrix that agrees with the relation
  /// on its domain and vanishes on the orthogonal complement of the domain.
  Matrix operator_matrix(const Tolerance& tol = {}) const;

  const LinearRelation& closure() const noexcept { return *this; }

  bool same_as(const LinearRelation& other, const Tolerance& tol = {}) const;
  /// this is a subset of other, as graphs
  bool subset_of(const LinearRelation& other, const Tolerance& tol = {}) const;

 private:
  LinearRelation(Eigen::Index dim_h, Eigen::Index dim_k, Subspace graph);

  Eigen::Index dim_h_ = 0;
  Eigen::Index dim_k_ = 0;
  Subspace graph_;
};

struct RelationParts {
  Subspace dom;
  Subspace ran;
  Subspace ker;
  Subspace mul;
};

RelationParts parts(const LinearRelation& r, const Tolerance& tol = {});

/// R* = {(k, h) : <k, k'> = <h, h'> for every (h', k') in R}.
LinearRelation adjoint(const LinearRelation& r, const Tolerance& tol = {});

/// S R = {(h, l) : (h, k) in R and (k, l) in S for some k}.
LinearRelation compose(const LinearRelation& s, const LinearRelation& r, const Tolerance& tol = {});

/// R + c = {(h, h' + c h) : (h, h') in R}. R must be square.
LinearRelation add_scalar(const LinearRelation& r, double c, const Tolerance& tol = {});

struct RegularSingularSplit {
  LinearRelation reg;   ///< (I - P0) R, an operator
  LinearRelation sing;  ///< P0 R
  Matrix p0;            ///< orthogonal projection onto mul R
};

RegularSingularSplit regular_singular_split(const LinearRelation& r, const Tolerance& tol = {});

/// Contractive domination R1 <=_c R2: dom R2 is contained in dom R1 and
/// |R1 x| <= |R2 x| on dom R2. Both arguments must be operators.
bool dominates_contractively(const LinearRelation& r1, const LinearRelation& r2,
                             const Tolerance& tol = {});

}  // namespace formkit
