#include "formkit/relation.hpp"

#include <utility>

namespace formkit {

namespace {

// Graph vectors of {(h, 0)} and {(0, k)} inside C^h (+) C^k.
Subspace h_axis(Eigen::Index h, Eigen::Index k) {
  Matrix b = Matrix::Zero(h + k, h);
  b.topRows(h) = Matrix::Identity(h, h);
  return Subspace::from_orthonormal(std::move(b));
}

Subspace k_axis(Eigen::Index h, Eigen::Index k) {
  Matrix b = Matrix::Zero(h + k, k);
  b.bottomRows(k) = Matrix::Identity(k, k);
  return Subspace::from_orthonormal(std::move(b));
}

}  // namespace

LinearRelation::LinearRelation(Eigen::Index dim_h, Eigen::Index dim_k, Subspace graph)
    : dim_h_(dim_h), dim_k_(dim_k), graph_(std::move(graph)) {}

LinearRelation LinearRelation::from_graph(Eigen::Index dim_h, Eigen::Index dim_k, Subspace graph) {
  if (dim_h < 0 || dim_k < 0) throw_invariant("relation dimensions must be nonnegative");
  if (graph.ambient() != dim_h + dim_k) {
    throw_invariant("relation graph must live in a space of dimension dim_h + dim_k");
  }
  return LinearRelation(dim_h, dim_k, std::move(graph));
}

LinearRelation LinearRelation::from_columns(Eigen::Index dim_h, Eigen::Index dim_k,
                                            const Matrix& columns, const Tolerance& tol) {
  if (columns.rows() != dim_h + dim_k) {
    throw_invariant("relation graph columns must have dim_h + dim_k rows");
  }
  return from_graph(dim_h, dim_k, orthonormalize(columns, tol));
}

LinearRelation LinearRelation::from_matrix(const Matrix& m, const Tolerance& tol) {
  Matrix cols(m.cols() + m.rows(), m.cols());
  cols << Matrix::Identity(m.cols(), m.cols()), m;
  return from_columns(m.cols(), m.rows(), cols, tol);
}

LinearRelation LinearRelation::from_operator(const Subspace& domain, const Matrix& action,
                                             const Tolerance& tol) {
  if (action.cols() != domain.dim()) {
    throw_invariant("operator action must have one column per domain basis vector");
  }
  Matrix cols(domain.ambient() + action.rows(), domain.dim());
  cols << domain.basis(), action;
  return from_columns(domain.ambient(), action.rows(), cols, tol);
}

LinearRelation LinearRelation::zero(Eigen::Index dim_h, Eigen::Index dim_k) {
  return LinearRelation(dim_h, dim_k, Subspace::zero(dim_h + dim_k));
}

bool LinearRelation::is_operator(const Tolerance& tol) const { return parts(*this, tol).mul.dim() == 0; }

Matrix LinearRelation::operator_matrix(const Tolerance& tol) const {
  if (!is_operator(tol)) throw_precondition("relation is multivalued, not an operator");
  // Graph basis [X; Y] with X injective on coefficients: R = Y X^+.
  return k_part() * pinv(h_part(), tol);
}

bool LinearRelation::same_as(const LinearRelation& other, const Tolerance& tol) const {
  return dim_h_ == other.dim_h_ && dim_k_ == other.dim_k_ && graph_.same_as(other.graph_, tol);
}

bool LinearRelation::subset_of(const LinearRelation& other, const Tolerance& tol) const {
  return dim_h_ == other.dim_h_ && dim_k_ == other.dim_k_ && other.graph_.contains(graph_, tol);
}

RelationParts parts(const LinearRelation& r, const Tolerance& tol) {
  const Eigen::Index h = r.dim_h();
  const Eigen::Index k = r.dim_k();
  RelationParts p{orthonormalize(r.h_part(), tol), orthonormalize(r.k_part(), tol), Subspace(h),
                  Subspace(k)};
  const Subspace ker_graph = intersect(r.graph(), h_axis(h, k), tol);
  p.ker = orthonormalize(ker_graph.basis().topRows(h), tol);
  const Subspace mul_graph = intersect(r.graph(), k_axis(h, k), tol);
  p.mul = orthonormalize(mul_graph.basis().bottomRows(k), tol);
  return p;
}

LinearRelation adjoint(const LinearRelation& r, const Tolerance& tol) {
  // (k, h) is in R* exactly when (h, -k) is orthogonal to the graph of R.
  const Eigen::Index h = r.dim_h();
  const Eigen::Index k = r.dim_k();
  const Matrix perp = complement(r.graph(), tol).basis();
  Matrix cols(k + h, perp.cols());
  cols << -perp.bottomRows(k), perp.topRows(h);
  return LinearRelation::from_columns(k, h, cols, tol);
}

LinearRelation compose(const LinearRelation& s, const LinearRelation& r, const Tolerance& tol) {
  if (r.dim_k() != s.dim_h()) throw_precondition("compose: intermediate dimensions differ");
  const Eigen::Index h = r.dim_h();
  const Eigen::Index k = r.dim_k();
  const Eigen::Index l = s.dim_k();
  const Eigen::Index n = h + k + l;

  // R (+) L and H (+) S inside H (+) K (+) L.
  Matrix r_cols = Matrix::Zero(n, r.graph().dim() + l);
  r_cols.topLeftCorner(h + k, r.graph().dim()) = r.graph().basis();
  r_cols.bottomRightCorner(l, l) = Matrix::Identity(l, l);
  Matrix s_cols = Matrix::Zero(n, h + s.graph().dim());
  s_cols.topLeftCorner(h, h) = Matrix::Identity(h, h);
  s_cols.bottomRightCorner(k + l, s.graph().dim()) = s.graph().basis();

  const Subspace triples = intersect(orthonormalize(r_cols, tol), orthonormalize(s_cols, tol), tol);
  Matrix hl(h + l, triples.dim());
  hl << triples.basis().topRows(h), triples.basis().bottomRows(l);
  return LinearRelation::from_columns(h, l, hl, tol);
}

LinearRelation add_scalar(const LinearRelation& r, double c, const Tolerance& tol) {
  if (r.dim_h() != r.dim_k()) throw_precondition("add_scalar: relation is not square");
  const Matrix x = r.h_part();
  Matrix cols(2 * r.dim_h(), x.cols());
  cols << x, r.k_part() + c * x;
  return LinearRelation::from_columns(r.dim_h(), r.dim_k(), cols, tol);
}

RegularSingularSplit regular_singular_split(const LinearRelation& r, const Tolerance& tol) {
  const Matrix p0 = project(parts(r, tol).mul);
  const Matrix id = Matrix::Identity(r.dim_k(), r.dim_k());
  const Matrix x = r.h_part();
  Matrix reg_cols(r.dim_h() + r.dim_k(), x.cols());
  reg_cols << x, (id - p0) * r.k_part();
  Matrix sing_cols(r.dim_h() + r.dim_k(), x.cols());
  sing_cols << x, p0 * r.k_part();
  return {LinearRelation::from_columns(r.dim_h(), r.dim_k(), reg_cols, tol),
          LinearRelation::from_columns(r.dim_h(), r.dim_k(), sing_cols, tol), p0};
}

bool dominates_contractively(const LinearRelation& r1, const LinearRelation& r2, const Tolerance& tol) {
  if (r1.dim_h() != r2.dim_h()) throw_precondition("domination: initial spaces differ");
  const Matrix m1 = r1.operator_matrix(tol);
  const Matrix m2 = r2.operator_matrix(tol);
  const Subspace dom1 = parts(r1, tol).dom;
  const Subspace dom2 = parts(r2, tol).dom;
  if (!dom1.contains(dom2, tol)) return false;
  const Matrix& d = dom2.basis();
  const Matrix gap = d.adjoint() * (m2.adjoint() * m2 - m1.adjoint() * m1) * d;
  return is_psd(gap, tol);
}

}  // namespace formkit
