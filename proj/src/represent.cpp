#include "formkit/represent.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace formkit {

namespace {

Matrix identity(Eigen::Index n) { return Matrix::Identity(n, n); }

bool close_scalars(double a, double b, const Tolerance& tol) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::abs(a - b) <= tol.eq_abs * std::max(1.0, std::abs(a));
}

LinearRelation q_star_q_plus_c(const HermitianForm& t, double c, const Tolerance& tol) {
  const LinearRelation q = representing_map(t, c, true, tol).as_relation(tol);
  const LinearRelation s = add_scalar(compose(adjoint(q, tol), q, tol), c, tol);
  const LinearRelation a = add_scalar(compose(adjoint(q, tol), q.closure(), tol), c, tol);
  if (!s.same_as(a, tol)) throw_invariant("S_t and A~_t differ for a closed form");
  return s;
}

// (op - c)^{1/2} embedded in C^n, vanishing off the domain.
Matrix ambient_root(const SelfadjointRelation& a, double c, const Tolerance& tol) {
  const Eigen::Index d = a.domain().dim();
  const Matrix& basis = a.domain().basis();
  return basis * psd_sqrt(a.operator_part() - c * identity(d), tol) * basis.adjoint();
}

}  // namespace

SelfadjointRelation SelfadjointRelation::from_relation(LinearRelation rel, const Tolerance& tol) {
  if (rel.dim_h() != rel.dim_k()) throw_invariant("selfadjoint relation must be square");
  if (!adjoint(rel, tol).same_as(rel, tol)) throw_invariant("relation is not selfadjoint");
  SelfadjointRelation out;
  const RelationParts p = parts(rel, tol);
  out.domain_ = p.dom;
  out.mul_ = p.mul;
  const Matrix reg = regular_singular_split(rel, tol).reg.operator_matrix(tol);
  const Matrix op = out.domain_.basis().adjoint() * reg * out.domain_.basis();
  out.operator_part_ = require_hermitian(op, tol, "operator part");
  out.lower_bound_ = min_eigenvalue(out.operator_part_, tol);
  out.rel_ = std::move(rel);
  return out;
}

SelfadjointRelation SelfadjointRelation::from_operator_part(const Subspace& domain, const Matrix& op,
                                                            const Tolerance& tol) {
  if (op.rows() != domain.dim() || op.cols() != domain.dim()) {
    throw_invariant("operator part must be square with the dimension of its domain");
  }
  const Matrix h = require_hermitian(op, tol, "operator part");
  const Subspace mul = complement(domain, tol);
  const Eigen::Index n = domain.ambient();
  Matrix cols = Matrix::Zero(2 * n, domain.dim() + mul.dim());
  cols.topLeftCorner(n, domain.dim()) = domain.basis();
  cols.bottomLeftCorner(n, domain.dim()) = domain.basis() * h;
  cols.bottomRightCorner(n, mul.dim()) = mul.basis();
  return from_relation(LinearRelation::from_columns(n, n, cols, tol), tol);
}

SelfadjointRelation represent_form(const HermitianForm& t, double c, const Tolerance& tol) {
  const LinearRelation s = q_star_q_plus_c(t, c, tol);
  if (!q_star_q_plus_c(t, c - 1.0, tol).same_as(s, tol)) {
    throw_invariant("representing relation depends on the choice of c");
  }
  SelfadjointRelation out = SelfadjointRelation::from_relation(s, tol);
  if (!out.mul().same_as(complement(t.domain(), tol), tol)) {
    throw_invariant("mul S_t differs from the orthogonal complement of dom t");
  }
  if (!close_scalars(out.lower_bound(), lower_bound(t, tol), tol)) {
    throw_invariant("lower bound of S_t differs from m(t)");
  }
  return out;
}

bool verify_first_representation(const HermitianForm& t, const SelfadjointRelation& a, const Tolerance& tol) {
  if (a.ambient() != t.ambient()) throw_precondition("verify: ambient dimension mismatch");
  if (!t.domain().contains(a.domain(), tol)) throw_precondition("verify: dom A is not inside dom t");
  const Eigen::Index n = t.ambient();
  const Matrix& graph = a.rel().graph().basis();
  const Matrix& dom_t = t.domain().basis();
  const double scale = std::max(1.0, norm2(t.matrix()));
  for (Eigen::Index j = 0; j < graph.cols(); ++j) {
    const Vector x = graph.col(j).head(n);
    const Vector x_image = graph.col(j).tail(n);
    for (Eigen::Index i = 0; i < dom_t.cols(); ++i) {
      const Vector y = dom_t.col(i);
      if (std::abs(eval(t, x, y, tol) - y.dot(x_image)) > tol.eq_abs * scale) return false;
    }
  }

  // Every symmetric relation satisfying the identity lies inside S_t; check A
  // itself and a pseudo-random sub-relation of it.
  const double c = t.is_vacuous() ? 0.0 : std::min(lower_bound(t, tol), a.lower_bound());
  const SelfadjointRelation s = represent_form(t, c, tol);
  if (!a.rel().subset_of(s.rel(), tol)) return false;
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> normal;
  const Eigen::Index keep = (graph.cols() + 1) / 2;
  Matrix mix(graph.cols(), keep);
  for (Eigen::Index i = 0; i < mix.rows(); ++i) {
    for (Eigen::Index j = 0; j < keep; ++j) mix(i, j) = Complex(normal(rng), normal(rng));
  }
  const LinearRelation restriction = LinearRelation::from_columns(n, n, graph * mix, tol);
  return restriction.subset_of(s.rel(), tol);
}

HermitianForm form_from_relation(const SelfadjointRelation& a, double c, const Tolerance& tol) {
  if (!std::isfinite(c)) throw_precondition("form_from_relation: c must be finite");
  if (c > a.lower_bound() + tol.psd_clamp) {
    throw_precondition("form_from_relation: c is above the lower bound of the relation");
  }
  const Eigen::Index d = a.domain().dim();
  auto build = [&](double shift) {
    const Matrix root = psd_sqrt(a.operator_part() - shift * identity(d), tol);
    return Matrix(root.adjoint() * root + shift * identity(d));
  };
  const Matrix m = build(c);
  const Matrix m_lower = build(c - 1.0);
  if (norm2(m - m_lower) > tol.eq_abs * std::max(1.0, norm2(m))) {
    throw_invariant("form from relation depends on the choice of c");
  }
  return HermitianForm(a.domain(), m, tol);
}

bool relation_leq(const SelfadjointRelation& h1, const SelfadjointRelation& h2, double c, const Tolerance& tol) {
  if (h1.ambient() != h2.ambient()) throw_precondition("relation_leq: ambient dimension mismatch");
  if (!std::isfinite(c) || c > h1.lower_bound() + tol.psd_clamp || c > h2.lower_bound() + tol.psd_clamp) {
    throw_precondition("relation_leq: c is not a common lower bound");
  }
  if (!h1.domain().contains(h2.domain(), tol)) return false;
  if (h2.domain().dim() == 0) return true;
  const Matrix r1 = ambient_root(h1, c, tol);
  const Matrix r2 = ambient_root(h2, c, tol);
  const Matrix& d = h2.domain().basis();
  return is_psd(d.adjoint() * (r2.adjoint() * r2 - r1.adjoint() * r1) * d, tol);
}

Matrix resolvent(const SelfadjointRelation& a, double lambda, const Tolerance& tol) {
  if (!(lambda < a.lower_bound())) throw_precondition("resolvent: lambda is not below the lower bound");
  const Eigen::Index n = a.ambient();
  if (a.domain().dim() == 0) return Matrix::Zero(n, n);
  const HermitianEigen eig = hermitian_eigen(a.operator_part(), tol);
  RealVector inv(eig.values.size());
  for (Eigen::Index i = 0; i < inv.size(); ++i) inv(i) = 1.0 / (eig.values(i) - lambda);
  const Matrix v = a.domain().basis() * eig.vectors;
  return v * inv.cast<Complex>().asDiagonal() * v.adjoint();
}

SelfadjointRelation relation_from_resolvent(const Matrix& r, double lambda, const Tolerance& tol) {
  const Matrix h = require_hermitian(r, tol, "resolvent");
  const Eigen::Index n = h.rows();
  Matrix cols(2 * n, n);
  cols << h, identity(n) + lambda * h;
  return SelfadjointRelation::from_relation(LinearRelation::from_columns(n, n, cols, tol), tol);
}

}  // namespace formkit
