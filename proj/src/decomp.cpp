#include "formkit/decomp.hpp"

#include <cmath>
#include <sstream>

namespace formkit {

namespace {

Matrix identity(Eigen::Index n) { return Matrix::Identity(n, n); }

void require_nonnegative(const HermitianForm& h, const Tolerance& tol, const char* what) {
  if (lower_bound(h, tol) < -tol.psd_clamp) throw_precondition(std::string(what) + " is not nonnegative");
}

// Matrix of h2 in the domain basis of h1, after checking that the domains agree.
Matrix aligned_matrix(const HermitianForm& h1, const HermitianForm& h2, const Tolerance& tol) {
  if (!h1.domain().same_as(h2.domain(), tol)) throw_precondition("forms have different domains");
  return h2.restricted_to(h1.domain(), tol).matrix();
}

// Form c <x, y> + <A q x, q y> on the domain of q.
HermitianForm form_through(const RepresentingMap& q, const Matrix& a, double c) {
  const Eigen::Index d = q.domain.dim();
  const Matrix m = c * identity(d) + q.q.adjoint() * a * q.q;
  return HermitianForm(q.domain, (m + m.adjoint()) / 2.0);
}

}  // namespace

ContractionParam::ContractionParam(const Matrix& k, const Tolerance& tol)
    : k_(require_hermitian(k, tol, "contraction")) {
  if (k_.rows() == 0) return;
  const RealVector ev = hermitian_eigen(k_, tol).values;
  if (ev(0) < -tol.psd_clamp || ev(ev.size() - 1) > 1.0 + tol.psd_clamp) {
    std::ostringstream msg;
    msg << "contraction eigenvalues must lie in [0, 1], found range [" << ev(0) << ", "
        << ev(ev.size() - 1) << "]";
    throw_invariant(msg.str());
  }
}

bool ContractionParam::is_projection(const Tolerance& tol) const {
  return norm2(k_ * k_ - k_) <= tol.eq_abs;
}

SumDecomposition decompose_by_contraction(const HermitianForm& t, double c, const ContractionParam& k,
                                          const Tolerance& tol) {
  const RepresentingMap q = representing_map(t, c, true, tol);
  if (k.dim() != q.codomain_dim) {
    throw_precondition("contraction size " + std::to_string(k.dim()) +
                       " does not match the minimal representing codomain " +
                       std::to_string(q.codomain_dim));
  }
  const Matrix& km = k.matrix();
  SumDecomposition out;
  out.t1 = form_through(q, identity(k.dim()) - km, c);
  out.t2 = form_through(q, km, 0.0);
  out.k = k;
  out.flags.mutually_singular = is_mutually_singular(shift(out.t1, -c), out.t2, tol);
  out.flags.minimal_column = column_minimal(t, c, k, tol);
  out.flags.is_lebesgue_type = lebesgue_type_conditions(q, k, tol).is_lebesgue_type();
  return out;
}

RecoveredContraction recover_contraction(const RepresentingMap& q_in, const HermitianForm& t1,
                                         const HermitianForm& t2, const Tolerance& tol) {
  RecoveredContraction out;
  out.q = q_in;
  if (numerical_rank(q_in.q, tol) != q_in.codomain_dim) {
    out.q = minimalized(q_in, tol);
    out.minimalized = true;
  }
  const RepresentingMap& q = out.q;
  const HermitianForm t = shift(q.represented_form(), q.shift);
  const HermitianForm total = add(t1, t2, tol);
  const double scale = std::max(1.0, norm2(t.matrix()));
  if (!total.domain().same_as(t.domain(), tol) ||
      norm2(total.ambient_matrix() - t.ambient_matrix()) > tol.eq_abs * scale) {
    throw_precondition("recover_contraction: t1 + t2 does not reproduce t");
  }
  require_nonnegative(t2, tol, "t2");
  require_nonnegative(shift(t1, -q.shift), tol, "t1 - c");

  // C2 = Q2 Q^+ maps Q x to Q2 x on ran Q and vanishes on its complement.
  const Matrix q2 = representing_map(t2.restricted_to(q.domain, tol), 0.0, true, tol).q;
  const Matrix c2 = q2 * pinv(q.q, tol);
  const Matrix k = c2.adjoint() * c2;
  out.k = ContractionParam((k + k.adjoint()) / 2.0, tol);
  return out;
}

ContractionParam recover_contraction(const HermitianForm& t, double c, const HermitianForm& t1,
                                     const HermitianForm& t2, const Tolerance& tol) {
  return recover_contraction(representing_map(t, c, true, tol), t1, t2, tol).k;
}

RepresentingMap column_map(const RepresentingMap& q1, const RepresentingMap& q2, const Tolerance& tol) {
  if (!q1.domain.same_as(q2.domain, tol)) throw_precondition("column_map: domains differ");
  if (std::abs(q1.shift - q2.shift) > tol.eq_abs) throw_precondition("column_map: shifts differ");
  const Matrix q2_aligned = q2.q * (q2.domain.basis().adjoint() * q1.domain.basis());
  RepresentingMap out;
  out.domain = q1.domain;
  out.shift = q1.shift;
  out.codomain_dim = q1.codomain_dim + q2.codomain_dim;
  out.q.resize(out.codomain_dim, q1.domain.dim());
  out.q << q1.q, q2_aligned;
  out.minimal = numerical_rank(out.q, tol) == out.codomain_dim;
  return out;
}

bool column_minimal(const HermitianForm& t, double c, const ContractionParam& k, const Tolerance& tol) {
  const RepresentingMap q = representing_map(t, c, true, tol);
  if (k.dim() != q.codomain_dim) throw_precondition("column_minimal: contraction size mismatch");
  const Matrix root_rest = psd_sqrt(identity(k.dim()) - k.matrix(), tol);
  const Matrix root_k = psd_sqrt(k.matrix(), tol);
  Matrix col(2 * k.dim(), q.q.cols());
  col << root_rest * q.q, root_k * q.q;
  return numerical_rank(col, tol) == numerical_rank(root_rest, tol) + numerical_rank(root_k, tol);
}

Subspace overlap_space(const ContractionParam& k, const Tolerance& tol) {
  return orthonormalize((identity(k.dim()) - k.matrix()) * k.matrix(), tol);
}

Matrix parallel_sum_operators(const Matrix& a, const Matrix& b, const Tolerance& tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw_precondition("parallel sum: size mismatch");
  if (!is_psd(a, tol) || !is_psd(b, tol)) throw_precondition("parallel sum: operands must be nonnegative");
  const Matrix p = a - a * pinv(a + b, tol) * a;
  return (p + p.adjoint()) / 2.0;
}

HermitianForm parallel_sum_forms(const HermitianForm& h1, const HermitianForm& h2, const Tolerance& tol) {
  const Matrix m2 = aligned_matrix(h1, h2, tol);
  require_nonnegative(h1, tol, "h1");
  require_nonnegative(h2, tol, "h2");
  const Matrix& m1 = h1.matrix();
  // The minimizer of h1[h + x] + h2[h] solves (M1 + M2) h = -M1 x.
  const Matrix h = -pinv(m1 + m2, tol) * m1;
  const Matrix shifted = h + identity(h.rows());
  const Matrix value = shifted.adjoint() * m1 * shifted + h.adjoint() * m2 * h;
  return HermitianForm(h1.domain(), (value + value.adjoint()) / 2.0, tol);
}

double parallel_sum_dual_path_residual(const HermitianForm& h1, const HermitianForm& h2, const Tolerance& tol) {
  const HermitianForm variational = parallel_sum_forms(h1, h2, tol);
  const HermitianForm total = add(h1, h2, tol);
  const RecoveredContraction rc = recover_contraction(representing_map(total, 0.0, true, tol), h1, h2, tol);
  const Matrix& k = rc.k.matrix();
  const HermitianForm through_k = form_through(rc.q, (identity(k.rows()) - k) * k, 0.0);
  return norm2(variational.ambient_matrix() - through_k.ambient_matrix());
}

bool is_mutually_singular(const HermitianForm& h1, const HermitianForm& h2, const Tolerance& tol) {
  return norm2(parallel_sum_forms(h1, h2, tol).matrix()) <= tol.eq_abs;
}

SumDecomposition lebesgue_decomposition(const HermitianForm& t, double c, const Tolerance& tol) {
  const RepresentingMap q = representing_map(t, c, true, tol);
  // Q** = Q: the graph of Q is already closed.
  const RegularSingularSplit split = regular_singular_split(q.as_relation(tol).closure(), tol);
  const Matrix& d = q.domain.basis();
  RepresentingMap q_reg = q;
  q_reg.q = split.reg.operator_matrix(tol) * d;
  RepresentingMap q_sing = q;
  q_sing.q = split.sing.operator_matrix(tol) * d;

  SumDecomposition out;
  out.t1 = shift(q_reg.represented_form(), c);
  out.t2 = q_sing.represented_form();
  out.k = ContractionParam(split.p0, tol);
  out.flags.mutually_singular = is_mutually_singular(q_reg.represented_form(), out.t2, tol);
  out.flags.minimal_column = column_minimal(t, c, out.k, tol);
  out.flags.is_lebesgue_type = lebesgue_type_conditions(q, out.k, tol).is_lebesgue_type();
  std::ostringstream cert;
  cert << "finite dimension: mul Q** has dimension " << parts(q.as_relation(tol), tol).mul.dim()
       << ", so P0 = 0, t_reg = t and t_sing = 0";
  out.certificate = cert.str();
  return out;
}

LebesgueUniqueness lebesgue_uniqueness(const HermitianForm& t, const Tolerance& tol) {
  const double c = t.is_vacuous() ? 0.0 : lower_bound(t, tol);
  const SumDecomposition leb = lebesgue_decomposition(t, c, tol);
  std::ostringstream cert;
  cert << "finite dimension: t_reg is bounded (norm " << norm2(leb.t1.matrix())
       << "), so the Lebesgue decomposition is the only Lebesgue type decomposition";
  return {true, cert.str()};
}

LebesgueTypeConditions lebesgue_type_conditions(const RepresentingMap& q, const ContractionParam& k,
                                                const Tolerance& tol) {
  if (k.dim() != q.codomain_dim) throw_precondition("lebesgue_type_conditions: contraction size mismatch");
  const Eigen::Index n = k.dim();
  const RelationParts adj = parts(adjoint(q.as_relation(tol), tol), tol);
  const Matrix outside_dom = identity(n) - project(adj.dom);

  LebesgueTypeConditions out;
  const Subspace rest_range = orthonormalize(identity(n) - k.matrix(), tol);
  const Matrix root_rest = psd_sqrt(identity(n) - k.matrix(), tol);
  const Subspace coeffs = null_space(outside_dom * root_rest * rest_range.basis(), tol);
  const Subspace admissible = orthonormalize(rest_range.basis() * coeffs.basis(), tol);
  out.cond_reg = admissible.same_as(rest_range, tol);

  const Subspace root_range = orthonormalize(psd_sqrt(k.matrix(), tol), tol);
  out.cond_sing = adj.ker.contains(intersect(root_range, adj.dom, tol), tol);
  return out;
}

LebesgueTypeConditions lebesgue_type_conditions(const HermitianForm& t, double c, const ContractionParam& k,
                                                const Tolerance& tol) {
  return lebesgue_type_conditions(representing_map(t, c, true, tol), k, tol);
}

}  // namespace formkit
