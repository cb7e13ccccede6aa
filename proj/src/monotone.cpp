#include "formkit/monotone.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "formkit/decomp.hpp"

namespace formkit {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

Matrix identity(Eigen::Index n) { return Matrix::Identity(n, n); }

double representing_shift(const HermitianForm& t, const Tolerance& tol) {
  return t.is_vacuous() ? 0.0 : lower_bound(t, tol);
}

Matrix resolvent_of_form(const HermitianForm& t, double lambda, const Tolerance& tol) {
  return resolvent(represent_form(t, representing_shift(t, tol), tol), lambda, tol);
}

// Index of the first entry equal to its successor.
std::size_t stabilization_index(const std::vector<HermitianForm>& forms, const Tolerance& tol) {
  for (std::size_t i = 0; i + 1 < forms.size(); ++i) {
    if (forms[i].same_as(forms[i + 1], tol)) return i;
  }
  throw_precondition("chain does not stabilize within its " + std::to_string(forms.size()) + " entries");
}

}  // namespace

FormSequence::FormSequence(AffineFamily family, Monotonicity sense, const Tolerance& tol)
    : sense_(sense) {
  if (family.r.ambient() != family.s.ambient()) throw_invariant("affine family: r and s live in different spaces");
  if (!family.r.domain().same_as(family.s.domain(), tol)) {
    throw_invariant("affine family: dom r must equal dom s");
  }
  if (lower_bound(family.s, tol) < -tol.psd_clamp) throw_invariant("affine family: s is not nonnegative");
  family.s = family.s.restricted_to(family.r.domain(), tol);
  encoding_ = std::move(family);
}

FormSequence::FormSequence(ExplicitChain chain, Monotonicity sense, const Tolerance& tol) : sense_(sense) {
  if (chain.forms.empty()) throw_invariant("chain must contain at least one form");
  const Eigen::Index n = chain.forms.front().ambient();
  for (std::size_t i = 0; i < chain.forms.size(); ++i) {
    if (chain.forms[i].ambient() != n) throw_invariant("chain forms live in different spaces");
    if (i == 0) continue;
    const HermitianForm& prev = chain.forms[i - 1];
    const HermitianForm& next = chain.forms[i];
    const bool ordered = sense == Monotonicity::nondecreasing ? leq(prev, next, tol) : leq(next, prev, tol);
    if (!ordered) throw_invariant("chain is not monotone at entry " + std::to_string(i + 1));
  }
  if (sense == Monotonicity::nonincreasing && chain.lower_bound) {
    for (const HermitianForm& t : chain.forms) {
      if (*chain.lower_bound > lower_bound(t, tol) + tol.psd_clamp) {
        throw_invariant("chain: supplied value is not a common lower bound");
      }
    }
  }
  encoding_ = std::move(chain);
}

HermitianForm FormSequence::term(int n) const {
  if (n < 1) throw_precondition("sequence terms are indexed from 1");
  if (const auto* family = std::get_if<AffineFamily>(&encoding_)) {
    const double weight = sense_ == Monotonicity::nondecreasing ? n : 1.0 / n;
    return HermitianForm(family->r.domain(), family->r.matrix() + weight * family->s.matrix());
  }
  const auto& forms = std::get<ExplicitChain>(encoding_).forms;
  return forms[std::min<std::size_t>(static_cast<std::size_t>(n), forms.size()) - 1];
}

double FormSequence::common_lower_bound(const Tolerance& tol) const {
  if (sense_ == Monotonicity::nondecreasing) return lower_bound(term(1), tol);
  if (const auto* family = std::get_if<AffineFamily>(&encoding_)) return lower_bound(family->r, tol);
  const ExplicitChain& c = std::get<ExplicitChain>(encoding_);
  if (c.lower_bound) return *c.lower_bound;
  double lowest = kInfinity;
  for (const HermitianForm& t : c.forms) lowest = std::min(lowest, lower_bound(t, tol));
  return lowest;
}

HermitianForm limit_nondecreasing(const FormSequence& seq, const Tolerance& tol) {
  if (seq.sense() != Monotonicity::nondecreasing) throw_precondition("sequence is not nondecreasing");
  if (seq.is_affine()) {
    // sup_n (r + n s)[x] is finite exactly when s[x] = 0.
    const AffineFamily& f = seq.affine();
    return f.r.restricted_to(kernel(f.s, 0.0, tol), tol);
  }
  const auto& forms = seq.chain().forms;
  return forms[stabilization_index(forms, tol)];
}

HermitianForm limit_nonincreasing(const FormSequence& seq, const Tolerance& tol) {
  if (seq.sense() != Monotonicity::nonincreasing) throw_precondition("sequence is not nonincreasing");
  HermitianForm out;
  int checked_terms = 1;
  if (seq.is_affine()) {
    out = seq.affine().r;
  } else {
    const auto& forms = seq.chain().forms;
    out = forms[stabilization_index(forms, tol)];
    checked_terms = static_cast<int>(forms.size());
  }
  const double c = seq.common_lower_bound(tol);
  if (c > representing_shift(out, tol) + tol.psd_clamp && !out.is_vacuous()) {
    throw_invariant("limit falls below the common lower bound");
  }
  for (int n = 1; n <= checked_terms; ++n) {
    if (!leq(out, seq.term(n), tol)) throw_invariant("limit is not below t_" + std::to_string(n));
  }
  return out;
}

HermitianForm limit(const FormSequence& seq, const Tolerance& tol) {
  return seq.sense() == Monotonicity::nondecreasing ? limit_nondecreasing(seq, tol)
                                                    : limit_nonincreasing(seq, tol);
}

bool bounded_above_by(const FormSequence& seq, const HermitianForm& u, int n_terms, const Tolerance& tol) {
  const int count = seq.is_affine() ? n_terms : static_cast<int>(seq.chain().forms.size());
  for (int n = 1; n <= count; ++n) {
    if (!leq(seq.term(n), u, tol)) return false;
  }
  return true;
}

Matrix limit_resolvent(const FormSequence& seq, double lambda, const Tolerance& tol) {
  if (!seq.is_affine()) {
    const auto& forms = seq.chain().forms;
    Matrix previous = resolvent_of_form(forms.front(), lambda, tol);
    for (std::size_t i = 1; i < forms.size(); ++i) {
      Matrix current = resolvent_of_form(forms[i], lambda, tol);
      if (norm2(current - previous) <= tol.eq_abs) return current;
      previous = std::move(current);
    }
    throw_precondition("resolvents of the chain do not stabilize");
  }
  const AffineFamily& f = seq.affine();
  if (seq.sense() == Monotonicity::nonincreasing) {
    // r + s / n depends continuously on 1 / n; the limit sits at 1 / n = 0.
    return resolvent_of_form(f.r, lambda, tol);
  }
  // (R + n S - lambda)^{-1} on dom r tends to the inverse compressed to ker S.
  const Subspace ker_coords = null_space(f.s.matrix(), tol);
  const Matrix& n_basis = ker_coords.basis();
  const Matrix compressed = n_basis.adjoint() * (f.r.matrix() - lambda * identity(f.r.domain_dim())) * n_basis;
  if (compressed.rows() > 0 && !(min_eigenvalue(compressed, tol) > 0.0)) {
    throw_precondition("limit_resolvent: lambda is not below the limit's lower bound");
  }
  const Matrix b = f.r.domain().basis() * n_basis;
  const Matrix inner = compressed.rows() > 0 ? Matrix(compressed.inverse()) : Matrix(0, 0);
  return b * inner * b.adjoint();
}

std::optional<double> fit_decay_exponent(const std::vector<double>& errors, double floor) {
  const std::size_t n_max = errors.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (std::size_t n = (n_max + 1) / 2; n <= n_max; ++n) {
    const double e = errors[n - 1];
    if (n == 0 || !(e > floor)) continue;
    const double x = std::log(static_cast<double>(n));
    const double y = std::log(e);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count < 2) return std::nullopt;
  const double denom = count * sxx - sx * sx;
  if (denom == 0.0) return std::nullopt;
  return -(count * sxy - sx * sy) / denom;
}

ConvergenceReport resolvent_convergence(const FormSequence& seq, double lambda, int n_max, double threshold,
                                        const Tolerance& tol) {
  if (n_max < 3) throw_precondition("resolvent_convergence: n_max must be at least 3");
  const double c = seq.common_lower_bound(tol);
  if (!(lambda < c - tol.psd_clamp)) throw_precondition("lambda is not below the common lower bound");
  ConvergenceReport report;
  report.lambda = lambda;
  report.threshold = threshold;
  const Matrix limit_r = limit_resolvent(seq, lambda, tol);
  for (int n = 1; n <= n_max; ++n) {
    report.errors.push_back(norm2(resolvent_of_form(seq.term(n), lambda, tol) - limit_r));
  }
  report.monotone_errors = true;
  for (std::size_t i = 1; i < report.errors.size(); ++i) {
    if (report.errors[i] > report.errors[i - 1] + tol.eq_abs) report.monotone_errors = false;
  }
  report.below_threshold = report.errors.back() <= threshold;
  report.exponent = fit_decay_exponent(report.errors, tol.eq_abs);
  return report;
}

LimitConnection limit_relation_connection(const FormSequence& seq, const Tolerance& tol) {
  if (seq.sense() != Monotonicity::nonincreasing) {
    throw_precondition("limit_relation_connection needs a nonincreasing sequence");
  }
  LimitConnection out;
  out.t = limit_nonincreasing(seq, tol);
  double c = seq.common_lower_bound(tol);
  if (!std::isfinite(c)) c = 0.0;
  const double lambda = c - 1.0;
  const SelfadjointRelation a_inf = relation_from_resolvent(limit_resolvent(seq, lambda, tol), lambda, tol);
  out.t_inf = form_from_relation(a_inf, std::min(c, a_inf.lower_bound()), tol);

  const HermitianForm t_reg = lebesgue_decomposition(out.t, std::min(c, representing_shift(out.t, tol)), tol).t1;
  out.closure_of_regular_part = t_reg.closure().same_as(out.t_inf, tol);
  out.closable = out.t_inf.domain().contains(out.t.domain(), tol) &&
                 out.t_inf.restricted_to(out.t.domain(), tol).same_as(out.t, tol);
  out.closed = out.t.same_as(out.t_inf, tol);

  const bool t_singular = classify(shift(out.t, -c), tol).singular;
  const Eigen::Index d = a_inf.domain().dim();
  const bool a_singular = norm2(a_inf.operator_part() - c * identity(d)) <= tol.eq_abs;
  out.singular_matches = t_singular == a_singular;
  std::ostringstream cert;
  cert << "finite dimension: every t_n is closed, so t is closed and clos t_reg = t = t_inf; "
       << "singularity of t - c and of A_inf - c both reduce to a zero test ("
       << (t_singular ? "zero" : "nonzero") << ")";
  out.certificate = cert.str();
  return out;
}

}  // namespace formkit
