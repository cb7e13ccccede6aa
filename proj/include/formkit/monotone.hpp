#pragma once

// Monotone sequences of semibounded forms, their limits, and the convergence
// of the associated selfadjoint relations in the strong resolvent sense.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "formkit/form.hpp"
#include "formkit/represent.hpp"

namespace formkit {

enum class Monotonicity { nondecreasing, nonincreasing };

/// t_n = r + n s (nondecreasing) or t_n = r + s / n (nonincreasing), n >= 1.
struct AffineFamily {
  HermitianForm r;
  HermitianForm s;
};

/// A finite monotone chain; it must become constant before it ends.
struct ExplicitChain {
  std::vector<HermitianForm> forms;
  /// Common lower bound for nonincreasing chains; min m(t_n) when absent.
  std::optional<double> lower_bound;
};

class FormSequence {
 public:
  /// Validates the encoding's invariants (s >= 0 and dom r = dom s for affine
  /// families; monotone order and a common lower bound for chains).
  FormSequence(AffineFamily family, Monotonicity sense, const Tolerance& tol = {});
  FormSequence(ExplicitChain chain, Monotonicity sense, const Tolerance& tol = {});

  Monotonicity sense() const noexcept { return sense_; }
  bool is_affine() const noexcept { return std::holds_alternative<AffineFamily>(encoding_); }
  const AffineFamily& affine() const { return std::get<AffineFamily>(encoding_); }
  const ExplicitChain& chain() const { return std::get<ExplicitChain>(encoding_); }

  /// t_n for n >= 1. A chain is constant past its last entry.
  HermitianForm term(int n) const;

  /// c with c <= m(t_n) for every n.
  double common_lower_bound(const Tolerance& tol = {}) const;

 private:
  std::variant<AffineFamily, ExplicitChain> encoding_;
  Monotonicity sense_;
};

/// Limit of a nondecreasing sequence: dom t = {x : sup t_n[x] < infinity}.
HermitianForm limit_nondecreasing(const FormSequence& seq, const Tolerance& tol = {});

/// Limit of a nonincreasing sequence: dom t = union of dom t_n.
HermitianForm limit_nonincreasing(const FormSequence& seq, const Tolerance& tol = {});

HermitianForm limit(const FormSequence& seq, const Tolerance& tol = {});

/// Whether t_n <= u holds for n = 1 .. n_terms (every entry for a chain).
bool bounded_above_by(const FormSequence& seq, const HermitianForm& u, int n_terms, const Tolerance& tol = {});

/// Resolvent at lambda of the limit relation lim A_{t_n}, computed from the
/// sequence data rather than from the limit form.
Matrix limit_resolvent(const FormSequence& seq, double lambda, const Tolerance& tol = {});

struct ConvergenceReport {
  double lambda = 0.0;
  std::vector<double> errors;       ///< |R_n - R_inf| for n = 1 .. n_max
  std::optional<double> exponent;   ///< p in error ~ n^{-p}, fitted on the tail
  bool monotone_errors = false;     ///< errors never increase
  bool below_threshold = false;     ///< final error <= threshold
  double threshold = 0.0;
};

/// Spectral-norm distance between (A_{t_n} - lambda)^{-1} and the resolvent of
/// the limit relation, for n = 1 .. n_max.
ConvergenceReport resolvent_convergence(const FormSequence& seq, double lambda, int n_max, double threshold,
                                        const Tolerance& tol = {});

/// Least-squares slope p of log(error) against -log(n) over the upper half of
/// the table. Errors at or below `floor` are treated as zero; empty when fewer
/// than two errors above it are available there.
std::optional<double> fit_decay_exponent(const std::vector<double>& errors, double floor = 0.0);

struct LimitConnection {
  HermitianForm t;       ///< the limit form
  HermitianForm t_inf;   ///< form of the resolvent limit A_inf
  bool closure_of_regular_part = false;  ///< clos t_reg = t_inf
  bool closable = false;                 ///< t is contained in t_inf
  bool closed = false;                   ///< t = t_inf
  bool singular_matches = false;         ///< t singular iff A_inf - c singular
  std::string certificate;
};

/// Nonincreasing sequences of closed forms: A_{t_n} -> A_inf, t_inf the form of
/// A_inf, and clos t_reg = t_inf.
LimitConnection limit_relation_connection(const FormSequence& seq, const Tolerance& tol = {});

}  // namespace formkit
