#pragma once

// Sum decompositions t = t1 + t2 of semibounded forms, parametrized by a
// nonnegative contraction K on the codomain of a representing map Q of t - c:
//
//   t1[x, y] = c <x, y> + <(I - K)^{1/2} Q x, (I - K)^{1/2} Q y>
//   t2[x, y] = <K^{1/2} Q x, K^{1/2} Q y>
//
// plus parallel sums, which measure how much t1 - c and t2 interact.

#include <string>

#include "formkit/form.hpp"

namespace formkit {

/// Nonnegative Hermitian contraction.
class ContractionParam {
 public:
  ContractionParam() = default;
  explicit ContractionParam(const Matrix& k, const Tolerance& tol = {});

  const Matrix& matrix() const noexcept { return k_; }
  Eigen::Index dim() const noexcept { return k_.rows(); }

  bool is_projection(const Tolerance& tol = {}) const;

 private:
  Matrix k_;
};

struct DecompositionFlags {
  bool mutually_singular = false;
  bool minimal_column = false;
  bool is_lebesgue_type = false;
};

struct SumDecomposition {
  HermitianForm t1;
  HermitianForm t2;
  ContractionParam k;
  DecompositionFlags flags;
  std::string certificate;
};

SumDecomposition decompose_by_contraction(const HermitianForm& t, double c, const ContractionParam& k,
                                          const Tolerance& tol = {});

/// The unique contraction K, on the codomain of the minimal representing map
/// of t - c, that generates the decomposition t = t1 + t2.
ContractionParam recover_contraction(const HermitianForm& t, double c, const HermitianForm& t1,
                                     const HermitianForm& t2, const Tolerance& tol = {});

struct RecoveredContraction {
  ContractionParam k;
  RepresentingMap q;          ///< the map K lives on (minimal)
  bool minimalized = false;   ///< the supplied map was not minimal
};

/// Same, relative to a caller-supplied representing map of t - c. A map that
/// is not minimal is replaced by its minimal compression and flagged.
RecoveredContraction recover_contraction(const RepresentingMap& q, const HermitianForm& t1,
                                         const HermitianForm& t2, const Tolerance& tol = {});

/// col(Q1, Q2), a representing map of t1 + t2 - c.
RepresentingMap column_map(const RepresentingMap& q1, const RepresentingMap& q2, const Tolerance& tol = {});

/// Whether col((I - K)^{1/2} Q, K^{1/2} Q) has dense range in
/// clos ran (I - K) (+) clos ran K, for the minimal Q of t - c.
bool column_minimal(const HermitianForm& t, double c, const ContractionParam& k, const Tolerance& tol = {});

/// clos ran (I - K) K, the overlap of clos ran (I - K) and clos ran K.
Subspace overlap_space(const ContractionParam& k, const Tolerance& tol = {});

/// A : B = A - A (A + B)^+ A for nonnegative A, B.
Matrix parallel_sum_operators(const Matrix& a, const Matrix& b, const Tolerance& tol = {});

/// h1 : h2 from the minimizer of h1[h + x] + h2[h] over h in dom.
HermitianForm parallel_sum_forms(const HermitianForm& h1, const HermitianForm& h2, const Tolerance& tol = {});

/// Distance between h1 : h2 and the form <(I - K) K Q x, Q y>, where K is
/// recovered from h1 + h2 = h with minimal Q.
double parallel_sum_dual_path_residual(const HermitianForm& h1, const HermitianForm& h2,
                                       const Tolerance& tol = {});

/// h1 : h2 = 0
bool is_mutually_singular(const HermitianForm& h1, const HermitianForm& h2, const Tolerance& tol = {});

/// t = t_reg + t_sing from the split Q = (I - P0) Q + P0 Q, P0 the projection
/// onto mul Q**. In finite dimension mul Q** = 0, so t_sing = 0; the result
/// carries a certificate saying so.
SumDecomposition lebesgue_decomposition(const HermitianForm& t, double c, const Tolerance& tol = {});

struct LebesgueUniqueness {
  bool unique = true;
  std::string certificate;
};

/// The Lebesgue decomposition is the only Lebesgue type decomposition iff
/// t_reg is bounded, which always holds in finite dimension.
LebesgueUniqueness lebesgue_uniqueness(const HermitianForm& t, const Tolerance& tol = {});

struct LebesgueTypeConditions {
  bool cond_reg = false;
  bool cond_sing = false;
  bool is_lebesgue_type() const noexcept { return cond_reg && cond_sing; }
};

/// cond_reg: clos{k in clos ran(I - K) : (I - K)^{1/2} k in dom Q*} = clos ran(I - K)
/// cond_sing: ran K^{1/2} intersected with dom Q* lies in ker Q*
LebesgueTypeConditions lebesgue_type_conditions(const RepresentingMap& q, const ContractionParam& k,
                                                const Tolerance& tol = {});
LebesgueTypeConditions lebesgue_type_conditions(const HermitianForm& t, double c, const ContractionParam& k,
                                                const Tolerance& tol = {});

}  // namespace formkit
