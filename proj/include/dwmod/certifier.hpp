#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "dwmod/inequality.hpp"
#include "dwmod/linalg.hpp"

namespace dwmod {

/// Require trace(rho b) = c, i.e. real part c and imaginary part 0.
struct Constraint {
  ComplexMatrix b;
  double c;
};

struct ConstraintSet {
  std::size_t d = 1;
  std::vector<Constraint> targets;
};

/// |trace(rho b_k) - c_k| for each constraint.
std::vector<double> constraint_residuals(const ConstraintSet& cs, const State& state);

/// Lipschitz constant of rho -> (trace(rho b_k))_k in trace norm: sum ||b_k||.
double constraint_lipschitz(const ConstraintSet& cs, const ToleranceConfig& tol = {});

enum class FeasibilityStatus { Feasible, InfeasibleByNorm, ResidualAboveTol };
std::string_view to_string(FeasibilityStatus s) noexcept;

struct FeasibilityResult {
  FeasibilityStatus status;
  std::optional<State> state;  // witness when Feasible, best iterate otherwise (absent for InfeasibleByNorm)
  double residual;             // sqrt(sum_k |trace(rho b_k) - c_k|^2); norm excess for InfeasibleByNorm
  int iterations;
};

struct SolverOptions {
  int random_restarts = 5;
  std::uint64_t seed = 0x5eedULL;
};

/// Searches for a density matrix meeting every constraint.
///
/// A constraint with c_k > ||b_k|| + tol_eq is infeasible for every state and
/// short-circuits to InfeasibleByNorm. For d = 1 the only state is 1 and the
/// constraints are evaluated directly. Otherwise F(rho) = sum_k
/// |trace(rho b_k) - c_k|^2 is minimized by projected gradient with step
/// 1 / (2 sum_k ||b_k||_F^2), projecting onto density matrices through an
/// eigenvalue projection onto the probability simplex. Starts from the
/// maximally mixed state and then `random_restarts` random pure states;
/// Feasible iff sqrt(F) <= tol_feas within tol.max_iter iterations of one
/// start. An empty set is vacuously Feasible at the maximally mixed state.
FeasibilityResult solve_state_feasibility(const ConstraintSet& cs, const ToleranceConfig& tol = {},
                                          const SolverOptions& opts = {});

/// Euclidean projection of the eigenvalues onto the probability simplex.
std::vector<double> project_to_simplex(std::vector<double> values);

/// Nearest density matrix (in Frobenius norm) to the Hermitian part of a.
ComplexMatrix project_to_density(const ComplexMatrix& a, const ToleranceConfig& tol = {});

/// State witness for ||x_1 + ... + x_n|| = ||x_1|| + ... + ||x_n||: constraints
/// phi(<x_i, x_n>) = ||x_i|| ||x_n|| for i < n.
FeasibilityResult triangle_equality_state(std::span<const ModuleElement> xs, const ToleranceConfig& tol = {});

enum class CaseTag { SumNonzero, SumZero };
std::string_view to_string(CaseTag c) noexcept;
CaseTag case_tag_from_string(std::string_view s);

struct Certificate {
  CaseTag case_tag;
  std::size_t i;
  std::optional<std::size_t> l;  // SumZero only
  State state;
  std::vector<double> residuals;
  bool feasible;
};

/// Constraints for the upper-bound equality at index i when sum x_j != 0:
/// phi(sum_j a_i* <x_j, x_k> (a_k - a_i)) = ||sum x_j|| ||a_i|| ||x_k|| ||a_k - a_i||
/// for every k with ||a_k - a_i|| > tol_eq.
ConstraintSet sum_nonzero_constraints(const Instance& inst, const InstanceNorms& norms, std::size_t i,
                                      const ToleranceConfig& tol = {});

/// Constraints for the equality at (i, l) when sum x_j = 0:
/// phi((a_l - a_i)* <x_l, x_k> (a_k - a_i)) = ||a_l - a_i|| ||a_k - a_i|| ||x_l|| ||x_k||
/// for every k != l with ||a_k - a_i|| > tol_eq.
ConstraintSet sum_zero_constraints(const Instance& inst, const InstanceNorms& norms, std::size_t i, std::size_t l,
                                   const ToleranceConfig& tol = {});

/// Tries each index attaining the upper bound within tol_eq, in order, and
/// returns the first feasible certificate. Requires ||sum x_j|| > tol_eq, all
/// a_j nonzero and some a_i != a_j; throws PreconditionViolated otherwise.
std::optional<Certificate> certify_sum_nonzero(const Instance& inst, const ToleranceConfig& tol = {});

/// Sum-zero analogue over (i, l) pairs in lexicographic order. Requires
/// ||sum x_j|| <= tol_eq; throws PreconditionViolated otherwise.
std::optional<Certificate> certify_sum_zero(const Instance& inst, const ToleranceConfig& tol = {});

struct VerifyResult {
  bool valid;
  std::vector<double> residuals;
};

/// Rebuilds the certificate's constraints from the instance and checks the
/// state invariants and every residual against tol_feas.
/// Throws DimensionMismatch if the state does not act on M_d.
VerifyResult verify_certificate(const Instance& inst, const Certificate& cert, const ToleranceConfig& tol = {});

/// Checks a state against an explicit constraint set.
VerifyResult verify_state(const ConstraintSet& cs, const State& state, const ToleranceConfig& tol = {});

/// Scalar-coefficient specialization (a_j = alpha_j e) with constraints in the
/// cis-phase form. Throws PreconditionViolated when some alpha_j is zero or
/// all alpha_j coincide.
std::optional<Certificate> corollary_scalar_condition(std::span<const ModuleElement> xs, std::span<const cplx> alphas,
                                                      const ToleranceConfig& tol = {});

/// alpha_j = 1 / ||x_j||, where the cis phases reduce to signs of norm
/// differences. Throws PreconditionViolated when all ||x_j|| coincide.
std::optional<Certificate> corollary_norm_reciprocal_condition(std::span<const ModuleElement> xs,
                                                               const ToleranceConfig& tol = {});

enum class EqualityVerdict { Consistent, Mismatch, Inconclusive };
std::string_view to_string(EqualityVerdict v) noexcept;

/// Numerical equality test against the certificate search.
struct EqualityAssessment {
  CaseTag case_tag;
  double lhs;
  double bound;          // minimum upper bound
  double gap;            // bound - lhs
  bool equality;         // gap <= 10 tol_feas
  std::optional<Certificate> certificate;
  double best_residual;  // smallest solver residual seen during the search
  EqualityVerdict verdict;
};

/// Runs the appropriate certify_* and cross-checks it against the bound gap.
/// Consistent: certificate found with gap <= 10 tol_feas, or none found with
/// gap > 10 tol_feas. Inconclusive: no certificate while gap <= 10 tol_feas.
/// Mismatch: a certificate on an instance whose gap exceeds 10 tol_feas.
EqualityAssessment assess_equality(const Instance& inst, const ToleranceConfig& tol = {});

}  // namespace dwmod
