#pragma once

#include <cstddef>
#include <vector>

#include "dwmod/coisometry.hpp"
#include "dwmod/module_space.hpp"

namespace dwmod {

/// x_1..x_n in M_{m x d}(C) with coefficients a_1..a_n in M_d(C). Indices are
/// zero-based throughout the library and in every serialized artifact.
struct Instance {
  std::size_t d = 1;
  std::size_t m = 1;
  std::vector<ModuleElement> xs;
  std::vector<AlgebraElement> as;
  Construction family = Construction::ScalarFamily;

  std::size_t n() const noexcept { return xs.size(); }
};

/// Builds an instance from a family, taking dimensions from the elements.
Instance make_instance(std::vector<ModuleElement> xs, const CoisometryFamily& family);

/// Throws InvalidInstance unless n >= 2, dimensions agree, every ||x_j|| > tol_eq
/// and every a_j, a_j - a_i is a scalar multiple of a coisometry.
void validate_instance(const Instance& inst, const ToleranceConfig& tol = {});

/// Every norm the bounds need, computed once.
struct InstanceNorms {
  double lhs;                                // ||sum x_j a_j||
  double sum_norm;                           // ||sum x_j||
  std::vector<double> x_norms;               // ||x_j||
  std::vector<double> a_norms;               // ||a_j||
  std::vector<std::vector<double>> diff;     // diff[i][j] = ||a_j - a_i||
};

InstanceNorms compute_norms(const Instance& inst, const ToleranceConfig& tol = {});

struct IndexedBound {
  double value;
  std::size_t index;  // smallest index attaining value exactly
};

/// Per-index candidates ||sum x_j|| ||a_i|| + sum_j ||x_j|| ||a_j - a_i||.
std::vector<double> upper_candidates(const InstanceNorms& norms);
/// Per-index candidates ||sum x_j|| ||a_i|| - sum_j ||x_j|| ||a_j - a_i||.
std::vector<double> lower_candidates(const InstanceNorms& norms);

IndexedBound dw_upper_bound(const Instance& inst, const ToleranceConfig& tol = {});
IndexedBound dw_lower_bound(const Instance& inst, const ToleranceConfig& tol = {});

struct BoundReport {
  double lhs;
  double upper;
  std::size_t upper_argmin;
  double lower;
  std::size_t lower_argmax;
  double slack_upper;  // upper - lhs
  double slack_lower;  // lhs - lower
};

/// Evaluates both bounds and asserts lower - tol_eq <= lhs <= upper + tol_eq.
/// Throws InvalidInstance, or BoundViolation (which must never happen).
BoundReport check_theorem(const Instance& inst, const ToleranceConfig& tol = {});

/// Bounds for ||sum x_j / ||x_j|| || computed straight from the scalar
/// norms ||x_j|| and ||sum x_j||, independently of the module engine.
BoundReport pecaric_rajic_bounds(std::span<const ModuleElement> xs, const ToleranceConfig& tol = {});

struct KatoReport {
  double sum_norm;        // ||sum x_j||
  double unit_sum_norm;   // ||sum x_j / ||x_j|| ||
  double norm_total;      // sum ||x_j||
  double refined_upper;   // ||sum x_j|| + (n - unit_sum_norm) min ||x_i||, must be <= norm_total
  double reverse_lower;   // ||sum x_j|| + (n - unit_sum_norm) max ||x_i||, must be >= norm_total
  bool refined_upper_holds;
  bool reverse_holds;
  bool pr_sharper;        // the Pecaric-Rajic bounds imply both Kato bounds
};

KatoReport kato_bounds(std::span<const ModuleElement> xs, const ToleranceConfig& tol = {});

struct InequalityRecord {
  double lhs;
  double rhs;
  bool holds;
};

/// Two-point inequalities for ||x/||x|| - y/||y|| ||. Maligranda and Mercer
/// correspond to the summation engine on (x, -y) with reciprocal-norm
/// coefficients; that engine report is included for cross-checking.
struct TwoPointReport {
  InequalityRecord dunkl_williams;  // lhs <= 4||x - y|| / (||x|| + ||y||)
  InequalityRecord maligranda;      // lhs <= (||x - y|| + | ||x|| - ||y|| |) / max
  InequalityRecord mercer;          // lhs >= (||x - y|| - | ||x|| - ||y|| |) / min
  BoundReport engine;               // check_theorem on (x, -y), a_j = e / ||x_j||
};

TwoPointReport classical_two_point(const ModuleElement& x, const ModuleElement& y, const ToleranceConfig& tol = {});

}  // namespace dwmod
