#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "dwmod/matrix.hpp"

namespace dwmod {

/// Numeric tolerances shared by every equality and feasibility decision.
struct ToleranceConfig {
  double tol_eig = 1e-12;   // eigensolver / Hermitian / state invariants
  double tol_eq = 1e-9;     // equality decisions
  double tol_feas = 1e-7;   // feasibility residual
  int max_iter = 5000;      // Jacobi sweeps and solver iterations

  /// Throws InvalidParameters unless all fields are positive and tol_eig <= tol_feas.
  void validate() const;
};

struct HermEig {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // orthonormal columns, same order
};

/// Largest Hermitian size the Jacobi solver accepts.
inline constexpr std::size_t kMaxEigDim = 64;

/// Cyclic Jacobi eigendecomposition of a Hermitian matrix.
///
/// Rotations run in fixed row-major (p, q) order, so output is deterministic.
/// Each eigenvector is rotated so its largest-modulus component (first one on
/// exact ties) is real and nonnegative. Throws NotHermitian, NoConvergence
/// (after tol.max_iter sweeps) or DimensionMismatch (non-square, or larger
/// than kMaxEigDim).
HermEig herm_eig(const ComplexMatrix& a, const ToleranceConfig& tol = {});

/// V diag(values) V*.
ComplexMatrix reconstruct(const ComplexMatrix& vectors, const std::vector<double>& values);

/// Largest singular value, sqrt(lambda_max(a* a)).
double op_norm(const ComplexMatrix& a, const ToleranceConfig& tol = {});

/// Positive square root of a PSD matrix. Eigenvalues in [-tol_feas, 0) are
/// clamped to zero; anything more negative raises NotPSD.
ComplexMatrix psd_sqrt(const ComplexMatrix& a, const ToleranceConfig& tol = {});

/// If a a* = lambda^2 I, returns lambda = ||a||; absent otherwise. The
/// candidate lambda^2 is trace(a a*)/d; acceptance is
/// ||a a* - lambda^2 I||_F <= tol_eq * max(1, lambda^2).
std::optional<double> is_coisometry_multiple(const ComplexMatrix& a, const ToleranceConfig& tol = {});

/// A density matrix (Hermitian, PSD, unit trace) realizing the state
/// a -> trace(rho a) on M_d.
class State {
 public:
  /// Validates the density-matrix invariants at tol_eig; throws InvalidState.
  explicit State(ComplexMatrix rho, const ToleranceConfig& tol = {});

  static State maximally_mixed(std::size_t d);
  /// |v><v| / <v|v>; v must be nonzero.
  static State pure(std::span<const cplx> v);

  const ComplexMatrix& rho() const noexcept { return rho_; }
  std::size_t dim() const noexcept { return rho_.rows(); }

 private:
  struct Unchecked {};
  State(ComplexMatrix rho, Unchecked) : rho_(std::move(rho)) {}
  ComplexMatrix rho_;
};

/// Checks the density-matrix invariants without throwing.
bool is_density_matrix(const ComplexMatrix& rho, const ToleranceConfig& tol = {});

/// trace(rho a). Throws DimensionMismatch.
cplx apply_state(const State& state, const ComplexMatrix& a);

}  // namespace dwmod
