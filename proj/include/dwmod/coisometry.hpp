#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "dwmod/module_space.hpp"

namespace dwmod {

enum class Construction { DiagonalPair, ScalarFamily, ReciprocalNormFamily, ScaledUnitary, ShiftFamily };

std::string_view to_string(Construction c) noexcept;
/// Accepts the CLI spellings: diagpair, scalar, recipnorm, scaledunitary, shift.
Construction construction_from_string(std::string_view s);

/// a_1..a_n such that every a_j and every a_j - a_i is a scalar multiple of a
/// coisometry.
struct CoisometryFamily {
  std::vector<AlgebraElement> elems;
  Construction construction;
};

/// True iff every element and every pairwise difference passes
/// is_coisometry_multiple.
bool satisfies_family_invariants(const CoisometryFamily& family, const ToleranceConfig& tol = {});

/// {diag(alpha, beta), diag(beta, alpha)} in M_2, followed by t_k * omega * e
/// for each entry of extra_scales, where omega = i (alpha - beta) / |alpha - beta|
/// spans the points equidistant from alpha and beta. Requires |alpha| = |beta|
/// and alpha^2 != beta^2 (gap > tol_eq); throws InvalidParameters otherwise,
/// or when an extra scale is zero.
CoisometryFamily make_diagonal_pair(cplx alpha, cplx beta, std::span<const double> extra_scales = {},
                                    const ToleranceConfig& tol = {});

/// {alpha_j e} in M_d. Throws ZeroScalar.
CoisometryFamily make_scalar_family(std::span<const cplx> alphas, std::size_t d);

/// {e / ||x_j||}. Throws ZeroScalar if some x_j is numerically zero.
CoisometryFamily make_reciprocal_norm_family(std::span<const ModuleElement> xs, const ToleranceConfig& tol = {});

/// {alpha_j u} for a unitary u. Throws ZeroScalar, or InvalidParameters if u
/// is not unitary within tol_eq.
CoisometryFamily make_scaled_unitary_family(std::span<const cplx> alphas, const ComplexMatrix& u,
                                            const ToleranceConfig& tol = {});

/// Finitely supported vectors with Gaussian-integer coefficients; absent
/// indices are zero. All shift-model arithmetic on them is exact.
using ExactScalar = std::complex<long long>;
using ExactVector = std::map<std::size_t, ExactScalar>;

ExactVector basis_vector(std::size_t k);
ExactVector operator+(ExactVector a, const ExactVector& b);
ExactVector operator-(ExactVector a, const ExactVector& b);
ExactVector operator*(ExactScalar s, ExactVector a);

/// A weighted partial injection on {0..N-1}: e_s -> w_s e_{target(s)} where
/// defined, zero elsewhere. Weights are Gaussian units (1, -1, i, -i).
class ShiftOperator {
 public:
  struct Edge {
    std::size_t target;
    ExactScalar weight;
  };

  /// index_map[s] is the image of e_s. Throws InvalidParameters if a weight
  /// is not a unit, a target is >= truncation, or the map is not injective.
  ShiftOperator(std::size_t truncation, std::vector<std::optional<Edge>> index_map);

  std::size_t truncation() const noexcept { return truncation_; }
  const std::vector<std::optional<Edge>>& index_map() const noexcept { return index_map_; }

  ExactVector apply(const ExactVector& v) const;
  ExactVector apply_adjoint(const ExactVector& v) const;

 private:
  std::size_t truncation_;
  std::vector<std::optional<Edge>> index_map_;
  std::vector<std::optional<std::size_t>> preimage_;
};

/// v_0..v_{n-1} on C^N with v_j: e_{n k + j} -> e_k, the adjoints of the
/// isometries e_k -> e_{n k + j}. Requires n >= 2 and N >= n^2.
std::vector<ShiftOperator> make_shift_family(std::size_t n, std::size_t truncation);

}  // namespace dwmod
