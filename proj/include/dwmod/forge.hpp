#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dwmod/certifier.hpp"
#include "dwmod/coisometry.hpp"
#include "dwmod/inequality.hpp"
#include "dwmod/rng.hpp"

namespace dwmod {

enum class ForgeKind { Random, Equality, NearEquality, SumZero };

std::string_view to_string(ForgeKind k) noexcept;
/// random, equality, nearequality, sumzero.
ForgeKind forge_kind_from_string(std::string_view s);

/// Largest d and m the generators accept.
inline constexpr std::size_t kMaxForgeDim = 8;

struct ForgeSpec {
  std::uint64_t seed = 0;
  std::size_t d = 1;
  std::size_t m = 1;
  std::size_t n = 2;
  Construction family = Construction::ScalarFamily;
  ForgeKind kind = ForgeKind::Random;
  double eps = 1e-2;  // NearEquality only

  /// Throws InvalidSpec: n >= 2, 1 <= d, m <= kMaxForgeDim, eps > 0,
  /// DiagonalPair needs d = 2, ShiftFamily is not an instance family.
  void validate() const;
};

/// Random-stream ids. Each instance component draws from its own stream of
/// the forge seed, so changing n or the family leaves the other draws intact.
enum class ForgeStream : std::uint64_t { Elements = 1, Family = 2, Unitary = 3, Collinear = 4, Noise = 5 };

/// Deterministic instance for a spec.
///
///  Random        x_j i.i.d. complex standard normal (redrawn while ||x_j|| < 0.05),
///                coefficients from the requested family.
///  SumZero       as Random for x_1..x_{n-1}, then x_n = -(x_1 + ... + x_{n-1}).
///  Equality      x_j = t_j y, a_j = alpha_j u with t_j, alpha_j > 0 and u a
///                random unitary; the family tag is ScaledUnitary.
///  NearEquality  an Equality instance with eps * (complex normal) added to every x_j.
///
/// Throws InvalidSpec.
Instance forge(const ForgeSpec& spec);

/// Collinear equality instance x_j = t_j y, a_j = alpha_j u.
Instance forge_equality(const ModuleElement& y, std::span<const double> ts, std::span<const double> alphas,
                        const ComplexMatrix& u);

/// Haar-like unitary: Gram-Schmidt on a complex normal matrix.
ComplexMatrix random_unitary(Rng& rng, std::size_t d);

/// Random d = 2 constraint set: 1..3 constraints, b_k complex normal
/// (Hermitian when `hermitian`), c_k uniform on [0, 1.2 ||b_k||].
ConstraintSet random_constraint_set(std::uint64_t seed, bool hermitian);

/// Feasible-by-construction d = 2 set: c_k = trace(rho0 b_k) for a random
/// state rho0, with b_k shifted by a multiple of e so that c_k is real and >= 0.
ConstraintSet feasible_constraint_set(std::uint64_t seed);

struct OracleResult {
  bool feasible;
  double margin;                  // best max-residual over the grid
  std::array<double, 3> witness;  // Bloch vector attaining the margin
  double lipschitz;               // sum_k ||b_k||
  double step;                    // grid spacing h
};

inline constexpr double kBlochGridStep = 0.02;

/// Enumerates rho = (I + x s1 + y s2 + z s3) / 2 over the cubic grid of
/// spacing h inside the unit ball; feasible iff the best max-residual is at
/// most tol_feas + L h with L = sum_k ||b_k||. Throws WrongDimension unless d = 2.
OracleResult bloch_grid_oracle(const ConstraintSet& cs, const ToleranceConfig& tol = {},
                               double step = kBlochGridStep);

struct ShiftViolation {
  std::string identity;  // "vv*=e", "v*v=p", "pp=0", "vw*=0", "(v-w)(v-w)*=2e"
  std::size_t j;
  std::size_t k;
  std::size_t basis;
};

struct ShiftCheckReport {
  std::size_t n;
  std::size_t truncation;
  std::size_t window;  // floor(N / n): range-side identities hold on e_0..e_{window-1}
  std::size_t checks;
  std::vector<ShiftViolation> violations;
};

/// Exact verification of, for all j != k:
///   v_j v_j* = e and (v_j - v_k)(v_j - v_k)* = 2e on e_0..e_{window-1},
///   v_j* v_j = p_j, p_j p_k = 0 and v_j v_k* = 0 on e_0..e_{N-1},
/// where p_j projects onto indices congruent to j mod n.
ShiftCheckReport exhaustive_index_check(std::span<const ShiftOperator> ops, std::size_t truncation);

}  // namespace dwmod
