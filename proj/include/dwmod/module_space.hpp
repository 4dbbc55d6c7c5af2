#pragma once

#include <cstddef>

#include "dwmod/linalg.hpp"
#include "dwmod/matrix.hpp"

namespace dwmod {

/// Element of the algebra M_d(C).
class AlgebraElement {
 public:
  explicit AlgebraElement(ComplexMatrix mat);

  static AlgebraElement identity(std::size_t d) { return AlgebraElement(ComplexMatrix::identity(d)); }
  static AlgebraElement scalar(cplx alpha, std::size_t d) {
    return AlgebraElement(ComplexMatrix::identity(d) * alpha);
  }

  const ComplexMatrix& mat() const noexcept { return mat_; }
  std::size_t algebra_dim() const noexcept { return mat_.rows(); }

  friend bool operator==(const AlgebraElement&, const AlgebraElement&) = default;

 private:
  ComplexMatrix mat_;
};

/// Element of the right M_d(C)-module M_{m x d}(C) with <x, y> = x* y.
/// With d = 1 this is the inner-product space C^m (elements are column vectors).
class ModuleElement {
 public:
  explicit ModuleElement(ComplexMatrix mat) : mat_(std::move(mat)) {}

  static ModuleElement zero(std::size_t m, std::size_t d) { return ModuleElement(ComplexMatrix::zeros(m, d)); }

  const ComplexMatrix& mat() const noexcept { return mat_; }
  std::size_t algebra_dim() const noexcept { return mat_.cols(); }
  std::size_t rows() const noexcept { return mat_.rows(); }

  friend bool operator==(const ModuleElement&, const ModuleElement&) = default;

 private:
  ComplexMatrix mat_;
};

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement adjoint(const AlgebraElement& a);

ModuleElement operator+(const ModuleElement& x, const ModuleElement& y);
ModuleElement operator-(const ModuleElement& x, const ModuleElement& y);
ModuleElement operator-(const ModuleElement& x);
ModuleElement operator*(cplx s, const ModuleElement& x);

/// <x, y> = x* y. Throws DimensionMismatch.
AlgebraElement inner_product(const ModuleElement& x, const ModuleElement& y);

/// x a. Throws DimensionMismatch.
ModuleElement right_action(const ModuleElement& x, const AlgebraElement& a);

/// ||x|| = ||<x, x>||^{1/2}, the largest singular value of x.
double module_norm(const ModuleElement& x, const ToleranceConfig& tol = {});

/// C*-norm of an algebra element.
double algebra_norm(const AlgebraElement& a, const ToleranceConfig& tol = {});

/// Numerical zero test: ||x|| <= tol_eq.
bool is_zero(const ModuleElement& x, const ToleranceConfig& tol = {});
bool is_zero(const AlgebraElement& a, const ToleranceConfig& tol = {});

/// Sum of a nonempty list of module elements.
ModuleElement sum(std::span<const ModuleElement> xs);

struct CoisometryNormCheck {
  double lhs;         // ||x a||
  double rhs;         // ||x|| ||a||
  bool holds;         // |lhs - rhs| <= tol_eq
  bool zero_product;  // ||x a|| <= tol_eq implies x ~ 0 or a ~ 0
};

/// ||x a|| = ||x|| ||a|| for a scalar multiple of a coisometry, plus the
/// zero-divisor consequence. Throws NotCoisometryMultiple.
CoisometryNormCheck check_lemma_coisometry_norm(const ModuleElement& x, const AlgebraElement& a,
                                                const ToleranceConfig& tol = {});

}  // namespace dwmod
