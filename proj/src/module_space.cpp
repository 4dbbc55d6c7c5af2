#include "dwmod/module_space.hpp"

#include <cmath>
#include <string>

#include "dwmod/error.hpp"

namespace dwmod {

namespace {

void require_same_algebra(std::size_t d1, std::size_t d2, const char* op) {
  if (d1 != d2) {
    throw Error(Errc::DimensionMismatch,
                std::string(op) + ": algebra dimensions " + std::to_string(d1) + " and " + std::to_string(d2));
  }
}

}  // namespace

AlgebraElement::AlgebraElement(ComplexMatrix mat) : mat_(std::move(mat)) {
  if (!mat_.is_square()) throw Error(Errc::DimensionMismatch, "algebra element must be square");
}

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) { return AlgebraElement(a.mat() + b.mat()); }
AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) { return AlgebraElement(a.mat() - b.mat()); }
AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) { return AlgebraElement(a.mat() * b.mat()); }
AlgebraElement adjoint(const AlgebraElement& a) { return AlgebraElement(adjoint(a.mat())); }

ModuleElement operator+(const ModuleElement& x, const ModuleElement& y) { return ModuleElement(x.mat() + y.mat()); }
ModuleElement operator-(const ModuleElement& x, const ModuleElement& y) { return ModuleElement(x.mat() - y.mat()); }
ModuleElement operator-(const ModuleElement& x) { return ModuleElement(-x.mat()); }
ModuleElement operator*(cplx s, const ModuleElement& x) { return ModuleElement(s * x.mat()); }

AlgebraElement inner_product(const ModuleElement& x, const ModuleElement& y) {
  require_same_algebra(x.algebra_dim(), y.algebra_dim(), "inner_product");
  return AlgebraElement(adjoint_times(x.mat(), y.mat()));
}

ModuleElement right_action(const ModuleElement& x, const AlgebraElement& a) {
  require_same_algebra(x.algebra_dim(), a.algebra_dim(), "right_action");
  return ModuleElement(x.mat() * a.mat());
}

double module_norm(const ModuleElement& x, const ToleranceConfig& tol) { return op_norm(x.mat(), tol); }

double algebra_norm(const AlgebraElement& a, const ToleranceConfig& tol) { return op_norm(a.mat(), tol); }

bool is_zero(const ModuleElement& x, const ToleranceConfig& tol) { return module_norm(x, tol) <= tol.tol_eq; }

bool is_zero(const AlgebraElement& a, const ToleranceConfig& tol) { return algebra_norm(a, tol) <= tol.tol_eq; }

ModuleElement sum(std::span<const ModuleElement> xs) {
  if (xs.empty()) throw Error(Errc::DimensionMismatch, "sum of empty list");
  ComplexMatrix total = xs.front().mat();
  for (std::size_t j = 1; j < xs.size(); ++j) total += xs[j].mat();
  return ModuleElement(std::move(total));
}

CoisometryNormCheck check_lemma_coisometry_norm(const ModuleElement& x, const AlgebraElement& a,
                                                const ToleranceConfig& tol) {
  const auto lambda = is_coisometry_multiple(a.mat(), tol);
  if (!lambda) throw Error(Errc::NotCoisometryMultiple, "a a* is not a scalar multiple of the identity");
  const double lhs = module_norm(right_action(x, a), tol);
  const double norm_x = module_norm(x, tol);
  const double rhs = norm_x * *lambda;
  const bool zero_product = lhs > tol.tol_eq || norm_x <= tol.tol_eq || *lambda <= tol.tol_eq;
  return {lhs, rhs, std::abs(lhs - rhs) <= tol.tol_eq, zero_product};
}

}  // namespace dwmod
