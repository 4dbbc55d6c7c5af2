#include "dwmod/coisometry.hpp"

#include <cmath>
#include <string>

#include "dwmod/error.hpp"

namespace dwmod {

std::string_view to_string(Construction c) noexcept {
  switch (c) {
    case Construction::DiagonalPair: return "diagpair";
    case Construction::ScalarFamily: return "scalar";
    case Construction::ReciprocalNormFamily: return "recipnorm";
    case Construction::ScaledUnitary: return "scaledunitary";
    case Construction::ShiftFamily: return "shift";
  }
  return "unknown";
}

Construction construction_from_string(std::string_view s) {
  if (s == "diagpair") return Construction::DiagonalPair;
  if (s == "scalar") return Construction::ScalarFamily;
  if (s == "recipnorm") return Construction::ReciprocalNormFamily;
  if (s == "scaledunitary") return Construction::ScaledUnitary;
  if (s == "shift") return Construction::ShiftFamily;
  throw Error(Errc::Parse, "unknown family tag '" + std::string(s) + "'");
}

bool satisfies_family_invariants(const CoisometryFamily& family, const ToleranceConfig& tol) {
  const auto& e = family.elems;
  for (std::size_t j = 0; j < e.size(); ++j) {
    if (!is_coisometry_multiple(e[j].mat(), tol)) return false;
    for (std::size_t i = 0; i < j; ++i)
      if (!is_coisometry_multiple((e[j] - e[i]).mat(), tol)) return false;
  }
  return true;
}

CoisometryFamily make_diagonal_pair(cplx alpha, cplx beta, std::span<const double> extra_scales,
                                    const ToleranceConfig& tol) {
  if (std::abs(std::abs(alpha) - std::abs(beta)) > tol.tol_eq) {
    throw Error(Errc::InvalidParameters, "diagonal pair needs |alpha| = |beta|");
  }
  if (std::abs(alpha * alpha - beta * beta) <= tol.tol_eq) {
    throw Error(Errc::InvalidParameters, "diagonal pair needs alpha^2 != beta^2");
  }
  CoisometryFamily family{{}, Construction::DiagonalPair};
  family.elems.emplace_back(ComplexMatrix::diagonal({alpha, beta}));
  family.elems.emplace_back(ComplexMatrix::diagonal({beta, alpha}));
  const cplx omega = cplx(0.0, 1.0) * (alpha - beta) / std::abs(alpha - beta);
  for (double t : extra_scales) {
    if (t == 0.0) throw Error(Errc::InvalidParameters, "extra diagonal-pair scale must be nonzero");
    family.elems.push_back(AlgebraElement::scalar(t * omega, 2));
  }
  return family;
}

CoisometryFamily make_scalar_family(std::span<const cplx> alphas, std::size_t d) {
  CoisometryFamily family{{}, Construction::ScalarFamily};
  for (const cplx& alpha : alphas) {
    if (alpha == cplx{}) throw Error(Errc::ZeroScalar, "scalar family coefficient is zero");
    family.elems.push_back(AlgebraElement::scalar(alpha, d));
  }
  return family;
}

CoisometryFamily make_reciprocal_norm_family(std::span<const ModuleElement> xs, const ToleranceConfig& tol) {
  std::vector<cplx> alphas;
  alphas.reserve(xs.size());
  for (const ModuleElement& x : xs) {
    const double nrm = module_norm(x, tol);
    if (nrm <= tol.tol_eq) throw Error(Errc::ZeroScalar, "reciprocal norm of a zero element");
    alphas.emplace_back(1.0 / nrm);
  }
  const std::size_t d = xs.empty() ? 1 : xs.front().algebra_dim();
  CoisometryFamily family = make_scalar_family(alphas, d);
  family.construction = Construction::ReciprocalNormFamily;
  return family;
}

CoisometryFamily make_scaled_unitary_family(std::span<const cplx> alphas, const ComplexMatrix& u,
                                            const ToleranceConfig& tol) {
  const auto lambda = is_coisometry_multiple(u, tol);
  if (!lambda || std::abs(*lambda - 1.0) > tol.tol_eq) {
    throw Error(Errc::InvalidParameters, "scaled-unitary family needs a unitary base element");
  }
  CoisometryFamily family{{}, Construction::ScaledUnitary};
  for (const cplx& alpha : alphas) {
    if (alpha == cplx{}) throw Error(Errc::ZeroScalar, "scaled-unitary coefficient is zero");
    family.elems.emplace_back(alpha * u);
  }
  return family;
}

ExactVector basis_vector(std::size_t k) { return ExactVector{{k, ExactScalar{1, 0}}}; }

namespace {

void prune(ExactVector& v) {
  std::erase_if(v, [](const auto& kv) { return kv.second == ExactScalar{}; });
}

bool is_unit(const ExactScalar& w) { return std::norm(w) == 1; }

}  // namespace

ExactVector operator+(ExactVector a, const ExactVector& b) {
  for (const auto& [k, z] : b) a[k] += z;
  prune(a);
  return a;
}

ExactVector operator-(ExactVector a, const ExactVector& b) {
  for (const auto& [k, z] : b) a[k] -= z;
  prune(a);
  return a;
}

ExactVector operator*(ExactScalar s, ExactVector a) {
  for (auto& [k, z] : a) z *= s;
  prune(a);
  return a;
}

ShiftOperator::ShiftOperator(std::size_t truncation, std::vector<std::optional<Edge>> index_map)
    : truncation_(truncation), index_map_(std::move(index_map)), preimage_(truncation) {
  if (index_map_.size() != truncation_) throw Error(Errc::InvalidParameters, "index map length must equal N");
  for (std::size_t s = 0; s < index_map_.size(); ++s) {
    if (!index_map_[s]) continue;
    const Edge& edge = *index_map_[s];
    if (edge.target >= truncation_) throw Error(Errc::InvalidParameters, "shift target outside truncation");
    if (!is_unit(edge.weight)) throw Error(Errc::InvalidParameters, "shift weight is not a unit");
    if (preimage_[edge.target]) throw Error(Errc::InvalidParameters, "shift index map is not injective");
    preimage_[edge.target] = s;
  }
}

ExactVector ShiftOperator::apply(const ExactVector& v) const {
  ExactVector out;
  for (const auto& [s, z] : v) {
    if (s >= truncation_ || !index_map_[s]) continue;
    out[index_map_[s]->target] += index_map_[s]->weight * z;
  }
  prune(out);
  return out;
}

ExactVector ShiftOperator::apply_adjoint(const ExactVector& v) const {
  ExactVector out;
  for (const auto& [t, z] : v) {
    if (t >= truncation_ || !preimage_[t]) continue;
    const std::size_t s = *preimage_[t];
    out[s] += std::conj(index_map_[s]->weight) * z;
  }
  prune(out);
  return out;
}

std::vector<ShiftOperator> make_shift_family(std::size_t n, std::size_t truncation) {
  if (n < 2) throw Error(Errc::InvalidParameters, "shift family needs n >= 2");
  if (truncation < n * n) throw Error(Errc::InvalidParameters, "shift family needs N >= n^2");
  std::vector<ShiftOperator> ops;
  ops.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::optional<ShiftOperator::Edge>> map(truncation);
    for (std::size_t k = 0; n * k + j < truncation; ++k) map[n * k + j] = ShiftOperator::Edge{k, {1, 0}};
    ops.emplace_back(truncation, std::move(map));
  }
  return ops;
}

}  // namespace dwmod
