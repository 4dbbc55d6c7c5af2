#include "dwmod/inequality.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dwmod/error.hpp"

namespace dwmod {

namespace {

IndexedBound argmin(const std::vector<double>& v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] < v[best]) best = i;
  return {v[best], best};
}

IndexedBound argmax(const std::vector<double>& v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] > v[best]) best = i;
  return {v[best], best};
}

std::vector<double> norms_of(std::span<const ModuleElement> xs, const ToleranceConfig& tol) {
  std::vector<double> out;
  out.reserve(xs.size());
  for (const auto& x : xs) {
    const double nrm = module_norm(x, tol);
    if (nrm <= tol.tol_eq) throw Error(Errc::InvalidInstance, "zero element in a normalized sum");
    out.push_back(nrm);
  }
  return out;
}

ModuleElement normalized_sum(std::span<const ModuleElement> xs, const std::vector<double>& norms) {
  ComplexMatrix total = xs.front().mat() * cplx(1.0 / norms.front());
  for (std::size_t j = 1; j < xs.size(); ++j) total += xs[j].mat() * cplx(1.0 / norms[j]);
  return ModuleElement(std::move(total));
}

BoundReport make_report(double lhs, IndexedBound upper, IndexedBound lower) {
  return {lhs, upper.value, upper.index, lower.value, lower.index, upper.value - lhs, lhs - lower.value};
}

}  // namespace

Instance make_instance(std::vector<ModuleElement> xs, const CoisometryFamily& family) {
  Instance inst;
  inst.m = xs.empty() ? 1 : xs.front().rows();
  inst.d = xs.empty() ? 1 : xs.front().algebra_dim();
  inst.xs = std::move(xs);
  inst.as = family.elems;
  inst.family = family.construction;
  return inst;
}

void validate_instance(const Instance& inst, const ToleranceConfig& tol) {
  const std::size_t n = inst.n();
  if (n < 2) throw Error(Errc::InvalidInstance, "need at least two elements");
  if (inst.as.size() != n) throw Error(Errc::InvalidInstance, "xs and as lengths differ");
  for (std::size_t j = 0; j < n; ++j) {
    if (inst.xs[j].rows() != inst.m || inst.xs[j].algebra_dim() != inst.d || inst.as[j].algebra_dim() != inst.d) {
      throw Error(Errc::InvalidInstance, "inconsistent dimensions at index " + std::to_string(j));
    }
    if (module_norm(inst.xs[j], tol) <= tol.tol_eq) {
      throw Error(Errc::InvalidInstance, "x_" + std::to_string(j) + " is numerically zero");
    }
  }
  CoisometryFamily family{inst.as, inst.family};
  if (!satisfies_family_invariants(family, tol)) {
    throw Error(Errc::InvalidInstance, "coefficients or their differences are not coisometry multiples");
  }
}

InstanceNorms compute_norms(const Instance& inst, const ToleranceConfig& tol) {
  const std::size_t n = inst.n();
  InstanceNorms out;
  ComplexMatrix weighted = inst.xs[0].mat() * inst.as[0].mat();
  for (std::size_t j = 1; j < n; ++j) weighted += inst.xs[j].mat() * inst.as[j].mat();
  out.lhs = op_norm(weighted, tol);
  out.sum_norm = module_norm(sum(inst.xs), tol);
  out.x_norms.reserve(n);
  out.a_norms.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    out.x_norms.push_back(module_norm(inst.xs[j], tol));
    out.a_norms.push_back(algebra_norm(inst.as[j], tol));
  }
  out.diff.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dn = op_norm(inst.as[j].mat() - inst.as[i].mat(), tol);
      out.diff[i][j] = dn;
      out.diff[j][i] = dn;
    }
  }
  return out;
}

std::vector<double> upper_candidates(const InstanceNorms& norms) {
  const std::size_t n = norms.x_norms.size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = norms.sum_norm * norms.a_norms[i];
    for (std::size_t j = 0; j < n; ++j) s += norms.x_norms[j] * norms.diff[i][j];
    out[i] = s;
  }
  return out;
}

std::vector<double> lower_candidates(const InstanceNorms& norms) {
  const std::size_t n = norms.x_norms.size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += norms.x_norms[j] * norms.diff[i][j];
    out[i] = norms.sum_norm * norms.a_norms[i] - s;
  }
  return out;
}

IndexedBound dw_upper_bound(const Instance& inst, const ToleranceConfig& tol) {
  validate_instance(inst, tol);
  return argmin(upper_candidates(compute_norms(inst, tol)));
}

IndexedBound dw_lower_bound(const Instance& inst, const ToleranceConfig& tol) {
  validate_instance(inst, tol);
  return argmax(lower_candidates(compute_norms(inst, tol)));
}

BoundReport check_theorem(const Instance& inst, const ToleranceConfig& tol) {
  validate_instance(inst, tol);
  const InstanceNorms norms = compute_norms(inst, tol);
  const BoundReport report = make_report(norms.lhs, argmin(upper_candidates(norms)), argmax(lower_candidates(norms)));
  if (report.slack_upper < -tol.tol_eq || report.slack_lower < -tol.tol_eq) {
    throw Error(Errc::BoundViolation, "lhs " + std::to_string(report.lhs) + " outside [" +
                                          std::to_string(report.lower) + ", " + std::to_string(report.upper) + "]");
  }
  return report;
}

BoundReport pecaric_rajic_bounds(std::span<const ModuleElement> xs, const ToleranceConfig& tol) {
  if (xs.size() < 2) throw Error(Errc::InvalidInstance, "need at least two elements");
  const std::vector<double> norms = norms_of(xs, tol);
  const double lhs = module_norm(normalized_sum(xs, norms), tol);
  const double sum_norm = module_norm(sum(xs), tol);
  const std::size_t n = xs.size();
  std::vector<double> upper(n), lower(n);
  for (std::size_t i = 0; i < n; ++i) {
    double spread = 0.0;
    for (std::size_t j = 0; j < n; ++j) spread += std::abs(norms[j] - norms[i]);
    upper[i] = (sum_norm + spread) / norms[i];
    lower[i] = (sum_norm - spread) / norms[i];
  }
  const BoundReport report = make_report(lhs, argmin(upper), argmax(lower));
  if (report.slack_upper < -tol.tol_eq || report.slack_lower < -tol.tol_eq) {
    throw Error(Errc::BoundViolation, "normalized-sum bound violated");
  }
  return report;
}

KatoReport kato_bounds(std::span<const ModuleElement> xs, const ToleranceConfig& tol) {
  const BoundReport pr = pecaric_rajic_bounds(xs, tol);
  const std::vector<double> norms = norms_of(xs, tol);
  const double n = static_cast<double>(xs.size());
  const double min_norm = *std::min_element(norms.begin(), norms.end());
  const double max_norm = *std::max_element(norms.begin(), norms.end());

  KatoReport k{};
  k.sum_norm = module_norm(sum(xs), tol);
  k.unit_sum_norm = pr.lhs;
  for (double v : norms) k.norm_total += v;
  k.refined_upper = k.sum_norm + (n - k.unit_sum_norm) * min_norm;
  k.reverse_lower = k.sum_norm + (n - k.unit_sum_norm) * max_norm;
  k.refined_upper_holds = k.refined_upper <= k.norm_total + tol.tol_eq;
  k.reverse_holds = k.reverse_lower >= k.norm_total - tol.tol_eq;

  // The refined bound is the normalized-sum lower bound read at the index of
  // min ||x_i||, the reverse one the upper bound at the index of max ||x_i||.
  const double kato_floor = (k.sum_norm - k.norm_total + n * min_norm) / min_norm;
  const double kato_ceiling = (k.sum_norm - k.norm_total + n * max_norm) / max_norm;
  k.pr_sharper = pr.lower >= kato_floor - tol.tol_eq && pr.upper <= kato_ceiling + tol.tol_eq;
  return k;
}

TwoPointReport classical_two_point(const ModuleElement& x, const ModuleElement& y, const ToleranceConfig& tol) {
  const double nx = module_norm(x, tol);
  const double ny = module_norm(y, tol);
  if (nx <= tol.tol_eq || ny <= tol.tol_eq) throw Error(Errc::InvalidInstance, "two-point inequalities need nonzero x, y");

  const double lhs = module_norm(ModuleElement(x.mat() * cplx(1.0 / nx) - y.mat() * cplx(1.0 / ny)), tol);
  const double dist = module_norm(x - y, tol);
  const double gap = std::abs(nx - ny);

  TwoPointReport r{};
  r.dunkl_williams = {lhs, 4.0 * dist / (nx + ny), false};
  r.dunkl_williams.holds = r.dunkl_williams.lhs <= r.dunkl_williams.rhs + tol.tol_eq;
  r.maligranda = {lhs, (dist + gap) / std::max(nx, ny), false};
  r.maligranda.holds = r.maligranda.lhs <= r.maligranda.rhs + tol.tol_eq;
  r.mercer = {lhs, (dist - gap) / std::min(nx, ny), false};
  r.mercer.holds = r.mercer.lhs >= r.mercer.rhs - tol.tol_eq;

  std::vector<ModuleElement> pair{x, -y};
  r.engine = check_theorem(make_instance(pair, make_reciprocal_norm_family(pair, tol)), tol);
  return r;
}

}  // namespace dwmod
