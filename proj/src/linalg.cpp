#include "dwmod/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "dwmod/error.hpp"

namespace dwmod {

void ToleranceConfig::validate() const {
  if (!(tol_eig > 0) || !(tol_eq > 0) || !(tol_feas > 0) || max_iter <= 0) {
    throw Error(Errc::InvalidParameters, "tolerances and max_iter must be strictly positive");
  }
  if (tol_eig > tol_feas) throw Error(Errc::InvalidParameters, "tol_eig must not exceed tol_feas");
}

namespace {

double max_abs(const ComplexMatrix& a) {
  double m = 0.0;
  for (const cplx& z : a.entries()) m = std::max(m, std::abs(z));
  return m;
}

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t p = 0; p < a.rows(); ++p)
    for (std::size_t q = p + 1; q < a.cols(); ++q) s += 2.0 * std::norm(a(p, q));
  return std::sqrt(s);
}

// One complex Jacobi rotation zeroing a(p, q). The unitary G acts on the
// (p, q) plane as [[c, s], [-s conj(w), c conj(w)]] with w = a_pq / |a_pq|,
// i.e. a phase fix making a_pq real followed by a real Jacobi rotation.
void rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
  const std::size_t n = a.rows();
  const cplx apq = a(p, q);
  const double b = std::abs(apq);
  const cplx w = apq / b;
  const cplx wc = std::conj(w);
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();

  const double theta = (aqq - app) / (2.0 * b);
  const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  const cplx gqp = -s * wc;
  const cplx gqq = c * wc;

  // a <- a G, v <- v G (columns p, q)
  for (std::size_t r = 0; r < n; ++r) {
    const cplx arp = a(r, p), arq = a(r, q);
    a(r, p) = arp * c + arq * gqp;
    a(r, q) = arp * s + arq * gqq;
    const cplx vrp = v(r, p), vrq = v(r, q);
    v(r, p) = vrp * c + vrq * gqp;
    v(r, q) = vrp * s + vrq * gqq;
  }
  // a <- G* a (rows p, q)
  for (std::size_t col = 0; col < n; ++col) {
    const cplx apc = a(p, col), aqc = a(q, col);
    a(p, col) = c * apc + std::conj(gqp) * aqc;
    a(q, col) = s * apc + std::conj(gqq) * aqc;
  }
  a(p, p) = app - t * b;
  a(q, q) = aqq + t * b;
  a(p, q) = 0.0;
  a(q, p) = 0.0;
}

HermEig jacobi(ComplexMatrix a, const ToleranceConfig& tol) {
  const std::size_t n = a.rows();
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double scale = frobenius_norm(a);

  bool converged = n == 1 || scale == 0.0;
  double prev_off = off_diagonal_norm(a);
  for (int sweep = 0; !converged && sweep < tol.max_iter; ++sweep) {
    if (prev_off <= 1e-16 * scale) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q)
        if (std::abs(a(p, q)) > 0.0) rotate(a, v, p, q);
    const double off = off_diagonal_norm(a);
    // Rounding can floor the off-diagonal mass slightly above 1e-16 * scale.
    if (off <= 1e-16 * scale || (off >= prev_off && off <= 1e-13 * scale)) converged = true;
    prev_off = off;
  }
  if (!converged) {
    throw Error(Errc::NoConvergence, "Jacobi did not converge in " + std::to_string(tol.max_iter) + " sweeps");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  HermEig out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    out.eigenvalues[k] = a(src, src).real();
    std::size_t lead = 0;
    for (std::size_t r = 1; r < n; ++r)
      if (std::abs(v(r, src)) > std::abs(v(lead, src))) lead = r;
    const double mag = std::abs(v(lead, src));
    const cplx phase = mag > 0 ? std::conj(v(lead, src)) / mag : cplx{1.0};
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, k) = v(r, src) * phase;
    out.eigenvectors(lead, k) = mag;
  }
  return out;
}

void require_eig_size(const ComplexMatrix& a) {
  if (!a.is_square()) throw Error(Errc::DimensionMismatch, "eigendecomposition needs a square matrix");
  if (a.rows() > kMaxEigDim) {
    throw Error(Errc::DimensionMismatch, "dimension " + std::to_string(a.rows()) + " exceeds eigensolver cap");
  }
}

}  // namespace

HermEig herm_eig(const ComplexMatrix& a, const ToleranceConfig& tol) {
  require_eig_size(a);
  if (hermitian_defect(a) > tol.tol_eig * std::max(1.0, max_abs(a))) {
    throw Error(Errc::NotHermitian, "input differs from its adjoint beyond tol_eig");
  }
  return jacobi(hermitian_part(a), tol);
}

ComplexMatrix reconstruct(const ComplexMatrix& vectors, const std::vector<double>& values) {
  const std::size_t n = vectors.rows();
  if (vectors.cols() != values.size()) throw Error(Errc::DimensionMismatch, "reconstruct: value count");
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (values[k] == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const cplx vik = vectors(i, k) * values[k];
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * std::conj(vectors(j, k));
    }
  }
  return out;
}

double op_norm(const ComplexMatrix& a, const ToleranceConfig& tol) {
  // The smaller Gram matrix has the same nonzero spectrum.
  const ComplexMatrix gram = a.rows() >= a.cols() ? adjoint_times(a, a) : adjoint_times(adjoint(a), adjoint(a));
  require_eig_size(gram);
  const HermEig eig = jacobi(hermitian_part(gram), tol);
  return std::sqrt(std::max(0.0, eig.eigenvalues.back()));
}

ComplexMatrix psd_sqrt(const ComplexMatrix& a, const ToleranceConfig& tol) {
  HermEig eig = herm_eig(a, tol);
  if (eig.eigenvalues.front() < -tol.tol_feas) {
    throw Error(Errc::NotPSD, "minimum eigenvalue " + std::to_string(eig.eigenvalues.front()));
  }
  for (double& lambda : eig.eigenvalues) lambda = std::sqrt(std::max(0.0, lambda));
  return hermitian_part(reconstruct(eig.eigenvectors, eig.eigenvalues));
}

std::optional<double> is_coisometry_multiple(const ComplexMatrix& a, const ToleranceConfig& tol) {
  if (!a.is_square()) throw Error(Errc::DimensionMismatch, "coisometry test needs a square matrix");
  ComplexMatrix aa = a * adjoint(a);
  const double lambda_sq = trace(aa).real() / static_cast<double>(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) aa(i, i) -= lambda_sq;
  if (frobenius_norm(aa) > tol.tol_eq * std::max(1.0, lambda_sq)) return std::nullopt;
  return std::sqrt(std::max(0.0, lambda_sq));
}

bool is_density_matrix(const ComplexMatrix& rho, const ToleranceConfig& tol) {
  if (!rho.is_square() || rho.rows() > kMaxEigDim) return false;
  if (hermitian_defect(rho) > tol.tol_eig) return false;
  const cplx tr = trace(rho);
  if (std::abs(tr - 1.0) > tol.tol_eig) return false;
  try {
    const HermEig eig = jacobi(hermitian_part(rho), tol);
    return eig.eigenvalues.front() >= -tol.tol_eig;
  } catch (const Error&) {
    return false;
  }
}

State::State(ComplexMatrix rho, const ToleranceConfig& tol) : rho_(std::move(rho)) {
  if (!is_density_matrix(rho_, tol)) throw Error(Errc::InvalidState, "not a density matrix within tol_eig");
}

State State::maximally_mixed(std::size_t d) {
  return State(ComplexMatrix::identity(d) * cplx(1.0 / static_cast<double>(d)), Unchecked{});
}

State State::pure(std::span<const cplx> v) {
  double nrm = 0.0;
  for (const cplx& z : v) nrm += std::norm(z);
  if (v.empty() || nrm == 0.0) throw Error(Errc::InvalidState, "pure state from zero vector");
  ComplexMatrix rho(v.size(), v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) rho(i, j) = v[i] * std::conj(v[j]) / nrm;
  return State(std::move(rho), Unchecked{});
}

cplx apply_state(const State& state, const ComplexMatrix& a) {
  const ComplexMatrix& rho = state.rho();
  if (!a.is_square() || a.rows() != rho.rows()) {
    throw Error(Errc::DimensionMismatch, "state of dimension " + std::to_string(rho.rows()) +
                                             " applied to " + std::to_string(a.rows()) + "x" +
                                             std::to_string(a.cols()));
  }
  cplx t{};
  for (std::size_t i = 0; i < rho.rows(); ++i)
    for (std::size_t j = 0; j < rho.cols(); ++j) t += rho(i, j) * a(j, i);
  return t;
}

}  // namespace dwmod
