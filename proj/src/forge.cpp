#include "dwmod/forge.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "dwmod/error.hpp"

namespace dwmod {

std::string_view to_string(ForgeKind k) noexcept {
  switch (k) {
    case ForgeKind::Random: return "random";
    case ForgeKind::Equality: return "equality";
    case ForgeKind::NearEquality: return "nearequality";
    case ForgeKind::SumZero: return "sumzero";
  }
  return "unknown";
}

ForgeKind forge_kind_from_string(std::string_view s) {
  if (s == "random") return ForgeKind::Random;
  if (s == "equality") return ForgeKind::Equality;
  if (s == "nearequality") return ForgeKind::NearEquality;
  if (s == "sumzero") return ForgeKind::SumZero;
  throw Error(Errc::Parse, "unknown instance kind '" + std::string(s) + "'");
}

void ForgeSpec::validate() const {
  if (n < 2) throw Error(Errc::InvalidSpec, "n must be at least 2");
  if (d < 1 || d > kMaxForgeDim || m < 1 || m > kMaxForgeDim) throw Error(Errc::InvalidSpec, "d and m must lie in 1..8");
  if (!(eps > 0)) throw Error(Errc::InvalidSpec, "eps must be positive");
  if (family == Construction::DiagonalPair && d != 2) throw Error(Errc::InvalidSpec, "diagpair family lives in M_2");
  if (family == Construction::ShiftFamily) throw Error(Errc::InvalidSpec, "shift operators are not instance coefficients");
}

namespace {

constexpr double kMinNorm = 0.05;

ModuleElement random_element(Rng& rng, std::size_t m, std::size_t d) {
  for (;;) {
    ModuleElement x(rng.complex_normal_matrix(m, d));
    if (module_norm(x) >= kMinNorm) return x;
  }
}

cplx random_nonzero_scalar(Rng& rng) {
  for (;;) {
    const cplx z = rng.complex_normal();
    if (std::abs(z) >= kMinNorm) return z;
  }
}

CoisometryFamily random_family(const ForgeSpec& spec, std::span<const ModuleElement> xs) {
  Rng rng(spec.seed, static_cast<std::uint64_t>(ForgeStream::Family));
  switch (spec.family) {
    case Construction::ScalarFamily: {
      std::vector<cplx> alphas(spec.n);
      for (cplx& a : alphas) a = random_nonzero_scalar(rng);
      return make_scalar_family(alphas, spec.d);
    }
    case Construction::ReciprocalNormFamily: return make_reciprocal_norm_family(xs);
    case Construction::DiagonalPair: {
      const cplx alpha = std::polar(rng.uniform(0.5, 2.0), 2.0 * std::numbers::pi * rng.uniform());
      // Keep the relative angle away from 0 and pi so that alpha^2 != beta^2.
      double phi = rng.uniform(0.3, std::numbers::pi - 0.3);
      if (rng.uniform() < 0.5) phi += std::numbers::pi;
      const cplx beta = alpha * std::polar(1.0, phi);
      std::vector<double> extra(spec.n - 2);
      for (double& t : extra) t = (rng.uniform() < 0.5 ? -1.0 : 1.0) * rng.uniform(0.5, 2.0);
      return make_diagonal_pair(alpha, beta, extra);
    }
    case Construction::ScaledUnitary: {
      Rng urng(spec.seed, static_cast<std::uint64_t>(ForgeStream::Unitary));
      const ComplexMatrix u = random_unitary(urng, spec.d);
      std::vector<cplx> alphas(spec.n);
      for (cplx& a : alphas) a = random_nonzero_scalar(rng);
      return make_scaled_unitary_family(alphas, u);
    }
    case Construction::ShiftFamily: break;
  }
  throw Error(Errc::InvalidSpec, "unsupported family");
}

Instance forge_collinear(const ForgeSpec& spec) {
  Rng rng(spec.seed, static_cast<std::uint64_t>(ForgeStream::Collinear));
  const ModuleElement y = random_element(rng, spec.m, spec.d);
  std::vector<double> ts(spec.n), alphas(spec.n);
  for (double& t : ts) t = rng.uniform(0.5, 2.0);
  for (double& a : alphas) a = rng.uniform(0.5, 2.0);
  Rng urng(spec.seed, static_cast<std::uint64_t>(ForgeStream::Unitary));
  return forge_equality(y, ts, alphas, random_unitary(urng, spec.d));
}

}  // namespace

ComplexMatrix random_unitary(Rng& rng, std::size_t d) {
  for (;;) {
    ComplexMatrix q = rng.complex_normal_matrix(d, d);
    bool degenerate = false;
    for (std::size_t c = 0; c < d && !degenerate; ++c) {
      // Two Gram-Schmidt passes keep the columns orthonormal to rounding.
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t p = 0; p < c; ++p) {
          cplx dot{};
          for (std::size_t r = 0; r < d; ++r) dot += std::conj(q(r, p)) * q(r, c);
          for (std::size_t r = 0; r < d; ++r) q(r, c) -= dot * q(r, p);
        }
      }
      double nrm = 0.0;
      for (std::size_t r = 0; r < d; ++r) nrm += std::norm(q(r, c));
      nrm = std::sqrt(nrm);
      if (nrm < 1e-8) {
        degenerate = true;
        break;
      }
      for (std::size_t r = 0; r < d; ++r) q(r, c) /= nrm;
    }
    if (!degenerate) return q;
  }
}

Instance forge_equality(const ModuleElement& y, std::span<const double> ts, std::span<const double> alphas,
                        const ComplexMatrix& u) {
  if (ts.size() != alphas.size() || ts.size() < 2) throw Error(Errc::InvalidSpec, "need matching t and alpha lists, n >= 2");
  std::vector<ModuleElement> xs;
  std::vector<cplx> coeffs;
  for (std::size_t j = 0; j < ts.size(); ++j) {
    if (!(ts[j] > 0) || !(alphas[j] > 0)) throw Error(Errc::InvalidSpec, "collinear scales must be positive");
    xs.push_back(cplx(ts[j]) * y);
    coeffs.emplace_back(alphas[j]);
  }
  return make_instance(std::move(xs), make_scaled_unitary_family(coeffs, u));
}

Instance forge(const ForgeSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case ForgeKind::Equality: return forge_collinear(spec);
    case ForgeKind::NearEquality: {
      Instance inst = forge_collinear(spec);
      Rng rng(spec.seed, static_cast<std::uint64_t>(ForgeStream::Noise));
      for (ModuleElement& x : inst.xs) x = ModuleElement(x.mat() + rng.complex_normal_matrix(spec.m, spec.d) * cplx(spec.eps));
      return inst;
    }
    case ForgeKind::Random:
    case ForgeKind::SumZero: {
      Rng rng(spec.seed, static_cast<std::uint64_t>(ForgeStream::Elements));
      std::vector<ModuleElement> xs;
      const std::size_t free = spec.kind == ForgeKind::SumZero ? spec.n - 1 : spec.n;
      for (std::size_t j = 0; j < free; ++j) xs.push_back(random_element(rng, spec.m, spec.d));
      if (spec.kind == ForgeKind::SumZero) {
        // The forced element is small only when the others nearly cancel; redraw the last free one.
        for (;;) {
          ModuleElement last = -sum(xs);
          if (module_norm(last) >= kMinNorm) {
            xs.push_back(std::move(last));
            break;
          }
          xs.back() = random_element(rng, spec.m, spec.d);
        }
      }
      return make_instance(xs, random_family(spec, xs));
    }
  }
  throw Error(Errc::InvalidSpec, "unknown kind");
}

namespace {

ConstraintSet random_set(Rng& rng, bool hermitian) {
  ConstraintSet cs{2, {}};
  const std::size_t count = 1 + static_cast<std::size_t>(rng.next() % 3);
  for (std::size_t k = 0; k < count; ++k) {
    ComplexMatrix b = rng.complex_normal_matrix(2, 2);
    if (hermitian) b = hermitian_part(b);
    const double c = rng.uniform(0.0, 1.2) * op_norm(b);
    cs.targets.push_back({std::move(b), c});
  }
  return cs;
}

}  // namespace

ConstraintSet random_constraint_set(std::uint64_t seed, bool hermitian) {
  Rng rng(seed, 11);
  return random_set(rng, hermitian);
}

ConstraintSet feasible_constraint_set(std::uint64_t seed) {
  Rng rng(seed, 12);
  // Mixed state: convex combination of two random pure states.
  std::vector<cplx> v1{rng.complex_normal(), rng.complex_normal()}, v2{rng.complex_normal(), rng.complex_normal()};
  const double w = rng.uniform();
  const State rho0(State::pure(v1).rho() * cplx(w) + State::pure(v2).rho() * cplx(1.0 - w));
  ConstraintSet cs = random_set(rng, false);
  for (Constraint& t : cs.targets) {
    const cplx value = apply_state(rho0, t.b);
    // b -> b - (i Im(v) - min(0, Re v)) e makes trace(rho0 b) = |Re v| >= 0.
    const cplx shift(value.real() < 0 ? 2.0 * value.real() : 0.0, value.imag());
    for (std::size_t i = 0; i < 2; ++i) t.b(i, i) -= shift;
    t.c = apply_state(rho0, t.b).real();
  }
  return cs;
}

OracleResult bloch_grid_oracle(const ConstraintSet& cs, const ToleranceConfig& tol, double step) {
  if (cs.d != 2) throw Error(Errc::WrongDimension, "Bloch grid oracle needs d = 2");
  struct Pauli {
    cplx t0, t1, t2, t3;
    double c;
  };
  std::vector<Pauli> coeffs;
  for (const Constraint& t : cs.targets) {
    const ComplexMatrix& b = t.b;
    if (b.rows() != 2 || b.cols() != 2) throw Error(Errc::WrongDimension, "constraint matrix is not 2 x 2");
    coeffs.push_back({0.5 * (b(0, 0) + b(1, 1)), 0.5 * (b(0, 1) + b(1, 0)), 0.5 * cplx(0.0, 1.0) * (b(0, 1) - b(1, 0)),
                      0.5 * (b(0, 0) - b(1, 1)), t.c});
  }

  OracleResult out{false, std::numeric_limits<double>::infinity(), {0, 0, 0}, constraint_lipschitz(cs, tol), step};
  const int half = static_cast<int>(std::lround(1.0 / step));
  for (int ix = -half; ix <= half; ++ix) {
    const double x = ix * step;
    for (int iy = -half; iy <= half; ++iy) {
      const double y = iy * step;
      for (int iz = -half; iz <= half; ++iz) {
        const double z = iz * step;
        if (x * x + y * y + z * z > 1.0 + 1e-12) continue;
        double worst = 0.0;
        for (const Pauli& p : coeffs) worst = std::max(worst, std::abs(p.t0 + x * p.t1 + y * p.t2 + z * p.t3 - p.c));
        if (worst < out.margin) {
          out.margin = worst;
          out.witness = {x, y, z};
        }
      }
    }
  }
  if (coeffs.empty()) out.margin = 0.0;
  out.feasible = out.margin <= tol.tol_feas + out.lipschitz * step;
  return out;
}

ShiftCheckReport exhaustive_index_check(std::span<const ShiftOperator> ops, std::size_t truncation) {
  const std::size_t n = ops.size();
  ShiftCheckReport r{n, truncation, n ? truncation / n : 0, 0, {}};
  auto record = [&](bool ok, const char* id, std::size_t j, std::size_t k, std::size_t basis) {
    ++r.checks;
    if (!ok) r.violations.push_back({id, j, k, basis});
  };
  auto proj = [&](std::size_t j, const ExactVector& v) {
    ExactVector out;
    for (const auto& [s, z] : v)
      if (s % n == j) out[s] = z;
    return out;
  };

  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t b = 0; b < r.window; ++b) {
      record(ops[j].apply(ops[j].apply_adjoint(basis_vector(b))) == basis_vector(b), "vv*=e", j, j, b);
    }
    for (std::size_t s = 0; s < truncation; ++s) {
      record(ops[j].apply_adjoint(ops[j].apply(basis_vector(s))) == proj(j, basis_vector(s)), "v*v=p", j, j, s);
    }
    for (std::size_t k = 0; k < n; ++k) {
      if (k == j) continue;
      for (std::size_t s = 0; s < truncation; ++s) {
        const ExactVector e = basis_vector(s);
        record(proj(j, proj(k, e)).empty(), "pp=0", j, k, s);
        record(ops[j].apply(ops[k].apply_adjoint(e)).empty(), "vw*=0", j, k, s);
      }
      for (std::size_t b = 0; b < r.window; ++b) {
        const ExactVector e = basis_vector(b);
        const ExactVector w = ops[j].apply_adjoint(e) - ops[k].apply_adjoint(e);
        record(ops[j].apply(w) - ops[k].apply(w) == ExactScalar{2, 0} * e, "(v-w)(v-w)*=2e", j, k, b);
      }
    }
  }
  return r;
}

}  // namespace dwmod
