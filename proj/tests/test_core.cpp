#include <doctest.h>

#include <cmath>

#include "dwmod/error.hpp"
#include "dwmod/forge.hpp"
#include "dwmod/linalg.hpp"
#include "dwmod/matrix.hpp"
#include "dwmod/rng.hpp"
#include "helpers.hpp"

using namespace dwmod;
using testing::max_abs_diff;

namespace {
const cplx I{0.0, 1.0};
}

TEST_CASE("matrix construction rejects bad shapes and non-finite entries") {
  CHECK_THROWS_AS(ComplexMatrix(0, 2), Error);
  CHECK_THROWS_AS(ComplexMatrix(2, 2, {1.0, 2.0}), Error);
  CHECK_THROWS_AS(ComplexMatrix(1, 1, {cplx(std::nan(""), 0.0)}), Error);
  CHECK_THROWS_AS(ComplexMatrix(1, 1, {cplx(0.0, INFINITY)}), Error);
  CHECK_THROWS_AS((ComplexMatrix{{1.0, 2.0}, {3.0}}), Error);
}

TEST_CASE("adjoint") {
  CHECK(adjoint(ComplexMatrix{{I}}) == ComplexMatrix{{-I}});
  CHECK(adjoint(ComplexMatrix::identity(2)) == ComplexMatrix::identity(2));
  CHECK(adjoint(ComplexMatrix{{0.0, 2.0}, {0.0, 0.0}}) == ComplexMatrix{{0.0, 0.0}, {2.0, 0.0}});
  Rng rng(1);
  const ComplexMatrix a = rng.complex_normal_matrix(3, 5);
  CHECK(adjoint(adjoint(a)) == a);
  CHECK(adjoint_times(a, a) == adjoint(a) * a);
}

TEST_CASE("matrix arithmetic dimension checks") {
  const ComplexMatrix a = ComplexMatrix::zeros(2, 3), b = ComplexMatrix::zeros(3, 2);
  CHECK_THROWS_AS(a + b, Error);
  CHECK_THROWS_AS(a * a, Error);
  CHECK_NOTHROW(a * b);
  try {
    (void)(a * a);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DimensionMismatch);
  }
}

TEST_CASE("herm_eig examples") {
  auto e = herm_eig(ComplexMatrix::identity(2));
  CHECK(e.eigenvalues == std::vector<double>{1.0, 1.0});
  e = herm_eig(ComplexMatrix::diagonal({3.0, -1.0}));
  CHECK(e.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(e.eigenvalues[1] == doctest::Approx(3.0).epsilon(1e-15));
  e = herm_eig(ComplexMatrix{{0.0, 0.0}, {0.0, 4.0}});
  CHECK(e.eigenvalues[0] == 0.0);
  CHECK(e.eigenvalues[1] == 4.0);
}

TEST_CASE("herm_eig errors") {
  CHECK_THROWS_AS(herm_eig(ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}), Error);
  try {
    herm_eig(ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}});
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotHermitian);
  }
  try {
    herm_eig(ComplexMatrix::zeros(2, 3));
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DimensionMismatch);
  }
  try {
    herm_eig(ComplexMatrix::identity(kMaxEigDim + 1));
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DimensionMismatch);
  }
  ToleranceConfig one_sweep;
  one_sweep.max_iter = 1;
  Rng rng(4);
  const ComplexMatrix h = testing::random_hermitian(rng, 12);
  try {
    herm_eig(h, one_sweep);
    FAIL("one sweep should not converge on a dense 12x12");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NoConvergence);
  }
}

TEST_CASE("herm_eig against the closed-form 2x2 oracle") {
  Rng rng(7);
  for (int s = 0; s < 500; ++s) {
    const ComplexMatrix h = testing::random_hermitian(rng, 2);
    const auto [lo, hi] = oracle::herm2_eigenvalues(h(0, 0).real(), h(0, 1), h(1, 1).real());
    const auto e = herm_eig(h);
    CHECK(std::abs(e.eigenvalues[0] - lo) <= 1e-12 * (1 + std::abs(lo)));
    CHECK(std::abs(e.eigenvalues[1] - hi) <= 1e-12 * (1 + std::abs(hi)));
  }
}

TEST_CASE("herm_eig phase convention and determinism") {
  Rng rng(11);
  for (int s = 0; s < 50; ++s) {
    const ComplexMatrix h = testing::random_hermitian(rng, 5);
    const auto e = herm_eig(h);
    const auto again = herm_eig(h);
    CHECK(e.eigenvectors == again.eigenvectors);
    CHECK(e.eigenvalues == again.eigenvalues);
    CHECK(std::is_sorted(e.eigenvalues.begin(), e.eigenvalues.end()));
    for (std::size_t c = 0; c < 5; ++c) {
      std::size_t arg = 0;
      for (std::size_t r = 1; r < 5; ++r)
        if (std::abs(e.eigenvectors(r, c)) > std::abs(e.eigenvectors(arg, c))) arg = r;
      CHECK(e.eigenvectors(arg, c).imag() == 0.0);
      CHECK(e.eigenvectors(arg, c).real() > 0.0);
    }
  }
}

TEST_CASE("herm_eig reconstruction and orthonormality up to d = 8") {
  Rng rng(12);
  for (std::size_t d = 1; d <= 8; ++d) {
    for (int s = 0; s < 20; ++s) {
      const ComplexMatrix h = testing::random_hermitian(rng, d);
      const auto e = herm_eig(h);
      const ComplexMatrix back = reconstruct(e.eigenvectors, e.eigenvalues);
      CHECK(frobenius_norm(back - h) <= 1e-12 * frobenius_norm(h));
      const ComplexMatrix gram = adjoint_times(e.eigenvectors, e.eigenvectors);
      CHECK(max_abs_diff(gram, ComplexMatrix::identity(d)) <= 1e-12);
    }
  }
}

TEST_CASE("op_norm examples and C*-identity") {
  CHECK(op_norm(ComplexMatrix::identity(3)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(op_norm(ComplexMatrix{{0.0, 2.0}, {0.0, 0.0}}) == doctest::Approx(2.0).epsilon(1e-15));
  const double r = 3.0 / std::sqrt(2.0);
  CHECK(op_norm(ComplexMatrix{{r, r}, {r, -r}}) == doctest::Approx(3.0).epsilon(1e-14));

  Rng rng(21);
  for (int s = 0; s < 300; ++s) {
    const std::size_t rows = 1 + rng.next() % 5, cols = 1 + rng.next() % 5;
    const ComplexMatrix a = rng.complex_normal_matrix(rows, cols);
    const double na = op_norm(a);
    CHECK(std::abs(na * na - op_norm(adjoint(a) * a)) <= 1e-9 * std::max(1.0, na * na));
    CHECK(std::abs(na - oracle::power_iteration_norm(testing::to_oracle(a))) <= 1e-8 * std::max(1.0, na));
    const ComplexMatrix b = rng.complex_normal_matrix(cols, 1 + rng.next() % 5);
    CHECK(op_norm(a * b) <= na * op_norm(b) + 1e-9);
  }
}

TEST_CASE("psd_sqrt") {
  CHECK(max_abs_diff(psd_sqrt(ComplexMatrix::identity(2)), ComplexMatrix::identity(2)) <= 1e-15);
  CHECK(max_abs_diff(psd_sqrt(ComplexMatrix::diagonal({4.0, 9.0})), ComplexMatrix::diagonal({2.0, 3.0})) <= 1e-15);
  const ComplexMatrix a{{2.0, 1.0}, {1.0, 2.0}};
  const ComplexMatrix b = psd_sqrt(a);
  CHECK(frobenius_norm(b * b - a) <= 1e-7);
  CHECK(hermitian_defect(b) <= 1e-15);
  // Exact value: (sqrt3 + 1)/2 on the diagonal, (sqrt3 - 1)/2 off it.
  CHECK(std::abs(b(0, 0) - (std::sqrt(3.0) + 1) / 2) <= 1e-14);
  CHECK(std::abs(b(0, 1) - (std::sqrt(3.0) - 1) / 2) <= 1e-14);

  CHECK_NOTHROW(psd_sqrt(ComplexMatrix::diagonal({-1e-13, 1.0})));
  try {
    psd_sqrt(ComplexMatrix::diagonal({-1e-3, 1.0}));
    FAIL("negative eigenvalue accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotPSD);
  }
}

TEST_CASE("is_coisometry_multiple") {
  auto l = is_coisometry_multiple(ComplexMatrix::diagonal({1.0, I}));
  REQUIRE(l);
  CHECK(*l == doctest::Approx(1.0).epsilon(1e-15));
  l = is_coisometry_multiple(ComplexMatrix::diagonal({1.0 - I, I - 1.0}));
  REQUIRE(l);
  CHECK(std::abs(*l - std::sqrt(2.0)) <= 1e-15);
  CHECK_FALSE(is_coisometry_multiple(ComplexMatrix{{0.0, 2.0}, {0.0, 0.0}}));
  CHECK(is_coisometry_multiple(ComplexMatrix::zeros(2, 2)) == 0.0);

  Rng rng(31);
  for (int s = 0; s < 300; ++s) {
    const std::size_t d = 1 + rng.next() % 6;
    const ComplexMatrix u = random_unitary(rng, d);
    const cplx lambda = rng.uniform(0.1, 5.0) * rng.unit_phase();
    l = is_coisometry_multiple(lambda * u);
    REQUIRE(l);
    CHECK(std::abs(*l - std::abs(lambda)) <= 1e-12 * std::abs(lambda));
  }
}

TEST_CASE("states") {
  const State half = State::maximally_mixed(2);
  CHECK(apply_state(half, ComplexMatrix::identity(2)) == cplx(1.0));
  const State up(ComplexMatrix::diagonal({1.0, 0.0}));
  CHECK(apply_state(up, ComplexMatrix::diagonal({3.0, -1.0})) == cplx(3.0));
  CHECK(apply_state(half, ComplexMatrix{{0.0, 2.0}, {0.0, 0.0}}) == cplx(0.0));
  CHECK_THROWS_AS(apply_state(half, ComplexMatrix::identity(3)), Error);

  CHECK_THROWS_AS(State(ComplexMatrix::diagonal({0.5, 0.6})), Error);
  CHECK_THROWS_AS(State(ComplexMatrix::diagonal({1.5, -0.5})), Error);
  CHECK_THROWS_AS(State(ComplexMatrix{{0.5, 0.1}, {0.0, 0.5}}), Error);
  try {
    State(ComplexMatrix::diagonal({1.5, -0.5}));
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InvalidState);
  }
  const std::vector<cplx> v{1.0, I};
  const State p = State::pure(v);
  CHECK(std::abs(p.rho()(0, 1) - cplx(0.0, -0.5)) <= 1e-15);
}

TEST_CASE("state positivity over random states and matrices") {
  Rng rng(41);
  for (int s = 0; s < 300; ++s) {
    const std::size_t d = 1 + rng.next() % 5;
    const ComplexMatrix g = rng.complex_normal_matrix(d, d);
    ComplexMatrix rho = adjoint_times(g, g);
    rho *= 1.0 / trace(rho).real();
    const State st(hermitian_part(rho));
    const ComplexMatrix a = rng.complex_normal_matrix(d, d);
    const cplx pos = apply_state(st, adjoint_times(a, a));
    CHECK(pos.real() >= -1e-9);
    CHECK(std::abs(pos.imag()) <= 1e-9);
    CHECK(std::abs(apply_state(st, a)) <= op_norm(a) + 1e-9);
  }
}

TEST_CASE("tolerance validation") {
  ToleranceConfig t;
  CHECK_NOTHROW(t.validate());
  t.tol_eq = 0;
  CHECK_THROWS_AS(t.validate(), Error);
  t = {};
  t.tol_eig = 1e-3;
  CHECK_THROWS_AS(t.validate(), Error);
  t = {};
  t.max_iter = 0;
  CHECK_THROWS_AS(t.validate(), Error);
}

TEST_CASE("rng determinism and streams") {
  Rng a(5, 1), b(5, 1), c(5, 2);
  for (int k = 0; k < 10; ++k) CHECK(a.next() == b.next());
  Rng a2(5, 1);
  CHECK(a2.next() != c.next());
  Rng u(9);
  for (int k = 0; k < 1000; ++k) {
    const double x = u.uniform();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
  // Second moment of the complex normal is 1.
  Rng z(10);
  double s = 0;
  for (int k = 0; k < 20000; ++k) s += std::norm(z.complex_normal());
  CHECK(std::abs(s / 20000 - 1.0) < 0.05);
}
