#include <doctest.h>

#include <cmath>

#include "dwmod/coisometry.hpp"
#include "dwmod/error.hpp"
#include "dwmod/forge.hpp"
#include "dwmod/module_space.hpp"
#include "helpers.hpp"

using namespace dwmod;

namespace {
const cplx I{0.0, 1.0};

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return Errc::Parse;
}
}  // namespace

TEST_CASE("diagonal pair examples") {
  auto f = make_diagonal_pair(1.0, I);
  REQUIRE(f.elems.size() == 2);
  CHECK(f.elems[0].mat() == ComplexMatrix::diagonal({1.0, I}));
  CHECK(f.elems[1].mat() == ComplexMatrix::diagonal({I, 1.0}));
  CHECK(f.construction == Construction::DiagonalPair);
  auto lam = is_coisometry_multiple((f.elems[0] - f.elems[1]).mat());
  REQUIRE(lam);
  CHECK(std::abs(*lam - std::sqrt(2.0)) <= 1e-15);
  CHECK(satisfies_family_invariants(f));

  // alpha = -beta has alpha^2 = beta^2 and is refused, although the pair
  // itself still has a difference that is 2 times a unitary.
  CHECK(code_of([] { make_diagonal_pair(1.0, -1.0); }) == Errc::InvalidParameters);
  lam = is_coisometry_multiple(ComplexMatrix::diagonal({1.0, -1.0}) - ComplexMatrix::diagonal({-1.0, 1.0}));
  REQUIRE(lam);
  CHECK(*lam == doctest::Approx(2.0).epsilon(1e-15));

  CHECK(code_of([] { make_diagonal_pair(1.0, 1.0); }) == Errc::InvalidParameters);
  CHECK(code_of([] { make_diagonal_pair(1.0, 2.0); }) == Errc::InvalidParameters);
}

TEST_CASE("diagonal pair extension stays inside the hypothesis") {
  Rng rng(201);
  for (int s = 0; s < 200; ++s) {
    const cplx alpha = rng.uniform(0.3, 2.0) * rng.unit_phase();
    const cplx beta = std::abs(alpha) * rng.unit_phase();
    if (std::abs(alpha * alpha - beta * beta) < 1e-3) continue;
    const std::vector<double> scales{rng.uniform(-2, 2), rng.uniform(-2, 2)};
    const auto f = make_diagonal_pair(alpha, beta, scales);
    CHECK(f.elems.size() == 4);
    CHECK(satisfies_family_invariants(f));
  }
  const std::vector<double> zero{0.0};
  CHECK(code_of([&] { make_diagonal_pair(1.0, I, zero); }) == Errc::InvalidParameters);
}

TEST_CASE("scalar and reciprocal-norm families") {
  const std::vector<cplx> a12{1.0, 2.0};
  auto f = make_scalar_family(a12, 2);
  CHECK(f.elems[0].mat() == ComplexMatrix::identity(2));
  CHECK(f.elems[1].mat() == 2.0 * ComplexMatrix::identity(2));
  const std::vector<cplx> a3{1.0, I, -1.0};
  f = make_scalar_family(a3, 1);
  CHECK(f.elems[1].mat() == ComplexMatrix{{I}});
  CHECK(satisfies_family_invariants(f));
  const std::vector<cplx> bad{1.0, 0.0};
  CHECK(code_of([&] { make_scalar_family(bad, 2); }) == Errc::ZeroScalar);

  const std::vector<ModuleElement> xs{ModuleElement(ComplexMatrix{{3.0}, {0.0}}),
                                      ModuleElement(ComplexMatrix{{0.0}, {1.0}})};
  f = make_reciprocal_norm_family(xs);
  CHECK(f.construction == Construction::ReciprocalNormFamily);
  CHECK(std::abs(f.elems[0].mat()(0, 0) - 1.0 / 3.0) <= 1e-16);
  CHECK(f.elems[1].mat()(0, 0) == cplx(1.0));
  const std::vector<ModuleElement> zero{ModuleElement::zero(2, 1), xs[0]};
  CHECK(code_of([&] { make_reciprocal_norm_family(zero); }) == Errc::ZeroScalar);
}

TEST_CASE("scaled unitary family") {
  Rng rng(202);
  for (int s = 0; s < 50; ++s) {
    const std::size_t d = 1 + s % 4;
    const ComplexMatrix u = random_unitary(rng, d);
    const std::vector<cplx> alphas{rng.uniform(0.5, 2), rng.uniform(0.5, 2), rng.uniform(0.5, 2)};
    const auto f = make_scaled_unitary_family(alphas, u);
    CHECK(satisfies_family_invariants(f));
  }
  const std::vector<cplx> alphas{1.0, 2.0};
  CHECK(code_of([&] { make_scaled_unitary_family(alphas, ComplexMatrix{{0.0, 2.0}, {0.0, 0.0}}); }) ==
        Errc::InvalidParameters);
}

TEST_CASE("random families pass the invariants") {
  Rng rng(203);
  for (int s = 0; s < 300; ++s) {
    const std::size_t d = 1 + s % 3;
    std::vector<cplx> alphas;
    for (int k = 0; k < 4; ++k) alphas.push_back(rng.uniform(0.1, 3) * rng.unit_phase());
    CHECK(satisfies_family_invariants(make_scalar_family(alphas, d)));
  }
  // A generic matrix family fails.
  CoisometryFamily bad{{AlgebraElement::identity(2), AlgebraElement(ComplexMatrix{{1.0, 1.0}, {0.0, 1.0}})},
                       Construction::ScalarFamily};
  CHECK_FALSE(satisfies_family_invariants(bad));
}

TEST_CASE("construction tags round-trip") {
  for (auto c : {Construction::DiagonalPair, Construction::ScalarFamily, Construction::ReciprocalNormFamily,
                 Construction::ScaledUnitary, Construction::ShiftFamily}) {
    CHECK(construction_from_string(to_string(c)) == c);
  }
  CHECK(code_of([] { construction_from_string("nope"); }) == Errc::Parse);
}

TEST_CASE("exact vectors") {
  ExactVector v = basis_vector(3) + ExactScalar(0, 1) * basis_vector(1);
  CHECK(v.size() == 2);
  v = v - basis_vector(3);
  CHECK(v.size() == 1);
  CHECK(v.at(1) == ExactScalar(0, 1));
  CHECK((ExactScalar(0) * v).empty());
}

TEST_CASE("shift family examples") {
  const auto ops = make_shift_family(2, 8);
  REQUIRE(ops.size() == 2);
  for (std::size_t k = 0; k < 4; ++k) {
    const ExactVector e = basis_vector(k);
    CHECK(ops[0].apply(ops[0].apply_adjoint(e)) == e);
    CHECK(ops[0].apply(ops[1].apply_adjoint(e)).empty());
    const ExactVector w = ops[0].apply_adjoint(e) - ops[1].apply_adjoint(e);
    CHECK(ops[0].apply(w) - ops[1].apply(w) == ExactScalar(2) * e);
  }
  // v_j e_{n k + j} = e_k, zero off the residue class.
  CHECK(ops[1].apply(basis_vector(5)) == basis_vector(2));
  CHECK(ops[1].apply(basis_vector(4)).empty());

  CHECK(code_of([] { make_shift_family(1, 8); }) == Errc::InvalidParameters);
  CHECK(code_of([] { make_shift_family(3, 8); }) == Errc::InvalidParameters);
}

TEST_CASE("shift operator validation") {
  using Edge = ShiftOperator::Edge;
  CHECK(code_of([] { ShiftOperator(2, {Edge{0, 1}, Edge{0, 1}}); }) == Errc::InvalidParameters);
  CHECK(code_of([] { ShiftOperator(2, {Edge{0, ExactScalar(2)}, std::nullopt}); }) == Errc::InvalidParameters);
  CHECK(code_of([] { ShiftOperator(2, {Edge{5, 1}, std::nullopt}); }) == Errc::InvalidParameters);
  const ShiftOperator ok(2, {Edge{1, ExactScalar(0, -1)}, std::nullopt});
  CHECK(ok.apply(basis_vector(0)) == ExactScalar(0, -1) * basis_vector(1));
  CHECK(ok.apply_adjoint(basis_vector(1)) == ExactScalar(0, 1) * basis_vector(0));
}
