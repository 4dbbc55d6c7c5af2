#include <doctest.h>

#include <cmath>

#include "dwmod/error.hpp"
#include "dwmod/forge.hpp"
#include "dwmod/module_space.hpp"
#include "dwmod/rng.hpp"
#include "helpers.hpp"

using namespace dwmod;
using testing::max_abs_diff;

namespace {
const cplx I{0.0, 1.0};
ModuleElement random_element(Rng& rng, std::size_t m, std::size_t d) {
  return ModuleElement(rng.complex_normal_matrix(m, d));
}
}  // namespace

TEST_CASE("inner product examples") {
  const ModuleElement x(ComplexMatrix{{1.0, 0.0}});
  CHECK(inner_product(x, x).mat() == ComplexMatrix{{1.0, 0.0}, {0.0, 0.0}});
  const ModuleElement cols(ComplexMatrix{{1.0, 0.0}, {0.0, 2.0}, {0.0, 0.0}});
  const ComplexMatrix g = inner_product(cols, cols).mat();
  CHECK(g == ComplexMatrix::diagonal({1.0, 4.0}));
  CHECK_THROWS_AS(inner_product(x, ModuleElement(ComplexMatrix{{1.0}})), Error);
  CHECK_THROWS_AS(inner_product(x, ModuleElement(ComplexMatrix::zeros(2, 2))), Error);
}

TEST_CASE("right action examples") {
  const ModuleElement x(ComplexMatrix{{1.0, 0.0}});
  CHECK(right_action(x, AlgebraElement::identity(2)) == x);
  CHECK(is_zero(right_action(x, AlgebraElement(ComplexMatrix::zeros(2, 2)))));
  CHECK(right_action(x, AlgebraElement(ComplexMatrix::diagonal({I, 1.0}))).mat() == ComplexMatrix{{I, 0.0}});
  CHECK_THROWS_AS(right_action(x, AlgebraElement::identity(3)), Error);
  CHECK_THROWS_AS(AlgebraElement(ComplexMatrix::zeros(2, 3)), Error);
}

TEST_CASE("module norm examples") {
  CHECK(module_norm(ModuleElement(ComplexMatrix{{1.0, 0.0}})) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(module_norm(ModuleElement::zero(3, 2)) == 0.0);
  CHECK(module_norm(ModuleElement(ComplexMatrix{{3.0, 0.0}, {0.0, 1.0}})) == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("inner product axioms on random elements") {
  Rng rng(101);
  for (int s = 0; s < 300; ++s) {
    const std::size_t m = 1 + rng.next() % 4, d = 1 + rng.next() % 3;
    const ModuleElement x = random_element(rng, m, d), y = random_element(rng, m, d), z = random_element(rng, m, d);
    const AlgebraElement a(rng.complex_normal_matrix(d, d)), b(rng.complex_normal_matrix(d, d));
    const cplx lam = rng.complex_normal();

    // positivity
    const auto e = herm_eig(inner_product(x, x).mat());
    CHECK(e.eigenvalues.front() >= -1e-12);
    // linearity in the second slot
    CHECK(max_abs_diff(inner_product(x, y + lam * z).mat(),
                       inner_product(x, y).mat() + lam * inner_product(x, z).mat()) <= 1e-9);
    // module compatibility and symmetry
    CHECK(max_abs_diff(inner_product(x, right_action(y, a)).mat(), (inner_product(x, y) * a).mat()) <= 1e-9);
    CHECK(inner_product(x, y).mat() == adjoint(inner_product(y, x).mat()));
    // associativity of the action
    CHECK(max_abs_diff(right_action(right_action(x, a), b).mat(), right_action(x, a * b).mat()) <= 1e-9);
    // Cauchy-Schwarz and triangle inequality
    CHECK(algebra_norm(inner_product(x, y)) <= module_norm(x) * module_norm(y) + 1e-9);
    CHECK(module_norm(x + y) <= module_norm(x) + module_norm(y) + 1e-9);
    // largest singular value, from an independent route
    CHECK(std::abs(module_norm(x) - oracle::power_iteration_norm(testing::to_oracle(x.mat()))) <= 1e-9);
  }
}

TEST_CASE("definiteness within tolerance") {
  CHECK(is_zero(ModuleElement(ComplexMatrix{{1e-12, 0.0}})));
  CHECK_FALSE(is_zero(ModuleElement(ComplexMatrix{{1e-6, 0.0}})));
}

TEST_CASE("d = 1 recovers the Euclidean norm") {
  Rng rng(102);
  for (int s = 0; s < 200; ++s) {
    const std::size_t m = 1 + rng.next() % 6;
    const ModuleElement x = random_element(rng, m, 1);
    double sq = 0;
    for (const cplx& z : x.mat().entries()) sq += std::norm(z);
    CHECK(std::abs(module_norm(x) - std::sqrt(sq)) <= 1e-12 * std::max(1.0, std::sqrt(sq)));
  }
}

TEST_CASE("coisometry norm identity examples") {
  const ModuleElement x(ComplexMatrix{{1.0, 0.0}});
  const AlgebraElement a(ComplexMatrix::diagonal({I, 1.0}));
  auto r = check_lemma_coisometry_norm(x, a);
  CHECK(r.lhs == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(r.rhs == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(r.holds);
  CHECK(r.zero_product);

  r = check_lemma_coisometry_norm(ModuleElement::zero(1, 2), a);
  CHECK(r.lhs == 0.0);
  CHECK(r.rhs == 0.0);
  CHECK(r.holds);
  CHECK(r.zero_product);

  try {
    check_lemma_coisometry_norm(x, AlgebraElement(ComplexMatrix{{0.0, 2.0}, {0.0, 0.0}}));
    FAIL("non-coisometry accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotCoisometryMultiple);
  }
}

TEST_CASE("coisometry norm identity over 1000+ random pairs") {
  Rng rng(103);
  int count = 0;
  for (std::size_t d : {1, 2, 3})
    for (std::size_t m : {1, 2, 4})
      for (int s = 0; s < 120; ++s, ++count) {
        const ModuleElement x = random_element(rng, m, d);
        const AlgebraElement a(rng.uniform(0.1, 3.0) * random_unitary(rng, d));
        const auto r = check_lemma_coisometry_norm(x, a);
        CHECK(r.holds);
        CHECK(r.zero_product);
      }
  CHECK(count >= 1000);

  // m = 3, d = 2 with a = 2 u, the sweep named for this identity.
  for (int s = 0; s < 1000; ++s) {
    const ModuleElement x = random_element(rng, 3, 2);
    const AlgebraElement a(2.0 * random_unitary(rng, 2));
    CHECK(check_lemma_coisometry_norm(x, a).holds);
  }
}

TEST_CASE("sum") {
  std::vector<ModuleElement> xs{ModuleElement(ComplexMatrix{{1.0}}), ModuleElement(ComplexMatrix{{2.0}})};
  CHECK(sum(xs).mat() == ComplexMatrix{{3.0}});
  CHECK_THROWS_AS(sum(std::span<const ModuleElement>{}), Error);
}
