#pragma once

#include <cmath>
#include <vector>

#include "dwmod/forge.hpp"
#include "dwmod/inequality.hpp"
#include "dwmod/matrix.hpp"
#include "dwmod/rng.hpp"
#include "oracles.hpp"

namespace testing {

using dwmod::cplx;

inline oracle::Mat to_oracle(const dwmod::ComplexMatrix& a) {
  oracle::Mat out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  return out;
}

inline oracle::Bounds oracle_bounds(const dwmod::Instance& inst) {
  std::vector<oracle::Mat> xs, as;
  for (const auto& x : inst.xs) xs.push_back(to_oracle(x.mat()));
  for (const auto& a : inst.as) as.push_back(to_oracle(a.mat()));
  return oracle::dw_bounds(xs, as);
}

inline double max_abs_diff(const dwmod::ComplexMatrix& a, const dwmod::ComplexMatrix& b) {
  double worst = 0;
  for (std::size_t k = 0; k < a.entries().size(); ++k) worst = std::max(worst, std::abs(a.entries()[k] - b.entries()[k]));
  return worst;
}

inline dwmod::ComplexMatrix random_hermitian(dwmod::Rng& rng, std::size_t d) {
  const dwmod::ComplexMatrix g = rng.complex_normal_matrix(d, d);
  return dwmod::hermitian_part(g);
}

/// d = 1 module element from a real or complex vector.
inline dwmod::ModuleElement column(std::vector<cplx> v) {
  const std::size_t m = v.size();
  return dwmod::ModuleElement(dwmod::ComplexMatrix(m, 1, std::move(v)));
}

inline dwmod::ModuleElement scalar_element(cplx v) { return column({v}); }

}  // namespace testing
