#pragma once

#include <cstdint>
#include <random>

#include "dwmod/matrix.hpp"

namespace dwmod {

/// SplitMix64 step; used to derive independent seeds.
std::uint64_t splitmix64(std::uint64_t& state) noexcept;

/// Seed for stream `stream` of base seed `seed`: two SplitMix64 rounds over
/// seed ^ (stream * golden-ratio constant).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

/// std::mt19937_64 (whose output sequence is fixed by the standard) with
/// hand-written uniform and normal transforms, since the standard library
/// distributions are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) : engine_(derive_seed(seed, stream)) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal via Box-Muller (one draw per call, no caching).
  double normal();
  /// Complex normal with E|z|^2 = 1.
  cplx complex_normal();
  ComplexMatrix complex_normal_matrix(std::size_t rows, std::size_t cols);
  /// e^{i theta}, theta uniform on [0, 2 pi).
  cplx unit_phase();

 private:
  std::mt19937_64 engine_;
};

}  // namespace dwmod
