#pragma once

#include <cstdint>
#include <random>

#include "qent/linalg.hpp"

namespace qent {

// Seeded generator built on std::mt19937_64, whose output sequence is fixed by
// the C++ standard. Uniforms and Gaussians are derived here (not through
// <random> distributions) so the streams are identical on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  // Independent stream for parallel task `index` under a common seed.
  static Rng stream(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next_u64() { return engine_(); }
  // Uniform in [0, 1) with 53 random bits.
  double uniform();
  // Standard normal via Box-Muller.
  double normal();
  // Complex Gaussian with independent N(0,1) real and imaginary parts.
  Complex complex_normal();
  Matrix gaussian_matrix(std::size_t rows, std::size_t cols);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// SplitMix64 finalizer; used to decorrelate stream seeds.
std::uint64_t mix64(std::uint64_t x);

}  // namespace qent
