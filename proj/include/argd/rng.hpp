// Seeded random source with a portable output sequence.
//
// std::mt19937_64 is fully specified by the standard; the distribution
// transforms below are written out so that a seed produces the same instance
// on every standard library.

#pragma once

#include <cstdint>
#include <random>

#include "argd/linalg.hpp"

namespace argd {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal (Box-Muller).
  double normal();

  Vector normal_vector(std::size_t n);
  /// Uniform on the unit sphere S^{n-1}.
  Vector unit_vector(std::size_t n);
  /// Symmetric matrix with N(0,1) off-diagonal entries, (G + G^T)/2 style.
  SymMatrix symmetric_gaussian(std::size_t n);
  /// G G^T / n + shift * I with G an n x n Gaussian matrix.
  SymMatrix spd(std::size_t n, double shift = 1.0);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace argd
