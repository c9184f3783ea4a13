#include "argd/rng.hpp"

#include <cmath>
#include <numbers>

namespace argd {

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

Vector Rng::normal_vector(std::size_t n) {
  Vector v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = normal();
  return v;
}

Vector Rng::unit_vector(std::size_t n) {
  Vector v = normal_vector(n);
  double len = norm(v);
  while (len == 0.0) {
    v = normal_vector(n);
    len = norm(v);
  }
  return v * (1.0 / len);
}

SymMatrix Rng::symmetric_gaussian(std::size_t n) {
  Matrix g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) g(i, j) = normal();
  }
  return SymMatrix::symmetrize(g);
}

SymMatrix Rng::spd(std::size_t n, double shift) {
  Matrix g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) g(i, j) = normal();
  }
  Matrix m = matmul(g, g.transpose()) * (1.0 / static_cast<double>(n));
  m += Matrix::identity(n) * shift;
  return SymMatrix::symmetrize(m);
}

}  // namespace argd
