// Unit sphere S^{n-1} in R^n with the round metric.

#pragma once

#include <cstddef>

#include "argd/linalg.hpp"
#include "argd/manifold.hpp"

namespace argd {

/// Unit vector in R^n; Sphere::project() is the checked way to build one.
struct SpherePoint {
  Vector coords;
};

class Sphere {
 public:
  using Point = SpherePoint;
  using Tangent = Vector;
  using EuclideanGradient = Vector;
  using Ambient = Vector;
  static constexpr CurvatureClass curvature = CurvatureClass::NonnegativeComplete;

  /// Below this norm a tangent is treated as zero in exp and transport.
  static constexpr double kZeroTangent = 1e-12;

  explicit Sphere(std::size_t n);

  std::size_t dimension() const { return n_; }

  /// (I - x x^T) g. Counted as one matrix-vector product.
  Tangent egrad_to_rgrad(const Point& x, const EuclideanGradient& g,
                         EvalStats* stats = nullptr) const;
  Point exp(const Point& x, const Tangent& v, EvalStats* stats = nullptr) const;
  Tangent transport_along_step(const Point& x, const Tangent& v, const Tangent& w,
                               EvalStats* stats = nullptr) const;
  double inner(const Point& x, const Tangent& u, const Tangent& v) const;
  double norm(const Point& x, const Tangent& v) const;
  /// Great-circle distance in [0, pi].
  double distance(const Point& x, const Point& y) const;
  double max_step(const Point&, const Tangent&) const { return kInfinity; }
  Tangent scale(const Tangent& v, double s) const { return v * s; }
  double transported_difference_norm(const Point& x, const Tangent& g, const Tangent& transported,
                                     double prev_norm) const;
  /// Normalizes; throws std::domain_error for the zero vector.
  Point project(const Ambient& raw) const;

  /// Inverse of exp. Throws std::domain_error when y is (numerically) -x.
  Tangent log(const Point& x, const Point& y) const;

 private:
  std::size_t n_;
};

}  // namespace argd
