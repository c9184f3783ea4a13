// Positive orthant R^n_{++} with metric G(x) = diag(x)^{-2}.
//
// The chart y = log(x) is an isometry onto flat R^n, so this manifold is
// complete with zero curvature and Algorithm-1-style descent here matches
// Euclidean descent on f(y) = phi(exp(y)).

#pragma once

#include <cstddef>

#include "argd/linalg.hpp"
#include "argd/manifold.hpp"

namespace argd {

struct OrthantPoint {
  Vector coords;  // strictly positive
};

class PositiveOrthant {
 public:
  using Point = OrthantPoint;
  using Tangent = Vector;
  using EuclideanGradient = Vector;
  using Ambient = Vector;
  static constexpr CurvatureClass curvature = CurvatureClass::Flat;

  /// Bound on |v_i / x_i| inside exp(); hits are tallied in
  /// EvalStats::overflow_clamps.
  static constexpr double kMaxExponent = 700.0;

  explicit PositiveOrthant(std::size_t n);

  std::size_t dimension() const { return n_; }

  /// diag(x)^2 g
  Tangent egrad_to_rgrad(const Point& x, const EuclideanGradient& g,
                         EvalStats* stats = nullptr) const;
  /// x_i exp(v_i / x_i)
  Point exp(const Point& x, const Tangent& v, EvalStats* stats = nullptr) const;
  /// w_i y_i / x_i with y = exp(x, v)
  Tangent transport_along_step(const Point& x, const Tangent& v, const Tangent& w,
                               EvalStats* stats = nullptr) const;
  double inner(const Point& x, const Tangent& u, const Tangent& v) const;
  double norm(const Point& x, const Tangent& v) const;
  /// ||log x - log y||
  double distance(const Point& x, const Point& y) const;
  double max_step(const Point&, const Tangent&) const { return kInfinity; }
  Tangent scale(const Tangent& v, double s) const { return v * s; }
  double transported_difference_norm(const Point& x, const Tangent& g, const Tangent& transported,
                                     double prev_norm) const;
  /// Validates strict positivity (std::domain_error).
  Point project(const Ambient& raw) const;

 private:
  std::size_t n_;
};

}  // namespace argd
