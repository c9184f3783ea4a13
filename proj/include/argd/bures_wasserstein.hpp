// Sym++(n) under the Bures-Wasserstein metric
//
//   <U, V>_X = 1/2 Tr(L_X(U) V),   X L_X(U) + L_X(U) X = U,
//   Exp_X(V) = X + V + L_X(V) X L_X(V),
//
// defined for t in J_V = {t : I + t L_X(V) positive definite}.
//
// Tangents carry their Lyapunov factor L_X(V) and the curvature term
// L_X(V) X L_X(V) when they are known. Riemannian gradients built by
// egrad_to_rgrad() have both, so a gradient step never issues a Lyapunov
// solve.

#pragma once

#include <cstddef>
#include <optional>

#include "argd/linalg.hpp"
#include "argd/manifold.hpp"

namespace argd {

struct BWPoint {
  SymMatrix X;
};

struct BWTangent {
  SymMatrix V;
  std::optional<SymMatrix> lyapunov;   // L_X(V)
  std::optional<SymMatrix> quadratic;  // L_X(V) X L_X(V)
};

class BuresWasserstein {
 public:
  using Point = BWPoint;
  using Tangent = BWTangent;
  using EuclideanGradient = SymMatrix;
  using Ambient = Matrix;
  static constexpr CurvatureClass curvature = CurvatureClass::NonnegativeIncomplete;

  explicit BuresWasserstein(std::size_t n);

  std::size_t dimension() const { return n_; }

  /// 2 (X G + G X) with L_X = 2 G. Two matrix products (X G and G X G).
  Tangent egrad_to_rgrad(const Point& x, const EuclideanGradient& g,
                         EvalStats* stats = nullptr) const;
  /// Throws StepDomainError when 1 is not in J_V or the result is not SPD.
  Point exp(const Point& x, const Tangent& v, EvalStats* stats = nullptr) const;
  /// Transport along t -> Exp_X(t V) of a tangent w parallel to v (the step
  /// direction and the gradient it was built from). The transported velocity is
  /// V + 2 L X L. Throws std::invalid_argument when w is not parallel to v.
  Tangent transport_along_step(const Point& x, const Tangent& v, const Tangent& w,
                               EvalStats* stats = nullptr) const;
  /// Uses a cached Lyapunov factor of either argument, otherwise one solve.
  double inner(const Point& x, const Tangent& u, const Tangent& v) const;
  double norm(const Point& x, const Tangent& v) const;
  /// Bures distance sqrt(Tr X + Tr Y - 2 Tr (X^1/2 Y X^1/2)^1/2).
  double distance(const Point& x, const Point& y) const;
  /// +inf when L_X(V) is positive semidefinite, else -1/lambda_min(L_X(V)).
  double max_step(const Point& x, const Tangent& v) const;
  Tangent scale(const Tangent& v, double s) const;
  /// ||g - Pg||_X expanded as <g,g>_X - 2<g,Pg>_X + prev_norm^2, using the
  /// cached factor of g for the cross term. Requires g.lyapunov.
  double transported_difference_norm(const Point& x, const Tangent& g, const Tangent& transported,
                                     double prev_norm) const;
  /// Symmetrizes and validates positive definiteness (std::domain_error).
  Point project(const Ambient& raw) const;

  /// L_X(V), from the cache when present.
  SymMatrix lyapunov_factor(const Point& x, const Tangent& v) const;
  /// Tangent with its Lyapunov factor attached.
  Tangent with_factor(const Point& x, const SymMatrix& v) const;

 private:
  std::size_t n_;
};

}  // namespace argd
