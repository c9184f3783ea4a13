// Benchmark objectives with Euclidean gradients and seeded instance
// generators.
//
// Each objective exposes value() and euclidean_grad(); the Riemannian
// gradient comes from the manifold's egrad_to_rgrad(). Expensive work is
// counted into EvalStats where it happens.

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "argd/bures_wasserstein.hpp"
#include "argd/linalg.hpp"
#include "argd/manifold.hpp"
#include "argd/positive_orthant.hpp"
#include "argd/rng.hpp"
#include "argd/sphere.hpp"

namespace argd {

/// Objective over a manifold in type-erased form, as consumed by the
/// optimizers.
template <RiemannianManifold M>
struct Problem {
  using Point = typename M::Point;
  using EuclideanGradient = typename M::EuclideanGradient;

  std::function<double(const Point&, EvalStats*)> value;
  std::function<EuclideanGradient(const Point&, EvalStats*)> euclidean_grad;
  std::optional<double> optimal_value;
  /// Known minimizers; the distance to the optimum is the distance to the
  /// nearest one. Empty when unknown.
  std::vector<Point> minimizers;

  std::optional<double> distance_to_optimum(const M& manifold, const Point& x) const {
    if (minimizers.empty()) return std::nullopt;
    double best = kInfinity;
    for (const Point& m : minimizers) best = std::min(best, manifold.distance(x, m));
    return best;
  }
};

/// Wraps any object with value(x, stats) / euclidean_grad(x, stats).
template <RiemannianManifold M, class Objective>
Problem<M> make_problem(Objective objective) {
  auto shared = std::make_shared<const Objective>(std::move(objective));
  Problem<M> p;
  p.value = [shared](const typename M::Point& x, EvalStats* s) { return shared->value(x, s); };
  p.euclidean_grad = [shared](const typename M::Point& x, EvalStats* s) {
    return shared->euclidean_grad(x, s);
  };
  return p;
}

// ------------------------------------------------------------------ sphere

/// phi(x) = sum_i 1/2 arccos^2 <p_i, x>. Evaluating <p_i, x> for all i is one
/// matrix-vector product with the stacked points.
class CenterOfMass {
 public:
  explicit CenterOfMass(std::vector<Vector> points);

  double value(const SpherePoint& x, EvalStats* stats = nullptr) const;
  Vector euclidean_grad(const SpherePoint& x, EvalStats* stats = nullptr) const;

  const std::vector<Vector>& points() const { return points_; }

 private:
  std::vector<double> cosines(const SpherePoint& x, EvalStats* stats) const;
  std::vector<Vector> points_;
};

/// phi(x) = x^T A x, gradient 2 A x.
class RayleighQuotient {
 public:
  explicit RayleighQuotient(SymMatrix a) : a_(std::move(a)) {}

  double value(const SpherePoint& x, EvalStats* stats = nullptr) const;
  Vector euclidean_grad(const SpherePoint& x, EvalStats* stats = nullptr) const;

  const SymMatrix& matrix() const { return a_; }

 private:
  SymMatrix a_;
};

// ----------------------------------------------------------- SPD matrices

/// phi(X) = Tr(X A X) - Tr(X C), gradient X A + A X - C. A is symmetric
/// positive definite, so the minimizer solves A X + X A = C.
class LyapunovObjective {
 public:
  LyapunovObjective(SymMatrix a, SymMatrix c);

  double value(const BWPoint& x, EvalStats* stats = nullptr) const;
  SymMatrix euclidean_grad(const BWPoint& x, EvalStats* stats = nullptr) const;
  /// ||A X + X A - C||_F / ||C||_F
  double relative_residual(const BWPoint& x) const;

  const SymMatrix& a() const { return a_; }
  const SymMatrix& c() const { return c_; }

 private:
  SymMatrix a_;
  SymMatrix c_;
};

/// phi(X) = ||A o X - B||_F^2 with gradient 2 (A o X - B) o A. A and B are
/// symmetric so the gradient is symmetric.
class WeightedLeastSquares {
 public:
  WeightedLeastSquares(SymMatrix a, SymMatrix b);

  double value(const BWPoint& x, EvalStats* stats = nullptr) const;
  SymMatrix euclidean_grad(const BWPoint& x, EvalStats* stats = nullptr) const;

 private:
  SymMatrix a_;
  SymMatrix b_;
};

// --------------------------------------------------------------- orthant

/// phi(x) = sum_i (x_i - c_i log x_i); minimizer x = c. g-convex on the
/// orthant since phi(exp(y)) = sum_i (e^{y_i} - c_i y_i) is convex.
class LinearMinusLog {
 public:
  explicit LinearMinusLog(Vector c);

  double value(const OrthantPoint& x, EvalStats* stats = nullptr) const;
  Vector euclidean_grad(const OrthantPoint& x, EvalStats* stats = nullptr) const;
  /// f(y) = phi(exp(y)) and its gradient, for the flat-space comparison.
  double value_log_coords(const Vector& y) const;
  Vector grad_log_coords(const Vector& y) const;

  const Vector& weights() const { return c_; }

 private:
  Vector c_;
};

// ------------------------------------------------------------- instances

template <RiemannianManifold M>
struct Instance {
  Problem<M> problem;
  typename M::Point x0;
};

inline constexpr std::size_t kDefaultCenterOfMassPoints = 50;
inline constexpr double kDefaultSparseDensity = 0.1;

/// Points uniform on the sphere with the last coordinate made positive.
std::vector<Vector> sample_hemisphere(std::size_t n, std::size_t count, Rng& rng);

/// Fixed steps of size 1/N from the normalized Euclidean mean until the
/// Riemannian gradient norm drops below tol or max_steps is reached.
SpherePoint center_of_mass_reference(const CenterOfMass& objective, std::size_t max_steps = 100000,
                                     double tol = 1e-13);

Instance<Sphere> make_center_of_mass(std::size_t n, std::uint64_t seed,
                                     std::size_t num_points = kDefaultCenterOfMassPoints);
Instance<Sphere> make_rayleigh(std::size_t n, std::uint64_t seed);
Instance<BuresWasserstein> make_lyapunov(std::size_t n, std::uint64_t seed);
Instance<BuresWasserstein> make_weighted_least_squares(std::size_t n, std::uint64_t seed,
                                                       double density);
Instance<PositiveOrthant> make_linear_minus_log(std::size_t n, std::uint64_t seed);

/// Generator data, exposed for tests and harness checks.
struct LyapunovData {
  SymMatrix a;
  SymMatrix c;
};
LyapunovData lyapunov_data(std::size_t n, std::uint64_t seed);
SymMatrix rayleigh_matrix(std::size_t n, std::uint64_t seed);
std::vector<Vector> center_of_mass_points(std::size_t n, std::uint64_t seed,
                                          std::size_t num_points = kDefaultCenterOfMassPoints);
Vector linear_minus_log_weights(std::size_t n, std::uint64_t seed);

}  // namespace argd
