#include "argd/problems.hpp"

#include <algorithm>
#include <cmath>

namespace argd {

// ------------------------------------------------------------ CenterOfMass

CenterOfMass::CenterOfMass(std::vector<Vector> points) : points_(std::move(points)) {
  if (points_.empty()) throw std::invalid_argument("CenterOfMass: no points");
}

std::vector<double> CenterOfMass::cosines(const SpherePoint& x, EvalStats* stats) const {
  count_matvec(stats);
  std::vector<double> c(points_.size());
  for (std::size_t i = 0; i < points_.size(); ++i) {
    c[i] = std::clamp(dot(points_[i], x.coords), -1.0, 1.0);
    if (c[i] <= -1.0 + 1e-12) {
      throw std::domain_error("CenterOfMass: iterate is antipodal to a data point");
    }
  }
  return c;
}

double CenterOfMass::value(const SpherePoint& x, EvalStats* stats) const {
  double sum = 0.0;
  for (double c : cosines(x, stats)) {
    const double d = std::acos(c);
    sum += 0.5 * d * d;
  }
  return sum;
}

Vector CenterOfMass::euclidean_grad(const SpherePoint& x, EvalStats* stats) const {
  const std::vector<double> c = cosines(x, stats);
  Vector g(x.coords.size());
  for (std::size_t i = 0; i < points_.size(); ++i) {
    // d/dc (1/2 acos^2 c) = -acos(c) / sqrt(1 - c^2), with limit -1 at c = 1.
    const double coef = (1.0 - c[i] < 1e-12) ? -1.0 : -std::acos(c[i]) / std::sqrt(1.0 - c[i] * c[i]);
    g += points_[i] * coef;
  }
  return g;
}

// -------------------------------------------------------- RayleighQuotient

double RayleighQuotient::value(const SpherePoint& x, EvalStats* stats) const {
  count_matvec(stats);
  return dot(x.coords, matvec(a_, x.coords));
}

Vector RayleighQuotient::euclidean_grad(const SpherePoint& x, EvalStats* stats) const {
  count_matvec(stats);
  return matvec(a_, x.coords) * 2.0;
}

// ------------------------------------------------------- LyapunovObjective

LyapunovObjective::LyapunovObjective(SymMatrix a, SymMatrix c) : a_(std::move(a)), c_(std::move(c)) {
  if (a_.size() != c_.size()) throw std::invalid_argument("LyapunovObjective: dimension mismatch");
}

double LyapunovObjective::value(const BWPoint& x, EvalStats* stats) const {
  count_matmul(stats);
  const Matrix xa = matmul(x.X, a_);
  return trace_of_product(xa, x.X) - trace_of_product(x.X, c_);
}

SymMatrix LyapunovObjective::euclidean_grad(const BWPoint& x, EvalStats* stats) const {
  count_matmul(stats);
  const Matrix xa = matmul(x.X, a_);
  // A X = (X A)^T for symmetric A and X.
  return SymMatrix::symmetrize(xa + xa.transpose() - c_.matrix());
}

double LyapunovObjective::relative_residual(const BWPoint& x) const {
  const Matrix ax = matmul(a_, x.X);
  const Matrix residual = ax + matmul(x.X, a_) - c_.matrix();
  return frobenius_norm(residual) / frobenius_norm(c_);
}

// ---------------------------------------------------- WeightedLeastSquares

WeightedLeastSquares::WeightedLeastSquares(SymMatrix a, SymMatrix b)
    : a_(std::move(a)), b_(std::move(b)) {
  if (a_.size() != b_.size()) throw std::invalid_argument("WeightedLeastSquares: dimension mismatch");
}

double WeightedLeastSquares::value(const BWPoint& x, EvalStats*) const {
  const Matrix r = hadamard(a_, x.X) - b_.matrix();
  const double f = frobenius_norm(r);
  return f * f;
}

SymMatrix WeightedLeastSquares::euclidean_grad(const BWPoint& x, EvalStats*) const {
  const Matrix r = hadamard(a_, x.X) - b_.matrix();
  return SymMatrix::symmetrize(hadamard(r, a_) * 2.0);
}

// ---------------------------------------------------------- LinearMinusLog

LinearMinusLog::LinearMinusLog(Vector c) : c_(std::move(c)) {
  for (double v : c_) {
    if (!(v > 0.0)) throw std::invalid_argument("LinearMinusLog: weights must be positive");
  }
}

double LinearMinusLog::value(const OrthantPoint& x, EvalStats*) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < c_.size(); ++i) sum += x.coords[i] - c_[i] * std::log(x.coords[i]);
  return sum;
}

Vector LinearMinusLog::euclidean_grad(const OrthantPoint& x, EvalStats*) const {
  Vector g(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) g[i] = 1.0 - c_[i] / x.coords[i];
  return g;
}

double LinearMinusLog::value_log_coords(const Vector& y) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < c_.size(); ++i) sum += std::exp(y[i]) - c_[i] * y[i];
  return sum;
}

Vector LinearMinusLog::grad_log_coords(const Vector& y) const {
  Vector g(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) g[i] = std::exp(y[i]) - c_[i];
  return g;
}

// --------------------------------------------------------------- instances

std::vector<Vector> sample_hemisphere(std::size_t n, std::size_t count, Rng& rng) {
  std::vector<Vector> points;
  points.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Vector p = rng.unit_vector(n);
    p[n - 1] = std::abs(p[n - 1]);
    points.push_back(std::move(p));
  }
  return points;
}

SpherePoint center_of_mass_reference(const CenterOfMass& objective, std::size_t max_steps,
                                     double tol) {
  const std::size_t n = objective.points().front().size();
  const Sphere sphere(n);
  Vector mean(n);
  for (const Vector& p : objective.points()) mean += p;
  SpherePoint x = sphere.project(mean);
  const double step = 1.0 / static_cast<double>(objective.points().size());
  for (std::size_t k = 0; k < max_steps; ++k) {
    const Vector g = sphere.egrad_to_rgrad(x, objective.euclidean_grad(x));
    if (argd::norm(g) <= tol) break;
    x = sphere.exp(x, g * -step);
  }
  return x;
}

namespace {

struct CenterOfMassDraw {
  std::vector<Vector> points;
  Vector x0;
};

CenterOfMassDraw draw_center_of_mass(std::size_t n, std::uint64_t seed, std::size_t num_points) {
  Rng rng(seed);
  CenterOfMassDraw d;
  d.points = sample_hemisphere(n, num_points, rng);
  d.x0 = sample_hemisphere(n, 1, rng).front();
  return d;
}

struct RayleighDraw {
  SymMatrix a;
  Vector x0;
};

RayleighDraw draw_rayleigh(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  SymMatrix a = rng.symmetric_gaussian(n) * (1.0 / std::sqrt(static_cast<double>(n)));
  Vector x0 = rng.unit_vector(n);
  return {std::move(a), std::move(x0)};
}

}  // namespace

std::vector<Vector> center_of_mass_points(std::size_t n, std::uint64_t seed, std::size_t num_points) {
  return draw_center_of_mass(n, seed, num_points).points;
}

Instance<Sphere> make_center_of_mass(std::size_t n, std::uint64_t seed, std::size_t num_points) {
  CenterOfMassDraw d = draw_center_of_mass(n, seed, num_points);
  CenterOfMass objective(std::move(d.points));
  const SpherePoint reference = center_of_mass_reference(objective);
  const double optimum = objective.value(reference);
  Instance<Sphere> inst{make_problem<Sphere>(std::move(objective)), SpherePoint{std::move(d.x0)}};
  inst.problem.optimal_value = optimum;
  inst.problem.minimizers = {reference};
  return inst;
}

SymMatrix rayleigh_matrix(std::size_t n, std::uint64_t seed) { return draw_rayleigh(n, seed).a; }

Instance<Sphere> make_rayleigh(std::size_t n, std::uint64_t seed) {
  RayleighDraw d = draw_rayleigh(n, seed);
  const EigenDecomposition eig = sym_eig(d.a);
  Vector v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = eig.basis(i, 0);
  Instance<Sphere> inst{make_problem<Sphere>(RayleighQuotient(std::move(d.a))),
                        SpherePoint{std::move(d.x0)}};
  inst.problem.optimal_value = eig.eigenvalues[0];
  inst.problem.minimizers = {SpherePoint{v}, SpherePoint{-v}};
  return inst;
}

LyapunovData lyapunov_data(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  SymMatrix s = rng.symmetric_gaussian(n) * (1.0 / std::sqrt(static_cast<double>(n)));
  const double lo = sym_eig(s).eigenvalues[0];
  // Shift so that lambda_min(A) = 1.
  SymMatrix a = s + SymMatrix::identity(n) * (1.0 - lo);
  SymMatrix c = rng.spd(n);
  return {std::move(a), std::move(c)};
}

Instance<BuresWasserstein> make_lyapunov(std::size_t n, std::uint64_t seed) {
  LyapunovData d = lyapunov_data(n, seed);
  const SymMatrix x_star = solve_lyapunov(d.a, d.c);
  LyapunovObjective objective(d.a, d.c);
  const double optimum = objective.value(BWPoint{x_star});
  Instance<BuresWasserstein> inst{make_problem<BuresWasserstein>(std::move(objective)),
                                  BWPoint{SymMatrix::identity(n)}};
  inst.problem.optimal_value = optimum;
  inst.problem.minimizers = {BWPoint{x_star}};
  return inst;
}

Instance<BuresWasserstein> make_weighted_least_squares(std::size_t n, std::uint64_t seed,
                                                       double density) {
  if (!(density > 0.0 && density <= 1.0)) {
    throw std::invalid_argument("make_weighted_least_squares: density must be in (0, 1]");
  }
  Rng rng(seed);
  const SymMatrix x_true = rng.spd(n);
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const bool keep = rng.uniform() < density;
      const double w = rng.uniform(0.5, 1.5);
      a(i, j) = keep ? w : 0.0;
      a(j, i) = a(i, j);
    }
  }
  const SymMatrix weights(a);
  const SymMatrix b = SymMatrix::symmetrize(hadamard(weights, x_true));
  Instance<BuresWasserstein> inst{make_problem<BuresWasserstein>(WeightedLeastSquares(weights, b)),
                                  BWPoint{SymMatrix::identity(n)}};
  inst.problem.optimal_value = 0.0;
  // With every weight nonzero the minimizer is unique.
  if (density >= 1.0) inst.problem.minimizers = {BWPoint{x_true}};
  return inst;
}

Vector linear_minus_log_weights(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  Vector c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = std::exp(rng.uniform(-2.0, 2.0));
  return c;
}

Instance<PositiveOrthant> make_linear_minus_log(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  Vector c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = std::exp(rng.uniform(-2.0, 2.0));
  Vector x0(n);
  for (std::size_t i = 0; i < n; ++i) x0[i] = std::exp(rng.uniform(-2.0, 2.0));
  LinearMinusLog objective(c);
  double optimum = 0.0;
  for (std::size_t i = 0; i < n; ++i) optimum += c[i] - c[i] * std::log(c[i]);
  Instance<PositiveOrthant> inst{make_problem<PositiveOrthant>(std::move(objective)),
                                 OrthantPoint{std::move(x0)}};
  inst.problem.optimal_value = optimum;
  inst.problem.minimizers = {OrthantPoint{c}};
  return inst;
}

}  // namespace argd
