#include "argd/positive_orthant.hpp"

#include <algorithm>
#include <cmath>

namespace argd {

PositiveOrthant::PositiveOrthant(std::size_t n) : n_(n) {
  if (n < 1) throw std::invalid_argument("PositiveOrthant: dimension must be positive");
}

PositiveOrthant::Tangent PositiveOrthant::egrad_to_rgrad(const Point& x,
                                                         const EuclideanGradient& g,
                                                         EvalStats*) const {
  if (g.size() != n_) throw std::invalid_argument("PositiveOrthant: dimension mismatch");
  Vector out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = x.coords[i] * x.coords[i] * g[i];
  return out;
}

PositiveOrthant::Point PositiveOrthant::exp(const Point& x, const Tangent& v,
                                            EvalStats* stats) const {
  if (v.size() != n_) throw std::invalid_argument("PositiveOrthant: dimension mismatch");
  Vector out(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    double exponent = v[i] / x.coords[i];
    if (std::abs(exponent) > kMaxExponent) {
      exponent = std::clamp(exponent, -kMaxExponent, kMaxExponent);
      if (stats) ++stats->overflow_clamps;
    }
    out[i] = x.coords[i] * std::exp(exponent);
  }
  return Point{std::move(out)};
}

PositiveOrthant::Tangent PositiveOrthant::transport_along_step(const Point& x, const Tangent& v,
                                                               const Tangent& w,
                                                               EvalStats* stats) const {
  const Point y = exp(x, v, stats);
  Vector out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = w[i] * y.coords[i] / x.coords[i];
  return out;
}

double PositiveOrthant::inner(const Point& x, const Tangent& u, const Tangent& v) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < n_; ++i) sum += u[i] * v[i] / (x.coords[i] * x.coords[i]);
  return sum;
}

double PositiveOrthant::norm(const Point& x, const Tangent& v) const {
  return std::sqrt(inner(x, v, v));
}

double PositiveOrthant::distance(const Point& x, const Point& y) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    const double d = std::log(x.coords[i]) - std::log(y.coords[i]);
    sum += d * d;
  }
  return std::sqrt(sum);
}

double PositiveOrthant::transported_difference_norm(const Point& x, const Tangent& g,
                                                    const Tangent& transported, double) const {
  return norm(x, g - transported);
}

PositiveOrthant::Point PositiveOrthant::project(const Ambient& raw) const {
  if (raw.size() != n_) throw std::invalid_argument("PositiveOrthant: dimension mismatch");
  for (double v : raw) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::domain_error("PositiveOrthant::project: coordinates must be positive and finite");
    }
  }
  return Point{raw};
}

}  // namespace argd
