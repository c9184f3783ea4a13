#include "argd/sphere.hpp"

#include <algorithm>
#include <cmath>

namespace argd {

namespace {

void require_dim(std::size_t n, std::size_t got) {
  if (got != n) throw std::invalid_argument("Sphere: dimension mismatch");
}

}  // namespace

Sphere::Sphere(std::size_t n) : n_(n) {
  if (n < 2) throw std::invalid_argument("Sphere: ambient dimension must be at least 2");
}

Sphere::Tangent Sphere::egrad_to_rgrad(const Point& x, const EuclideanGradient& g,
                                       EvalStats* stats) const {
  require_dim(n_, g.size());
  count_matvec(stats);
  return g - x.coords * dot(x.coords, g);
}

Sphere::Point Sphere::exp(const Point& x, const Tangent& v, EvalStats*) const {
  require_dim(n_, v.size());
  const double len = argd::norm(v);
  if (len < kZeroTangent) return x;
  return project(x.coords * std::cos(len) + v * (std::sin(len) / len));
}

Sphere::Tangent Sphere::transport_along_step(const Point& x, const Tangent& v, const Tangent& w,
                                             EvalStats*) const {
  const double len = argd::norm(v);
  if (len < kZeroTangent) return w;
  // The component of w along v rotates with the geodesic; the orthogonal
  // complement of span{x, v} is fixed.
  const Vector u = v * (1.0 / len);
  const double along = dot(w, u);
  return w + (u * (std::cos(len) - 1.0) - x.coords * std::sin(len)) * along;
}

double Sphere::inner(const Point&, const Tangent& u, const Tangent& v) const { return dot(u, v); }

double Sphere::norm(const Point&, const Tangent& v) const { return argd::norm(v); }

double Sphere::distance(const Point& x, const Point& y) const {
  const double c = std::clamp(dot(x.coords, y.coords), -1.0, 1.0);
  const double s = argd::norm(y.coords - x.coords * c);
  return std::atan2(s, c);
}

double Sphere::transported_difference_norm(const Point&, const Tangent& g,
                                           const Tangent& transported, double) const {
  return argd::norm(g - transported);
}

Sphere::Point Sphere::project(const Ambient& raw) const {
  require_dim(n_, raw.size());
  const double len = argd::norm(raw);
  if (!(len > 0.0) || !std::isfinite(len)) {
    throw std::domain_error("Sphere::project: cannot normalize a zero or non-finite vector");
  }
  return Point{raw * (1.0 / len)};
}

Sphere::Tangent Sphere::log(const Point& x, const Point& y) const {
  const double c = std::clamp(dot(x.coords, y.coords), -1.0, 1.0);
  if (c <= -1.0 + 1e-12) throw std::domain_error("Sphere::log: antipodal points");
  const Vector u = y.coords - x.coords * c;
  const double s = argd::norm(u);
  if (s == 0.0) return Vector(n_);
  return u * (std::atan2(s, c) / s);
}

}  // namespace argd
