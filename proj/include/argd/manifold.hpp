// The geometric operations an optimizer consumes, expressed as a concept.
//
// A manifold type M provides:
//   M::Point, M::Tangent      element and tangent vector (tangents carry no
//                             base point; the base is passed explicitly)
//   M::EuclideanGradient      ambient gradient type returned by objectives
//   M::Ambient                raw ambient value accepted by project()
//   M::curvature              CurvatureClass tag
//
// and the member functions listed in RiemannianManifold below. Expensive
// work (matrix-vector / matrix-matrix products) is tallied into an optional
// EvalStats; passing nullptr disables counting.

#pragma once

#include <concepts>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace argd {

enum class CurvatureClass { NonnegativeComplete, NonnegativeIncomplete, Flat };

inline std::string to_string(CurvatureClass c) {
  switch (c) {
    case CurvatureClass::NonnegativeComplete: return "nonnegative-complete";
    case CurvatureClass::NonnegativeIncomplete: return "nonnegative-incomplete";
    case CurvatureClass::Flat: return "flat";
  }
  return "unknown";
}

/// Counters for the dominant-cost primitives of a run.
struct EvalStats {
  std::uint64_t matvec = 0;
  std::uint64_t matmul = 0;
  std::uint64_t fn_evals = 0;
  std::uint64_t exp_evals = 0;
  std::uint64_t overflow_clamps = 0;

  std::uint64_t expensive_ops() const { return matvec + matmul; }
};

inline void count_matvec(EvalStats* stats, std::uint64_t n = 1) {
  if (stats) stats->matvec += n;
}
inline void count_matmul(EvalStats* stats, std::uint64_t n = 1) {
  if (stats) stats->matmul += n;
}

/// An exponential-map step left the domain of the exponential.
class StepDomainError : public std::domain_error {
 public:
  StepDomainError(const std::string& what, double max_step)
      : std::domain_error(what), max_step_(max_step) {}
  /// Supremum of admissible t for the offending direction.
  double max_step() const { return max_step_; }

 private:
  double max_step_;
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

template <class M>
concept RiemannianManifold =
    requires(const M& m, const typename M::Point& x, const typename M::Tangent& v,
             const typename M::EuclideanGradient& g, const typename M::Ambient& raw,
             double s, EvalStats* stats) {
      { M::curvature } -> std::convertible_to<CurvatureClass>;
      { m.egrad_to_rgrad(x, g, stats) } -> std::same_as<typename M::Tangent>;
      { m.exp(x, v, stats) } -> std::same_as<typename M::Point>;
      // Parallel transport of the third argument from x to exp(x, v) along
      // t -> exp(x, t v).
      { m.transport_along_step(x, v, v, stats) } -> std::same_as<typename M::Tangent>;
      { m.inner(x, v, v) } -> std::same_as<double>;
      { m.norm(x, v) } -> std::same_as<double>;
      { m.distance(x, x) } -> std::same_as<double>;
      // sup{t > 0 : exp(x, t v) defined}; +inf on complete manifolds.
      { m.max_step(x, v) } -> std::same_as<double>;
      { m.scale(v, s) } -> std::same_as<typename M::Tangent>;
      // ||g - Pg||_x where Pg is a transported previous gradient whose norm
      // at its own base point was prev_norm.
      { m.transported_difference_norm(x, v, v, s) } -> std::same_as<double>;
      { m.project(raw) } -> std::same_as<typename M::Point>;
    };

}  // namespace argd
