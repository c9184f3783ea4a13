// Riemannian gradient descent drivers:
//
//   adgd_run            adaptive step sizes (growth cap + local inverse
//                       Lipschitz estimate from the transported gradient)
//   armijo_run          backtracking line search started at lambda * previous step
//   fixed_run           constant step
//   euclidean_adgd_run  the adaptive rule on flat R^n, written out separately
//                       as an independent reference implementation
//
// All drivers emit one TraceRow per iterate x_0, ..., x_K. Row k holds the
// step alpha_k taken from x_k (or, on the last row, the step that would be
// taken). On manifolds whose exponential map has a bounded domain, steps are
// clamped to kDomainSafety * max_step.

#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "argd/linalg.hpp"
#include "argd/manifold.hpp"
#include "argd/problems.hpp"
#include "argd/trace.hpp"

namespace argd {

enum class OptimizerKind { Adaptive, Armijo, Fixed };

std::string to_string(OptimizerKind kind);

struct ArmijoParams {
  double c = 1e-4;      // sufficient decrease fraction, in (0, 1)
  double beta = 0.5;    // backtracking factor, in (0, 1)
  double lambda = 1.0;  // initial trial is lambda * previous accepted step, >= 1
};

struct RunConfig {
  OptimizerKind optimizer = OptimizerKind::Adaptive;
  std::size_t max_iters = 1000;
  double tol = 1e-10;  // stop when ||grad|| <= tol
  double alpha0 = 1e-3;
  bool first_iteration_line_search = false;
  ArmijoParams armijo;
  double fixed_alpha = 1e-2;

  bool keep_iterates = false;

  // Harness hooks. Disabling the domain clamp lets a bounded-domain run fail
  // with a StepDomainError; the last two reduce the adaptive rule to a
  // constant step (growth cap = +inf, ratio branch = forced_ratio).
  bool clamp_to_domain = true;
  bool disable_growth_cap = false;
  std::optional<double> forced_ratio;

  /// Throws std::invalid_argument on out-of-range parameters.
  void validate() const;
};

inline constexpr double kDomainSafety = 0.99;
inline constexpr int kMaxBacktracks = 60;
inline constexpr int kMaxFirstStepDoublings = 60;
inline constexpr int kDivergenceWindow = 50;

template <class Point>
struct RunResult {
  Trace trace;
  Point final_point;
  std::vector<Point> iterates;  // filled when RunConfig::keep_iterates
};

struct StepSize {
  double alpha;
  std::optional<double> ell;
};

/// alpha_k = min( sqrt(1 + theta_{k-1}) alpha_{k-1},
///                ||alpha_{k-1} g_{k-1}|| / (sqrt(2) ||g_k - P g_{k-1}||) ),
/// a zero difference norm making the second branch +inf.
StepSize adaptive_step_size(double alpha_prev, double theta_prev, double prev_step_norm,
                            double grad_diff_norm, const RunConfig& config = {});

/// Raised inside a run when the objective or gradient stops being finite.
class NonFiniteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

template <RiemannianManifold M>
class RunContext {
 public:
  using Point = typename M::Point;
  using Tangent = typename M::Tangent;

  RunContext(const M& manifold, const Problem<M>& problem, const RunConfig& config)
      : m(manifold), p(problem), cfg(config) {}

  Tangent gradient(const Point& x) {
    return m.egrad_to_rgrad(x, p.euclidean_grad(x, &stats), &stats);
  }

  double checked_norm(const Point& x, const Tangent& g) const {
    const double n = m.norm(x, g);
    if (!std::isfinite(n)) throw NonFiniteError("gradient is not finite");
    return n;
  }

  Point step(const Point& x, const Tangent& v) {
    ++stats.exp_evals;
    return m.exp(x, v, &stats);
  }

  /// min(alpha, kDomainSafety * max_step(x, -g)) when clamping is enabled.
  double clamp(const Point& x, const Tangent& g, double alpha, bool& clamped) const {
    if (!cfg.clamp_to_domain) return alpha;
    const double limit = m.max_step(x, m.scale(g, -1.0));
    if (std::isfinite(limit) && alpha > kDomainSafety * limit) {
      clamped = true;
      return kDomainSafety * limit;
    }
    return alpha;
  }

  /// Row with counters and diagnostics; phi is evaluated uncounted unless
  /// supplied.
  TraceRow row(std::size_t k, const Point& x, double grad_norm, double alpha, double theta,
               std::optional<double> ell, bool clamped, std::optional<double> phi = std::nullopt) {
    TraceRow r;
    r.k = k;
    r.phi = phi ? *phi : p.value(x, nullptr);
    if (!std::isfinite(r.phi)) throw NonFiniteError("objective is not finite");
    r.grad_norm = grad_norm;
    r.alpha = alpha;
    r.theta = theta;
    r.ell = ell;
    r.fn_evals = stats.fn_evals;
    r.exp_evals = stats.exp_evals;
    r.expensive_ops = stats.expensive_ops();
    r.dist_to_opt = p.distance_to_optimum(m, x);
    // Exponent overflow guards hit since the previous row also flag it.
    r.clamped = clamped || stats.overflow_clamps > overflow_seen;
    overflow_seen = stats.overflow_clamps;
    return r;
  }

  void keep(const Point& x) {
    if (cfg.keep_iterates) iterates.push_back(x);
  }

  RunResult<Point> finish(Point x) {
    return RunResult<Point>{std::move(trace), std::move(x), std::move(iterates)};
  }

  void abort(const std::exception& e) {
    trace.status = RunStatus::NumericalAbort;
    trace.message = e.what();
  }

  const M& m;
  const Problem<M>& p;
  const RunConfig& cfg;
  EvalStats stats;
  Trace trace;
  std::vector<Point> iterates;
  std::uint64_t overflow_seen = 0;
};

/// Runs body() and converts numerical failures into an aborted trace.
template <class Context, class Body>
void guarded(Context& ctx, Body&& body) {
  try {
    body();
  } catch (const StepDomainError& e) {
    ctx.abort(e);
  } catch (const NonFiniteError& e) {
    ctx.abort(e);
  } catch (const ConvergenceError& e) {
    ctx.abort(e);
  } catch (const std::domain_error& e) {
    ctx.abort(e);
  }
}

}  // namespace detail

// ---------------------------------------------------------------- adaptive

/// Iterate x_k together with what the step rule needs from x_{k-1}.
template <RiemannianManifold M>
struct AdaptiveState {
  typename M::Point x_prev;
  typename M::Tangent grad_prev;
  typename M::Tangent step_prev;  // -alpha_{k-1} grad_{k-1}, tangent at x_prev
  double grad_prev_norm = 0.0;
  double alpha_prev = 0.0;
  double theta_prev = 0.0;

  typename M::Point x;
  typename M::Tangent grad;
  double grad_norm = 0.0;
  std::size_t k = 1;
};

struct AdaptiveProposal {
  double alpha = 0.0;
  double theta = 0.0;
  std::optional<double> ell;
  bool clamped = false;
};

/// alpha_k and theta_k at the state's current iterate.
template <RiemannianManifold M>
AdaptiveProposal adgd_propose(const AdaptiveState<M>& s, const M& m, const RunConfig& cfg,
                              EvalStats* stats) {
  const auto transported = m.transport_along_step(s.x_prev, s.step_prev, s.grad_prev, stats);
  const double diff = m.transported_difference_norm(s.x, s.grad, transported, s.grad_prev_norm);
  const StepSize rule =
      adaptive_step_size(s.alpha_prev, s.theta_prev, s.alpha_prev * s.grad_prev_norm, diff, cfg);

  AdaptiveProposal out;
  out.ell = rule.ell;
  out.alpha = rule.alpha;
  if (cfg.clamp_to_domain) {
    const double limit = m.max_step(s.x, m.scale(s.grad, -1.0));
    if (std::isfinite(limit) && out.alpha > kDomainSafety * limit) {
      out.alpha = kDomainSafety * limit;
      out.clamped = true;
    }
  }
  out.theta = out.alpha / s.alpha_prev;
  return out;
}

/// x_{k+1} = exp(x_k, -alpha_k grad_k) and the gradient there.
template <RiemannianManifold M>
AdaptiveState<M> adgd_advance(const AdaptiveState<M>& s, const AdaptiveProposal& prop, const M& m,
                              const Problem<M>& p, EvalStats* stats) {
  auto step = m.scale(s.grad, -prop.alpha);
  if (stats) ++stats->exp_evals;
  auto next_x = m.exp(s.x, step, stats);
  auto next_grad = m.egrad_to_rgrad(next_x, p.euclidean_grad(next_x, stats), stats);
  const double next_norm = m.norm(next_x, next_grad);
  if (!std::isfinite(next_norm)) throw NonFiniteError("gradient is not finite");
  return AdaptiveState<M>{s.x,           s.grad,    std::move(step),      s.grad_norm,
                          prop.alpha,    prop.theta, std::move(next_x), std::move(next_grad),
                          next_norm,     s.k + 1};
}

/// One iteration: proposal at x_k, its trace row, and the state at x_{k+1}.
template <RiemannianManifold M>
std::pair<AdaptiveState<M>, TraceRow> adgd_step(const AdaptiveState<M>& s, const M& m,
                                                const Problem<M>& p, const RunConfig& cfg,
                                                EvalStats& stats) {
  const AdaptiveProposal prop = adgd_propose(s, m, cfg, &stats);
  TraceRow r;
  r.k = s.k;
  r.phi = p.value(s.x, nullptr);
  r.grad_norm = s.grad_norm;
  r.alpha = prop.alpha;
  r.theta = prop.theta;
  r.ell = prop.ell;
  r.clamped = prop.clamped;
  r.dist_to_opt = p.distance_to_optimum(m, s.x);
  r.fn_evals = stats.fn_evals;
  r.exp_evals = stats.exp_evals;
  r.expensive_ops = stats.expensive_ops();
  return {adgd_advance(s, prop, m, p, &stats), r};
}

template <RiemannianManifold M>
RunResult<typename M::Point> adgd_run(const RunConfig& cfg, const M& m, const Problem<M>& p,
                                      const typename M::Point& x0) {
  cfg.validate();
  detail::RunContext<M> ctx(m, p, cfg);
  typename M::Point last = x0;

  detail::guarded(ctx, [&] {
    ctx.keep(x0);
    auto g0 = ctx.gradient(x0);
    const double g0_norm = ctx.checked_norm(x0, g0);
    if (g0_norm <= cfg.tol) {
      ctx.trace.rows.push_back(ctx.row(0, x0, g0_norm, cfg.alpha0, 0.0, std::nullopt, false));
      ctx.trace.status = RunStatus::Converged;
      return;
    }

    // First step x_1 = exp(x_0, -alpha_0 grad_0), optionally doubling alpha_0
    // until ||g_0|| <= sqrt(2) ||g_1 - P g_0||.
    double alpha0 = cfg.alpha0;
    bool clamped0 = false;
    auto step0 = m.scale(g0, -alpha0);
    typename M::Point x1 = x0;
    typename M::Tangent g1 = g0;
    for (int doubling = 0;; ++doubling) {
      alpha0 = ctx.clamp(x0, g0, alpha0, clamped0);
      step0 = m.scale(g0, -alpha0);
      x1 = ctx.step(x0, step0);
      g1 = ctx.gradient(x1);
      if (!cfg.first_iteration_line_search || cfg.forced_ratio || clamped0 ||
          doubling == kMaxFirstStepDoublings) {
        break;
      }
      const auto transported = m.transport_along_step(x0, step0, g0, &ctx.stats);
      const double diff = m.transported_difference_norm(x1, g1, transported, g0_norm);
      if (g0_norm <= std::sqrt(2.0) * diff) break;
      alpha0 *= 2.0;
    }
    ctx.trace.rows.push_back(ctx.row(0, x0, g0_norm, alpha0, 0.0, std::nullopt, clamped0));

    AdaptiveState<M> state{x0, g0, step0, g0_norm, alpha0, 0.0,
                           x1, g1, ctx.checked_norm(x1, g1), 1};
    last = state.x;
    ctx.keep(state.x);
    for (;;) {
      const AdaptiveProposal prop = adgd_propose(state, m, cfg, &ctx.stats);
      ctx.trace.rows.push_back(ctx.row(state.k, state.x, state.grad_norm, prop.alpha, prop.theta,
                                       prop.ell, prop.clamped));
      if (state.grad_norm <= cfg.tol) {
        ctx.trace.status = RunStatus::Converged;
        return;
      }
      if (state.k >= cfg.max_iters) {
        ctx.trace.status = RunStatus::MaxIterations;
        return;
      }
      state = adgd_advance(state, prop, m, p, &ctx.stats);
      last = state.x;
      ctx.keep(state.x);
    }
  });
  return ctx.finish(std::move(last));
}

// ------------------------------------------------------------------ armijo

template <RiemannianManifold M>
RunResult<typename M::Point> armijo_run(const RunConfig& cfg, const M& m, const Problem<M>& p,
                                        const typename M::Point& x0) {
  cfg.validate();
  detail::RunContext<M> ctx(m, p, cfg);
  typename M::Point x = x0;

  detail::guarded(ctx, [&] {
    ctx.keep(x);
    auto g = ctx.gradient(x);
    double g_norm = ctx.checked_norm(x, g);
    ++ctx.stats.fn_evals;
    double phi = p.value(x, &ctx.stats);
    double eta_prev = 0.0;

    for (std::size_t k = 0;; ++k) {
      bool clamped = false;
      double eta = k == 0 ? cfg.alpha0 : cfg.armijo.lambda * eta_prev;
      eta = ctx.clamp(x, g, eta, clamped);
      const double theta = k == 0 ? 0.0 : eta / eta_prev;

      if (g_norm <= cfg.tol || k >= cfg.max_iters) {
        ctx.trace.rows.push_back(ctx.row(k, x, g_norm, eta, theta, std::nullopt, clamped, phi));
        ctx.trace.status = g_norm <= cfg.tol ? RunStatus::Converged : RunStatus::MaxIterations;
        return;
      }

      typename M::Point trial = x;
      double phi_trial = 0.0;
      for (int halvings = 0;; ++halvings) {
        trial = ctx.step(x, m.scale(g, -eta));
        ++ctx.stats.fn_evals;
        phi_trial = p.value(trial, &ctx.stats);
        if (!std::isfinite(phi_trial)) throw NonFiniteError("objective is not finite");
        if (phi_trial <= phi - cfg.armijo.c * eta * g_norm * g_norm) break;
        if (halvings == kMaxBacktracks) {
          throw NonFiniteError("Armijo backtracking exceeded " + std::to_string(kMaxBacktracks) +
                               " reductions");
        }
        eta *= cfg.armijo.beta;
      }
      ctx.trace.rows.push_back(ctx.row(k, x, g_norm, eta, k == 0 ? 0.0 : eta / eta_prev,
                                       std::nullopt, clamped, phi));

      x = std::move(trial);
      phi = phi_trial;
      ctx.keep(x);
      g = ctx.gradient(x);
      g_norm = ctx.checked_norm(x, g);
      eta_prev = eta;
    }
  });
  return ctx.finish(std::move(x));
}

// ------------------------------------------------------------------- fixed

template <RiemannianManifold M>
RunResult<typename M::Point> fixed_run(const RunConfig& cfg, const M& m, const Problem<M>& p,
                                       const typename M::Point& x0) {
  cfg.validate();
  detail::RunContext<M> ctx(m, p, cfg);
  typename M::Point x = x0;

  detail::guarded(ctx, [&] {
    ctx.keep(x);
    double alpha_prev = 0.0;
    double phi_prev = 0.0;
    int increases = 0;
    for (std::size_t k = 0;; ++k) {
      const auto g = ctx.gradient(x);
      const double g_norm = ctx.checked_norm(x, g);
      bool clamped = false;
      const double alpha = ctx.clamp(x, g, cfg.fixed_alpha, clamped);
      const double theta = (k == 0 || alpha_prev == 0.0) ? 0.0 : alpha / alpha_prev;
      TraceRow r = ctx.row(k, x, g_norm, alpha, theta, std::nullopt, clamped);
      if (k > 0) {
        increases = r.phi > phi_prev ? increases + 1 : 0;
      }
      phi_prev = r.phi;
      ctx.trace.rows.push_back(r);
      if (increases >= kDivergenceWindow) {
        throw NonFiniteError("fixed step diverging: objective increased " +
                             std::to_string(kDivergenceWindow) + " consecutive iterations");
      }
      if (g_norm <= cfg.tol) {
        ctx.trace.status = RunStatus::Converged;
        return;
      }
      if (k >= cfg.max_iters) {
        ctx.trace.status = RunStatus::MaxIterations;
        return;
      }
      x = ctx.step(x, m.scale(g, -alpha));
      ctx.keep(x);
      alpha_prev = alpha;
    }
  });
  return ctx.finish(std::move(x));
}

/// Dispatches on config.optimizer.
template <RiemannianManifold M>
RunResult<typename M::Point> run_optimizer(const RunConfig& cfg, const M& m, const Problem<M>& p,
                                           const typename M::Point& x0) {
  switch (cfg.optimizer) {
    case OptimizerKind::Adaptive: return adgd_run(cfg, m, p, x0);
    case OptimizerKind::Armijo: return armijo_run(cfg, m, p, x0);
    case OptimizerKind::Fixed: return fixed_run(cfg, m, p, x0);
  }
  throw std::invalid_argument("run_optimizer: unknown optimizer");
}

// --------------------------------------------------------------- euclidean

using ScalarField = std::function<double(const Vector&)>;
using VectorField = std::function<Vector(const Vector&)>;

/// The adaptive rule on R^n: exp(y, v) = y + v, identity transport, dot
/// product metric.
RunResult<Vector> euclidean_adgd_run(const RunConfig& cfg, const ScalarField& f,
                                     const VectorField& grad_f, const Vector& y0);

}  // namespace argd
