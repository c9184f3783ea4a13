#include "argd/optimizers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace argd {

std::string to_string(OptimizerKind kind) {
  switch (kind) {
    case OptimizerKind::Adaptive: return "adgd";
    case OptimizerKind::Armijo: return "armijo";
    case OptimizerKind::Fixed: return "fixed";
  }
  return "unknown";
}

void RunConfig::validate() const {
  if (!(alpha0 > 0.0) || !std::isfinite(alpha0)) {
    throw std::invalid_argument("alpha0 must be a positive finite number");
  }
  if (!(tol >= 0.0)) throw std::invalid_argument("tol must be non-negative");
  if (!(armijo.c > 0.0 && armijo.c < 1.0)) {
    throw std::invalid_argument("armijo c must lie in (0, 1)");
  }
  if (!(armijo.beta > 0.0 && armijo.beta < 1.0)) {
    throw std::invalid_argument("armijo beta must lie in (0, 1)");
  }
  if (!(armijo.lambda >= 1.0) || !std::isfinite(armijo.lambda)) {
    throw std::invalid_argument("armijo lambda must be >= 1");
  }
  if (!(fixed_alpha >= 0.0) || !std::isfinite(fixed_alpha)) {
    throw std::invalid_argument("fixed alpha must be a non-negative finite number");
  }
  if (forced_ratio && !(*forced_ratio > 0.0)) {
    throw std::invalid_argument("forced ratio must be positive");
  }
}

StepSize adaptive_step_size(double alpha_prev, double theta_prev, double prev_step_norm,
                            double grad_diff_norm, const RunConfig& config) {
  const double growth =
      config.disable_growth_cap ? kInfinity : std::sqrt(1.0 + theta_prev) * alpha_prev;
  StepSize out{growth, std::nullopt};
  if (grad_diff_norm > 0.0) out.ell = prev_step_norm / grad_diff_norm;
  const double ratio = config.forced_ratio ? *config.forced_ratio
                       : out.ell           ? *out.ell / std::sqrt(2.0)
                                           : kInfinity;
  out.alpha = std::min(growth, ratio);
  return out;
}

namespace {

TraceRow flat_row(std::size_t k, double phi, double grad_norm, double alpha, double theta,
                  std::optional<double> ell, std::uint64_t grad_evals) {
  if (!std::isfinite(phi)) throw NonFiniteError("objective is not finite");
  TraceRow r;
  r.k = k;
  r.phi = phi;
  r.grad_norm = grad_norm;
  r.alpha = alpha;
  r.theta = theta;
  r.ell = ell;
  r.fn_evals = 0;
  r.exp_evals = grad_evals > 0 ? grad_evals - 1 : 0;
  r.expensive_ops = 0;
  return r;
}

Vector checked_grad(const VectorField& grad_f, const Vector& y) {
  Vector g = grad_f(y);
  for (double v : g) {
    if (!std::isfinite(v)) throw NonFiniteError("gradient is not finite");
  }
  return g;
}

}  // namespace

RunResult<Vector> euclidean_adgd_run(const RunConfig& cfg, const ScalarField& f,
                                     const VectorField& grad_f, const Vector& y0) {
  cfg.validate();
  RunResult<Vector> result{Trace{}, y0, {}};
  Trace& trace = result.trace;
  std::uint64_t grad_evals = 0;
  auto keep = [&](const Vector& y) {
    if (cfg.keep_iterates) result.iterates.push_back(y);
  };

  try {
    keep(y0);
    Vector g_prev = checked_grad(grad_f, y0);
    ++grad_evals;
    double g_prev_norm = norm(g_prev);
    if (g_prev_norm <= cfg.tol) {
      trace.rows.push_back(flat_row(0, f(y0), g_prev_norm, cfg.alpha0, 0.0, std::nullopt, grad_evals));
      trace.status = RunStatus::Converged;
      return result;
    }

    double alpha_prev = cfg.alpha0;
    Vector y = y0 - alpha_prev * g_prev;
    Vector g = checked_grad(grad_f, y);
    ++grad_evals;
    if (cfg.first_iteration_line_search && !cfg.forced_ratio) {
      for (int doubling = 0; doubling < kMaxFirstStepDoublings; ++doubling) {
        if (g_prev_norm <= std::sqrt(2.0) * norm(g - g_prev)) break;
        alpha_prev *= 2.0;
        y = y0 - alpha_prev * g_prev;
        g = checked_grad(grad_f, y);
        ++grad_evals;
      }
    }
    trace.rows.push_back(flat_row(0, f(y0), g_prev_norm, alpha_prev, 0.0, std::nullopt, grad_evals));
    result.final_point = y;
    keep(y);

    double theta_prev = 0.0;
    for (std::size_t k = 1;; ++k) {
      const double g_norm = norm(g);
      const StepSize s =
          adaptive_step_size(alpha_prev, theta_prev, alpha_prev * g_prev_norm, norm(g - g_prev), cfg);
      const double theta = s.alpha / alpha_prev;
      trace.rows.push_back(flat_row(k, f(y), g_norm, s.alpha, theta, s.ell, grad_evals));
      if (g_norm <= cfg.tol) {
        trace.status = RunStatus::Converged;
        return result;
      }
      if (k >= cfg.max_iters) {
        trace.status = RunStatus::MaxIterations;
        return result;
      }
      y -= s.alpha * g;
      g_prev = std::move(g);
      g_prev_norm = g_norm;
      g = checked_grad(grad_f, y);
      ++grad_evals;
      alpha_prev = s.alpha;
      theta_prev = theta;
      result.final_point = y;
      keep(y);
    }
  } catch (const NonFiniteError& e) {
    trace.status = RunStatus::NumericalAbort;
    trace.message = e.what();
  } catch (const std::domain_error& e) {
    trace.status = RunStatus::NumericalAbort;
    trace.message = e.what();
  }
  return result;
}

}  // namespace argd
