// Trace-level checks of the adaptive method's guarantees on g-convex runs.
//
// All functions read only the recorded rows. Rows must carry dist_to_opt for
// the energy and radius quantities.

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "argd/trace.hpp"

namespace argd {

/// E_k = d(x_k, x*)^2 + (alpha_{k-1} ||g_{k-1}||)^2
///       + 2 alpha_k theta_k (phi(x_{k-1}) - phi*), for k = 1 .. K.
/// Entry i corresponds to row i + 1.
std::vector<double> energy_sequence(const Trace& trace, double phi_star);

/// Largest E_k - E_{k-1} over the trace (<= 0 when monotone).
double max_energy_increase(const Trace& trace, double phi_star);

/// R = sqrt(d(x_0, x*)^2 + 2 (alpha_0 ||g_0||)^2).
double radius(const Trace& trace);

/// max_k d(x_k, x*) - R.
double max_radius_excess(const Trace& trace);

/// min_{1<=i<=k} phi(x_i) - phi* - R^2 / (2 sum_{1<=i<=k} alpha_i); negative
/// values mean the rate bound holds. Requires k < rows.size().
double rate_margin(const Trace& trace, double phi_star, std::size_t k);

/// Largest alpha_k / (sqrt(1 + theta_{k-1}) alpha_{k-1}) over k >= 1.
double max_growth_ratio(const Trace& trace);

/// min_k alpha_k / min(alpha_0, 1 / (2 Lhat)) with Lhat = max_k 1/ell_k;
/// >= 1 when the step floor holds. Returns nullopt when no ell is recorded.
std::optional<double> step_floor_ratio(const Trace& trace, double alpha0);

}  // namespace argd
