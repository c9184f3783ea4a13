#include "argd/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace argd {

namespace {

double dist(const TraceRow& r) {
  if (!r.dist_to_opt) throw std::invalid_argument("trace row has no distance to the optimum");
  return *r.dist_to_opt;
}

}  // namespace

std::vector<double> energy_sequence(const Trace& trace, double phi_star) {
  std::vector<double> energies;
  const auto& rows = trace.rows;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const double d = dist(rows[k]);
    const double prev_step = rows[k - 1].alpha * rows[k - 1].grad_norm;
    energies.push_back(d * d + prev_step * prev_step +
                       2.0 * rows[k].alpha * rows[k].theta * (rows[k - 1].phi - phi_star));
  }
  return energies;
}

double max_energy_increase(const Trace& trace, double phi_star) {
  const std::vector<double> e = energy_sequence(trace, phi_star);
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < e.size(); ++i) worst = std::max(worst, e[i] - e[i - 1]);
  return worst;
}

double radius(const Trace& trace) {
  if (trace.rows.empty()) throw std::invalid_argument("empty trace");
  const TraceRow& r0 = trace.rows.front();
  const double d0 = dist(r0);
  const double step = r0.alpha * r0.grad_norm;
  return std::sqrt(d0 * d0 + 2.0 * step * step);
}

double max_radius_excess(const Trace& trace) {
  const double r = radius(trace);
  double worst = -r;
  for (const TraceRow& row : trace.rows) worst = std::max(worst, dist(row) - r);
  return worst;
}

double rate_margin(const Trace& trace, double phi_star, std::size_t k) {
  if (k == 0 || k >= trace.rows.size()) throw std::invalid_argument("rate_margin: k out of range");
  const double r = radius(trace);
  double best = trace.rows[1].phi;
  double alpha_sum = 0.0;
  for (std::size_t i = 1; i <= k; ++i) {
    best = std::min(best, trace.rows[i].phi);
    alpha_sum += trace.rows[i].alpha;
  }
  return best - phi_star - r * r / (2.0 * alpha_sum);
}

double max_growth_ratio(const Trace& trace) {
  double worst = 0.0;
  const auto& rows = trace.rows;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const double cap = std::sqrt(1.0 + rows[k - 1].theta) * rows[k - 1].alpha;
    worst = std::max(worst, rows[k].alpha / cap);
  }
  return worst;
}

std::optional<double> step_floor_ratio(const Trace& trace, double alpha0) {
  double l_hat = 0.0;
  double alpha_min = std::numeric_limits<double>::infinity();
  for (const TraceRow& row : trace.rows) {
    alpha_min = std::min(alpha_min, row.alpha);
    if (row.ell && *row.ell > 0.0) l_hat = std::max(l_hat, 1.0 / *row.ell);
  }
  if (l_hat == 0.0) return std::nullopt;
  return alpha_min / std::min(alpha0, 1.0 / (2.0 * l_hat));
}

}  // namespace argd
