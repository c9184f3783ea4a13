// Benchmark experiments as consumed by the argd_bench tool: each experiment id
// fixes a manifold and objective, generated from (n, seed).

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "argd/optimizers.hpp"
#include "argd/trace.hpp"

namespace argd {

enum class ExperimentId { CenterOfMass, Rayleigh, Lyapunov, WlsDense, WlsSparse, OrthantEquivalence };

std::string to_string(ExperimentId id);
std::optional<ExperimentId> parse_experiment(std::string_view name);
std::optional<OptimizerKind> parse_optimizer(std::string_view name);
const std::vector<ExperimentId>& all_experiments();

/// Dimension used when none is given.
std::size_t default_dimension(ExperimentId id);

struct ExperimentSpec {
  ExperimentId experiment = ExperimentId::Rayleigh;
  std::size_t n = 0;  // 0 means default_dimension(experiment)
  std::uint64_t seed = 0;
  RunConfig config;
  std::string out;

  std::size_t dimension() const { return n == 0 ? default_dimension(experiment) : n; }
};

struct ExperimentOutcome {
  Trace trace;
  std::optional<double> phi_star;
};

/// Generates the instance and runs the configured optimizer. For
/// orthant-equivalence the adaptive method runs on the orthant and on the
/// flat log coordinates, and each row's dist_to_opt column holds the max
/// coordinatewise relative deviation between x_k and exp(y_k).
/// Throws std::invalid_argument for unusable specs.
ExperimentOutcome run_experiment(const ExperimentSpec& spec);

/// Key/value description of the run written next to the CSV as <out>.meta.
std::map<std::string, std::string> experiment_metadata(const ExperimentSpec& spec,
                                                       const ExperimentOutcome& outcome);

/// Writes <out> (CSV) and <out>.meta. Throws std::runtime_error on I/O failure.
void write_experiment(const ExperimentSpec& spec, const ExperimentOutcome& outcome);

std::map<std::string, std::string> read_metadata(const std::string& path);

/// One summary line per trace file on `out`. Throws std::invalid_argument if
/// fewer than two files are given or they describe different instances.
void compare(const std::vector<std::string>& csv_paths, std::ostream& out);

}  // namespace argd
