#include "argd/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "argd/problems.hpp"

namespace argd {

namespace {

struct ExperimentName {
  ExperimentId id;
  const char* name;
  std::size_t default_n;
};

constexpr ExperimentName kExperiments[] = {
    {ExperimentId::CenterOfMass, "center-of-mass", 10},
    {ExperimentId::Rayleigh, "rayleigh", 100},
    {ExperimentId::Lyapunov, "lyapunov", 20},
    {ExperimentId::WlsDense, "wls-dense", 20},
    {ExperimentId::WlsSparse, "wls-sparse", 20},
    {ExperimentId::OrthantEquivalence, "orthant-equivalence", 10},
};

const ExperimentName& lookup(ExperimentId id) {
  for (const auto& e : kExperiments) {
    if (e.id == id) return e;
  }
  throw std::invalid_argument("unknown experiment id");
}

template <RiemannianManifold M>
ExperimentOutcome run_instance(const ExperimentSpec& spec, const M& manifold, const Instance<M>& inst) {
  auto result = run_optimizer(spec.config, manifold, inst.problem, inst.x0);
  return ExperimentOutcome{std::move(result.trace), inst.problem.optimal_value};
}

ExperimentOutcome run_orthant_equivalence(const ExperimentSpec& spec) {
  if (spec.config.optimizer != OptimizerKind::Adaptive) {
    throw std::invalid_argument("orthant-equivalence compares two adaptive runs; use --optimizer adgd");
  }
  const std::size_t n = spec.dimension();
  const Instance<PositiveOrthant> inst = make_linear_minus_log(n, spec.seed);
  const LinearMinusLog objective(linear_minus_log_weights(n, spec.seed));
  const PositiveOrthant manifold(n);

  RunConfig cfg = spec.config;
  cfg.keep_iterates = true;
  auto curved = adgd_run(cfg, manifold, inst.problem, inst.x0);

  Vector y0(n);
  for (std::size_t i = 0; i < n; ++i) y0[i] = std::log(inst.x0.coords[i]);
  auto flat = euclidean_adgd_run(
      cfg, [&](const Vector& y) { return objective.value_log_coords(y); },
      [&](const Vector& y) { return objective.grad_log_coords(y); }, y0);

  Trace trace = std::move(curved.trace);
  for (std::size_t k = 0; k < trace.rows.size(); ++k) {
    trace.rows[k].dist_to_opt.reset();
    if (k >= curved.iterates.size() || k >= flat.iterates.size()) continue;
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = curved.iterates[k].coords[i];
      const double ey = std::exp(flat.iterates[k][i]);
      worst = std::max(worst, std::abs(x - ey) / std::abs(ey));
    }
    trace.rows[k].dist_to_opt = worst;
  }
  return ExperimentOutcome{std::move(trace), inst.problem.optimal_value};
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

std::string to_string(ExperimentId id) { return lookup(id).name; }

std::optional<ExperimentId> parse_experiment(std::string_view name) {
  for (const auto& e : kExperiments) {
    if (name == e.name) return e.id;
  }
  return std::nullopt;
}

std::optional<OptimizerKind> parse_optimizer(std::string_view name) {
  if (name == "adgd") return OptimizerKind::Adaptive;
  if (name == "armijo") return OptimizerKind::Armijo;
  if (name == "fixed") return OptimizerKind::Fixed;
  return std::nullopt;
}

const std::vector<ExperimentId>& all_experiments() {
  static const std::vector<ExperimentId> ids = [] {
    std::vector<ExperimentId> out;
    for (const auto& e : kExperiments) out.push_back(e.id);
    return out;
  }();
  return ids;
}

std::size_t default_dimension(ExperimentId id) { return lookup(id).default_n; }

ExperimentOutcome run_experiment(const ExperimentSpec& spec) {
  spec.config.validate();
  const std::size_t n = spec.dimension();
  if (n < 2) throw std::invalid_argument("dimension must be at least 2");
  switch (spec.experiment) {
    case ExperimentId::CenterOfMass:
      return run_instance(spec, Sphere(n), make_center_of_mass(n, spec.seed));
    case ExperimentId::Rayleigh:
      return run_instance(spec, Sphere(n), make_rayleigh(n, spec.seed));
    case ExperimentId::Lyapunov:
      return run_instance(spec, BuresWasserstein(n), make_lyapunov(n, spec.seed));
    case ExperimentId::WlsDense:
      return run_instance(spec, BuresWasserstein(n), make_weighted_least_squares(n, spec.seed, 1.0));
    case ExperimentId::WlsSparse:
      return run_instance(spec, BuresWasserstein(n),
                          make_weighted_least_squares(n, spec.seed, kDefaultSparseDensity));
    case ExperimentId::OrthantEquivalence:
      return run_orthant_equivalence(spec);
  }
  throw std::invalid_argument("unknown experiment id");
}

std::map<std::string, std::string> experiment_metadata(const ExperimentSpec& spec,
                                                       const ExperimentOutcome& outcome) {
  std::map<std::string, std::string> meta;
  meta["experiment"] = to_string(spec.experiment);
  meta["n"] = std::to_string(spec.dimension());
  meta["seed"] = std::to_string(spec.seed);
  meta["optimizer"] = to_string(spec.config.optimizer);
  meta["alpha0"] = format_number(spec.config.alpha0);
  meta["first_ls"] = spec.config.first_iteration_line_search ? "1" : "0";
  meta["max_iters"] = std::to_string(spec.config.max_iters);
  meta["tol"] = format_number(spec.config.tol);
  if (spec.config.optimizer == OptimizerKind::Armijo) {
    meta["armijo_c"] = format_number(spec.config.armijo.c);
    meta["armijo_beta"] = format_number(spec.config.armijo.beta);
    meta["armijo_lambda"] = format_number(spec.config.armijo.lambda);
  }
  if (spec.config.optimizer == OptimizerKind::Fixed) {
    meta["fixed_alpha"] = format_number(spec.config.fixed_alpha);
  }
  meta["phi_star"] = outcome.phi_star ? format_number(*outcome.phi_star) : "";
  meta["status"] = to_string(outcome.trace.status);
  return meta;
}

void write_experiment(const ExperimentSpec& spec, const ExperimentOutcome& outcome) {
  if (spec.out.empty()) throw std::invalid_argument("no output path given");
  {
    std::ofstream csv(spec.out, std::ios::binary | std::ios::trunc);
    if (!csv) throw std::runtime_error("cannot open " + spec.out + " for writing");
    write_csv(csv, outcome.trace);
    if (!csv) throw std::runtime_error("failed writing " + spec.out);
  }
  std::ofstream meta(spec.out + ".meta", std::ios::binary | std::ios::trunc);
  if (!meta) throw std::runtime_error("cannot open " + spec.out + ".meta for writing");
  for (const auto& [key, value] : experiment_metadata(spec, outcome)) {
    meta << key << '=' << value << '\n';
  }
  if (!meta) throw std::runtime_error("failed writing " + spec.out + ".meta");
}

std::map<std::string, std::string> read_metadata(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read " + path);
  std::map<std::string, std::string> meta;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument(path + ": malformed line '" + line + "'");
    meta[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return meta;
}

void compare(const std::vector<std::string>& csv_paths, std::ostream& out) {
  if (csv_paths.size() < 2) throw std::invalid_argument("compare needs at least two traces");

  struct Loaded {
    std::map<std::string, std::string> meta;
    Trace trace;
  };
  std::vector<Loaded> runs;
  for (const std::string& path : csv_paths) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read " + path);
    Trace trace;
    try {
      trace = read_csv(in);
    } catch (const std::runtime_error& e) {
      throw std::invalid_argument(path + ": " + e.what());
    }
    runs.push_back({read_metadata(path + ".meta"), std::move(trace)});
  }

  for (const char* key : {"experiment", "n", "seed"}) {
    for (const Loaded& run : runs) {
      const auto it = run.meta.find(key);
      if (it == run.meta.end()) throw std::invalid_argument(std::string("metadata lacks ") + key);
      if (it->second != runs.front().meta.at(key)) {
        throw std::invalid_argument(std::string("traces describe different instances (") + key +
                                    " differs)");
      }
    }
  }

  const auto& first = runs.front().meta;
  out << "experiment=" << first.at("experiment") << " n=" << first.at("n")
      << " seed=" << first.at("seed") << '\n';
  for (const Loaded& run : runs) {
    const auto& rows = run.trace.rows;
    // The CSV only marks aborts; the sidecar records how the run ended.
    const auto recorded = run.meta.find("status");
    const std::string status =
        recorded != run.meta.end() && run.trace.status != RunStatus::NumericalAbort
            ? recorded->second
            : to_string(run.trace.status);
    out << "optimizer=" << run.meta.at("optimizer");
    if (rows.empty()) {
      out << " iterations=0 status=" << status << '\n';
      continue;
    }
    std::vector<double> alphas;
    for (const TraceRow& r : rows) alphas.push_back(r.alpha);
    const TraceRow& last = rows.back();
    const std::string phi_star = run.meta.count("phi_star") ? run.meta.at("phi_star") : "";
    out << " iterations=" << last.k << " expensive_ops=" << last.expensive_ops
        << " fn_evals=" << last.fn_evals << " exp_evals=" << last.exp_evals << " phi_gap="
        << (phi_star.empty() ? std::string("n/a") : format_number(last.phi - std::stod(phi_star)))
        << " alpha_min=" << format_number(*std::min_element(alphas.begin(), alphas.end()))
        << " alpha_median=" << format_number(median(alphas))
        << " alpha_max=" << format_number(*std::max_element(alphas.begin(), alphas.end()))
        << " status=" << status << '\n';
  }
}

}  // namespace argd
