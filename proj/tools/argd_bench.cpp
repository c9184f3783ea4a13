// argd_bench: run benchmark experiments and compare their traces.
//
//   argd_bench run --experiment rayleigh --n 100 --seed 1 --out rayleigh.csv
//   argd_bench run --config sweep.txt
//   argd_bench compare a.csv b.csv
//
// Exit codes: 0 success, 2 usage error, 3 numerical abort.

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "argd/experiments.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

using Settings = std::map<std::string, std::string>;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

double parse_double(const std::string& key, const std::string& text) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE) {
    throw UsageError("--" + key + ": expected a number, got '" + text + "'");
  }
  return v;
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& text) {
  errno = 0;
  char* end = nullptr;
  if (text.empty() || text[0] == '-') {
    throw UsageError("--" + key + ": expected a non-negative integer, got '" + text + "'");
  }
  const unsigned long long v = std::strtoull(text.c_str(), &end, 10);
  if (end != text.c_str() + text.size() || errno == ERANGE) {
    throw UsageError("--" + key + ": expected a non-negative integer, got '" + text + "'");
  }
  return v;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "1" || text == "true" || text == "on" || text == "yes") return true;
  if (text == "0" || text == "false" || text == "off" || text == "no") return false;
  throw UsageError("--" + key + ": expected a boolean, got '" + text + "'");
}

argd::ExperimentSpec spec_from_settings(const Settings& s) {
  argd::ExperimentSpec spec;
  for (const auto& [key, value] : s) {
    if (key == "experiment") {
      const auto id = argd::parse_experiment(value);
      if (!id) throw UsageError("unknown experiment '" + value + "'");
      spec.experiment = *id;
    } else if (key == "n") {
      spec.n = parse_unsigned(key, value);
      if (spec.n < 2) throw UsageError("--n must be at least 2");
    } else if (key == "seed") {
      spec.seed = parse_unsigned(key, value);
    } else if (key == "max-iters") {
      spec.config.max_iters = parse_unsigned(key, value);
    } else if (key == "tol") {
      spec.config.tol = parse_double(key, value);
    } else if (key == "alpha0") {
      spec.config.alpha0 = parse_double(key, value);
    } else if (key == "first-ls") {
      spec.config.first_iteration_line_search = parse_bool(key, value);
    } else if (key == "optimizer") {
      const auto kind = argd::parse_optimizer(value);
      if (!kind) throw UsageError("unknown optimizer '" + value + "'");
      spec.config.optimizer = *kind;
    } else if (key == "armijo-c") {
      spec.config.armijo.c = parse_double(key, value);
    } else if (key == "armijo-beta") {
      spec.config.armijo.beta = parse_double(key, value);
    } else if (key == "armijo-lambda") {
      spec.config.armijo.lambda = parse_double(key, value);
    } else if (key == "fixed-alpha") {
      spec.config.fixed_alpha = parse_double(key, value);
    } else if (key == "out") {
      spec.out = value;
    } else {
      throw UsageError("unknown setting '" + key + "'");
    }
  }
  if (!s.count("experiment")) throw UsageError("--experiment is required");
  if (spec.out.empty()) throw UsageError("--out is required");
  const bool armijo = spec.config.optimizer == argd::OptimizerKind::Armijo;
  for (const char* key : {"armijo-c", "armijo-beta", "armijo-lambda"}) {
    if (s.count(key) && !armijo) throw UsageError(std::string("--") + key + " requires --optimizer armijo");
  }
  if (s.count("fixed-alpha") && spec.config.optimizer != argd::OptimizerKind::Fixed) {
    throw UsageError("--fixed-alpha requires --optimizer fixed");
  }
  try {
    spec.config.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return spec;
}

/// Blocks of key=value lines separated by blank lines; '#' starts a comment.
std::vector<Settings> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path);
  std::vector<Settings> blocks;
  Settings current;
  std::string line;
  std::size_t line_no = 0;
  auto flush = [&] {
    if (!current.empty()) blocks.push_back(std::move(current));
    current.clear();
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
      flush();
      continue;
    }
    line = line.substr(first, line.find_last_not_of(" \t\r") - first + 1);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path + ":" + std::to_string(line_no) + ": expected key=value");
    }
    std::string key = line.substr(0, eq);
    key.erase(key.find_last_not_of(" \t") + 1);
    if (key.rfind("--", 0) == 0) key.erase(0, 2);
    std::string value = line.substr(eq + 1);
    value.erase(0, value.find_first_not_of(" \t"));
    current[key] = value;
  }
  flush();
  if (blocks.empty()) throw UsageError("config file " + path + " contains no runs");
  return blocks;
}

int run_one(const argd::ExperimentSpec& spec) {
  argd::ExperimentOutcome outcome;
  try {
    outcome = argd::run_experiment(spec);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  argd::write_experiment(spec, outcome);
  if (outcome.trace.status == argd::RunStatus::NumericalAbort) {
    std::cerr << "argd_bench: numerical abort in " << spec.out << ": " << outcome.trace.message << '\n';
    return kExitNumerical;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive Riemannian gradient descent benchmark harness"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run one experiment (or a batch from --config) and write a CSV trace");
  std::map<std::string, std::optional<std::string>> flags;
  const std::vector<std::pair<std::string, std::string>> run_flags = {
      {"experiment", "center-of-mass | rayleigh | lyapunov | wls-dense | wls-sparse | orthant-equivalence"},
      {"n", "Problem dimension"},
      {"seed", "Instance seed"},
      {"max-iters", "Iteration cap"},
      {"tol", "Gradient-norm stopping tolerance"},
      {"alpha0", "Initial step size"},
      {"first-ls", "Double alpha0 during the first iteration (adgd); 0 or 1"},
      {"optimizer", "adgd | armijo | fixed"},
      {"armijo-c", "Sufficient decrease constant"},
      {"armijo-beta", "Backtracking factor"},
      {"armijo-lambda", "Initial trial multiplier"},
      {"fixed-alpha", "Step size for the fixed optimizer"},
      {"out", "Output CSV path"},
  };
  for (const auto& [name, help] : run_flags) {
    flags[name] = std::nullopt;
    run->add_option("--" + name, flags[name], help);
  }
  std::string config_path;
  run->add_option("--config", config_path, "Batch file: key=value blocks separated by blank lines");

  auto* cmp = app.add_subcommand("compare", "Summarize two or more traces of the same instance");
  std::vector<std::string> files;
  cmp->add_option("traces", files, "CSV traces written by 'run'")->required()->expected(2, -1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*run) {
      Settings base;
      for (const auto& [name, value] : flags) {
        if (value) base[name] = *value;
      }
      if (config_path.empty()) return run_one(spec_from_settings(base));

      std::vector<argd::ExperimentSpec> specs;
      for (Settings block : read_config(config_path)) {
        for (const auto& [k, v] : base) block.emplace(k, v);
        specs.push_back(spec_from_settings(block));
      }
      int status = 0;
      for (const auto& spec : specs) status = std::max(status, run_one(spec));
      return status;
    }
    argd::compare(files, std::cout);
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "argd_bench: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "argd_bench: " << e.what() << '\n';
    return 1;
  }
}
