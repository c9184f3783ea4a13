#include "argd/trace.hpp"

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace argd {

std::string to_string(RunStatus status) {
  switch (status) {
    case RunStatus::Converged: return "converged";
    case RunStatus::MaxIterations: return "max-iterations";
    case RunStatus::NumericalAbort: return "numerical-abort";
  }
  return "unknown";
}

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

namespace {

std::string optional_field(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string();
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

// strtod rather than stod: subnormal values set ERANGE but parse exactly.
double parse_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw std::runtime_error("read_csv: bad number '" + s + "'");
  }
  return v;
}

std::optional<double> parse_optional(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return parse_double(s);
}

}  // namespace

void write_csv(std::ostream& out, const Trace& trace) {
  out << kCsvHeader << '\n';
  for (const TraceRow& r : trace.rows) {
    out << r.k << ',' << format_number(r.phi) << ',' << format_number(r.grad_norm) << ','
        << format_number(r.alpha) << ',' << format_number(r.theta) << ',' << optional_field(r.ell)
        << ',' << r.fn_evals << ',' << r.exp_evals << ',' << r.expensive_ops << ','
        << optional_field(r.dist_to_opt) << ',' << (r.clamped ? 1 : 0) << '\n';
  }
  if (trace.status == RunStatus::NumericalAbort) {
    out << "error";
    for (std::size_t i = 1; i < kCsvColumns; ++i) out << ',';
    out << '\n';
  }
}

Trace read_csv(std::istream& in) {
  Trace trace;
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw std::runtime_error("read_csv: missing or unexpected header");
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> f = split(line);
    if (f.size() != kCsvColumns) throw std::runtime_error("read_csv: wrong column count");
    if (f[0] == "error") {
      trace.status = RunStatus::NumericalAbort;
      continue;
    }
    TraceRow r;
    r.k = std::stoull(f[0]);
    r.phi = parse_double(f[1]);
    r.grad_norm = parse_double(f[2]);
    r.alpha = parse_double(f[3]);
    r.theta = parse_double(f[4]);
    r.ell = parse_optional(f[5]);
    r.fn_evals = std::stoull(f[6]);
    r.exp_evals = std::stoull(f[7]);
    r.expensive_ops = std::stoull(f[8]);
    r.dist_to_opt = parse_optional(f[9]);
    r.clamped = f[10] == "1";
    trace.rows.push_back(r);
  }
  return trace;
}

}  // namespace argd
