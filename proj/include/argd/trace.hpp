// Per-iteration run records and their CSV serialization.

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace argd {

struct TraceRow {
  std::size_t k = 0;
  double phi = 0.0;
  double grad_norm = 0.0;
  /// Step taken from x_k (for the last row: the step that would be taken).
  double alpha = 0.0;
  double theta = 0.0;
  /// ||alpha_{k-1} grad_{k-1}|| / ||grad_k - P grad_{k-1}||; absent for k = 0,
  /// for a zero gradient difference, and for optimizers that do not form it.
  std::optional<double> ell;
  std::uint64_t fn_evals = 0;
  std::uint64_t exp_evals = 0;
  std::uint64_t expensive_ops = 0;
  std::optional<double> dist_to_opt;
  /// The step was shortened to stay inside the domain of the exponential map.
  bool clamped = false;
};

enum class RunStatus { Converged, MaxIterations, NumericalAbort };

std::string to_string(RunStatus status);

struct Trace {
  std::vector<TraceRow> rows;
  RunStatus status = RunStatus::MaxIterations;
  std::string message;
};

inline constexpr const char* kCsvHeader =
    "k,phi,grad_norm,alpha,theta,ell,fn_evals,exp_evals,expensive_ops,dist_to_opt,clamped";
inline constexpr std::size_t kCsvColumns = 11;

/// Shortest round-trip-safe form, 17 significant digits.
std::string format_number(double value);

/// Header, one row per TraceRow, LF endings. A numerically aborted trace ends
/// with an error marker row whose first field is "error". Absent optional
/// values are written as empty fields.
void write_csv(std::ostream& out, const Trace& trace);

/// Parses a file written by write_csv. Throws std::runtime_error on malformed
/// input. An error marker row sets status NumericalAbort.
Trace read_csv(std::istream& in);

}  // namespace argd
