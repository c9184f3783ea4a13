// Acceptance criteria as reusable checks. Each returns a verdict plus a short
// measured summary; the acceptance binary prints one line per check and the
// unit tests assert on the same functions.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace argd::testing {

struct Verdict {
  bool pass = false;
  std::string summary;
};

/// Seeds used by the end-to-end convergence check (also listed in the README).
inline const std::vector<std::uint64_t> kConvergenceSeeds = {1, 2, 3};

Verdict check_orthant_equivalence();          // 1
Verdict check_energy_and_radius();            // 2
Verdict check_rate_bound();                   // 3
Verdict check_geometry();                     // 4
Verdict check_linalg();                       // 5
Verdict check_end_to_end_convergence();       // 6
Verdict check_gradient_consistency();         // 7
Verdict check_bw_domain_safety();             // 8
Verdict check_cli_determinism(const std::string& bench_path);  // 9

}  // namespace argd::testing
