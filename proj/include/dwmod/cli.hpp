#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dwmod/coisometry.hpp"
#include "dwmod/forge.hpp"
#include "dwmod/linalg.hpp"

namespace dwmod {

enum class Command { Check, Certify, Verify, Forge, Report, Shiftcheck };

/// Exit codes shared by every subcommand.
namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int failed = 1;        // violation / invalid certificate / mismatch
inline constexpr int inconclusive = 2;  // certify: borderline instances only
inline constexpr int input_error = 64;  // I/O, parse or usage errors
inline constexpr int internal_error = 70;
}  // namespace exit_code

struct RunConfig {
  Command command = Command::Check;
  std::vector<std::string> inputs;  // --in; instances, or CSVs for report
  std::string certificate;          // --cert (verify)
  std::string output;               // --out; empty means the output stream
  std::uint64_t seed_begin = 0;     // half-open seed range [begin, end)
  std::uint64_t seed_end = 1;
  std::size_t d = 1;
  std::size_t m = 2;
  std::size_t n = 3;
  Construction family = Construction::ScalarFamily;
  ForgeKind kind = ForgeKind::Random;
  double eps = 1e-2;
  ToleranceConfig tol;
  unsigned jobs = 1;
  std::size_t shift_n = 2;  // shiftcheck
  std::size_t shift_truncation = 8;

  /// Throws Error(Parse) if the seed range is empty, input and output paths
  /// collide, or a tolerance is invalid.
  void validate() const;
};

/// "A..B" (half-open) or a single seed "A".
std::pair<std::uint64_t, std::uint64_t> parse_seed_range(const std::string& text);

/// Executes one subcommand. Diagnostics go to `err`; results go to --out
/// (or `out` when unset). Never throws: failures map to exit codes.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv with CLI11 (DWMOD_SEED supplies the default seed) and calls run.
int cli_main(int argc, char** argv);

}  // namespace dwmod
