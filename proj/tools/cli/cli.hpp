#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qent/capacity.hpp"

namespace qent::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 1,
  kExitVerifyFailed = 2,
  kExitIo = 3,
};

// Fixed-point, 12 digits after the point, '.' separator, no "-0".
std::string format_nats(double v);

// Parses argv and dispatches to a subcommand; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Inclusive grid from..to in `step` increments. Throws BadParam when
// step <= 0 or from > to.
std::vector<double> sweep_grid(double from, double to, double step);

struct SweepRow {
  double param;
  double i_q;
  double i_d;
  double i_o;
};

// One row per grid point in ascending order; rows may be computed in
// parallel (cfg.execution) but the result does not depend on it.
std::vector<SweepRow> compute_sweep(const std::string& family, const std::vector<double>& grid,
                                    const DensityOperator& rho0, const OptimizerConfig& cfg);

// "param,I_q,I_d,I_o" header plus LF-terminated rows.
std::string sweep_csv(const std::vector<SweepRow>& rows);

struct VerifyOptions {
  std::vector<std::size_t> dims{2, 3};
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  // Extra channel file to validate and run the channel checks on.
  std::optional<std::filesystem::path> channel;
  Execution execution = Execution::Parallel;
};

struct CheckTally {
  std::string name;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::string first_failure;
};

struct VerifyReport {
  std::vector<CheckTally> checks;
  bool vacuous = false;
  bool all_pass() const;
};

VerifyReport run_verify(const VerifyOptions& opts);

}  // namespace qent::cli
