#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "config.hpp"

namespace cdft::cli {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kAssertionBreach = 3,
  kNumericalFailure = 4,
};

struct RunOptions {
  std::filesystem::path out = ".";
  bool assert_tolerances = false;
  std::optional<std::uint64_t> seed;
};

// Validates, runs and writes outputs; returns the process exit code.
int run_experiment(const std::string& experiment, const Config& config, const RunOptions& options,
                   std::ostream& log);

int run_evolve(const Config& config, const RunOptions& options, std::ostream& log);
int run_packet(const Config& config, const RunOptions& options, std::ostream& log);
int run_em(const Config& config, const RunOptions& options, std::ostream& log);
int run_fock(const Config& config, const RunOptions& options, std::ostream& log);
int run_grassmann(const Config& config, const RunOptions& options, std::ostream& log);

}  // namespace cdft::cli
