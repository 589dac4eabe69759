#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "realid/homotopy.hpp"
#include "realid/monodromy.hpp"
#include "realid/realcert.hpp"
#include "realid/report.hpp"

namespace realid {

/// Options shared by every subcommand; embedded verbatim in each report.
struct RunConfig {
  std::uint64_t seed = 1;
  TrackSettings settings;
  StopPolicy stop;
  double real_tol = kRealTolerance;
  /// Report destination; empty means $REALID_OUTPUT_DIR/<name> or stdout only.
  std::filesystem::path output_path;
  /// Worker count, 0 for one per hardware thread.
  std::size_t threads = 0;

  void validate() const;
};

Json to_json(const RunConfig& config);

enum ExitCode : int {
  kExitOk = 0,
  kExitError = 1,
  kExitUnstabilized = 2,
  kExitNotFound = 3,
};

/// Entry point of the realid executable. The JSON report goes to `out` (and
/// to the output file when one is configured); diagnostics go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace realid
