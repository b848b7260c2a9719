#pragma once

#include <string>
#include <vector>

namespace viag::cli {

struct RunManifest {
  std::string subcommand;  ///< chi | transmission | diffraction |
                           ///< first-order | figure | validate
  std::string figure;      ///< fig2..fig8 or all (figure subcommand only)
  std::string config_path; ///< empty: defaults only
  std::string out_dir = "viag-out";
  bool plot = false;
  bool deterministic = false;  ///< outputs are timestamp-free either way
  bool log_y = false;
  unsigned jobs = 0;  ///< 0: hardware concurrency
  std::vector<std::string> overrides;  ///< repeated --set key=value
};

/// Runs the subcommand, writing tables (and plots) into out_dir. Returns 0 on
/// success; on failure removes files written during this invocation, emits a
/// machine-readable `viag-error subcommand=... message="..."` line on stderr
/// and returns nonzero. `validate` additionally returns 1 when any grid point
/// exceeds tolerance (the report file is kept).
int dispatch(const RunManifest& manifest);

std::string usage();

}  // namespace viag::cli
