#pragma once

#include <iosfwd>
#include <string>

#include "timeseed/run_config.hpp"

namespace timeseed {

/// Command implementations behind the CLI surface.  Each writes its artifact
/// to `out` (or, for sweep, to the path so partial grids can be resumed) and
/// throws ConfigError / NumericalError / ResourceError on failure; the CLI
/// maps those to exit codes 2 / 3 / 4.  All floating-point output uses fixed
/// 12-significant-digit formatting so identical configs produce identical
/// bytes (grid payloads carry 17 digits for exact round-trips).

/// Trajectory CSV: t, mx_0, my_0, mz_0, mx_1, ...
void cmd_simulate(const RunConfig& cfg, std::ostream& out);

/// Eigenvalue table CSV (N, Re lambda1, Im lambda1, Re lambda2, Im lambda2)
/// followed by one JSON line per fitted series when fit is requested.
void cmd_spectrum(const RunConfig& cfg, std::ostream& out);

/// Runs (or resumes) the grid and saves it to out_path; empty path streams
/// the grid file to `out` without resume support.
void cmd_sweep(const RunConfig& cfg, const std::string& out_path, std::ostream& out);

/// Critical-coupling report as a JSON object: analytic value (null when no
/// closed form applies), bisection value, and their difference.
void cmd_crit(const RunConfig& cfg, std::ostream& out);

}  // namespace timeseed
