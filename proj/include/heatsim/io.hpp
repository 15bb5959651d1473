#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "heatsim/solver.hpp"

namespace heatsim {

/// Shortest decimal form that round-trips to the same double.
std::string format_double(double value);

/// Parse a line-oriented `key = value` document into a solver configuration.
/// `#` starts a comment, blank lines are skipped, unknown keys are errors.
/// Errors carry the 1-based line number. If time.dt is absent it is derived
/// from a target lambda of 0.4. `overrides` replace file values key by key
/// (command-line flags beat the file, the file beats defaults).
SolverConfig parse_config(const std::string& text,
                          const std::map<std::string, std::string>& overrides = {});

/// Long-form time series: header `t,x,temperature`, one row per (frame, node),
/// time-major.
std::string write_timeseries_csv(const SimulationResult& result, const Grid1D& grid);

/// One `frame_<index>.csv` per stored frame (header `x,temperature`, index
/// zero-padded to width 5) plus a `manifest.csv` mapping index to time.
/// Returns the created paths, manifest last.
std::vector<std::filesystem::path> write_frames(const SimulationResult& result,
                                                const Grid1D& grid,
                                                const std::filesystem::path& dir);

/// Standalone SVG with one polyline per field, legend, and tick labels.
/// Byte-deterministic for identical inputs.
std::string render_svg_profile(const std::vector<TemperatureField>& fields,
                               const std::vector<std::string>& labels,
                               const Grid1D& grid);

}  // namespace heatsim
