#pragma once
/**
 * @file config_io.hpp
 * @brief JSON configuration documents, built-in scenarios and the results
 *        file format.
 *
 * A configuration document looks like
 *
 *   {
 *     "scenario": {
 *       "agent_count": 50,
 *       "scheme": {"type": "d2d", "radius": 100.0},
 *       ...optional fields with defaults...
 *     },
 *     "num_runs": 300,
 *     "sweep": [{"parameter": "radius", "values": [50, 100]}]
 *   }
 *
 * Only `scenario.agent_count` and `scenario.scheme` are required. Unknown keys
 * are rejected. The schema is described in README.md.
 *
 * A results file is a block of `# key: value` metadata lines (the resolved
 * configuration as one line of JSON among them), followed by a CSV header and
 * one row per (spec, run, round).
 */

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "twinswarm/montecarlo.hpp"

namespace twinswarm {

/// Library version string embedded in results files.
std::string_view version();

/// Parses a configuration document. Throws ConfigError.
BatchConfig parse_config(std::string_view text);

/// Resolved document for `batch`, with every default spelled out; pretty
/// printed with a stable key order.
std::string emit_config(const BatchConfig& batch);

/// Applies a `dotted.key=value` override to a document and returns the new
/// text. Keys without a known top-level prefix are taken relative to
/// `scenario`. The value is parsed as JSON when possible, else as a string.
std::string apply_override(std::string_view document, std::string_view assignment);

/// Reads a config document, or recovers the embedded configuration from a
/// results file, and applies the overrides in order.
BatchConfig load_config(const std::filesystem::path& path,
                        const std::vector<std::string>& overrides = {});

/// Built-in scenario names: default, d2d-sweep, cellular-sweep,
/// budget-dt-vs-cellular.
const std::vector<std::string>& scenario_names();

/// Ready-to-run document for a built-in scenario. Throws ConfigError listing
/// the available names when `name` is unknown.
std::string scenario_document(std::string_view name);

/// Shortest round-trip decimal representation of a double.
std::string format_double(double value);

/// Writes the complete results file for a finished batch.
void write_results(std::ostream& out, const BatchConfig& batch, const BatchResult& result);

/// Writes per-specification aggregate curves as CSV.
void write_summary(std::ostream& out, const BatchResult& result);

/// Writes `contents` to `path` through a temporary file in the same directory
/// and renames it into place, so a failure never leaves a partial file.
void write_file_atomically(const std::filesystem::path& path, std::string_view contents);

}  // namespace twinswarm
