#pragma once

#include <string>
#include <vector>

#include "galton/observables.hpp"
#include "galton/run_config.hpp"

namespace galton {

// Deterministic data-file writers: fixed 15-significant-digit scientific
// notation, no timestamps, stable row order. Every data file gets a
// <name>.meta.json sidecar that embeds the full run configuration.

std::string format_value(double v); // %.14e

std::string pattern_file_name(const std::string& prefix, double tau, OutputFormat format);
std::string gtau_file_name(const std::string& prefix, const DetectorPair& pair,
                           OutputFormat format);

// Returns the data file path; also writes the sidecar.
std::string write_pattern(const std::string& dir, const std::string& prefix,
                          const PatternMatrix& matrix, const RunConfig& config,
                          const std::string& command);

struct GtauRow {
    double tau;
    double g_nonlinear; // NaN-free; omitted from linear-only files
    double g_linear;
};

std::string write_gtau(const std::string& dir, const std::string& prefix,
                       const DetectorPair& pair, const std::vector<GtauRow>& rows,
                       bool include_nonlinear, const RunConfig& config,
                       const std::string& command);

std::string write_text_file(const std::string& dir, const std::string& name,
                            const std::string& content);

} // namespace galton
