#pragma once

#include <string>
#include <vector>

#include "galton/lattice.hpp"
#include "galton/observables.hpp"

namespace galton {

inline constexpr const char* kArtifactVersion = "0.1.0";

enum class OutputFormat { Csv, Json };

const char* format_name(OutputFormat f);

struct DetectorPair {
    DetectorId first;
    DetectorId second;
};

/// One run of the command-line tool. Defaults reproduce the correlated
/// parameter set (gamma = delta = 1, kappa = 0.002, 9 steps), so `pattern`
/// with an empty config already emits the headline dataset. Unknown config
/// keys are rejected.
struct RunConfig {
    double gamma = 1.0;
    double kappa = 0.002;
    double delta = 1.0;
    int steps = 9;
    std::vector<double> tau_values = {0.0};
    std::vector<DetectorPair> detector_pairs;
    Normalization normalization = Normalization::Raw;
    std::string output_dir = ".";
    OutputFormat format = OutputFormat::Csv;
    double tau_max = 10.0;  // G(tau) grid upper end
    int tau_points = 500;   // G(tau) grid size

    WalkParams params() const { return {gamma, kappa, delta, steps}; }
    void validate() const; // throws ConfigError
};

RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::string& path);
std::string run_config_to_json(const RunConfig& config); // round-trips through parse

// "0,0.7,5.0" -> {0, 0.7, 5.0}; used by the --tau override
std::vector<double> parse_tau_list(const std::string& text);

} // namespace galton
