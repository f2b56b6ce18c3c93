#include "galton/commands.hpp"

#include <ostream>

#include "galton/emit.hpp"
#include "galton/oracle.hpp"

namespace galton {

namespace {

std::vector<double> tau_grid(const RunConfig& config) {
    std::vector<double> taus(config.tau_points);
    const double step = config.tau_max / (config.tau_points - 1);
    for (int i = 0; i < config.tau_points; ++i) taus[i] = i * step;
    return taus;
}

} // namespace

std::vector<std::string> cmd_pattern(const RunConfig& config, int threads) {
    config.validate();
    const TwoPhotonSolver solver(config.params());
    const CorrelationEngine engine(solver, threads);
    std::vector<std::string> files;
    for (double tau : config.tau_values) {
        const PatternMatrix matrix = engine.pattern(tau, config.normalization);
        files.push_back(write_pattern(config.output_dir, "", matrix, config, "pattern"));
    }
    return files;
}

std::vector<std::string> cmd_gtau(const RunConfig& config, int threads) {
    config.validate();
    if (config.detector_pairs.empty())
        throw ConfigError("gtau: config must list at least one detector pair");
    const TwoPhotonSolver solver(config.params());
    const CorrelationEngine engine(solver, threads);
    const LinearReference linear(config.params());
    const std::vector<double> taus = tau_grid(config);

    std::vector<std::string> files;
    for (const DetectorPair& pair : config.detector_pairs) {
        std::vector<GtauRow> rows(taus.size());
        for (size_t i = 0; i < taus.size(); ++i) {
            rows[i] = {taus[i], engine.g(pair.first, pair.second, taus[i]),
                       linear.g(pair.first, pair.second, taus[i])};
        }
        files.push_back(write_gtau(config.output_dir, "", pair, rows, true, config, "gtau"));
    }
    return files;
}

std::vector<std::string> cmd_linear(const RunConfig& config, int threads) {
    (void)threads;
    config.validate();
    const LinearReference linear(config.params());
    std::vector<std::string> files;
    for (double tau : config.tau_values) {
        const PatternMatrix matrix = linear.pattern(tau, config.normalization);
        files.push_back(write_pattern(config.output_dir, "linear_", matrix, config, "linear"));
    }
    if (!config.detector_pairs.empty()) {
        const std::vector<double> taus = tau_grid(config);
        for (const DetectorPair& pair : config.detector_pairs) {
            std::vector<GtauRow> rows(taus.size());
            for (size_t i = 0; i < taus.size(); ++i)
                rows[i] = {taus[i], 0.0, linear.g(pair.first, pair.second, taus[i])};
            files.push_back(
                write_gtau(config.output_dir, "linear_", pair, rows, false, config, "linear"));
        }
    }
    return files;
}

int cmd_validate(const RunConfig& config, const ValidationOptions& options, std::ostream& log) {
    config.validate();
    const ValidationReport report = run_validation(config.params(), options);
    const std::string text = format_report(report);
    write_text_file(config.output_dir, "validate_report.txt", text);
    log << text;
    return report.all_passed() ? 0 : 1;
}

} // namespace galton
