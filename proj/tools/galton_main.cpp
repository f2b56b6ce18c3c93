#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "galton/commands.hpp"

namespace {

galton::RunConfig make_config(const std::string& config_path, const std::string& out_dir,
                              const std::string& tau_override) {
    galton::RunConfig config;
    if (!config_path.empty()) config = galton::load_run_config(config_path);
    if (!out_dir.empty()) config.output_dir = out_dir;
    if (!tau_override.empty()) config.tau_values = galton::parse_tau_list(tau_override);
    config.validate();
    return config;
}

void print_files(const std::vector<std::string>& files) {
    for (const std::string& f : files) std::cout << "wrote " << f << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-photon statistics of a photonic Galton-board walk on single-atom "
                 "beamsplitters"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    std::string config_path, out_dir, tau_override;
    int threads = int(std::thread::hardware_concurrency());
    if (threads <= 0) threads = 1;
    app.add_option("--config", config_path, "JSON run configuration");
    app.add_option("--out", out_dir, "output directory (overrides config)");
    app.add_option("--tau", tau_override, "comma-separated delay list (overrides config)");
    app.add_option("--threads", threads, "worker threads");

    auto* pattern = app.add_subcommand("pattern", "statistical-pattern matrices, one per tau");
    auto* gtau = app.add_subcommand("gtau", "G(tau) curves for the configured detector pairs");
    auto* linear = app.add_subcommand("linear", "linear-beamsplitter reference outputs");
    auto* validate = app.add_subcommand("validate", "run internal consistency suites");
    double corrupt_scale = 1.0;
    validate->add_option("--corrupt", corrupt_scale, "amplitude corruption fixture (testing)")
        ->group("");

    CLI11_PARSE(app, argc, argv);

    try {
        const galton::RunConfig config = make_config(config_path, out_dir, tau_override);
        if (pattern->parsed()) {
            print_files(galton::cmd_pattern(config, threads));
        } else if (gtau->parsed()) {
            print_files(galton::cmd_gtau(config, threads));
        } else if (linear->parsed()) {
            print_files(galton::cmd_linear(config, threads));
        } else if (validate->parsed()) {
            galton::ValidationOptions options;
            options.threads = threads;
            options.corrupt_scale = corrupt_scale;
            return galton::cmd_validate(config, options, std::cout);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
