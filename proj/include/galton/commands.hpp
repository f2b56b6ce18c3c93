#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "galton/run_config.hpp"
#include "galton/validate.hpp"

namespace galton {

// Subcommand drivers behind the CLI; also callable from tests. Each returns
// the list of files it wrote. Config validation happens before any file is
// created, so an invalid config never leaves partial output.

std::vector<std::string> cmd_pattern(const RunConfig& config, int threads);
std::vector<std::string> cmd_gtau(const RunConfig& config, int threads);
std::vector<std::string> cmd_linear(const RunConfig& config, int threads);

// Writes validate_report.txt into the output directory and returns the
// process exit code (0 iff all checks passed).
int cmd_validate(const RunConfig& config, const ValidationOptions& options, std::ostream& log);

} // namespace galton
