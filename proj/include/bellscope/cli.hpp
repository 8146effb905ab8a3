#pragma once

#include "bellscope/checks.hpp"

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace bellscope::cli {

enum ExitCode : int { kPass = 0, kVerificationFailure = 1, kConfigError = 2 };

/// One command invocation. Unset grid/tol fall back to per-command defaults.
struct RunConfig {
    std::string command;
    std::size_t samples = 100000;
    std::optional<std::size_t> grid;
    std::size_t trials = 1000;
    std::uint64_t seed = 20100101;
    std::optional<double> tol;
    std::string format = "json";
    std::string output_path;
    std::string model = "singlet";
    std::string model_file;
};

/// Thrown for invalid configurations; maps to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Result rows (each an object over `columns`) plus diagnostic checks.
struct Report {
    std::string command;
    nlohmann::ordered_json config;
    std::vector<std::string> columns;
    std::vector<nlohmann::ordered_json> rows;
    std::vector<CheckResult> checks;

    bool pass() const noexcept;
};

const std::vector<std::string>& command_names();

std::size_t default_grid(const std::string& command);
double default_tol(const std::string& command);

/// Throws ConfigError.
void validate(const RunConfig& cfg);

Report cmd_verify_singlet(const RunConfig& cfg);
Report cmd_measure(const RunConfig& cfg);
Report cmd_tables(const RunConfig& cfg);
Report cmd_tradeoff(const RunConfig& cfg);
Report cmd_check_model(const RunConfig& cfg);

/// {command, config, results, checks, version}
std::string render_json(const Report& report);
/// Header row, comma separated, reals with 12 significant digits.
std::string render_csv(const Report& report);

/// Validates, runs, and writes the rendered report to cfg.output_path (or
/// `out` when empty). Failed checks are listed on `err`. Returns an ExitCode.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

} // namespace bellscope::cli
