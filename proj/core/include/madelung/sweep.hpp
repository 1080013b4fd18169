#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "madelung/constants.hpp"
#include "madelung/io.hpp"

namespace madelung {

// Full run configuration, mirrored one-to-one by the key-value config file
// and the CLI flags.
struct RunConfig {
    double hbar = 1.0;
    double c = 1.0;
    double us0 = 1.0;
    double ut0 = -1.0;
    std::vector<double> t_list = {0.2, 0.1, 0.05, 0.02};  // strictly descending
    std::size_t grid = 4096;     // density grid nodes (per half-axis in time)
    std::size_t kg_grid = 513;   // product-state nodes per axis
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    double roundtrip_t = 0.05;   // T used for the round-trip rows of `verify`
    std::string out = "out";
    OutputFormat format = OutputFormat::Csv;

    PhysicalConstants constants(double lagrange_t) const { return {hbar, c, lagrange_t}; }
};

// One sweep row; distances are max-norm to the analytic limit densities as a
// fraction of the limit peak, Z columns are the min-shifted partition values.
struct SweepRecord {
    double lagrange_t = 0.0;
    double r_m = 0.0;
    double t_a = 0.0;
    double dist_spatial = 0.0;
    double dist_temporal = 0.0;
    double z_s = 0.0;
    double z_t = 0.0;
    double entropy_s = 0.0;
    double entropy_t = 0.0;
    bool ok = false;
    std::string status;  // "ok" or "error:<Kind>: <detail>"
};

// Parses `key = value` lines ('#' comments); unknown keys are ConfigError.
RunConfig load_config_file(const std::filesystem::path& path, RunConfig base);

// Parses a comma/space separated list of reals (for --t-list).
std::vector<double> parse_t_list(const std::string& text);

// Throws ConfigError for structural violations (empty/unsorted t_list, bad
// grid sizes, bad tolerances).
void validate(const RunConfig& config);

// Worker-pool size: min(tasks, hardware, MADELUNG_THREADS when set).
unsigned pool_size(std::size_t tasks);

// Solves one T for both axes. Never throws: failures land in `status`.
SweepRecord compute_sweep_record(const RunConfig& config, double lagrange_t);

enum class SolveAxis { Spatial, Temporal };

// CLI work horses. Each returns the process exit code: 0 success, 2 domain
// error (machine-readable error record written), 3 partial sweep failure.
// ConfigError propagates to the caller (exit code 1).
int cmd_solve(const RunConfig& config, SolveAxis axis);
int cmd_sweep(const RunConfig& config);
int cmd_verify(const RunConfig& config);
int cmd_limits(const RunConfig& config);

}  // namespace madelung
