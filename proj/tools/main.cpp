// Command-line front end: self-trapped maximum-entropy states, parameter
// sweeps, analytic limits, and the emergent-mass verification pipeline.
//
// Exit codes: 0 success, 1 configuration error, 2 domain error,
// 3 partial sweep failure.

#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "madelung/errors.hpp"
#include "madelung/sweep.hpp"

namespace {

struct CliOverrides {
    std::optional<std::string> config_path;
    std::optional<std::string> out;
    std::optional<std::string> format;
    std::optional<std::string> t_list;
    std::optional<double> us0, ut0, hbar, c;
    std::optional<std::size_t> grid;
};

void add_common_flags(CLI::App* cmd, CliOverrides& o) {
    cmd->add_option("--config", o.config_path, "Key-value config file (key = value lines)");
    cmd->add_option("--out", o.out, "Output directory");
    cmd->add_option("--format", o.format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--t-list", o.t_list, "Comma-separated Lagrange parameters, descending");
    cmd->add_option("--us0", o.us0, "Central spatial potential value U_s(0)");
    cmd->add_option("--ut0", o.ut0, "Central temporal potential value U_t(0)");
    cmd->add_option("--hbar", o.hbar, "Planck constant");
    cmd->add_option("--c", o.c, "Speed of light");
    cmd->add_option("--grid", o.grid, "Density grid nodes (per half-axis in time)");
}

madelung::RunConfig resolve_config(const CliOverrides& o) {
    madelung::RunConfig config;
    if (o.config_path) config = madelung::load_config_file(*o.config_path, config);
    if (o.out) config.out = *o.out;
    if (o.format) config.format = (*o.format == "json") ? madelung::OutputFormat::Json
                                                        : madelung::OutputFormat::Csv;
    if (o.t_list) config.t_list = madelung::parse_t_list(*o.t_list);
    if (o.us0) config.us0 = *o.us0;
    if (o.ut0) config.ut0 = *o.ut0;
    if (o.hbar) config.hbar = *o.hbar;
    if (o.c) config.c = *o.c;
    if (o.grid) config.grid = *o.grid;
    madelung::validate(config);
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Self-trapped maximum-entropy wave function solver suite"};
    app.require_subcommand(1);

    CliOverrides o;
    CLI::App* solve_spatial = app.add_subcommand(
        "solve-spatial", "Solve the radial potential equation over the T list");
    CLI::App* solve_temporal = app.add_subcommand(
        "solve-temporal", "Solve the temporal potential equation over the T list");
    CLI::App* sweep = app.add_subcommand(
        "sweep", "Support-size and limit-distance sweep over the T list");
    CLI::App* verify = app.add_subcommand(
        "verify", "Emergent-mass, Klein-Gordon, and round-trip verification report");
    CLI::App* limits = app.add_subcommand(
        "limits", "Closed-form zero-T limit states");
    for (CLI::App* cmd : {solve_spatial, solve_temporal, sweep, verify, limits})
        add_common_flags(cmd, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        const madelung::RunConfig config = resolve_config(o);
        if (solve_spatial->parsed())
            return madelung::cmd_solve(config, madelung::SolveAxis::Spatial);
        if (solve_temporal->parsed())
            return madelung::cmd_solve(config, madelung::SolveAxis::Temporal);
        if (sweep->parsed()) return madelung::cmd_sweep(config);
        if (verify->parsed()) return madelung::cmd_verify(config);
        if (limits->parsed()) return madelung::cmd_limits(config);
        std::cerr << "no subcommand selected\n";
        return 1;
    } catch (const madelung::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const madelung::DomainError& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
