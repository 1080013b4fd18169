#include "madelung/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <thread>

#include "madelung/errors.hpp"
#include "madelung/kg.hpp"
#include "madelung/limits.hpp"
#include "madelung/mass.hpp"
#include "madelung/spatial.hpp"
#include "madelung/temporal.hpp"

namespace madelung {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& text, const std::string& key) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size() || !std::isfinite(v))
            throw ConfigError("bad numeric value for " + key + ": " + text);
        return v;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        throw ConfigError("bad numeric value for " + key + ": " + text);
    }
}

std::size_t parse_size(const std::string& text, const std::string& key) {
    const double v = parse_double(text, key);
    if (v < 1.0 || v != std::floor(v)) throw ConfigError("bad integer value for " + key);
    return static_cast<std::size_t>(v);
}

std::string domain_error_kind(const DomainError& e) {
    if (dynamic_cast<const NonFiniteRhs*>(&e)) return "NonFiniteRhs";
    if (dynamic_cast<const FitFailed*>(&e)) return "FitFailed";
    if (dynamic_cast<const NonUniformGrid*>(&e)) return "NonUniformGrid";
    if (dynamic_cast<const NoBlowup*>(&e)) return "NoBlowup";
    if (dynamic_cast<const DegenerateFlat*>(&e)) return "DegenerateFlat";
    if (dynamic_cast<const OverflowGuard*>(&e)) return "OverflowGuard";
    if (dynamic_cast<const WrongSign*>(&e)) return "WrongSign";
    if (dynamic_cast<const NonNegativeUtot*>(&e)) return "NonNegativeUtot";
    if (dynamic_cast<const DensityFloorReached*>(&e)) return "DensityFloorReached";
    return "DomainError";
}

std::string config_echo(const RunConfig& c) {
    std::ostringstream os;
    os << "hbar = " << format_double(c.hbar) << '\n'
       << "c = " << format_double(c.c) << '\n'
       << "us0 = " << format_double(c.us0) << '\n'
       << "ut0 = " << format_double(c.ut0) << '\n';
    os << "t_list = ";
    for (std::size_t i = 0; i < c.t_list.size(); ++i)
        os << (i ? "," : "") << format_double(c.t_list[i]);
    os << '\n'
       << "grid = " << c.grid << '\n'
       << "kg_grid = " << c.kg_grid << '\n'
       << "abs_tol = " << format_double(c.abs_tol) << '\n'
       << "rel_tol = " << format_double(c.rel_tol) << '\n'
       << "roundtrip_t = " << format_double(c.roundtrip_t) << '\n'
       << "out = " << c.out << '\n'
       << "format = " << (c.format == OutputFormat::Csv ? "csv" : "json") << '\n';
    return os.str();
}

// Timestamps live only in this sidecar; data files stay byte-reproducible.
void write_run_log(const RunConfig& config, const std::string& command) {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::ostringstream os;
    os << "command = " << command << '\n'
       << "timestamp_unix = " << now << '\n'
       << config_echo(config);
    std::filesystem::create_directories(config.out);
    write_text(std::filesystem::path(config.out) / "run.log", os.str());
}

int write_error_record(const RunConfig& config, const std::string& command,
                       const std::string& context, const std::string& kind,
                       const std::string& what) {
    Table t;
    t.header = {"command", "context", "error", "what"};
    t.rows.push_back({command, context, kind, what});
    write_table(config.out, "errors", t, config.format);
    std::cerr << command << ": " << kind << ": " << what << '\n';
    return 2;
}

SpatialSolveInput spatial_input(const RunConfig& config, double lagrange_t) {
    return {config.constants(lagrange_t), config.us0, config.abs_tol, config.rel_tol,
            config.grid};
}

TemporalSolveInput temporal_input(const RunConfig& config, double lagrange_t) {
    return {config.constants(lagrange_t), config.ut0, config.abs_tol, config.rel_tol,
            config.grid};
}

std::string profile_basename(SolveAxis axis, double lagrange_t) {
    return std::string(axis == SolveAxis::Spatial ? "spatial_T" : "temporal_T") +
           format_label(lagrange_t);
}

std::string profiles_plot_script(SolveAxis axis, const RunConfig& config,
                                 const std::vector<double>& u_mins) {
    const bool spatial = axis == SolveAxis::Spatial;
    std::ostringstream os;
    os << "# density (solid) and min-shifted potential (dashed) profiles\n"
          "set datafile separator ','\n"
       << "set xlabel '" << (spatial ? "r" : "t") << "'\n"
       << "set style data lines\n"
       << "plot \\\n";
    for (std::size_t i = 0; i < config.t_list.size(); ++i) {
        const std::string file = profile_basename(axis, config.t_list[i]) + ".csv";
        const std::string label = format_label(config.t_list[i]);
        os << "  '" << file << "' every ::1 using 1:3 lw 2 title 'rho T=" << label << "', \\\n";
        os << "  '" << file << "' every ::1 using 1:($2-(" << format_double(u_mins[i])
           << ")) dashtype 2 title 'U-Umin T=" << label << "'";
        os << (i + 1 < config.t_list.size() ? ", \\\n" : "\n");
    }
    return os.str();
}

}  // namespace

std::vector<double> parse_t_list(const std::string& text) {
    std::vector<double> out;
    std::string norm = text;
    for (auto& ch : norm)
        if (ch == ',') ch = ' ';
    std::istringstream is(norm);
    std::string token;
    while (is >> token) out.push_back(parse_double(token, "t_list"));
    return out;
}

RunConfig load_config_file(const std::filesystem::path& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path.string());
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "hbar")
            base.hbar = parse_double(value, key);
        else if (key == "c")
            base.c = parse_double(value, key);
        else if (key == "us0")
            base.us0 = parse_double(value, key);
        else if (key == "ut0")
            base.ut0 = parse_double(value, key);
        else if (key == "t_list")
            base.t_list = parse_t_list(value);
        else if (key == "grid")
            base.grid = parse_size(value, key);
        else if (key == "kg_grid")
            base.kg_grid = parse_size(value, key);
        else if (key == "abs_tol")
            base.abs_tol = parse_double(value, key);
        else if (key == "rel_tol")
            base.rel_tol = parse_double(value, key);
        else if (key == "roundtrip_t")
            base.roundtrip_t = parse_double(value, key);
        else if (key == "out")
            base.out = value;
        else if (key == "format") {
            if (value == "csv")
                base.format = OutputFormat::Csv;
            else if (value == "json")
                base.format = OutputFormat::Json;
            else
                throw ConfigError("format must be csv or json");
        } else {
            throw ConfigError("unknown config key: " + key);
        }
    }
    return base;
}

void validate(const RunConfig& config) {
    if (!(config.hbar > 0.0)) throw ConfigError("hbar must be positive");
    if (!(config.c > 0.0)) throw ConfigError("c must be positive");
    if (config.t_list.empty()) throw ConfigError("t_list must not be empty");
    for (double t : config.t_list)
        if (!(t > 0.0) || !std::isfinite(t)) throw ConfigError("t_list entries must be positive");
    for (std::size_t i = 1; i < config.t_list.size(); ++i)
        if (!(config.t_list[i] < config.t_list[i - 1]))
            throw ConfigError("t_list must be strictly descending");
    if (config.grid < 65) throw ConfigError("grid must be at least 65");
    if (config.kg_grid < 65) throw ConfigError("kg_grid must be at least 65");
    if (!(config.abs_tol > 0.0) || !(config.rel_tol > 0.0))
        throw ConfigError("tolerances must be positive");
    if (!(config.roundtrip_t > 0.0)) throw ConfigError("roundtrip_t must be positive");
    if (config.out.empty()) throw ConfigError("out directory must not be empty");
}

unsigned pool_size(std::size_t tasks) {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("MADELUNG_THREADS")) {
        try {
            const unsigned cap = static_cast<unsigned>(std::stoul(env));
            if (cap >= 1) n = std::min(n, cap);
        } catch (const std::exception&) {
            // ignore malformed values; default pool size applies
        }
    }
    return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(tasks, 1)));
}

SweepRecord compute_sweep_record(const RunConfig& config, double lagrange_t) {
    SweepRecord rec;
    rec.lagrange_t = lagrange_t;
    try {
        const SpatialSolution s = solve_spatial(spatial_input(config, lagrange_t));
        const TemporalSolution t = solve_temporal(temporal_input(config, lagrange_t));
        rec.r_m = s.support_radius;
        rec.t_a = t.half_width;
        rec.dist_spatial = limit_density_distance(s.density, sinc_limit(config.us0, config.hbar),
                                                  Weight::RadialBall);
        rec.dist_temporal = limit_density_distance(
            t.density, cos_limit(config.ut0, config.c, config.hbar), Weight::Unit);
        rec.z_s = s.density.shifted_normalization;
        rec.z_t = t.density.shifted_normalization;
        rec.entropy_s = s.density.entropy;
        rec.entropy_t = t.density.entropy;
        rec.ok = true;
        rec.status = "ok";
    } catch (const DomainError& e) {
        rec.status = "error:" + domain_error_kind(e) + ": " + e.what();
    } catch (const std::exception& e) {
        rec.status = std::string("error:Error: ") + e.what();
    }
    return rec;
}

namespace {

std::vector<SweepRecord> run_records(const RunConfig& config) {
    const std::size_t n = config.t_list.size();
    std::vector<SweepRecord> records(n);
    const unsigned workers = pool_size(n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            records[i] = compute_sweep_record(config, config.t_list[i]);
        return records;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                records[i] = compute_sweep_record(config, config.t_list[i]);
            }
        });
    }
    for (auto& th : pool) th.join();
    return records;
}

bool strictly_increasing_rows(const std::vector<SweepRecord>& recs,
                              double SweepRecord::*field) {
    // t_list is descending in T, so "decreasing in T" = increasing down rows.
    for (std::size_t i = 1; i < recs.size(); ++i)
        if (!(recs[i].*field > recs[i - 1].*field)) return false;
    return true;
}

bool strictly_decreasing_rows(const std::vector<SweepRecord>& recs,
                              double SweepRecord::*field) {
    for (std::size_t i = 1; i < recs.size(); ++i)
        if (!(recs[i].*field < recs[i - 1].*field)) return false;
    return true;
}

}  // namespace

int cmd_solve(const RunConfig& config, SolveAxis axis) {
    validate(config);
    write_run_log(config, axis == SolveAxis::Spatial ? "solve-spatial" : "solve-temporal");
    const bool spatial = axis == SolveAxis::Spatial;

    Table summary;
    summary.header = spatial
                         ? std::vector<std::string>{"T", "r_m", "threshold_crossing", "horizon",
                                                    "Z_s", "H_s"}
                         : std::vector<std::string>{"T", "t_a", "threshold_crossing", "horizon",
                                                    "Z_t", "H_t"};
    std::vector<double> u_mins;

    for (double t_val : config.t_list) {
        const std::string base = profile_basename(axis, t_val);
        try {
            Table profile;
            profile.header = {spatial ? "r" : "t", "U", "rho"};
            if (spatial) {
                const SpatialSolution sol = solve_spatial(spatial_input(config, t_val));
                const auto& g = sol.potential.grid;
                for (std::size_t i = 0; i < g.size(); ++i)
                    profile.rows.push_back(
                        {g.nodes[i], g.values[i], sol.density.grid.values[i]});
                summary.rows.push_back({t_val, sol.support_radius, sol.threshold_crossing,
                                        sol.horizon, sol.density.shifted_normalization,
                                        sol.density.entropy});
                u_mins.push_back(*std::min_element(g.values.begin(), g.values.end()));
            } else {
                const TemporalSolution sol = solve_temporal(temporal_input(config, t_val));
                const auto& g = sol.potential.grid;
                for (std::size_t i = 0; i < g.size(); ++i)
                    profile.rows.push_back(
                        {g.nodes[i], g.values[i], sol.density.grid.values[i]});
                summary.rows.push_back({t_val, sol.half_width, sol.threshold_crossing,
                                        sol.horizon, sol.density.shifted_normalization,
                                        sol.density.entropy});
                u_mins.push_back(*std::min_element(g.values.begin(), g.values.end()));
            }
            write_table(config.out, base, profile, config.format);
        } catch (const DomainError& e) {
            return write_error_record(config,
                                      spatial ? "solve-spatial" : "solve-temporal",
                                      "T=" + format_label(t_val), domain_error_kind(e), e.what());
        }
    }

    write_table(config.out, spatial ? "spatial_summary" : "temporal_summary", summary,
                config.format);
    if (config.format == OutputFormat::Csv) {
        write_text(std::filesystem::path(config.out) /
                       (spatial ? "spatial_profiles.gp" : "temporal_profiles.gp"),
                   profiles_plot_script(axis, config, u_mins));
    }
    return 0;
}

int cmd_sweep(const RunConfig& config) {
    validate(config);
    write_run_log(config, "sweep");
    const std::vector<SweepRecord> records = run_records(config);

    Table table;
    table.header = {"T",   "r_m", "t_a", "dist_spatial", "dist_temporal",
                    "Z_s", "Z_t", "H_s", "H_t",          "status"};
    for (const auto& r : records) {
        std::vector<Cell> row{r.lagrange_t};
        if (r.ok) {
            row.insert(row.end(), {Cell{r.r_m}, Cell{r.t_a}, Cell{r.dist_spatial},
                                   Cell{r.dist_temporal}, Cell{r.z_s}, Cell{r.z_t},
                                   Cell{r.entropy_s}, Cell{r.entropy_t}});
        } else {
            for (int i = 0; i < 8; ++i) row.emplace_back(std::string{});
        }
        row.emplace_back(r.status);
        table.rows.push_back(std::move(row));
    }
    // The record table is always materialized as CSV; JSON is an add-on.
    write_table(config.out, "sweep", table, OutputFormat::Csv);
    if (config.format == OutputFormat::Json) write_table(config.out, "sweep", table, config.format);

    const bool all_ok =
        std::all_of(records.begin(), records.end(), [](const auto& r) { return r.ok; });

    Table verdicts;
    verdicts.header = {"name", "value"};
    auto verdict = [&](const std::string& name, bool v) {
        verdicts.rows.push_back({name, std::string(v ? "true" : "false")});
    };
    verdict("all_rows_ok", all_ok);
    if (all_ok) {
        // Rows are descending in T. The measured temporal direction is the
        // opposite of the spatial one: t_a grows with T.
        verdict("r_m_strictly_decreasing_in_T",
                strictly_increasing_rows(records, &SweepRecord::r_m));
        verdict("t_a_strictly_increasing_in_T",
                strictly_decreasing_rows(records, &SweepRecord::t_a));
        verdict("dist_spatial_decreasing_with_T",
                strictly_decreasing_rows(records, &SweepRecord::dist_spatial));
        verdict("dist_temporal_decreasing_with_T",
                strictly_decreasing_rows(records, &SweepRecord::dist_temporal));
    }
    write_table(config.out, "sweep_verdicts", verdicts, config.format);

    write_text(std::filesystem::path(config.out) / "rm_vs_T.gp",
               "# log-log support radius against the Lagrange parameter\n"
               "set datafile separator ','\n"
               "set logscale xy\n"
               "set xlabel 'T'\n"
               "set ylabel 'r_m'\n"
               "plot 'sweep.csv' every ::1 using 1:2 with linespoints title 'r_m(T)', \\\n"
               "     'sweep.csv' every ::1 using 1:3 with linespoints title 't_a(T)'\n");

    return all_ok ? 0 : 3;
}

int cmd_verify(const RunConfig& config) {
    validate(config);
    write_run_log(config, "verify");
    const PhysicalConstants base = config.constants(0.0);

    Table report;
    report.header = {"name", "value", "threshold", "pass"};
    bool all_pass = true;
    auto info = [&](const std::string& name, double value) {
        report.rows.push_back({name, value, std::string{}, std::string{}});
    };
    auto check = [&](const std::string& name, double value, const std::string& threshold,
                     bool pass) {
        report.rows.push_back({name, value, threshold, std::string(pass ? "true" : "false")});
        all_pass = all_pass && pass;
        std::cout << (pass ? "[PASS] " : "[FAIL] ") << name << " = " << format_double(value)
                  << " (" << threshold << ")\n";
    };

    try {
        if (!(config.us0 > 0.0))
            throw DomainError("verify: us0 must be positive for the sinc limit");
        if (!(config.ut0 < 0.0))
            throw WrongSign("verify: ut0 must be negative for the cosine limit");
        const AnalyticLimitState sinc_state = sinc_limit(config.us0, config.hbar);
        const AnalyticLimitState cos_state = cos_limit(config.ut0, config.c, config.hbar);
        const MassReport mass = compute_mass(sinc_state, cos_state, base);

        info("us0", mass.us0);
        info("ut0", mass.ut0);
        info("u_tot", mass.u_tot);
        info("mass", mass.mass);
        info("k0", mass.k0);
        info("omega0", mass.omega0);
        info("energy", mass.energy);
        info("delta_t", mass.delta_t);
        check("identity_residual", mass.identity_residual, "<=1e-10",
              mass.identity_residual <= 1e-10);

        const DeBroglieState dbe = de_broglie(mass, base);
        const double dbe_res = energy_momentum_check(mass, dbe, base);
        check("dbe_residual", dbe_res, "<=1e-10", dbe_res <= 1e-10);

        const double dt = time_uncertainty(mass, base);
        const double dt_row = dt * mass.energy / (std::numbers::pi * config.hbar);
        check("dt_times_E_over_pi_hbar", dt_row, "=1 within 1e-12",
              std::abs(dt_row - 1.0) <= 1e-12);
        const double two_t0 = 2.0 * cos_state.boundary;
        check("dt_minus_2t0", std::abs(dt - two_t0), "<=1e-12", std::abs(dt - two_t0) <= 1e-12);

        const ProductState state =
            build_product_state(sinc_state, cos_state, config.kg_grid, config.kg_grid, base);
        check("product_norm_error", std::abs(state.normalization - 1.0), "<=1e-6",
              std::abs(state.normalization - 1.0) <= 1e-6);
        const double kg_true = kg_residual(state);
        check("kg_residual", kg_true, "<=1e-3", kg_true <= 1e-3);
        ProductState wrong = state;
        wrong.mass = 2.0 * state.mass;
        const double ratio = kg_residual(wrong) / kg_true;
        check("kg_wrong_mass_ratio", ratio, ">=100", ratio >= 100.0);

        const SpatialSolution ssol = solve_spatial(spatial_input(config, config.roundtrip_t));
        const TemporalSolution tsol = solve_temporal(temporal_input(config, config.roundtrip_t));
        const double rs = potential_roundtrip(ssol, config.constants(config.roundtrip_t));
        const double rt = potential_roundtrip(tsol, config.constants(config.roundtrip_t));
        check("roundtrip_spatial", rs, "<=1e-3", rs <= 1e-3);
        check("roundtrip_temporal", rt, "<=1e-3", rt <= 1e-3);
    } catch (const DomainError& e) {
        const std::string kind = domain_error_kind(e);
        report.rows.push_back({std::string("error"), kind, std::string{}, std::string("false")});
        write_table(config.out, "verify_report", report, config.format);
        return write_error_record(config, "verify", "", kind, e.what());
    }

    write_table(config.out, "verify_report", report, config.format);
    if (!all_pass) {
        std::cerr << "verify: one or more checks failed\n";
        return 2;
    }
    return 0;
}

int cmd_limits(const RunConfig& config) {
    validate(config);
    write_run_log(config, "limits");
    try {
        if (!(config.us0 > 0.0))
            throw DomainError("limits: us0 must be positive for the sinc limit");
        if (!(config.ut0 < 0.0))
            throw WrongSign("limits: ut0 must be negative for the cosine limit");
        const AnalyticLimitState s = sinc_limit(config.us0, config.hbar);
        const AnalyticLimitState t = cos_limit(config.ut0, config.c, config.hbar);
        Table table;
        table.header = {"kind", "level", "wavenumber", "boundary", "amplitude"};
        table.rows.push_back(
            {std::string("spatial_sinc"), s.level, s.wavenumber, s.boundary, s.amplitude});
        table.rows.push_back(
            {std::string("temporal_cos"), t.level, t.wavenumber, t.boundary, t.amplitude});
        write_table(config.out, "limits", table, config.format);
        std::cout << "spatial: k0 = " << format_double(s.wavenumber)
                  << ", r0 = " << format_double(s.boundary)
                  << ", A = " << format_double(s.amplitude) << '\n'
                  << "temporal: omega0 = " << format_double(t.wavenumber)
                  << ", t0 = " << format_double(t.boundary)
                  << ", A = " << format_double(t.amplitude) << '\n';
    } catch (const DomainError& e) {
        return write_error_record(config, "limits", "", domain_error_kind(e), e.what());
    }
    return 0;
}

}  // namespace madelung
