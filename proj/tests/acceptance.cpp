// Acceptance suite: runs every verification criterion at its pinned
// tolerance and prints one pass/fail line per criterion. Pass the CLI binary
// path as argv[1] for the command-line contract checks.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "madelung/kg.hpp"
#include "madelung/limits.hpp"
#include "madelung/mass.hpp"
#include "madelung/spatial.hpp"
#include "madelung/temporal.hpp"

using namespace madelung;
namespace fs = std::filesystem;

namespace {

constexpr double pi = std::numbers::pi;
const PhysicalConstants natural{1.0, 1.0, 0.0};

int g_failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %d: %s — %s\n", pass ? "PASS" : "FAIL", id, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

SpatialSolution spatial_at(double t_val, std::size_t grid_n = 4096) {
    SpatialSolveInput in;
    in.constants = {1.0, 1.0, t_val};
    in.grid_n = grid_n;
    return solve_spatial(in);
}

TemporalSolution temporal_at(double t_val, std::size_t grid_n = 4096) {
    TemporalSolveInput in;
    in.constants = {1.0, 1.0, t_val};
    in.grid_n = grid_n;
    return solve_temporal(in);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// --- CLI helpers for criterion 9 -------------------------------------------

std::string g_cli;

int run_cli(const std::string& args) {
    const std::string cmd = "\"" + g_cli + "\" " + args + " > /dev/null 2> /dev/null";
    const int status = std::system(cmd.c_str());
    if (status == -1) return -1;
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::map<std::string, std::string> dir_contents(const fs::path& dir) {
    std::map<std::string, std::string> out;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path().extension() == ".log") continue;
        std::ifstream in(entry.path(), std::ios::binary);
        std::ostringstream os;
        os << in.rdbuf();
        out[entry.path().filename().string()] = os.str();
    }
    return out;
}

fs::path scratch(const std::string& tag) {
    const fs::path p = fs::temp_directory_path() / ("madelung_acceptance_" + tag);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) g_cli = argv[1];

    // 1. Analytic-limit radius at T = 1e-4 within 1% in under a second.
    {
        const auto t0 = std::chrono::steady_clock::now();
        const SpatialSolution sol = spatial_at(1e-4);
        const double elapsed = seconds_since(t0);
        const double r0 = pi / std::sqrt(2.0);
        const double rel = std::abs(sol.support_radius - r0) / r0;
        report(1, "analytic-limit radius", rel < 0.01 && elapsed < 1.0,
               "r_m=" + fmt(sol.support_radius) + " vs " + fmt(r0) + ", rel err " + fmt(rel) +
                   ", " + fmt(elapsed) + " s");
    }

    // 2. Analytic-limit half-width at T = 1e-4 within 1% in under a second.
    {
        const auto t0 = std::chrono::steady_clock::now();
        const TemporalSolution sol = temporal_at(1e-4);
        const double elapsed = seconds_since(t0);
        const double t_lim = pi / (2.0 * std::sqrt(2.0));
        const double rel = std::abs(sol.half_width - t_lim) / t_lim;
        report(2, "analytic-limit half-width", rel < 0.01 && elapsed < 1.0,
               "t_a=" + fmt(sol.half_width) + " vs " + fmt(t_lim) + ", rel err " + fmt(rel) +
                   ", " + fmt(elapsed) + " s");
    }

    // 3 + 4. Sweep over the seven-point T grid: monotone support and
    // monotone convergence to the limit densities.
    {
        const std::vector<double> t_grid = {0.2, 0.1, 0.05, 0.02, 0.01, 1e-3, 1e-4};
        const AnalyticLimitState sinc_state = sinc_limit(1.0, 1.0);
        const AnalyticLimitState cos_state = cos_limit(-1.0, 1.0, 1.0);
        std::vector<double> r_ms, t_as, dist_s, dist_t;
        const auto t0 = std::chrono::steady_clock::now();
        for (double t_val : t_grid) {
            const SpatialSolution s = spatial_at(t_val);
            const TemporalSolution t = temporal_at(t_val);
            r_ms.push_back(s.support_radius);
            t_as.push_back(t.half_width);
            dist_s.push_back(limit_density_distance(s.density, sinc_state, Weight::RadialBall));
            dist_t.push_back(limit_density_distance(t.density, cos_state, Weight::Unit));
        }
        const double elapsed = seconds_since(t0);

        bool monotone_support = true;
        for (std::size_t i = 1; i < r_ms.size(); ++i)
            monotone_support = monotone_support && r_ms[i] > r_ms[i - 1];
        report(3, "support radius strictly decreasing in T",
               monotone_support && elapsed < 60.0,
               "r_m spans [" + fmt(r_ms.front()) + ", " + fmt(r_ms.back()) + "], sweep " +
                   fmt(elapsed) + " s");

        bool monotone_dist = true;
        for (std::size_t i = 1; i < dist_s.size(); ++i) {
            monotone_dist = monotone_dist && dist_s[i] < dist_s[i - 1];
            monotone_dist = monotone_dist && dist_t[i] < dist_t[i - 1];
        }
        const bool final_close = dist_s.back() < 0.02 && dist_t.back() < 0.02;
        report(4, "densities converge monotonically to the analytic limits",
               monotone_dist && final_close,
               "final spatial dist " + fmt(dist_s.back()) + ", temporal " + fmt(dist_t.back()));
    }

    // 5. Round-trip identity at T = 0.05: below 1e-3 at N = 4096 and
    // second-order under grid doubling.
    {
        const PhysicalConstants k{1.0, 1.0, 0.05};
        const double es1 = potential_roundtrip(spatial_at(0.05, 4096), k);
        const double es2 = potential_roundtrip(spatial_at(0.05, 8192), k);
        const double et1 = potential_roundtrip(temporal_at(0.05, 4096), k);
        const double et2 = potential_roundtrip(temporal_at(0.05, 8192), k);
        const double rs = es1 / es2, rt = et1 / et2;
        const bool pass = es1 < 1e-3 && et1 < 1e-3 && rs > 3.5 && rs < 4.5 && rt > 3.5 &&
                          rt < 4.5;
        report(5, "potential round-trip identity", pass,
               "spatial " + fmt(es1) + " (ratio " + fmt(rs) + "), temporal " + fmt(et1) +
                   " (ratio " + fmt(rt) + ")");
    }

    // 6. Klein-Gordon residual: second-order convergence and the wrong-mass
    // control at 513^2.
    {
        const AnalyticLimitState s = sinc_limit(1.0, 1.0);
        const AnalyticLimitState t = cos_limit(-2.0, 1.0, 1.0);
        const ProductState coarse = build_product_state(s, t, 257, 257, natural);
        const ProductState fine = build_product_state(s, t, 513, 513, natural);
        const double e1 = kg_residual(coarse);
        const double e2 = kg_residual(fine);
        ProductState wrong = fine;
        wrong.mass *= 2.0;
        const double ratio = e1 / e2;
        const double control = kg_residual(wrong) / e2;
        const bool pass = ratio > 3.5 && ratio < 4.5 && control >= 100.0;
        report(6, "Klein-Gordon residual convergence and wrong-mass control", pass,
               "grid ratio " + fmt(ratio) + ", wrong-mass x" + fmt(control));
    }

    // 7. Identity suite over ten sampled pairs, all residuals below 1e-12.
    {
        const std::vector<std::pair<double, double>> pairs = {
            {0.25, -1.0}, {0.5, -1.0}, {1.0, -2.0},  {1.0, -1.5}, {2.0, -3.0},
            {0.1, -0.2},  {1.5, -2.0}, {3.0, -4.0},  {0.7, -2.5}, {0.05, -4.0}};
        bool pass = true;
        double worst = 0.0;
        for (const auto& [us0, ut0] : pairs) {
            const AnalyticLimitState s = sinc_limit(us0, 1.0);
            const AnalyticLimitState t = cos_limit(ut0, 1.0, 1.0);
            const MassReport r = compute_mass(s, t, natural);
            const double dbe_res = energy_momentum_check(r, de_broglie(r, natural), natural);
            const double dt = time_uncertainty(r, natural);
            const double dt_e = std::abs(dt * r.energy - pi);
            const double dt_t0 = std::abs(dt - 2.0 * t.boundary);
            for (double v : {r.identity_residual, dbe_res, dt_e, dt_t0}) {
                worst = std::max(worst, v);
                pass = pass && v < 1e-12;
            }
        }
        report(7, "emergent-mass identity suite (10 pairs)", pass,
               "worst residual " + fmt(worst));
    }

    // 8. Flatness cross-check at T = 1e-3: averaged potential within 2% of
    // U_s0 + U_t0.
    {
        SpatialSolveInput si;
        si.constants = {1.0, 1.0, 1e-3};
        TemporalSolveInput ti;
        ti.constants = {1.0, 1.0, 1e-3};
        ti.ut0 = -2.0;
        const double avg = average_potential(solve_spatial(si), solve_temporal(ti));
        const double expected = 1.0 - 2.0;
        const double rel = std::abs(avg - expected) / std::abs(expected);
        report(8, "flat-potential average cross-check", rel < 0.02,
               "avg U = " + fmt(avg) + " vs " + fmt(expected) + ", rel err " + fmt(rel));
    }

    // 9. CLI contract: determinism, exit codes, and the full verification
    // pipeline under two minutes.
    if (g_cli.empty()) {
        report(9, "CLI determinism and exit-code contract", false,
               "no CLI path given (pass it as argv[1])");
    } else {
        const auto t0 = std::chrono::steady_clock::now();
        const fs::path d1 = scratch("v1");
        const fs::path d2 = scratch("v2");
        const int rc1 = run_cli("verify --ut0 -2 --out " + d1.string());
        const int rc2 = run_cli("verify --ut0 -2 --out " + d2.string());
        const bool identical = dir_contents(d1) == dir_contents(d2);
        const int rc_config = run_cli("sweep --t-list '' --out " + scratch("e1").string());
        const int rc_domain = run_cli("verify --ut0 -0.5 --out " + scratch("e2").string());
        const int rc_partial =
            run_cli("sweep --us0 -1 --t-list 0.2,0.1 --grid 256 --out " +
                    scratch("e3").string());
        const fs::path dsweep = scratch("s1");
        const int rc_sweep = run_cli(
            "sweep --grid 1024 --t-list 0.2,0.1,0.05,0.02 --out " + dsweep.string());
        const double elapsed = seconds_since(t0);
        const bool pass = rc1 == 0 && rc2 == 0 && identical && rc_config == 1 &&
                          rc_domain == 2 && rc_partial == 3 && rc_sweep == 0 &&
                          elapsed < 120.0;
        report(9, "CLI determinism and exit-code contract", pass,
               std::string("verify rc=") + std::to_string(rc1) +
                   (identical ? ", byte-identical" : ", MISMATCH") +
                   ", rc(config)=" + std::to_string(rc_config) +
                   ", rc(domain)=" + std::to_string(rc_domain) +
                   ", rc(partial)=" + std::to_string(rc_partial) + ", " + fmt(elapsed) + " s");
    }

    if (g_failures == 0)
        std::printf("acceptance: all criteria passed\n");
    else
        std::printf("acceptance: %d criterion(s) failed\n", g_failures);
    return g_failures;
}
