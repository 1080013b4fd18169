#include "madelung/temporal.hpp"

#include <algorithm>
#include <memory>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "madelung/errors.hpp"
#include "madelung/ivp.hpp"
#include "solve_common.hpp"

namespace madelung {

GridFunction symmetrize(const GridFunction& half) {
    half.validate();
    if (half.nodes.front() != 0.0)
        throw std::invalid_argument("symmetrize: half-profile must start at 0");
    const std::size_t n = half.size();
    GridFunction full;
    full.nodes.resize(2 * n - 1);
    full.values.resize(2 * n - 1);
    for (std::size_t i = 0; i < n - 1; ++i) {
        full.nodes[i] = -half.nodes[n - 1 - i];
        full.values[i] = half.values[n - 1 - i];
    }
    for (std::size_t i = 0; i < n; ++i) {
        full.nodes[n - 1 + i] = half.nodes[i];
        full.values[n - 1 + i] = half.values[i];
    }
    full.validate();
    return full;
}

TemporalSolution solve_temporal(const TemporalSolveInput& input) {
    const double T = input.constants.lagrange_t;
    const double hbar = input.constants.hbar;
    const double c = input.constants.c;
    if (!(T > 0.0))
        throw std::invalid_argument("solve_temporal: T must be positive (T = 0 is analytic)");
    if (!(hbar > 0.0) || !(c > 0.0))
        throw std::invalid_argument("solve_temporal: hbar and c must be positive");
    if (input.grid_n < 16) throw std::invalid_argument("solve_temporal: grid_n too small");
    const double ut0 = input.ut0;
    if (!(ut0 < 0.0))
        throw WrongSign("solve_temporal: U_t(0) must be negative for the trapped family");

    const double t_scale = std::numbers::pi * hbar / (2.0 * c * std::sqrt(2.0 * std::abs(ut0)));
    const double horizon = detail::kHorizonFactor * t_scale;

    IvpProblem prob;
    prob.rhs = [T, hbar, c](double, const State2& y) -> State2 {
        const double u = y[0], v = y[1];
        return {v, c * c * (v * v / (2.0 * T) - (4.0 * T / (hbar * hbar)) * u)};
    };
    prob.initial_point = 0.0;
    prob.initial_state = {ut0, 0.0};
    prob.direction = +1;
    prob.abs_tol = input.abs_tol;
    prob.rel_tol = input.rel_tol;
    prob.blowup_threshold = detail::kBlowupFactor * std::max(1.0, std::abs(ut0));
    // Same step cap as the spatial solver: resampling accuracy must stay
    // below the finite-difference truncation of downstream checks.
    prob.max_step = t_scale / 256.0;

    const auto traj = std::make_shared<const IvpResult>(integrate_ivp(prob, horizon));
    detail::require_blowup(*traj, horizon, "temporal");

    const double t_threshold = *traj->blowup_estimate;
    const double t_a = refine_blowup(*traj, LogDivergence{2.0 * T / (c * c)});

    const auto u_at = [&](double t) { return traj->eval_value(t); };

    const double t_last = traj->value.back();
    const GridFunction prelim = make_uniform_grid(0.0, t_last, detail::kPrelimGridN, u_at);
    const double u_min = *std::min_element(prelim.values.begin(), prelim.values.end());

    GridFunction boltz;
    boltz.nodes = prelim.nodes;
    boltz.values.resize(prelim.size());
    for (std::size_t i = 0; i < prelim.size(); ++i)
        boltz.values[i] = std::exp(-(prelim.values[i] - u_min) / T);
    // Full symmetric interval: twice the half-line integral.
    const double z_pre = 2.0 * quadrature(boltz, Weight::Unit);
    const double threshold_rel = -T * std::log(detail::kDensityFloor * z_pre);
    if (!(threshold_rel > 0.0))
        throw DomainError("solve_temporal: density floor threshold is not positive");

    const double t_floor = detail::find_floor(u_at, u_min, threshold_rel, 0.0, t_last);

    TemporalSolution sol;
    sol.half_width = t_a;
    sol.threshold_crossing = t_threshold;
    sol.horizon = horizon;
    const GridFunction half = make_uniform_grid(0.0, t_floor, input.grid_n, u_at);
    sol.potential.grid = symmetrize(half);
    sol.potential.blowup_coordinate = t_a;
    // |t| keeps the sampled exponent, and with it the density, even in t to
    // the last bit.
    sol.potential.fine_sampler = [traj](double t) -> long double {
        return traj->eval_value_fine(std::abs(t));
    };
    sol.density = density_from_potential(sol.potential, T, Weight::Unit);
    return sol;
}

}  // namespace madelung
