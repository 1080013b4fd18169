#include "madelung/spatial.hpp"

#include <algorithm>
#include <memory>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "madelung/errors.hpp"
#include "madelung/ivp.hpp"
#include "solve_common.hpp"

namespace madelung {

SpatialSolution solve_spatial(const SpatialSolveInput& input) {
    const double T = input.constants.lagrange_t;
    const double hbar = input.constants.hbar;
    if (!(T > 0.0))
        throw std::invalid_argument("solve_spatial: T must be positive (T = 0 is analytic)");
    if (!(hbar > 0.0)) throw std::invalid_argument("solve_spatial: hbar must be positive");
    if (input.grid_n < 16) throw std::invalid_argument("solve_spatial: grid_n too small");
    const double us0 = input.us0;
    if (us0 == 0.0)
        throw DegenerateFlat("solve_spatial: U_s(0) = 0 gives the identically zero solution");

    const double r_scale = std::numbers::pi * hbar / std::sqrt(2.0 * std::abs(us0));
    const double horizon = detail::kHorizonFactor * r_scale;

    // Series start off the r = 0 coordinate singularity:
    // U(r) = U(0) + a r^2 with a = (2T / 3 hbar^2) U(0).
    const double h0 = 1e-6 * r_scale;
    const double a = (2.0 * T / (3.0 * hbar * hbar)) * us0;

    IvpProblem prob;
    prob.rhs = [T, hbar](double r, const State2& y) -> State2 {
        const double u = y[0], v = y[1];
        return {v, v * v / (2.0 * T) + (4.0 * T / (hbar * hbar)) * u - (2.0 / r) * v};
    };
    prob.initial_point = h0;
    prob.initial_state = {us0 + a * h0 * h0, 2.0 * a * h0};
    prob.direction = +1;
    prob.abs_tol = input.abs_tol;
    prob.rel_tol = input.rel_tol;
    prob.blowup_threshold = detail::kBlowupFactor * std::max(1.0, std::abs(us0));
    // Keep steps small against the support scale so the node-wise resampling
    // stays well below the finite-difference truncation downstream.
    prob.max_step = r_scale / 256.0;

    const auto traj = std::make_shared<const IvpResult>(integrate_ivp(prob, horizon));
    detail::require_blowup(*traj, horizon, "spatial");

    const double r_threshold = *traj->blowup_estimate;
    const double r_m = refine_blowup(*traj, LogDivergence{2.0 * T});

    const auto u_at = [&](double r) {
        if (r < h0) return us0 + a * r * r;
        return traj->eval_value(r);
    };

    // Preliminary pass fixes the density floor; the floor coordinate does not
    // depend on the output resolution.
    const double r_last = traj->value.back();
    const GridFunction prelim = make_uniform_grid(0.0, r_last, detail::kPrelimGridN, u_at);
    const double u_min = *std::min_element(prelim.values.begin(), prelim.values.end());

    GridFunction boltz;
    boltz.nodes = prelim.nodes;
    boltz.values.resize(prelim.size());
    for (std::size_t i = 0; i < prelim.size(); ++i)
        boltz.values[i] = std::exp(-(prelim.values[i] - u_min) / T);
    const double z_pre = quadrature(boltz, Weight::RadialBall);
    const double threshold_rel = -T * std::log(detail::kDensityFloor * z_pre);
    if (!(threshold_rel > 0.0))
        throw DomainError("solve_spatial: density floor threshold is not positive");

    const double r_floor = detail::find_floor(u_at, u_min, threshold_rel, 0.0, r_last);

    SpatialSolution sol;
    sol.support_radius = r_m;
    sol.threshold_crossing = r_threshold;
    sol.horizon = horizon;
    sol.potential.grid = make_uniform_grid(0.0, r_floor, input.grid_n, u_at);
    sol.potential.blowup_coordinate = r_m;
    sol.potential.fine_sampler = [traj, h0, us0, a](double r) -> long double {
        if (r < h0)
            return static_cast<long double>(us0) +
                   static_cast<long double>(a) * r * r;
        return traj->eval_value_fine(r);
    };
    sol.density = density_from_potential(sol.potential, T, Weight::RadialBall);
    return sol;
}

}  // namespace madelung
