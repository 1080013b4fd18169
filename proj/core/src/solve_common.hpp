#pragma once

// Internal helpers shared by the spatial and temporal solvers.

#include <cmath>
#include <functional>

#include "madelung/errors.hpp"
#include "madelung/ivp.hpp"

namespace madelung::detail {

constexpr double kBlowupFactor = 1e8;     // Theta = 1e8 * max(1, |U(0)|)
constexpr double kHorizonFactor = 100.0;  // give-up distance in analytic radii
constexpr double kDensityFloor = 1e-12;   // rho cut defining the grid end
constexpr std::size_t kPrelimGridN = 8192;

// Coordinate where u(x) - u_min first reaches threshold_rel, found by
// bisection on a monotone tail. Falls back to x_hi if the threshold is not
// reached (cannot happen for a detected blow-up).
inline double find_floor(const std::function<double(double)>& u, double u_min,
                         double threshold_rel, double x_lo, double x_hi) {
    if (u(x_hi) - u_min <= threshold_rel) return x_hi;
    double lo = x_lo, hi = x_hi;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::abs(x_hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (u(mid) - u_min >= threshold_rel)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

inline void require_blowup(const IvpResult& result, double horizon, const char* which) {
    switch (result.terminated_by) {
        case Termination::BlowupDetected:
            return;
        case Termination::ReachedEnd:
            throw NoBlowup(std::string(which) + " potential did not diverge before the horizon " +
                           std::to_string(horizon) + "; non-trapped parameter regime");
        case Termination::StepUnderflow:
            throw DomainError(std::string(which) + " integration step underflow before blow-up");
    }
}

}  // namespace madelung::detail
