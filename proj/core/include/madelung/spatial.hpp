#pragma once

#include "madelung/constants.hpp"
#include "madelung/profiles.hpp"

namespace madelung {

struct SpatialSolveInput {
    PhysicalConstants constants;  // hbar, c, and T = lagrange_t > 0
    double us0 = 1.0;             // central potential value; > 0 for trapping
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    std::size_t grid_n = 4096;    // output grid resolution on [0, support end]
};

struct SpatialSolution {
    PotentialProfile potential;  // U_s on the uniform output grid
    DensityProfile density;      // rho_s, shared grid, 4 pi r^2 measure
    double support_radius = 0.0;      // r_m, log-fit refined (authoritative)
    double threshold_crossing = 0.0;  // where max(|U|,|U'|) hit the threshold
    double horizon = 0.0;             // no-trapping give-up coordinate used
};

// Integrate the spherically symmetric potential equation
//   U'' + (2/r) U' - (1/2T) U'^2 - (4T/hbar^2) U = 0,  U(0) = us0, U'(0) = 0
// to its finite-radius divergence, refine r_m by the log-divergence tail fit
// (strength 2T), and reconstruct the normalized Gibbs density on a uniform
// grid that ends where rho falls to the density floor.
//
// Throws DegenerateFlat for us0 = 0, NoBlowup if no divergence occurs before
// 100x the flat-potential support radius, std::invalid_argument for T <= 0.
SpatialSolution solve_spatial(const SpatialSolveInput& input);

}  // namespace madelung
