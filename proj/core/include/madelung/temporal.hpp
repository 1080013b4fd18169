#pragma once

#include "madelung/constants.hpp"
#include "madelung/profiles.hpp"

namespace madelung {

struct TemporalSolveInput {
    PhysicalConstants constants;  // hbar, c, and T = lagrange_t > 0
    double ut0 = -1.0;            // central value; < 0 for the trapped family
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    std::size_t grid_n = 4096;    // output nodes per half-axis
};

struct TemporalSolution {
    PotentialProfile potential;  // U_t on [-t_end, t_end], even by construction
    DensityProfile density;      // rho_t, shared grid, plain dt measure
    double half_width = 0.0;          // t_a, log-fit refined (authoritative)
    double threshold_crossing = 0.0;
    double horizon = 0.0;
};

// Integrate the temporal potential equation
//   (1/c^2) U'' - (1/2T) U'^2 + (4T/hbar^2) U = 0,  U(0) = ut0, U'(0) = 0
// for t > 0 to its divergence, refine t_a by the log-divergence fit
// (strength 2T/c^2), mirror to negative t, and reconstruct the density.
//
// Throws WrongSign for ut0 >= 0, NoBlowup and invalid_argument as in the
// spatial solver.
TemporalSolution solve_temporal(const TemporalSolveInput& input);

// Even reflection of a half-profile about x = 0; the node at 0 is not
// duplicated. The first node must sit at exactly 0.
GridFunction symmetrize(const GridFunction& half);

}  // namespace madelung
