#pragma once

#include <array>
#include <cstddef>

#include "madelung/constants.hpp"
#include "madelung/limits.hpp"
#include "madelung/mass.hpp"
#include "madelung/spatial.hpp"
#include "madelung/temporal.hpp"

namespace madelung {

// Separable amplitude I(r, t) = I_s(r) I_t(t) on the spacetime support
// [0, r0] x [-t0, t0], with the emergent mass attached. `origin` carries the
// support's displacement in spacetime (ct, x, y, z); grid nodes are offsets
// from it, so translations never touch amplitudes or spacings.
struct ProductState {
    GridFunction spatial_amplitude;   // I_s on [0, r0]
    GridFunction temporal_amplitude;  // I_t on [-t0, t0]
    double mass = 0.0;
    PhysicalConstants constants;
    std::array<double, 4> origin{0.0, 0.0, 0.0, 0.0};
    double normalization = 0.0;  // tensor quadrature of I^2 (diagnostic; ~1)
};

// Sample the sinc x cosine product on an (n_r, n_t) grid and attach the mass
// from compute_mass. Requires n_r, n_t >= 65; NonNegativeUtot propagates.
ProductState build_product_state(const AnalyticLimitState& spatial,
                                 const AnalyticLimitState& temporal, std::size_t n_r,
                                 std::size_t n_t, const PhysicalConstants& constants);

// Max over interior nodes of |box I + (m^2 c^2 / hbar^2) I| with
// box = (1/c^2) d_t^2 - (d_r^2 + (2/r) d_r), evaluated with the shared
// stencils on the inner 80% of each support dimension. O(h^2).
double kg_residual(const ProductState& state);

// Max interior mismatch between the solver potential and the potential
// reconstructed from the density: -(hbar^2/2) Lap sqrt(rho)/sqrt(rho) spatial,
// +(hbar^2/(2 c^2)) d_t^2 sqrt(rho)/sqrt(rho) temporal. Exact in the
// continuum, so the result is pure finite-difference truncation.
//
// `interior_fraction` selects the centered evaluation window; requesting a
// window that touches the density-floor cut throws DensityFloorReached.
double potential_roundtrip(const SpatialSolution& solution, const PhysicalConstants& constants,
                           double interior_fraction = 0.8);
double potential_roundtrip(const TemporalSolution& solution, const PhysicalConstants& constants,
                           double interior_fraction = 0.8);

// Shift the support by a spacetime displacement (ct, x, y, z). Amplitude
// values are untouched, so every grid diagnostic is bit-identical.
ProductState translate_state(const ProductState& state, const std::array<double, 4>& shift);

// Average of U_s + U_t over the product of the two solved densities (the
// separable reduction of the spacetime average of U rho). Near T = 0 this
// approaches U_s0 + U_t0.
double average_potential(const SpatialSolution& spatial, const TemporalSolution& temporal);

}  // namespace madelung
