#pragma once

#include "madelung/grid.hpp"
#include "madelung/profiles.hpp"

namespace madelung {

// sin(x)/x with the removable singularity filled in: sinc(0) = 1.
double sinc(double x);

enum class LimitKind { SpatialSinc, TemporalCos };

// Closed-form zero-temperature state: wavenumber (k0 or omega0), support
// boundary (r0 or t0), normalization amplitude, and the flat potential level
// it derives from.
struct AnalyticLimitState {
    LimitKind kind = LimitKind::SpatialSinc;
    double wavenumber = 0.0;  // k0 [1/length] or omega0 [1/time]
    double boundary = 0.0;    // r0 or t0
    double amplitude = 0.0;   // A_s0 or A_t0
    double level = 0.0;       // U_s0 or U_t0

    // Amplitude profile I(x) at a coordinate inside the support.
    double amplitude_at(double x) const;
    // Density I(x)^2.
    double density_at(double x) const;
};

// Flat-potential spatial ground state: k0 = sqrt(2 us0)/hbar, r0 = pi/k0,
// amplitude fixed by the 3D-ball normalization (A^2 = k0^3 / (2 pi^2)).
AnalyticLimitState sinc_limit(double us0, double hbar);

// Flat-potential temporal ground state: omega0 = c sqrt(-2 ut0)/hbar,
// t0 = pi/(2 omega0), amplitude from the 1D normalization (A^2 = 1/t0).
AnalyticLimitState cos_limit(double ut0, double c, double hbar);

// Max-norm defect of the Helmholtz/oscillator eigenrelation for the state's
// amplitude under the shared finite-difference stencils, on a uniform grid
// of the given spacing. Scales as O(h^2).
double eigen_residual(const AnalyticLimitState& state, double grid_spacing);

// Max-norm distance between a computed density and the limit density, both
// restricted to the common support and renormalized there, expressed as a
// fraction of the limit density's peak.
double limit_density_distance(const DensityProfile& density, const AnalyticLimitState& state,
                              Weight weight);

}  // namespace madelung
