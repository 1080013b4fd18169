#pragma once

#include "madelung/constants.hpp"
#include "madelung/limits.hpp"

namespace madelung {

// Emergent-mass bookkeeping derived from a flat-potential pair:
// U_tot = U_s0 + U_t0 = -(1/2) m^2 c^2 when negative.
struct MassReport {
    double us0 = 0.0;
    double ut0 = 0.0;
    double u_tot = 0.0;
    double mass = 0.0;
    double k0 = 0.0;      // spatial wavenumber
    double omega0 = 0.0;  // temporal frequency
    double energy = 0.0;  // script-E with E^2/c^2 = hbar^2 k0^2 + m^2 c^2
    double delta_t = 0.0; // time uncertainty pi/omega0
    double identity_residual = 0.0;  // |hbar^2 w0^2/c^2 - hbar^2 k0^2 - m^2 c^2|
};

// Classical energy and squared momentum; the de Broglie-Einstein mapping is
// E = hbar omega0, p^2 = hbar^2 k0^2.
struct DeBroglieState {
    double energy = 0.0;
    double momentum_sq = 0.0;
};

// Assemble the report from the two limit states. Throws NonNegativeUtot when
// us0 + ut0 >= 0 (no real mass; |ut0| must be enlarged).
MassReport compute_mass(const AnalyticLimitState& spatial, const AnalyticLimitState& temporal,
                        const PhysicalConstants& constants);

// Canonical de Broglie-Einstein mapping for a report.
DeBroglieState de_broglie(const MassReport& report, const PhysicalConstants& constants);

// |E^2/c^2 - p^2 - m^2 c^2|: zero to rounding exactly when the mapping holds.
double energy_momentum_check(const MassReport& report, const DeBroglieState& dbe,
                             const PhysicalConstants& constants);

// Delta_t = pi/omega0, cross-checked against pi hbar / E and 2 t0. Throws
// DomainError if the three routes disagree beyond rounding.
double time_uncertainty(const MassReport& report, const PhysicalConstants& constants);

}  // namespace madelung
