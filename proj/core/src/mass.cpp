#include "madelung/mass.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "madelung/errors.hpp"

namespace madelung {

MassReport compute_mass(const AnalyticLimitState& spatial, const AnalyticLimitState& temporal,
                        const PhysicalConstants& constants) {
    if (spatial.kind != LimitKind::SpatialSinc || temporal.kind != LimitKind::TemporalCos)
        throw std::invalid_argument("compute_mass: state kinds do not match their roles");
    const double hbar = constants.hbar, c = constants.c;

    MassReport r;
    r.us0 = spatial.level;
    r.ut0 = temporal.level;
    r.u_tot = r.us0 + r.ut0;
    r.k0 = spatial.wavenumber;
    r.omega0 = temporal.wavenumber;
    if (!(r.u_tot < 0.0))
        throw NonNegativeUtot("compute_mass: U_s0 + U_t0 >= 0; pick a larger |U_t0|");

    r.mass = std::sqrt(-2.0 * r.u_tot) / c;
    r.identity_residual = std::abs(hbar * hbar * r.omega0 * r.omega0 / (c * c) -
                                   hbar * hbar * r.k0 * r.k0 - r.mass * r.mass * c * c);
    r.energy = c * std::sqrt(hbar * hbar * r.k0 * r.k0 + r.mass * r.mass * c * c);
    r.delta_t = std::numbers::pi / r.omega0;
    return r;
}

DeBroglieState de_broglie(const MassReport& report, const PhysicalConstants& constants) {
    return {constants.hbar * report.omega0,
            constants.hbar * constants.hbar * report.k0 * report.k0};
}

double energy_momentum_check(const MassReport& report, const DeBroglieState& dbe,
                             const PhysicalConstants& constants) {
    const double c = constants.c;
    return std::abs(dbe.energy * dbe.energy / (c * c) - dbe.momentum_sq -
                    report.mass * report.mass * c * c);
}

double time_uncertainty(const MassReport& report, const PhysicalConstants& constants) {
    const double dt = std::numbers::pi / report.omega0;
    const double via_energy = std::numbers::pi * constants.hbar / report.energy;
    const double t0 = std::numbers::pi / (2.0 * report.omega0);
    const double scale = std::abs(dt) + 1e-300;
    if (std::abs(dt - via_energy) > 1e-12 * scale || std::abs(dt - 2.0 * t0) > 1e-12 * scale)
        throw DomainError("time_uncertainty: identity routes disagree beyond rounding");
    return dt;
}

}  // namespace madelung
