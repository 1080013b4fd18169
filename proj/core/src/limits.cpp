#include "madelung/limits.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "madelung/stencils.hpp"

namespace madelung {

double sinc(double x) {
    if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

double AnalyticLimitState::amplitude_at(double x) const {
    if (kind == LimitKind::SpatialSinc) return amplitude * sinc(wavenumber * x);
    return amplitude * std::cos(wavenumber * x);
}

double AnalyticLimitState::density_at(double x) const {
    const double a = amplitude_at(x);
    return a * a;
}

AnalyticLimitState sinc_limit(double us0, double hbar) {
    if (!(us0 > 0.0)) throw std::invalid_argument("sinc_limit: us0 must be positive");
    if (!(hbar > 0.0)) throw std::invalid_argument("sinc_limit: hbar must be positive");
    AnalyticLimitState s;
    s.kind = LimitKind::SpatialSinc;
    s.level = us0;
    s.wavenumber = std::sqrt(2.0 * us0) / hbar;
    s.boundary = std::numbers::pi / s.wavenumber;
    // integral_0^r0 sinc^2(k0 r) 4 pi r^2 dr = 2 pi^2 / k0^3
    s.amplitude = std::sqrt(std::pow(s.wavenumber, 3) / (2.0 * std::numbers::pi * std::numbers::pi));
    return s;
}

AnalyticLimitState cos_limit(double ut0, double c, double hbar) {
    if (!(ut0 < 0.0)) throw std::invalid_argument("cos_limit: ut0 must be negative");
    if (!(c > 0.0) || !(hbar > 0.0))
        throw std::invalid_argument("cos_limit: c and hbar must be positive");
    AnalyticLimitState s;
    s.kind = LimitKind::TemporalCos;
    s.level = ut0;
    s.wavenumber = c * std::sqrt(-2.0 * ut0) / hbar;
    s.boundary = std::numbers::pi / (2.0 * s.wavenumber);
    // integral_{-t0}^{t0} cos^2(omega0 t) dt = t0 when omega0 t0 = pi/2
    s.amplitude = std::sqrt(1.0 / s.boundary);
    return s;
}

double eigen_residual(const AnalyticLimitState& state, double grid_spacing) {
    if (!(grid_spacing > 0.0))
        throw std::invalid_argument("eigen_residual: spacing must be positive");
    const bool spatial = state.kind == LimitKind::SpatialSinc;
    const double a = spatial ? 0.0 : -state.boundary;
    const double b = state.boundary;
    const std::size_t n = static_cast<std::size_t>(std::round((b - a) / grid_spacing)) + 1;
    if (n < 66) throw std::invalid_argument("eigen_residual: need at least 64 interior nodes");

    const GridFunction f =
        make_uniform_grid(a, b, n, [&](double x) { return state.amplitude_at(x); });
    const GridFunction d2 = second_derivative(
        f, spatial ? StencilKind::RadialLaplacian3D : StencilKind::Cartesian1D);

    const double eig = state.wavenumber * state.wavenumber;
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i)
        worst = std::max(worst, std::abs(d2.values[i] + eig * f.values[i]));
    return worst;
}

double limit_density_distance(const DensityProfile& density, const AnalyticLimitState& state,
                              Weight weight) {
    density.grid.validate();
    const double edge = std::min(density.grid.back(), state.boundary);
    const double start = std::max(density.grid.front(),
                                  state.kind == LimitKind::TemporalCos ? -edge : 0.0);

    GridFunction numeric, limit;
    for (std::size_t i = 0; i < density.grid.size(); ++i) {
        const double x = density.grid.nodes[i];
        if (x < start || x > edge) continue;
        numeric.nodes.push_back(x);
        numeric.values.push_back(density.grid.values[i]);
        limit.nodes.push_back(x);
        limit.values.push_back(state.density_at(x));
    }
    if (numeric.size() < 8)
        throw std::invalid_argument("limit_density_distance: supports barely overlap");

    const double zn = quadrature(numeric, weight);
    const double zl = quadrature(limit, weight);
    double dist = 0.0, peak = 0.0;
    for (std::size_t i = 0; i < numeric.size(); ++i) {
        const double pn = numeric.values[i] / zn;
        const double pl = limit.values[i] / zl;
        dist = std::max(dist, std::abs(pn - pl));
        peak = std::max(peak, pl);
    }
    return dist / peak;
}

}  // namespace madelung
