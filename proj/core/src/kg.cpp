#include "madelung/kg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "madelung/errors.hpp"
#include "madelung/quadrature.hpp"
#include "madelung/stencils.hpp"
#include "solve_common.hpp"

namespace madelung {

namespace {

struct Window {
    std::size_t lo, hi;  // inclusive
};

Window interior_window(std::size_t n, double fraction) {
    if (!(fraction > 0.0) || fraction > 1.0)
        throw std::invalid_argument("interior window fraction must be in (0, 1]");
    const double margin = 0.5 * (1.0 - fraction);
    const auto lo = static_cast<std::size_t>(std::ceil(margin * static_cast<double>(n - 1)));
    const std::size_t hi = n - 1 - lo;
    if (hi <= lo + 1) throw std::invalid_argument("interior window is empty");
    return {lo, hi};
}

// Shared core of the two round-trip overloads: reconstruct U from sqrt(rho)
// with the given sign/prefactor and compare on the window.
//
// When the profile carries a fine sampler the amplitude is re-evaluated as
// exp(-(U - min U)/2T) in extended precision (the sqrt of the Gibbs density
// up to its constant normalization, which cancels in Lap(I)/I). Plain double
// density values quantize at eps, and the second difference amplifies that
// to eps/h^2, which would bury the O(h^2) truncation this diagnostic
// measures.
double roundtrip_error(const PotentialProfile& potential, const DensityProfile& density,
                       StencilKind kind, double prefactor, double lagrange_t,
                       double interior_fraction) {
    const GridFunction& rho = density.grid;
    const std::size_t n = rho.size();
    const Window w = interior_window(n, interior_fraction);

    for (std::size_t i = w.lo; i <= w.hi; ++i) {
        if (rho.values[i] <= 2.0 * detail::kDensityFloor)
            throw DensityFloorReached(
                "potential_roundtrip: window reaches the density-floor zone");
    }

    double scale = 0.0;
    for (std::size_t i = w.lo; i <= w.hi; ++i)
        scale = std::max(scale, std::abs(potential.grid.values[i]));
    if (scale == 0.0) scale = 1.0;

    double worst = 0.0;
    if (potential.fine_sampler && lagrange_t > 0.0 && w.lo >= 1 && w.hi + 1 < n) {
        const long double h = rho.uniform_spacing();
        std::vector<long double> amp(n);
        long double u_min = potential.fine_sampler(rho.nodes[0]);
        std::vector<long double> u_fine(n);
        for (std::size_t i = 0; i < n; ++i) {
            u_fine[i] = potential.fine_sampler(rho.nodes[i]);
            u_min = std::min(u_min, u_fine[i]);
        }
        for (std::size_t i = 0; i < n; ++i)
            amp[i] = std::exp(-(u_fine[i] - u_min) / (2.0L * lagrange_t));
        for (std::size_t i = w.lo; i <= w.hi; ++i) {
            long double d2 = (amp[i + 1] - 2.0L * amp[i] + amp[i - 1]) / (h * h);
            if (kind == StencilKind::RadialLaplacian3D) {
                const long double r = rho.nodes[i];
                d2 += (2.0L / r) * (amp[i + 1] - amp[i - 1]) / (2.0L * h);
            }
            const long double rec = prefactor * d2 / amp[i];
            worst = std::max(worst,
                             static_cast<double>(std::abs(rec - (long double)potential.grid.values[i])));
        }
        return worst / scale;
    }

    GridFunction amp;
    amp.nodes = rho.nodes;
    amp.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) amp.values[i] = std::sqrt(rho.values[i]);
    const GridFunction d2 = second_derivative(amp, kind);

    for (std::size_t i = w.lo; i <= w.hi; ++i) {
        const double reconstructed = prefactor * d2.values[i] / amp.values[i];
        worst = std::max(worst, std::abs(reconstructed - potential.grid.values[i]));
    }
    return worst / scale;
}

}  // namespace

ProductState build_product_state(const AnalyticLimitState& spatial,
                                 const AnalyticLimitState& temporal, std::size_t n_r,
                                 std::size_t n_t, const PhysicalConstants& constants) {
    if (n_r < 65 || n_t < 65)
        throw std::invalid_argument("build_product_state: need at least 65 nodes per axis");
    const MassReport report = compute_mass(spatial, temporal, constants);

    ProductState st;
    st.constants = constants;
    st.mass = report.mass;
    st.spatial_amplitude = make_uniform_grid(
        0.0, spatial.boundary, n_r, [&](double r) { return spatial.amplitude_at(r); });
    st.temporal_amplitude = make_uniform_grid(
        -temporal.boundary, temporal.boundary, n_t,
        [&](double t) { return temporal.amplitude_at(t); });

    GridFunction ss, tt;
    ss.nodes = st.spatial_amplitude.nodes;
    ss.values.resize(n_r);
    for (std::size_t i = 0; i < n_r; ++i) {
        const double v = st.spatial_amplitude.values[i];
        ss.values[i] = v * v;
    }
    tt.nodes = st.temporal_amplitude.nodes;
    tt.values.resize(n_t);
    for (std::size_t j = 0; j < n_t; ++j) {
        const double v = st.temporal_amplitude.values[j];
        tt.values[j] = v * v;
    }
    st.normalization = quadrature(ss, Weight::RadialBall) * quadrature(tt, Weight::Unit);
    if (std::abs(st.normalization - 1.0) > 1e-4)
        throw DomainError("build_product_state: tensor normalization off by more than 1e-4");
    return st;
}

double kg_residual(const ProductState& state) {
    const std::size_t n_r = state.spatial_amplitude.size();
    const std::size_t n_t = state.temporal_amplitude.size();
    const double c = state.constants.c, hbar = state.constants.hbar;
    const double mu = state.mass * state.mass * c * c / (hbar * hbar);

    const GridFunction lap_s =
        second_derivative(state.spatial_amplitude, StencilKind::RadialLaplacian3D);
    const GridFunction dtt = second_derivative(state.temporal_amplitude, StencilKind::Cartesian1D);

    const Window wr = interior_window(n_r, 0.8);
    const Window wt = interior_window(n_t, 0.8);

    double worst = 0.0;
    for (std::size_t i = wr.lo; i <= wr.hi; ++i) {
        const double is = state.spatial_amplitude.values[i];
        const double ls = lap_s.values[i];
        for (std::size_t j = wt.lo; j <= wt.hi; ++j) {
            const double it = state.temporal_amplitude.values[j];
            const double res =
                is * dtt.values[j] / (c * c) - ls * it + mu * is * it;
            worst = std::max(worst, std::abs(res));
        }
    }
    return worst;
}

double potential_roundtrip(const SpatialSolution& solution, const PhysicalConstants& constants,
                           double interior_fraction) {
    const double hbar = constants.hbar;
    return roundtrip_error(solution.potential, solution.density, StencilKind::RadialLaplacian3D,
                           -hbar * hbar / 2.0, constants.lagrange_t, interior_fraction);
}

double potential_roundtrip(const TemporalSolution& solution, const PhysicalConstants& constants,
                           double interior_fraction) {
    const double hbar = constants.hbar, c = constants.c;
    return roundtrip_error(solution.potential, solution.density, StencilKind::Cartesian1D,
                           +hbar * hbar / (2.0 * c * c), constants.lagrange_t,
                           interior_fraction);
}

ProductState translate_state(const ProductState& state, const std::array<double, 4>& shift) {
    ProductState moved = state;
    for (int i = 0; i < 4; ++i) moved.origin[i] += shift[i];
    return moved;
}

double average_potential(const SpatialSolution& spatial, const TemporalSolution& temporal) {
    GridFunction us_rho;
    us_rho.nodes = spatial.density.grid.nodes;
    us_rho.values.resize(us_rho.nodes.size());
    for (std::size_t i = 0; i < us_rho.nodes.size(); ++i)
        us_rho.values[i] = spatial.potential.grid.values[i] * spatial.density.grid.values[i];

    GridFunction ut_rho;
    ut_rho.nodes = temporal.density.grid.nodes;
    ut_rho.values.resize(ut_rho.nodes.size());
    for (std::size_t i = 0; i < ut_rho.nodes.size(); ++i)
        ut_rho.values[i] = temporal.potential.grid.values[i] * temporal.density.grid.values[i];

    return quadrature(us_rho, Weight::RadialBall) + quadrature(ut_rho, Weight::Unit);
}

}  // namespace madelung
