#include "madelung/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "madelung/errors.hpp"

namespace madelung {

DensityProfile density_from_potential(const PotentialProfile& potential, double lagrange_t,
                                      Weight weight) {
    if (!(lagrange_t > 0.0))
        throw std::invalid_argument("density_from_potential: T must be positive");
    potential.grid.validate();

    const auto& u = potential.grid.values;
    const double u_min = *std::min_element(u.begin(), u.end());

    // Extended-precision potential samples when available; plain grid values
    // otherwise.
    std::vector<long double> u_fine(u.size());
    if (potential.fine_sampler) {
        for (std::size_t i = 0; i < u.size(); ++i)
            u_fine[i] = potential.fine_sampler(potential.grid.nodes[i]);
    } else {
        for (std::size_t i = 0; i < u.size(); ++i) u_fine[i] = u[i];
    }
    const long double u_min_fine = *std::min_element(u_fine.begin(), u_fine.end());

    // Shifted exponent is <= 0 everywhere; the guard can only fire if the
    // shift were skipped.
    constexpr double exp_range = 709.0;
    std::vector<long double> unnorm(u.size());
    GridFunction unnorm_d;
    unnorm_d.nodes = potential.grid.nodes;
    unnorm_d.values.resize(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        const long double ex = -(u_fine[i] - u_min_fine) / lagrange_t;
        if (static_cast<double>(ex) > exp_range)
            throw OverflowGuard("density_from_potential: Gibbs exponent out of range");
        unnorm[i] = std::exp(ex);
        unnorm_d.values[i] = static_cast<double>(unnorm[i]);
    }

    const double z_shifted = quadrature(unnorm_d, weight);
    if (!(z_shifted > 0.0) || !std::isfinite(z_shifted))
        throw std::invalid_argument("density_from_potential: non-normalizable potential");

    DensityProfile rho;
    rho.grid.nodes = potential.grid.nodes;
    rho.grid.values.resize(u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        rho.grid.values[i] = static_cast<double>(unnorm[i] / static_cast<long double>(z_shifted));

    // Z for the unshifted convention rho = exp(-U/T)/Z.
    rho.shifted_normalization = z_shifted;
    rho.normalization = std::exp(std::log(z_shifted) - u_min / lagrange_t);

    GridFunction plogp;
    plogp.nodes = rho.grid.nodes;
    plogp.values.resize(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double p = rho.grid.values[i];
        plogp.values[i] = (p > 0.0) ? p * std::log(p) : 0.0;
    }
    rho.entropy = -quadrature(plogp, weight);
    return rho;
}

}  // namespace madelung
