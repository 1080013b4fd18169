#pragma once

#include <functional>

#include "madelung/grid.hpp"
#include "madelung/quadrature.hpp"

namespace madelung {

// Quantum potential sampled on a grid, plus the singular coordinate where it
// diverges (the support boundary).
//
// fine_sampler, when set, re-evaluates the potential at a coordinate in
// extended precision. The Gibbs exponent divides the potential by T, so the
// plain double grid values carry node-to-node quantization noise of order
// eps*|U|/T in the density; sampling past the double rounding keeps the
// reconstructed density smooth enough to finite-difference.
struct PotentialProfile {
    GridFunction grid;
    double blowup_coordinate = 0.0;
    std::function<long double(double)> fine_sampler;  // optional
};

// Normalized probability density on the same grid as its potential.
struct DensityProfile {
    GridFunction grid;
    // Z such that rho = exp(-U/T)/Z. Can under/overflow the double range for
    // very small T; the shifted form below is the robust companion.
    double normalization = 0.0;
    // integral of exp(-(U - min U)/T) w: the partition value measured from
    // the potential minimum. Always finite and positive.
    double shifted_normalization = 0.0;
    double entropy = 0.0;  // H = -integral rho ln(rho) w
};

// Gibbs reconstruction rho = exp(-U/T)/Z on the potential's grid, exponent
// max-shifted so it never overflows; Z and the entropy are computed with the
// order-4 quadrature under the given weight.
//
// Throws std::invalid_argument for T <= 0; OverflowGuard if an exponent
// would still overflow (impossible once the shift is applied).
DensityProfile density_from_potential(const PotentialProfile& potential, double lagrange_t,
                                      Weight weight);

}  // namespace madelung
