#pragma once

namespace madelung {

// Ambient parameters of every solve: Planck constant, speed of light, and
// the Lagrange multiplier T of the maximum-entropy density.
struct PhysicalConstants {
    double hbar = 1.0;
    double c = 1.0;
    double lagrange_t = 0.0;  // T >= 0; T = 0 is the analytic-limit regime
};

}  // namespace madelung
