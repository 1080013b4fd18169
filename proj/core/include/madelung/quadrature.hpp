#pragma once

#include "madelung/grid.hpp"

namespace madelung {

// Measure attached to an integral: plain dx, or the 3D-ball shell 4*pi*r^2 dr.
enum class Weight { Unit, RadialBall };

// Integral of f times the weight over the grid's full range. Composite rule
// of order 4: each interval integrates the cubic interpolant through its four
// nearest nodes (exact for polynomials up to degree 3 on any node layout).
double quadrature(const GridFunction& f, Weight weight);

}  // namespace madelung
