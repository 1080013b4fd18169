#pragma once

#include "madelung/grid.hpp"

namespace madelung {

// Second-derivative operator flavor: plain d^2/dx^2, or the spherically
// symmetric 3D Laplacian d^2/dr^2 + (2/r) d/dr.
enum class StencilKind { Cartesian1D, RadialLaplacian3D };

// Centered second-order finite differences on a uniform grid (>= 5 nodes),
// one-sided second-order stencils at the two end nodes. For the radial
// Laplacian a node at r = 0 uses the regularity limit 3*f''(0), evaluated
// with the even extension of f.
//
// Throws NonUniformGrid when the spacing is not uniform.
GridFunction second_derivative(const GridFunction& f, StencilKind kind);

}  // namespace madelung
