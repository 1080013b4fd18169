#include "madelung/stencils.hpp"

#include <cmath>
#include <stdexcept>

namespace madelung {

GridFunction second_derivative(const GridFunction& f, StencilKind kind) {
    f.validate();
    if (f.size() < 5) throw std::invalid_argument("second_derivative: need at least 5 nodes");
    const double h = f.uniform_spacing();
    const double h2 = h * h;
    const std::size_t n = f.size();
    const auto& y = f.values;

    GridFunction out;
    out.nodes = f.nodes;
    out.values.resize(n);

    std::vector<double> d2(n), d1(n);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        d2[i] = (y[i + 1] - 2.0 * y[i] + y[i - 1]) / h2;
        d1[i] = (y[i + 1] - y[i - 1]) / (2.0 * h);
    }
    // One-sided second-order end stencils.
    d2[0] = (2.0 * y[0] - 5.0 * y[1] + 4.0 * y[2] - y[3]) / h2;
    d2[n - 1] = (2.0 * y[n - 1] - 5.0 * y[n - 2] + 4.0 * y[n - 3] - y[n - 4]) / h2;
    d1[0] = (-3.0 * y[0] + 4.0 * y[1] - y[2]) / (2.0 * h);
    d1[n - 1] = (3.0 * y[n - 1] - 4.0 * y[n - 2] + y[n - 3]) / (2.0 * h);

    for (std::size_t i = 0; i < n; ++i) {
        if (kind == StencilKind::Cartesian1D) {
            out.values[i] = d2[i];
            continue;
        }
        const double r = f.nodes[i];
        if (r == 0.0) {
            // Regularity limit: Lap f = 3 f''(0); even extension gives
            // f''(0) = 2 (f1 - f0) / h^2.
            out.values[i] = 6.0 * (y[1] - y[0]) / h2;
        } else {
            out.values[i] = d2[i] + (2.0 / r) * d1[i];
        }
    }
    return out;
}

}  // namespace madelung
