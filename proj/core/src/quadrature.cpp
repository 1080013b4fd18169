#include "madelung/quadrature.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace madelung {

namespace {

// Value at x of the Lagrange polynomial through (xs[j], ys[j]), j in [s, s+m).
double lagrange_eval(const std::vector<double>& xs, const std::vector<double>& ys,
                     std::size_t s, std::size_t m, double x) {
    double acc = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        double term = ys[s + k];
        for (std::size_t j = 0; j < m; ++j) {
            if (j == k) continue;
            term *= (x - xs[s + j]) / (xs[s + k] - xs[s + j]);
        }
        acc += term;
    }
    return acc;
}

}  // namespace

double quadrature(const GridFunction& f, Weight weight) {
    f.validate();
    const std::size_t n = f.size();

    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double w = (weight == Weight::RadialBall)
                             ? 4.0 * std::numbers::pi * f.nodes[i] * f.nodes[i]
                             : 1.0;
        g[i] = f.values[i] * w;
    }

    // Two-point Gauss-Legendre integrates the local interpolant exactly.
    const double gauss = 1.0 / std::sqrt(3.0);
    const std::size_t m = (n >= 4) ? 4 : 3;

    double total = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        std::size_t s = (i == 0) ? 0 : i - 1;
        if (s + m > n) s = n - m;
        const double a = f.nodes[i];
        const double b = f.nodes[i + 1];
        const double mid = 0.5 * (a + b);
        const double half = 0.5 * (b - a);
        total += half * (lagrange_eval(f.nodes, g, s, m, mid - half * gauss) +
                         lagrange_eval(f.nodes, g, s, m, mid + half * gauss));
    }
    return total;
}

}  // namespace madelung
