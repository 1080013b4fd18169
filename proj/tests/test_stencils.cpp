#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "madelung/errors.hpp"
#include "madelung/stencils.hpp"

using namespace madelung;

namespace {

double max_interior_error(const GridFunction& got, const std::function<double(double)>& want) {
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < got.size(); ++i)
        worst = std::max(worst, std::abs(got.values[i] - want(got.nodes[i])));
    return worst;
}

}  // namespace

TEST_CASE("radial Laplacian of r^2 is exactly 6, including both ends") {
    const GridFunction f = make_uniform_grid(0.0, 2.0, 41, [](double r) { return r * r; });
    const GridFunction lap = second_derivative(f, StencilKind::RadialLaplacian3D);
    for (std::size_t i = 0; i < lap.size(); ++i) {
        CAPTURE(i);
        CHECK(lap.values[i] == doctest::Approx(6.0).epsilon(1e-10));
    }
}

TEST_CASE("cartesian second derivative of cos(w t) converges at order 2") {
    const double w = 2.0;
    const auto exact = [w](double t) { return -w * w * std::cos(w * t); };
    const GridFunction f1 =
        make_uniform_grid(0.0, 3.0, 257, [w](double t) { return std::cos(w * t); });
    const GridFunction f2 =
        make_uniform_grid(0.0, 3.0, 513, [w](double t) { return std::cos(w * t); });
    const double e1 = max_interior_error(second_derivative(f1, StencilKind::Cartesian1D), exact);
    const double e2 = max_interior_error(second_derivative(f2, StencilKind::Cartesian1D), exact);
    // Taylor bound: |error| <= h^2 w^4 / 12.
    const double h1 = 3.0 / 256.0;
    CHECK(e1 < 1.05 * h1 * h1 * std::pow(w, 4) / 12.0);
    CHECK(e1 / e2 > 3.5);
    CHECK(e1 / e2 < 4.5);
}

TEST_CASE("radial Laplacian reproduces the Helmholtz eigenrelation of sinc") {
    const double k = std::sqrt(2.0);
    const auto sinc_fn = [k](double r) {
        return (r == 0.0) ? 1.0 : std::sin(k * r) / (k * r);
    };
    const auto exact = [k, sinc_fn](double r) { return -k * k * sinc_fn(r); };
    const double r0 = std::numbers::pi / k;
    const GridFunction f1 = make_uniform_grid(0.0, r0, 129, sinc_fn);
    const GridFunction f2 = make_uniform_grid(0.0, r0, 257, sinc_fn);
    const double e1 =
        max_interior_error(second_derivative(f1, StencilKind::RadialLaplacian3D), exact);
    const double e2 =
        max_interior_error(second_derivative(f2, StencilKind::RadialLaplacian3D), exact);
    CHECK(e1 / e2 > 3.5);
    CHECK(e1 / e2 < 4.5);
    CHECK(e1 < 1e-3);
}

TEST_CASE("stencils reject short and non-uniform grids") {
    GridFunction tiny;
    tiny.nodes = {0.0, 1.0, 2.0, 3.0};
    tiny.values = {0.0, 0.0, 0.0, 0.0};
    CHECK_THROWS_AS(second_derivative(tiny, StencilKind::Cartesian1D), std::invalid_argument);

    GridFunction skew;
    skew.nodes = {0.0, 0.9, 2.0, 3.0, 4.0};
    skew.values = {0.0, 0.0, 0.0, 0.0, 0.0};
    CHECK_THROWS_AS(second_derivative(skew, StencilKind::Cartesian1D), NonUniformGrid);
}
