#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "madelung/errors.hpp"
#include "madelung/mass.hpp"

using namespace madelung;

namespace {

constexpr double pi = std::numbers::pi;
const PhysicalConstants natural{1.0, 1.0, 0.0};

MassReport report_for(double us0, double ut0) {
    return compute_mass(sinc_limit(us0, 1.0), cos_limit(ut0, 1.0, 1.0), natural);
}

}  // namespace

TEST_CASE("canonical pair (1, -2): every derived quantity by direct substitution") {
    const MassReport r = report_for(1.0, -2.0);
    CHECK(r.u_tot == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(r.mass == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(r.omega0 == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(r.k0 == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    // hbar^2 w0^2/c^2 - hbar^2 k0^2 - m^2 c^2 = 4 - 2 - 2 = 0
    CHECK(r.identity_residual < 1e-14);
    CHECK(r.energy == doctest::Approx(2.0).epsilon(1e-15));  // = hbar omega0 here
    CHECK(r.delta_t == doctest::Approx(pi / 2.0).epsilon(1e-15));
}

TEST_CASE("non-negative total potential has no real mass") {
    CHECK_THROWS_AS(report_for(1.0, -0.5), NonNegativeUtot);
    CHECK_THROWS_AS(report_for(1.0, -1.0), NonNegativeUtot);  // u_tot = 0
}

TEST_CASE("pure temporal limit: m -> sqrt(-2 ut0) as us0 -> 0+") {
    const MassReport r = report_for(1e-12, -2.0);
    CHECK(r.mass == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(r.k0 == doctest::Approx(std::sqrt(2e-12)).epsilon(1e-9));
}

TEST_CASE("energy-momentum relation holds under the de Broglie-Einstein mapping") {
    const MassReport r = report_for(1.0, -2.0);
    const DeBroglieState dbe = de_broglie(r, natural);
    CHECK(dbe.energy == doctest::Approx(r.omega0).epsilon(1e-15));
    CHECK(dbe.momentum_sq == doctest::Approx(r.k0 * r.k0).epsilon(1e-15));
    CHECK(energy_momentum_check(r, dbe, natural) < 1e-12);
}

TEST_CASE("violated mapping is flagged with the predicted residual") {
    const MassReport r = report_for(1.0, -2.0);
    DeBroglieState bad = de_broglie(r, natural);
    bad.energy *= 1.1;
    const double res = energy_momentum_check(r, bad, natural);
    CHECK(res == doctest::Approx(0.21 * r.omega0 * r.omega0).epsilon(1e-10));
    CHECK(res > 1e-3);
}

TEST_CASE("massless dispersion closes the relation with m = 0") {
    MassReport r;
    r.mass = 0.0;
    r.k0 = 1.3;
    r.omega0 = 1.3;  // omega0 = c k0
    DeBroglieState dbe{r.omega0, r.k0 * r.k0};
    CHECK(energy_momentum_check(r, dbe, natural) < 1e-12);
}

TEST_CASE("time uncertainty: three routes agree and scale as pi/omega0") {
    const MassReport r = report_for(1.0, -2.0);
    const double dt = time_uncertainty(r, natural);
    CHECK(dt == doctest::Approx(pi / 2.0).epsilon(1e-15));

    MassReport sqrt2;
    sqrt2.omega0 = std::sqrt(2.0);
    sqrt2.energy = std::sqrt(2.0);
    CHECK(time_uncertainty(sqrt2, natural) ==
          doctest::Approx(pi / std::sqrt(2.0)).epsilon(1e-15));  // ~2.2214

    // de Broglie reading: delta_t = pi hbar / E when E = hbar omega0.
    const DeBroglieState dbe = de_broglie(r, natural);
    CHECK(dt == doctest::Approx(pi * natural.hbar / dbe.energy).epsilon(1e-15));
}

TEST_CASE("identity suite over ten sampled pairs") {
    const std::vector<std::pair<double, double>> pairs = {
        {0.25, -1.0}, {0.5, -1.0}, {1.0, -2.0},  {1.0, -1.5}, {2.0, -3.0},
        {0.1, -0.2},  {1.5, -2.0}, {3.0, -4.0},  {0.7, -2.5}, {0.05, -4.0}};
    for (const auto& [us0, ut0] : pairs) {
        CAPTURE(us0);
        CAPTURE(ut0);
        const MassReport r = report_for(us0, ut0);
        CHECK(r.identity_residual < 1e-12);
        CHECK(energy_momentum_check(r, de_broglie(r, natural), natural) < 1e-12);
        const double dt = time_uncertainty(r, natural);
        CHECK(std::abs(dt * r.energy - pi) < 1e-12);
        const double t0 = cos_limit(ut0, 1.0, 1.0).boundary;
        CHECK(std::abs(dt - 2.0 * t0) < 1e-12);
    }
}

TEST_CASE("time uncertainty decreases strictly with the mass at fixed k0") {
    const double k0 = 1.0;
    double prev = 1e300;
    for (double m : {0.5, 1.0, 2.0, 4.0, 8.0, 64.0}) {
        MassReport r;
        r.k0 = k0;
        r.mass = m;
        r.energy = std::sqrt(k0 * k0 + m * m);
        r.omega0 = r.energy;  // hbar = c = 1
        const double dt = time_uncertainty(r, natural);
        CHECK(dt < prev);
        prev = dt;
    }
    CHECK(prev < 0.05);  // heading to zero as m grows
}
