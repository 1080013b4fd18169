#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "madelung/errors.hpp"
#include "madelung/kg.hpp"

using namespace madelung;

namespace {

const PhysicalConstants natural{1.0, 1.0, 0.0};

ProductState canonical_state(std::size_t n) {
    return build_product_state(sinc_limit(1.0, 1.0), cos_limit(-2.0, 1.0, 1.0), n, n, natural);
}

}  // namespace

TEST_CASE("product state: normalization and vanishing boundary slices") {
    const ProductState st = canonical_state(257);
    CHECK(std::abs(st.normalization - 1.0) < 1e-6);
    // r = r0 slice and t = +-t0 slices vanish identically.
    CHECK(std::abs(st.spatial_amplitude.values.back()) < 1e-14);
    CHECK(std::abs(st.temporal_amplitude.values.front()) < 1e-14);
    CHECK(std::abs(st.temporal_amplitude.values.back()) < 1e-14);
    for (double v : st.spatial_amplitude.values) CHECK(v >= -1e-15);
}

TEST_CASE("product state requires at least 65 nodes per axis") {
    CHECK_THROWS_AS(canonical_state(64), std::invalid_argument);
}

TEST_CASE("product state propagates the non-negative total potential error") {
    CHECK_THROWS_AS(build_product_state(sinc_limit(1.0, 1.0), cos_limit(-0.5, 1.0, 1.0), 257,
                                        257, natural),
                    NonNegativeUtot);
}

TEST_CASE("KG residual: second-order grid convergence on the product state") {
    const double e1 = kg_residual(canonical_state(257));
    const double e2 = kg_residual(canonical_state(513));
    CHECK(e1 / e2 > 3.5);
    CHECK(e1 / e2 < 4.5);
    CHECK(e2 < 1e-3);
}

TEST_CASE("wrong mass lifts the residual far above truncation") {
    const ProductState st = canonical_state(513);
    const double good = kg_residual(st);
    ProductState bad = st;
    bad.mass = 2.0 * st.mass;
    const double wrong = kg_residual(bad);
    // Offset term |m^2 - m'^2| c^2/hbar^2 max|I| / 2 as a floor.
    double peak = 0.0;
    for (double v : st.spatial_amplitude.values) peak = std::max(peak, std::abs(v));
    double peak_t = 0.0;
    for (double v : st.temporal_amplitude.values) peak_t = std::max(peak_t, std::abs(v));
    const double floor = 3.0 * st.mass * st.mass * peak * peak_t * 0.5;
    CHECK(wrong > floor);
    CHECK(wrong > 100.0 * good);
}

TEST_CASE("translation: identity, diagnostics, and composition") {
    const ProductState st = canonical_state(257);
    const double res0 = kg_residual(st);

    const ProductState same = translate_state(st, {0.0, 0.0, 0.0, 0.0});
    CHECK(same.origin == st.origin);
    CHECK(kg_residual(same) == res0);  // bitwise identical

    const ProductState moved = translate_state(st, {1.0, 0.3, 0.0, 0.0});
    CHECK(kg_residual(moved) == res0);
    CHECK(moved.normalization == st.normalization);
    for (std::size_t i = 0; i < st.spatial_amplitude.size(); ++i)
        CHECK(moved.spatial_amplitude.values[i] == st.spatial_amplitude.values[i]);

    const ProductState twice = translate_state(translate_state(st, {0.5, 0.1, -0.2, 0.0}),
                                               {0.25, 0.2, 0.2, 1.0});
    const ProductState once = translate_state(st, {0.75, 0.3, 0.0, 1.0});
    for (int i = 0; i < 4; ++i)
        CHECK(twice.origin[i] == doctest::Approx(once.origin[i]).epsilon(1e-15));
}

namespace {

SpatialSolution spatial_at(double lagrange_t, std::size_t grid_n = 4096) {
    SpatialSolveInput in;
    in.constants = {1.0, 1.0, lagrange_t};
    in.grid_n = grid_n;
    return solve_spatial(in);
}

TemporalSolution temporal_at(double lagrange_t, std::size_t grid_n = 4096) {
    TemporalSolveInput in;
    in.constants = {1.0, 1.0, lagrange_t};
    in.grid_n = grid_n;
    return solve_temporal(in);
}

}  // namespace

TEST_CASE("round-trip identity: spatial potential from its own density") {
    const PhysicalConstants k{1.0, 1.0, 0.05};
    const double e1 = potential_roundtrip(spatial_at(0.05, 4096), k);
    const double e2 = potential_roundtrip(spatial_at(0.05, 8192), k);
    CHECK(e1 < 1e-3);
    CHECK(e1 / e2 > 3.5);
    CHECK(e1 / e2 < 4.5);
}

TEST_CASE("round-trip identity: temporal potential with the plus sign") {
    const PhysicalConstants k{1.0, 1.0, 0.05};
    const double e1 = potential_roundtrip(temporal_at(0.05, 4096), k);
    const double e2 = potential_roundtrip(temporal_at(0.05, 8192), k);
    CHECK(e1 < 1e-3);
    CHECK(e1 / e2 > 3.5);
    CHECK(e1 / e2 < 4.5);
}

TEST_CASE("round-trip holds across the sweep grid for both axes") {
    for (double t_val : {0.2, 0.1, 0.05, 0.02}) {
        CAPTURE(t_val);
        const PhysicalConstants k{1.0, 1.0, t_val};
        CHECK(potential_roundtrip(spatial_at(t_val), k) < 1e-3);
        CHECK(potential_roundtrip(temporal_at(t_val), k) < 1e-3);
    }
}

TEST_CASE("requesting the full window reaches the density floor zone") {
    const PhysicalConstants k{1.0, 1.0, 0.05};
    const SpatialSolution sol = spatial_at(0.05);
    CHECK_THROWS_AS(potential_roundtrip(sol, k, 1.0), DensityFloorReached);
}

TEST_CASE("constant density on a box reconstructs a zero potential") {
    // d^2 of a constant is 0, so the reconstructed potential vanishes.
    SpatialSolution fake;
    fake.potential.grid = make_uniform_grid(0.5, 1.5, 257, [](double) { return 0.0; });
    fake.potential.blowup_coordinate = 2.0;
    fake.density.grid = make_uniform_grid(0.5, 1.5, 257, [](double) { return 1.0; });
    fake.density.normalization = 1.0;
    fake.density.shifted_normalization = 1.0;
    const double err = potential_roundtrip(fake, natural);
    CHECK(err == 0.0);
}

TEST_CASE("average potential over the product state approaches us0 + ut0") {
    SpatialSolveInput si;
    si.constants = {1.0, 1.0, 1e-3};
    TemporalSolveInput ti;
    ti.constants = {1.0, 1.0, 1e-3};
    ti.ut0 = -2.0;
    const double avg = average_potential(solve_spatial(si), solve_temporal(ti));
    const double expected = 1.0 + (-2.0);
    CHECK(std::abs(avg - expected) / std::abs(expected) < 0.02);
}
