#include <catch2/catch_amalgamated.hpp>

#include "strichartz/propagator.hpp"

#include <random>

using namespace strichartz;

namespace {

Field random_field(const SpatialGrid& g, unsigned seed) {
    Field f(g);
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (auto& v : f.values) v = cplx(u(rng), u(rng));
    return f;
}

Field gaussian_field(const SpatialGrid& g, double w) {
    Field f(g);
    if (g.dim == 1) {
        for (int i = 0; i < g.n; ++i) {
            double x = g.coord(i);
            f.values[i] = std::exp(-x * x / (2 * w * w));
        }
    } else {
        for (int ix = 0; ix < g.n; ++ix)
            for (int iy = 0; iy < g.n; ++iy) {
                double x = g.coord(ix), y = g.coord(iy);
                f.values[std::size_t(ix) * g.n + iy] = std::exp(-(x * x + y * y) / (2 * w * w));
            }
    }
    return f;
}

double rel_l2_diff(const Field& a, const Field& b) {
    double num = 0, den = 0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        num += std::norm(a.values[i] - b.values[i]);
        den += std::norm(b.values[i]);
    }
    return std::sqrt(num / den);
}

}  // namespace

TEST_CASE("zero time is the identity") {
    for (int dim : {1, 2}) {
        SpatialGrid g(dim, 16, 4.0);
        Field f = random_field(g, 17u + unsigned(dim));
        Field u = propagate(f, 0.0);
        for (std::size_t i = 0; i < f.values.size(); ++i)
            CHECK(std::abs(u.values[i] - f.values[i]) < 1e-12);
    }
    CHECK_THROWS_AS(propagate(random_field(SpatialGrid(1, 16, 4.0), 1), 0.0, Backend::Kernel),
                    std::invalid_argument);
}

TEST_CASE("flow is unitary") {
    for (int dim : {1, 2}) {
        SpatialGrid g(dim, 32, 8.0);
        Field f = random_field(g, 23u + unsigned(dim));
        double n0 = l2_norm(f);
        for (double t : {0.01, 0.5, 3.0, -2.0, 40.0})
            CHECK(l2_norm(propagate(f, t)) == Catch::Approx(n0).epsilon(1e-10));
    }
}

TEST_CASE("flow composes as a group") {
    SpatialGrid g(1, 64, 16.0);
    Field f = random_field(g, 31);
    for (auto [s, t] : {std::pair{0.3, 0.7}, {1.5, -0.4}, {-2.0, -3.0}}) {
        Field two_step = propagate(propagate(f, s), t);
        Field one_step = propagate(f, s + t);
        for (std::size_t i = 0; i < f.values.size(); ++i)
            CHECK(std::abs(two_step.values[i] - one_step.values[i]) < 1e-12);
    }
}

TEST_CASE("adjoint runs the flow backwards") {
    SpatialGrid g(2, 16, 4.0);
    Field f = random_field(g, 41), h = random_field(g, 43);
    Field back = adjoint_propagate(propagate(f, 0.8), 0.8);
    for (std::size_t i = 0; i < f.values.size(); ++i)
        CHECK(std::abs(back.values[i] - f.values[i]) < 1e-12);
    // unitary pairing moves the flow across the inner product
    cplx lhs = l2_inner(propagate(f, 1.3), h);
    cplx rhs = l2_inner(f, adjoint_propagate(h, 1.3));
    CHECK(std::abs(lhs - rhs) < 1e-10);
}

TEST_CASE("kernel and spectral backends agree off the wrap horizon") {
    SpatialGrid g1(1, 1024, 64.0);
    Field f1 = gaussian_field(g1, 1.0);
    CHECK(rel_l2_diff(propagate_kernel(f1, 1.0, g1), propagate_spectral(f1, 1.0)) < 1e-2);

    SpatialGrid g2(2, 64, 32.0);
    Field f2 = gaussian_field(g2, 1.5);
    CHECK(rel_l2_diff(propagate_kernel(f2, 1.0, g2), propagate_spectral(f2, 1.0)) < 1e-2);
}

TEST_CASE("kernel output can live on a different grid") {
    // same spacing, offset by a whole number of cells, so the small grid's
    // samples coincide exactly with a run of the big grid's samples
    SpatialGrid src(1, 32, 8.0), out(1, 8, 2.0);
    Field f = gaussian_field(src, 0.7);
    Field u = propagate_kernel(f, 0.5, out);
    Field ref = propagate_kernel(f, 0.5, src);
    for (int i = 0; i < out.n; ++i) {
        int j = 12 + i;
        REQUIRE(out.coord(i) == Catch::Approx(src.coord(j)).margin(1e-14));
        CHECK(std::abs(u.values[i] - ref.values[j]) < 1e-13);
    }
}

TEST_CASE("point source reproduces the kernel amplitude exactly") {
    SpatialGrid g1(1, 64, 8.0);
    Field spike1(g1);
    spike1.values[32] = 1.0 / g1.spacing();
    for (double t : {0.25, 1.0, 7.0}) {
        Field u = propagate_kernel(spike1, t, g1);
        double expect = std::pow(4 * pi * t, -0.5);
        for (const auto& v : u.values) CHECK(std::abs(v) == Catch::Approx(expect).epsilon(1e-13));
    }

    SpatialGrid g2(2, 8, 2.0);
    Field spike2(g2);
    spike2.values[4 * 8 + 4] = 1.0 / g2.cell();
    Field u2 = propagate_kernel(spike2, 0.5, g2);
    double expect2 = std::pow(4 * pi * 0.5, -1.0);
    for (const auto& v : u2.values) CHECK(std::abs(v) == Catch::Approx(expect2).epsilon(1e-13));
}

TEST_CASE("retarded sum matches its definition") {
    SpatialGrid g(1, 16, 4.0);
    SpaceTimeField F(g, 0.0, 0.25, 6);
    std::mt19937 rng(59);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (auto& frame : F.frames)
        for (auto& v : frame) v = cplx(u(rng), u(rng));

    SpaceTimeField v = duhamel_retarded(F);
    REQUIRE(v.frames.size() == 6);
    for (const auto& val : v.frames[0]) CHECK(val == cplx(0));

    for (std::size_t k = 1; k < 6; ++k) {
        Field direct(g);
        for (std::size_t j = 0; j < k; ++j) {
            Field term = propagate_spectral(Field(g, F.frames[j]), F.time(k) - F.time(j));
            for (std::size_t i = 0; i < direct.values.size(); ++i)
                direct.values[i] += F.dt * term.values[i];
        }
        for (std::size_t i = 0; i < direct.values.size(); ++i)
            CHECK(std::abs(v.frames[k][i] - direct.values[i]) < 1e-12);
    }
}

TEST_CASE("retarded sum is causal") {
    SpatialGrid g(1, 16, 4.0);
    SpaceTimeField F(g, 0.0, 0.5, 5);
    F.frames[3][7] = 1.0;  // forcing only at the fourth frame
    SpaceTimeField v = duhamel_retarded(F);
    for (std::size_t k = 0; k <= 3; ++k)
        for (const auto& val : v.frames[k]) CHECK(val == cplx(0));
    double tail = 0;
    for (const auto& val : v.frames[4]) tail += std::norm(val);
    CHECK(tail > 0);
}

TEST_CASE("quadrature error halves with the step") {
    SpatialGrid g(1, 256, 32.0);
    Field F0 = gaussian_field(g, 2.0);
    Field exact = duhamel_static_exact(F0, 1.0);

    auto error_at = [&](int steps) {
        SpaceTimeField F(g, 0.0, 1.0 / steps, std::size_t(steps) + 1);
        for (auto& frame : F.frames) frame = F0.values;
        SpaceTimeField v = duhamel_retarded(F);
        double err = 0;
        for (std::size_t i = 0; i < exact.values.size(); ++i)
            err += std::norm(v.frames[steps][i] - exact.values[i]);
        return std::sqrt(err * g.cell());
    };

    double e16 = error_at(16), e32 = error_at(32);
    double ratio = e16 / e32;
    CHECK(ratio > 1.7);
    CHECK(ratio < 2.3);
}

TEST_CASE("kernel quadrature matches a single frame") {
    SpatialGrid g(1, 32, 8.0), out(1, 16, 8.0);
    SpaceTimeField F(g, 0.25, 0.5, 3);
    std::mt19937 rng(61);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (auto& v : F.frames[1]) v = cplx(u(rng), u(rng));  // only s = 0.75 active

    SpaceTimeField v = duhamel_eval_kernel(F, {0.5, 2.0}, out);
    // first output time precedes the active frame
    for (const auto& val : v.frames[0]) CHECK(val == cplx(0));
    Field single = propagate_kernel(Field(g, F.frames[1]), 2.0 - 0.75, out);
    for (std::size_t i = 0; i < single.values.size(); ++i)
        CHECK(std::abs(v.frames[1][i] - 0.5 * single.values[i]) < 1e-12);
}

TEST_CASE("decay battery in one dimension") {
    auto rep = dispersive_constant(1, {});
    REQUIRE(rep.slopes.size() == 2);
    CHECK(rep.mean_slope == Catch::Approx(-0.5).margin(0.03));
    CHECK(rep.constant < 0.5);
    CHECK(rep.constant > 0.05);

    CHECK_THROWS_AS(dispersive_constant(1, {1e6}), std::invalid_argument);
    CHECK_THROWS_AS(dispersive_constant(1, {-1.0}), std::invalid_argument);
}
