#include <doctest.h>

#include "fraclap/error.hpp"
#include "fraclap/geometry.hpp"
#include "fraclap/rng.hpp"

#include <cmath>

using namespace fraclap;

TEST_CASE("ball membership and distance") {
    Domain d(2, Ball{{0, 0, 0}, 1.0});
    CHECK(d.contains({0, 0, 0}));
    CHECK_FALSE(d.contains({2, 0, 0}));
    CHECK_FALSE(d.contains({1.0, 0, 0})); // boundary excluded
    CHECK(d.boundary_distance({0, 0, 0}) == doctest::Approx(1.0));
    CHECK(d.boundary_distance({1.5, 0, 0}) == doctest::Approx(0.5));
}

TEST_CASE("box membership and exact distance") {
    Domain d(2, AxisBox{{0, 0, 0}, {2, 1, 0}});
    CHECK(d.contains({1.0, 0.5, 0}));
    CHECK_FALSE(d.contains({0.0, 0.0, 0})); // corner on the boundary
    CHECK(d.boundary_distance({1.0, 0.25, 0}) == doctest::Approx(0.25));
    // brute-force oracle: min distance over densely sampled boundary
    const Point q{2.3, 1.4, 0.0};
    double best = 1e300;
    const int M = 4000;
    for (int i = 0; i <= M; ++i) {
        const double t = double(i) / M;
        const double xs[4] = {2.0 * t, 2.0 * t, 0.0, 2.0};
        const double ys[4] = {0.0, 1.0, 1.0 * t, 1.0 * t};
        for (int e = 0; e < 4; ++e)
            best = std::min(best, std::hypot(q[0] - xs[e], q[1] - ys[e]));
    }
    CHECK(d.boundary_distance(q) == doctest::Approx(best).epsilon(1e-6));
}

TEST_CASE("polygon: orientation, membership, self-intersection rejected") {
    Polygon tri;
    tri.vertices = {{0, 0}, {2, 0}, {0, 2}};
    Domain d(tri);
    CHECK(d.contains({0.5, 0.5, 0}));
    CHECK_FALSE(d.contains({1.5, 1.5, 0}));
    CHECK(d.boundary_distance({0.25, 0.25, 0}) == doctest::Approx(0.25));

    Polygon cw;
    cw.vertices = {{0, 0}, {0, 2}, {2, 0}};
    CHECK_THROWS_AS(Domain{cw}, ConfigError);

    Polygon bowtie;
    bowtie.vertices = {{0, 0}, {2, 2}, {2, 0}, {0, 2}};
    CHECK_THROWS_AS(Domain{bowtie}, ConfigError);
}

TEST_CASE("distance is 1-Lipschitz and sign-consistent on random points") {
    Domain shapes[] = {Domain(2, Ball{{0.2, -0.1, 0}, 1.1}),
                       Domain(2, AxisBox{{-1, -0.5, 0}, {0.8, 1.2, 0}}),
                       Domain(Polygon{{{-1, -1}, {1, -0.8}, {0.9, 1}, {-0.7, 0.9}}})};
    for (const auto& d : shapes) {
        CounterRng rng(7771, 0x6E0, 0);
        for (int i = 0; i < 100000; ++i) {
            Point a{4.0 * rng.uniform() - 2.0, 4.0 * rng.uniform() - 2.0, 0};
            Point b{a[0] + 0.2 * (rng.uniform() - 0.5),
                    a[1] + 0.2 * (rng.uniform() - 0.5), 0};
            const double da = d.boundary_distance(a);
            const double db = d.boundary_distance(b);
            const double ab = std::hypot(a[0] - b[0], a[1] - b[1]);
            CHECK(std::abs(da - db) <= ab + 1e-12);
            if (d.contains(a)) CHECK(da > 0.0);
        }
    }
}

TEST_CASE("exterior annulus nodes: membership, margins, density") {
    Domain d(2, Ball{{0, 0, 0}, 1.0});
    // degenerate: annulus thinner than the node margin
    CHECK(exterior_annulus_nodes(d, 1.05, 1.0).empty());

    const double h = 0.25, R = 2.0;
    auto nodes = exterior_annulus_nodes(d, R, h);
    REQUIRE(!nodes.empty());
    for (const auto& x : nodes) {
        const double r = std::hypot(x[0], x[1]);
        CHECK(r > 1.0);
        CHECK(r <= R + 1e-12);
        CHECK(d.boundary_distance(x) > 0.5 * h);
    }
    // node count tracks area(annulus)/h^2; Monte Carlo volume oracle
    CounterRng rng(99, 0xA0, 0);
    std::size_t hits = 0;
    const std::size_t M = 200000;
    for (std::size_t i = 0; i < M; ++i) {
        const double x = 2.0 * R * rng.uniform() - R;
        const double y = 2.0 * R * rng.uniform() - R;
        const double r = std::hypot(x, y);
        if (r > 1.0 + 0.5 * h && r < R) ++hits;
    }
    const double area = 4.0 * R * R * double(hits) / double(M);
    const double expect = area / (h * h);
    CHECK(std::abs(double(nodes.size()) / expect - 1.0) < 0.2);
}

TEST_CASE("annulus family monotonicity on random samples") {
    Domain d(2, Ball{{0, 0, 0}, 1.0});
    AnnulusFamily fam(d, {0.2, 0.1, 0.05});
    CHECK_THROWS_AS(AnnulusFamily(d, {0.1, 0.2}), ConfigError);
    CounterRng rng(5, 0xA1, 0);
    for (int i = 0; i < 20000; ++i) {
        Point x{2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0, 0};
        for (std::size_t k = 0; k + 1 < fam.offsets.size(); ++k)
            if (fam.in_shrunken(k, x)) CHECK(fam.in_shrunken(k + 1, x));
    }
}

TEST_CASE("n=3 ball geometry") {
    Domain d(3, Ball{{0, 0, 0}, 1.0});
    CHECK(d.contains({0.5, 0.5, 0.5}));
    CHECK_FALSE(d.contains({0.7, 0.7, 0.7}));
    CHECK(d.boundary_distance({0, 0, 0.25}) == doctest::Approx(0.75));
    auto nodes = exterior_annulus_nodes(d, 1.8, 0.3);
    for (const auto& x : nodes) {
        const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
        CHECK(r > 1.0);
        CHECK(d.boundary_distance(x) > 0.15);
    }
}
