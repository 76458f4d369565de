#include <doctest.h>

#include "fraclap/error.hpp"
#include "fraclap/poisson.hpp"
#include "test_util.hpp"

#include <cmath>

using namespace fraclap;

TEST_CASE("kernel eval: side checks and center symmetry") {
    BallKernel k{2, 0.5, Ball{{0, 0, 0}, 1.0}};
    CHECK_THROWS_AS(ball_kernel_eval(k, {1.5, 0, 0}, {2, 0, 0}), ConfigError);
    CHECK_THROWS_AS(ball_kernel_eval(k, {0, 0, 0}, {0.5, 0, 0}), ConfigError);
    // from the center the kernel depends on |y| only
    const double a = ball_kernel_eval(k, {0, 0, 0}, {1.7, 0, 0});
    const double b = ball_kernel_eval(k, {0, 0, 0},
                                      {1.7 * std::cos(1.1),
                                       1.7 * std::sin(1.1), 0});
    CHECK(a == doctest::Approx(b).epsilon(1e-14));
    CHECK(a > 0.0);
}

TEST_CASE("kernel is monotone decreasing in |y| from the center") {
    BallKernel k{2, 0.37, Ball{{0, 0, 0}, 1.0}};
    double prev = 1e300;
    for (double rho = 1.05; rho < 8.0; rho *= 1.3) {
        const double v = ball_kernel_eval(k, {0, 0, 0}, {rho, 0, 0});
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("kernel mass equals one at interior points") {
    for (double s : {0.25, 0.5, 0.75}) {
        BallKernel k{2, s, Ball{{0, 0, 0}, 1.0}};
        for (const Point& x : {Point{0, 0, 0}, Point{0.9, 0, 0},
                               Point{0.5, 0.5, 0}}) {
            CHECK(std::abs(kernel_mass(k, x) - 1.0) < 1e-3);
        }
    }
    // scaled and shifted ball
    BallKernel ks{2, 0.5, Ball{{0.4, -0.2, 0}, 1.7}};
    CHECK(std::abs(kernel_mass(ks, {0.4, -0.2, 0}) - 1.0) < 1e-3);
    CHECK(std::abs(kernel_mass(ks, {1.5, -0.2, 0}) - 1.0) < 1e-3);
}

TEST_CASE("n=3 kernel mass smoke") {
    BallKernel k{3, 0.5, Ball{{0, 0, 0}, 1.0}};
    BallQuadratureOptions opt;
    opt.n_polar = 64;
    CHECK(std::abs(kernel_mass(k, {0, 0, 0}, opt) - 1.0) < 1e-3);
    CHECK(std::abs(kernel_mass(k, {0.6, 0.3, 0.2}, opt) - 1.0) < 1e-3);
}

TEST_CASE("radial exit CDF: quadrature table matches the beta closed form") {
    for (double s : {0.3, 0.5, 0.7}) {
        for (double rho : {1.001, 1.1, 1.5, 2.0, 5.0, 50.0}) {
            const double closed =
                1.0 - testutil::ibeta(s, 1.0 - s, 1.0 / (rho * rho));
            CHECK(std::abs(radial_exit_cdf(s, rho) - closed) < 1e-12);
        }
    }
}

TEST_CASE("solve_ball_quadrature: constant data reproduces the mass") {
    BallKernel k{2, 0.5, Ball{{0, 0, 0}, 1.0}};
    const double u =
        solve_ball_quadrature(k, [](const Point&) { return 1.0; },
                              {0.3, -0.2, 0});
    CHECK(std::abs(u - 1.0) < 1e-3);
}

TEST_CASE("solve_ball_quadrature: distant halfspace gives a value in (0, 1/2)") {
    BallKernel k{2, 0.5, Ball{{0, 0, 0}, 1.0}};
    const double u = solve_ball_quadrature(
        k, [](const Point& y) { return y[0] >= 3.0 ? 1.0 : 0.0; },
        {0, 0, 0});
    CHECK(u > 0.0);
    CHECK(u < 0.5);
}

TEST_CASE("solve_ball_quadrature flags non-integrable data") {
    BallKernel k{2, 0.5, Ball{{0, 0, 0}, 1.0}};
    CHECK_THROWS_AS(
        solve_ball_quadrature(
            k,
            [](const Point& y) {
                return std::pow(std::hypot(y[0], y[1]), 1.6);
            },
            {0, 0, 0}),
        ContractError);
}

TEST_CASE("kernel bound ratios: finite, positive, restricted bracket") {
    BallKernel k{2, 0.5, Ball{{0, 0, 0}, 1.0}};
    const auto chk = check_kernel_bounds(k, 20000, 777);
    CHECK(chk.ratio_min > 0.0);
    CHECK(std::isfinite(chk.ratio_max));
    CHECK(chk.ratio_max >= chk.ratio_min);

    // restricted regime of the two-sided bound: delta(x) > r/2,
    // delta(y) in (0.1 r, r)
    double rmin = 1e300, rmax = 0.0;
    CounterRng rng(4242, 0xEE, 0);
    for (int i = 0; i < 20000; ++i) {
        const double rx = 0.5 * rng.uniform() * 0.999;
        const double tx = 2.0 * M_PI * rng.uniform();
        const Point x{rx * std::cos(tx), rx * std::sin(tx), 0};
        const double dy = 0.1 + 0.9 * rng.uniform();
        const double ty = 2.0 * M_PI * rng.uniform();
        const Point y{(1.0 + dy) * std::cos(ty), (1.0 + dy) * std::sin(ty),
                      0};
        const double K = ball_kernel_eval(k, x, y);
        const double dxv = 1.0 - rx;
        const double dist2 =
            (x[0] - y[0]) * (x[0] - y[0]) + (x[1] - y[1]) * (x[1] - y[1]);
        const double ratio = K * std::pow(dy, 0.5) *
                             std::pow(dy + 1.0, 0.5) * dist2 /
                             std::pow(dxv, 0.5);
        rmin = std::min(rmin, ratio);
        rmax = std::max(rmax, ratio);
    }
    CHECK(rmax / rmin < 50.0);
}
