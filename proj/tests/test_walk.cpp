#include <doctest.h>

#include "fraclap/error.hpp"
#include "fraclap/poisson.hpp"
#include "fraclap/walk.hpp"
#include "test_util.hpp"

#include <cmath>
#include <cstring>
#include <vector>

using namespace fraclap;

TEST_CASE("ball exit samples land strictly outside, radial law correct") {
    const double s = 0.5;
    const std::size_t M = 100000;
    std::vector<double> rho(M);
    double dirsum[2] = {0, 0};
    for (std::size_t p = 0; p < M; ++p) {
        CounterRng rng(31337, 0x57, p);
        const Point z = sample_ball_exit({0.5, -0.25, 0}, 0.75, s, 2, rng);
        const double r = std::hypot(z[0] - 0.5, z[1] + 0.25);
        REQUIRE(r > 0.75);
        rho[p] = r / 0.75;
        dirsum[0] += (z[0] - 0.5) / r;
        dirsum[1] += (z[1] + 0.25) / r;
    }
    const auto& tab = radial_exit_table(s);
    const double ks = testutil::ks_distance(
        rho, [&](double r) { return tab.cdf_rho(r); });
    CHECK(ks < 0.01);
    // isotropy: resultant of unit directions is CLT-small
    CHECK(std::hypot(dirsum[0], dirsum[1]) < 4.0 * std::sqrt(double(M)));
}

TEST_CASE("tabulated CDF agrees with the closed-form beta law") {
    for (double s : {0.25, 0.5, 0.75}) {
        const auto& tab = radial_exit_table(s);
        double worst = 0.0;
        for (double rho = 1.0001; rho < 100.0; rho *= 1.17) {
            const double closed =
                1.0 - testutil::ibeta(s, 1.0 - s, 1.0 / (rho * rho));
            worst = std::max(worst, std::abs(tab.cdf_rho(rho) - closed));
        }
        CHECK(worst < 1e-6); // far below the 1e-4 tabulation budget
    }
}

TEST_CASE("inverse sampling is consistent with the tabulated CDF") {
    const auto& tab = radial_exit_table(0.35);
    for (double u : {1e-8, 1e-4, 0.1, 0.5, 0.9, 0.9999, 1.0 - 1e-9}) {
        const double w = tab.sample_w(u);
        REQUIRE(w > 0.0);
        REQUIRE(w < 1.0);
        const double back = 1.0 - tab.cdf_rho(1.0 / std::sqrt(w));
        // cdf(sample(u)) == u up to interpolation error
        CHECK(std::abs((1.0 - back) - u) < 1e-6);
    }
}

TEST_CASE("walk paths satisfy their invariants") {
    Domain d(2, Ball{{0, 0, 0}, 1.0});
    for (std::uint64_t p = 0; p < 2000; ++p) {
        WalkPath w = sample_walk(d, {0.3, 0.1, 0}, 0.5, 99, p);
        REQUIRE(!w.capped);
        REQUIRE(w.positions.size() == w.steps);
        for (const auto& x : w.positions) CHECK(d.contains(x));
        CHECK_FALSE(d.contains(w.exit_point));
        // each jump leaves its sampling ball
        for (std::size_t t = 0; t + 1 < w.positions.size(); ++t) {
            const double jump = std::hypot(
                w.positions[t + 1][0] - w.positions[t][0],
                w.positions[t + 1][1] - w.positions[t][1]);
            CHECK(jump > w.radii[t]);
        }
    }
}

TEST_CASE("one-step exactness from the ball center") {
    Domain d(2, Ball{{0, 0, 0}, 1.0});
    McEstimate e = wos_estimate(
        d, [](const Point&) { return 1.0; }, {0, 0, 0}, 0.5, 5000, 7);
    CHECK(e.mean_steps == doctest::Approx(1.0));
}

TEST_CASE("constant data is reproduced exactly") {
    Domain d(2, AxisBox{{-1, -0.5, 0}, {0.7, 0.9, 0}});
    McEstimate e = wos_estimate(
        d, [](const Point&) { return 2.5; }, {0, 0, 0}, 0.6, 20000, 11);
    CHECK(e.mean == doctest::Approx(2.5));
    CHECK(e.stderr_ == doctest::Approx(0.0));
    CHECK(e.cap_hits == 0);
}

TEST_CASE("estimate matches the kernel quadrature within 3 sigma") {
    Domain d(2, Ball{{0, 0, 0}, 1.0});
    BallKernel k{2, 0.5, Ball{{0, 0, 0}, 1.0}};
    auto F = [](const Point& y) {
        const double r = std::hypot(y[0], y[1]);
        const double t = (r - 1.5) / 0.3;
        return std::abs(t) < 1.0 ? std::exp(-1.0 / (1.0 - t * t)) : 0.0;
    };
    BallQuadratureOptions qopt;
    qopt.support_radius = 1.8;
    for (const Point& x : {Point{0, 0, 0}, Point{0.4, -0.3, 0}}) {
        const double exact = solve_ball_quadrature(k, F, x, qopt);
        McEstimate e = wos_estimate(d, F, x, 0.5, 200000, 13);
        CHECK(std::abs(e.mean - exact) < 3.0 * e.stderr_ + 1e-3);
    }
}

TEST_CASE("rotational equivariance at the center") {
    Domain d(2, Ball{{0, 0, 0}, 1.0});
    auto F = [](const Point& y) {
        return std::exp(-std::hypot(y[0] - 1.6, y[1]));
    };
    auto Frot = [](const Point& y) { // rotated by 90 degrees
        return std::exp(-std::hypot(y[1] - 1.6, y[0]));
    };
    McEstimate a = wos_estimate(d, F, {0, 0, 0}, 0.5, 150000, 17);
    McEstimate b = wos_estimate(d, Frot, {0, 0, 0}, 0.5, 150000, 18);
    const double sigma = std::hypot(a.stderr_, b.stderr_);
    CHECK(std::abs(a.mean - b.mean) < 3.0 * sigma);
}

TEST_CASE("bit-identical estimates for fixed seed and shard layout") {
    Domain d(2, Ball{{0, 0, 0}, 1.0});
    auto F = [](const Point& y) { return std::hypot(y[0], y[1]); };
    WalkOptions opt;
    opt.threads = 2;
    McEstimate a = wos_estimate(d, F, {0.2, 0, 0}, 0.4, 50000, 5, opt);
    opt.threads = 1;
    McEstimate b = wos_estimate(d, F, {0.2, 0, 0}, 0.4, 50000, 5, opt);
    CHECK(std::memcmp(&a.mean, &b.mean, sizeof(double)) == 0);
    CHECK(std::memcmp(&a.stderr_, &b.stderr_, sizeof(double)) == 0);
    McEstimate c = wos_estimate(d, F, {0.2, 0, 0}, 0.4, 50000, 6, opt);
    CHECK(c.mean != a.mean);
}

TEST_CASE("stderr shrinks like one over sqrt(samples)") {
    Domain d(2, Ball{{0, 0, 0}, 1.0});
    auto F = [](const Point& y) { return y[0] > 1.2 ? 1.0 : 0.0; };
    McEstimate a = wos_estimate(d, F, {0.1, 0.1, 0}, 0.5, 40000, 3);
    McEstimate b = wos_estimate(d, F, {0.1, 0.1, 0}, 0.5, 160000, 3);
    CHECK(std::abs(a.stderr_ / b.stderr_ - 2.0) < 0.4);
}

TEST_CASE("annulus exit mass decays as the offsets shrink") {
    Domain d(2, Ball{{0, 0, 0}, 1.0});
    AnnulusFamily fam(d, {0.2, 0.1, 0.05, 0.025});
    const double s = 0.5;
    const auto probs = annulus_exit_mass(d, fam, {0, 0, 0}, s, 100000, 21);
    REQUIRE(probs.size() == 4);
    for (std::size_t k = 0; k < probs.size(); ++k) {
        CHECK(probs[k].mean >= 0.0);
        CHECK(probs[k].mean <= 1.0);
        // closed-form oracle: walk in ball(1 - r_k) from the center exits
        // into the shell with probability 1 - I_{(1-r_k)^2}(s, 1-s)
        const double q = 1.0 - fam.offsets[k];
        const double exact = testutil::ibeta(1.0 - s, s, 1.0 - q * q);
        CHECK(std::abs(probs[k].mean - exact) <
              4.0 * probs[k].stderr_ + 1e-4);
        if (k > 0)
            CHECK(probs[k].mean <
                  probs[k - 1].mean + 3.0 * std::hypot(probs[k].stderr_,
                                                       probs[k - 1].stderr_));
    }
    CHECK(probs.back().mean < 0.5 * probs.front().mean);
    CHECK_THROWS_AS(
        annulus_exit_mass(d, fam, {0.9, 0, 0}, s, 100, 1), ConfigError);
}

TEST_CASE("wos rejects exterior starts and non-finite data") {
    Domain d(2, Ball{{0, 0, 0}, 1.0});
    CHECK_THROWS_AS(wos_estimate(d, [](const Point&) { return 1.0; },
                                 {2, 0, 0}, 0.5, 100, 1),
                    ConfigError);
    CHECK_THROWS_AS(
        wos_estimate(d,
                     [](const Point&) {
                         return std::numeric_limits<double>::quiet_NaN();
                     },
                     {0, 0, 0}, 0.5, 100, 1),
        ContractError);
}

TEST_CASE("n=3 smoke: constant data and exit support") {
    Domain d(3, Ball{{0, 0, 0}, 1.0});
    McEstimate e = wos_estimate(
        d, [](const Point&) { return 1.0; }, {0.2, 0.1, -0.1}, 0.5, 20000,
        23);
    CHECK(e.mean == doctest::Approx(1.0));
    for (std::uint64_t p = 0; p < 200; ++p) {
        WalkPath w = sample_walk(d, {0.2, 0.1, -0.1}, 0.5, 23, p);
        CHECK_FALSE(d.contains(w.exit_point));
    }
}
