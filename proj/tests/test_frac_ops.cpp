#include <doctest.h>

#include "fraclap/data_functions.hpp"
#include "fraclap/error.hpp"
#include "fraclap/fft.hpp"
#include "fraclap/frac_ops.hpp"
#include "fraclap/lp.hpp"
#include "test_util.hpp"

#include <cmath>

using namespace fraclap;

namespace {

GridFunction cosine_mode(const SolverParams& p, int k1, int k2) {
    GridFunction f(p);
    const double L = p.box_length();
    f.fill([&](const Point& x) {
        return std::cos(2.0 * M_PI * (k1 * x[0] + k2 * x[1]) / L);
    });
    return f;
}

GridFunction zero_mean_pair(const SolverParams& p) {
    GridFunction f(p);
    f.fill([&](const Point& x) {
        auto bump = [&](double cx, double cy, double w) {
            double r2 = (x[0] - cx) * (x[0] - cx) + (x[1] - cy) * (x[1] - cy);
            if (p.n() == 3) r2 += x[2] * x[2];
            r2 /= w * w;
            return r2 < 1.0 ? std::exp(-1.0 / (1.0 - r2)) : 0.0;
        };
        return bump(-0.9, 0.0, 0.8) - bump(0.9, 0.0, 0.8);
    });
    const double m = f.mean();
    for (auto& v : f.values()) v -= m; // exact zero mean on the lattice
    return f;
}

} // namespace

TEST_CASE("multiplier form: constants annihilated, single-mode eigenvalue") {
    SolverParams p = make_params(2, 0.5, 64, 8.0);
    GridFunction c(p);
    c.fill([](const Point&) { return 3.7; });
    GridFunction dc = delta_s_fourier(c, 0.5);
    CHECK(dc.max_abs() < 1e-12);

    const int k1 = 2, k2 = 3;
    GridFunction f = cosine_mode(p, k1, k2);
    for (double s : {0.25, 0.75}) {
        GridFunction df = delta_s_fourier(f, s);
        const double lam = std::pow(
            2.0 * M_PI * std::hypot(double(k1), double(k2)) /
                p.box_length(),
            2.0 * s);
        double worst = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i)
            worst = std::max(worst, std::abs(df[i] - lam * f[i]));
        CHECK(worst < 1e-10 * lam);
        CHECK(std::abs(df.mean()) < 1e-14 * lam);
    }
}

TEST_CASE("singular form kills constants and matches the multiplier") {
    SolverParams p = make_params(2, 0.5, 64, 8.0);
    GridFunction c(p);
    c.fill([](const Point&) { return -2.5; });
    CHECK(delta_s_singular(c, 0.5).max_abs() < 1e-10);

    GridFunction f = cosine_mode(p, 1, 1); // low mode
    for (double s : {0.25, 0.5, 0.75}) {
        GridFunction a = delta_s_singular(f, s);
        GridFunction b = delta_s_fourier(f, s);
        CHECK(testutil::rel_l2(a, b) < 1e-2);
    }
}

TEST_CASE("singular form is linear to machine precision") {
    SolverParams p = make_params(2, 0.6, 32, 8.0);
    GridFunction f = cosine_mode(p, 1, 0);
    GridFunction g = zero_mean_pair(p);
    GridFunction combo(p);
    for (std::size_t i = 0; i < combo.size(); ++i)
        combo[i] = 2.0 * f[i] - 0.5 * g[i];
    GridFunction lhs = delta_s_singular(combo, 0.6);
    GridFunction fa = delta_s_singular(f, 0.6);
    GridFunction gb = delta_s_singular(g, 0.6);
    double worst = 0.0;
    for (std::size_t i = 0; i < lhs.size(); ++i)
        worst = std::max(worst,
                         std::abs(lhs[i] - (2.0 * fa[i] - 0.5 * gb[i])));
    CHECK(worst < 1e-11 * lhs.max_abs() + 1e-13);
}

TEST_CASE("fft-correlation application equals the direct quadrature sum") {
    // the table defines the quadrature; the FFT is only a fast summation
    SolverParams p = make_params(2, 0.4, 16, 8.0);
    const double s = 0.4;
    auto table =
        build_second_difference_table(p, s, default_singular_scheme(2));
    GridFunction f = zero_mean_pair(p);
    GridFunction fast = apply_second_difference(f, s, table);

    const std::uint32_t N = p.grid_size();
    const double c = c_delta(2, s);
    GridFunction slow(p);
    for (std::uint32_t i = 0; i < N; ++i)
        for (std::uint32_t j = 0; j < N; ++j) {
            double corr = 0.0;
            for (std::uint32_t a = 0; a < N; ++a)
                for (std::uint32_t b = 0; b < N; ++b) {
                    const std::uint32_t ii = (i + a) % N;
                    const std::uint32_t jj = (j + b) % N;
                    corr += f[ii * N + jj] * table.corr_weights[a * N + b];
                }
            slow[i * N + j] =
                -c * (corr - table.weight_sum * f[i * N + j]);
        }
    double worst = 0.0;
    for (std::size_t i = 0; i < fast.size(); ++i)
        worst = std::max(worst, std::abs(fast[i] - slow[i]));
    CHECK(worst < 1e-10 * (slow.max_abs() + 1.0));
}

TEST_CASE("riesz multiplier: single mode, zero-mean precondition") {
    SolverParams p = make_params(2, 0.5, 64, 8.0);
    GridFunction f = cosine_mode(p, 3, 0);
    const double sig = 1.2;
    GridFunction rf = riesz_fourier(f, sig);
    const double lam =
        std::pow(2.0 * M_PI * 3.0 / p.box_length(), -sig);
    double worst = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        worst = std::max(worst, std::abs(rf[i] - lam * f[i]));
    CHECK(worst < 1e-10 * lam);

    GridFunction biased(p);
    biased.fill([](const Point& x) {
        return 1.0 + std::exp(-(x[0] * x[0] + x[1] * x[1]));
    });
    CHECK_THROWS_AS(riesz_fourier(biased, 1.0), ConfigError);
    CHECK_THROWS_AS(riesz_fourier(f, 2.5), ConfigError); // sigma >= n
}

TEST_CASE("inverse identity and isometry") {
    SolverParams p = make_params(2, 0.5, 64, 8.0);
    GridFunction f = zero_mean_pair(p);
    const double nf = f.l2_norm();
    for (double s : {0.25, 0.5, 0.75}) {
        GridFunction back = delta_s_fourier(riesz_fourier(f, 2.0 * s), s);
        back -= f;
        CHECK(back.l2_norm() < 1e-10 * nf);
    }
    // two_pi-weighted norms make I_sigma an exact isometry shift
    for (double alpha : {0.0, 0.3, 0.6})
        for (double sig : {0.5, 1.0}) {
            const double a0 =
                hs_norm_direct(f, alpha, FreqWeight::two_pi);
            const double a1 = hs_norm_direct(riesz_fourier(f, sig),
                                             alpha + sig,
                                             FreqWeight::two_pi);
            CHECK(std::abs(a1 - a0) < 1e-10 * a0);
        }
}

TEST_CASE("riesz kernel: zero input, far-field law, multiplier agreement") {
    SolverParams p = make_params(2, 0.5, 128, 8.0);
    GridFunction z(p);
    CHECK(riesz_kernel(z, 1.0).max_abs() == 0.0);

    // concentrated +- bump pair: between and beyond the bumps the potential
    // approaches c_riesz m (|x-x0|^(sigma-n) - |x-x1|^(sigma-n))
    const double sig = 1.0;
    GridFunction f(p);
    const double w = 0.35, x0 = -1.6, x1 = 1.6;
    f.fill([&](const Point& x) {
        auto bump = [&](double cx) {
            const double r2 =
                ((x[0] - cx) * (x[0] - cx) + x[1] * x[1]) / (w * w);
            return r2 < 1.0 ? std::exp(-1.0 / (1.0 - r2)) : 0.0;
        };
        return bump(x0) - bump(x1);
    });
    const double m0 = f.mean();
    for (auto& v : f.values()) v -= m0;
    GridFunction u = riesz_kernel(f, sig);
    // bump mass by direct summation
    double mass = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const Point x = f.point(i);
        if (x[0] < 0.0) mass += f[i];
    }
    mass *= std::pow(p.spacing(), 2);
    const Point probe{0.0, 0.9, 0.0};
    const double expect =
        c_riesz(2, sig) * mass *
        (std::pow(std::hypot(probe[0] - x0, probe[1]), sig - 2.0) -
         std::pow(std::hypot(probe[0] - x1, probe[1]), sig - 2.0));
    // read off the grid value nearest the probe
    const std::uint32_t N = p.grid_size();
    const double hg = p.spacing();
    const std::uint32_t ip =
        static_cast<std::uint32_t>(std::lround((probe[0] + 4.0) / hg));
    const std::uint32_t jp =
        static_cast<std::uint32_t>(std::lround((probe[1] + 4.0) / hg));
    const double got = u[ip * N + jp];
    CHECK(std::abs(got / expect - 1.0) < 0.05);

    // cross-definition agreement on the zero-mean family
    for (double s : {0.25, 0.5, 0.75}) {
        GridFunction g = zero_mean_pair(p);
        GridFunction a = riesz_kernel(g, 2.0 * s);
        GridFunction b = riesz_fourier(g, 2.0 * s);
        CHECK(testutil::rel_l2(a, b) < 2e-2);
    }
}

TEST_CASE("self-adjointness and energy positivity") {
    SolverParams p = make_params(2, 0.5, 64, 8.0);
    LPFilterBank bank = build_filter_bank(p);
    GridFunction f = zero_mean_pair(p);
    GridFunction g(p);
    g.fill([](const Point& x) {
        const double r2 =
            ((x[0] - 0.4) * (x[0] - 0.4) + (x[1] + 0.6) * (x[1] + 0.6)) /
            0.81;
        return r2 < 1.0 ? std::exp(-1.0 / (1.0 - r2)) : 0.0;
    });
    const double s = 0.5;
    const double lhs = dual_pairing(delta_s_fourier(f, s), g, bank);
    const double rhs = dual_pairing(f, delta_s_fourier(g, s), bank);
    CHECK(std::abs(lhs - rhs) < 1e-10 * std::max(1.0, std::abs(lhs)));

    const double energy = dual_pairing(f, riesz_fourier(f, 2.0 * s), bank);
    CHECK(energy > 0.0);
}

TEST_CASE("n=3 smoke: multiplier consistency of the singular form") {
    SolverParams p = make_params(3, 0.5, 32, 8.0);
    GridFunction f(p);
    f.fill([](const Point& x) {
        const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
        return std::exp(-r2 / (2.0 * 0.7 * 0.7));
    });
    GridFunction a = delta_s_singular(f, 0.5);
    GridFunction b = delta_s_fourier(f, 0.5);
    CHECK(testutil::rel_l2(a, b) < 5e-2);
}
