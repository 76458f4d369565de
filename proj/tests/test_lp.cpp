#include <doctest.h>

#include "fraclap/data_functions.hpp"
#include "fraclap/error.hpp"
#include "fraclap/fft.hpp"
#include "fraclap/lp.hpp"

#include <cmath>
#include <complex>

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

GridFunction gaussian(const SolverParams& p, double cx, double cy, double w) {
    GridFunction f(p);
    f.fill([&](const Point& x) {
        double r2 = (x[0] - cx) * (x[0] - cx) + (x[1] - cy) * (x[1] - cy);
        if (p.n() == 3) r2 += x[2] * x[2];
        return std::exp(-0.5 * r2 / (w * w));
    });
    return f;
}

} // namespace

TEST_CASE("partition of unity holds at every nonzero lattice frequency") {
    for (auto [n, N] : {std::pair<int, std::uint32_t>{2, 64},
                        std::pair<int, std::uint32_t>{3, 16}}) {
        SolverParams p = make_params(n, 0.5, N, 8.0);
        LPFilterBank bank = build_filter_bank(p);
        const auto fsq = frequency_sq(p);
        double worst = 0.0;
        for (std::size_t k = 0; k < fsq.size(); ++k) {
            if (fsq[k] == 0.0) continue;
            double acc = 0.0;
            for (int i = bank.i_min(); i <= bank.i_max(); ++i)
                acc += bank.band(i)[k];
            worst = std::max(worst, std::abs(acc - 1.0));
        }
        CHECK(worst < 1e-12);
    }
}

TEST_CASE("band support and disjoint dyadic overlap") {
    // band 0 vanishes for |xi| >= 2 and below 1/2
    CHECK(LPFilterBank::eta_hat(0, 2.0) == 0.0);
    CHECK(LPFilterBank::eta_hat(0, 2.5) == 0.0);
    CHECK(LPFilterBank::eta_hat(0, 0.5) == 0.0);
    CHECK(LPFilterBank::eta_hat(0, 1.0) > 0.0);
    CHECK(LPFilterBank::eta_hat(0, 0.75) > 0.0);
    SolverParams p = make_params(2, 0.5, 64, 8.0);
    LPFilterBank bank = build_filter_bank(p);
    const auto& b0 = bank.band(0);
    const auto& b3 = bank.band(3);
    for (std::size_t k = 0; k < b0.size(); ++k)
        CHECK(b0[k] * b3[k] == 0.0);
}

TEST_CASE("hs_norm_lp: zero function and single-mode oracle") {
    SolverParams p = make_params(2, 0.5, 64, 8.0);
    LPFilterBank bank = build_filter_bank(p);
    GridFunction z(p);
    CHECK(hs_norm_lp(z, 0.5, bank) == 0.0);

    // single cosine mode: expected value by direct band summation at +-k
    const int k1 = 3, k2 = 1;
    GridFunction f = cosine_mode(p, k1, k2);
    const double L = p.box_length();
    const double ximod = std::hypot(double(k1), double(k2)) / L;
    for (double alpha : {-0.6, 0.0, 0.8}) {
        double band_sq = 0.0;
        for (int i = bank.i_min(); i <= bank.i_max(); ++i) {
            const double e = LPFilterBank::eta_hat(i, ximod);
            band_sq += e * e;
        }
        // f_hat has mass L^n/2 at each of +-k; dxi = 1/L^n
        const double expect =
            std::sqrt(std::pow(ximod * ximod, alpha) * band_sq * 2.0 *
                      std::pow(L, p.n()) / 4.0);
        CHECK(hs_norm_lp(f, alpha, bank) ==
              doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("hs_norm_direct: alpha 0 recovers the L2 norm, negative rejected") {
    SolverParams p = make_params(2, 0.5, 64, 8.0);
    GridFunction f = gaussian(p, 0.3, -0.2, 0.6);
    // remove the mean so the excluded zero mode carries nothing
    const double m = f.mean();
    for (auto& v : f.values()) v -= m;
    CHECK(hs_norm_direct(f, 0.0) ==
          doctest::Approx(f.l2_norm()).epsilon(1e-12));
    CHECK_THROWS_AS(hs_norm_direct(f, -0.1), ConfigError);
    GridFunction z(p);
    CHECK(hs_norm_direct(z, 0.7) == 0.0);
}

TEST_CASE("hs_norm_direct matches a from-scratch frequency sum") {
    // independent oracle: direct O(N^4) discrete Fourier sum
    SolverParams p = make_params(2, 0.5, 32, 8.0);
    GridFunction f = gaussian(p, 0.2, 0.1, 0.7);
    const std::uint32_t N = p.grid_size();
    const double L = p.box_length();
    const double alpha = 0.7;
    double acc = 0.0;
    for (int ka = -16; ka < 16; ++ka)
        for (int kb = -16; kb < 16; ++kb) {
            if (ka == 0 && kb == 0) continue;
            std::complex<double> c{0.0, 0.0};
            for (std::uint32_t i = 0; i < N; ++i)
                for (std::uint32_t j = 0; j < N; ++j) {
                    const double ph = -2.0 * M_PI *
                                      (double(ka) * i + double(kb) * j) / N;
                    c += f[i * N + j] *
                         std::complex<double>(std::cos(ph), std::sin(ph));
                }
            const double xi2 = (ka * ka + kb * kb) / (L * L);
            acc += std::pow(xi2, alpha) * std::norm(c);
        }
    const double hn = std::pow(p.spacing(), 2);
    const double oracle = std::sqrt(acc * hn * hn / (L * L));
    CHECK(hs_norm_direct(f, alpha) ==
          doctest::Approx(oracle).epsilon(1e-10));
}

TEST_CASE("LP and direct norms agree within the frozen bracket") {
    SolverParams p = make_params(2, 0.5, 64, 8.0);
    LPFilterBank bank = build_filter_bank(p);
    const double c_eq = 1.5;
    for (const auto& nf : make_test_family(p)) {
        for (double alpha : {0.3, 0.7, 1.0}) {
            const double lp = hs_norm_lp(nf.f, alpha, bank);
            const double dr = hs_norm_direct(nf.f, alpha);
            CHECK(lp / dr >= 1.0 / c_eq);
            CHECK(lp / dr <= c_eq);
        }
    }
}

TEST_CASE("norm scaling under dilation") {
    // ||f(lambda .)||_{H^a} = lambda^(a - n/2) ||f||_{H^a}
    SolverParams p = make_params(2, 0.5, 128, 8.0);
    const double alpha = 0.6;
    GridFunction f = gaussian(p, 0.0, 0.0, 0.8);
    GridFunction f2 = gaussian(p, 0.0, 0.0, 0.4); // f(2x)
    const double ratio = hs_norm_direct(f2, alpha) / hs_norm_direct(f, alpha);
    const double expect = std::pow(2.0, alpha - 1.0);
    CHECK(std::abs(ratio / expect - 1.0) < 0.01);
}

TEST_CASE("gagliardo seminorm: zero, Fourier-constant calibration") {
    SolverParams p = make_params(2, 0.5, 64, 8.0);
    GridFunction z(p);
    CHECK(gagliardo_seminorm(z, 0.5) == 0.0);
    CHECK_THROWS_AS(gagliardo_seminorm(z, 2.0), ConfigError);
    CHECK_THROWS_AS(gagliardo_seminorm(z, 0.0), ConfigError);

    // constant C = gag^2 / ||f||^2 is function-independent within 2%
    const double alpha = 0.5;
    std::vector<GridFunction> fam;
    fam.push_back(gaussian(p, 0.0, 0.0, 0.65));
    fam.push_back(gaussian(p, 0.4, -0.3, 0.8));
    fam.push_back(gaussian(p, 0.0, 0.0, 1.0));
    {
        GridFunction b(p);
        b.fill([](const Point& x) {
            const double r2 = (x[0] * x[0] + x[1] * x[1]) / (1.6 * 1.6);
            return r2 < 1.0 ? std::exp(-1.0 / (1.0 - r2)) : 0.0;
        });
        fam.push_back(std::move(b));
    }
    {
        GridFunction m = gaussian(p, -0.5, 0.0, 0.7);
        GridFunction m2 = gaussian(p, 0.6, 0.3, 0.9);
        m2 *= 0.5;
        m += m2;
        fam.push_back(std::move(m));
    }
    std::vector<double> Cs;
    for (const auto& f : fam) {
        const double g = gagliardo_seminorm(f, alpha);
        const double d = hs_norm_direct(f, alpha);
        Cs.push_back(g * g / (d * d));
    }
    const double cmin = *std::min_element(Cs.begin(), Cs.end());
    const double cmax = *std::max_element(Cs.begin(), Cs.end());
    CHECK(cmax / cmin - 1.0 < 0.02);

    // calibrate C on the first function, predict the others
    for (std::size_t i = 1; i < fam.size(); ++i) {
        const double pred =
            std::sqrt(Cs[0]) * hs_norm_direct(fam[i], alpha);
        CHECK(std::abs(gagliardo_seminorm(fam[i], alpha) / pred - 1.0) <
              0.02);
    }
}

TEST_CASE("dual pairing: zero, single mode, symmetry") {
    SolverParams p = make_params(2, 0.5, 64, 8.0);
    LPFilterBank bank = build_filter_bank(p);
    GridFunction z(p);
    GridFunction f = cosine_mode(p, 2, 1);
    CHECK(dual_pairing(z, f, bank) == 0.0);

    // same single mode: squared amplitude times lattice measure L^n/2
    const double expect = 0.5 * std::pow(p.box_length(), 2);
    CHECK(dual_pairing(f, f, bank) ==
          doctest::Approx(expect).epsilon(1e-12));

    GridFunction g = gaussian(p, 0.3, 0.3, 0.7);
    const double ab = dual_pairing(f, g, bank);
    const double ba = dual_pairing(g, f, bank);
    CHECK(std::abs(ab - ba) < 1e-12 * std::max(1.0, std::abs(ab)));

    SolverParams p2 = make_params(2, 0.5, 32, 8.0);
    GridFunction other(p2);
    CHECK_THROWS_AS(dual_pairing(f, other, bank), ConfigError);
}

TEST_CASE("dual pairing agrees with the plain inner product off the mean") {
    SolverParams p = make_params(2, 0.5, 64, 8.0);
    LPFilterBank bank = build_filter_bank(p);
    GridFunction f = gaussian(p, 0.2, -0.4, 0.6);
    GridFunction g = gaussian(p, -0.3, 0.2, 0.8);
    const double hn = std::pow(p.spacing(), 2);
    double plain = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) plain += f[i] * g[i];
    plain *= hn;
    plain -= f.mean() * g.mean() * std::pow(p.box_length(), 2);
    CHECK(dual_pairing(f, g, bank) ==
          doctest::Approx(plain).epsilon(1e-10));
}
