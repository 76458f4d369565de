#include "fraclap/lp.hpp"
#include "fraclap/error.hpp"

#include <cmath>

namespace fraclap {

namespace {

// C-infinity bump on (-1,1) in log2 radius; the telescoping normalization
// below makes the dyadic sum exactly 1.
double raw_profile(double u) {
    if (std::abs(u) >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - u * u));
}

} // namespace

double LPFilterBank::eta_hat(int i, double r) {
    if (!(r > 0.0)) return 0.0;
    const double u = std::log2(r) - i;
    const double num = raw_profile(u);
    if (num == 0.0) return 0.0;
    // at most two translates overlap any point
    const int j0 = static_cast<int>(std::floor(std::log2(r)));
    double den = 0.0;
    for (int j = j0 - 1; j <= j0 + 1; ++j) den += raw_profile(std::log2(r) - j);
    return num / den;
}

LPFilterBank::LPFilterBank(const SolverParams& params) : params_(params) {
    const double xi_min = 1.0 / params.box_length();
    const double xi_max = std::sqrt(static_cast<double>(params.n())) *
                          (params.grid_size() / 2) / params.box_length();
    i_min_ = static_cast<int>(std::floor(std::log2(xi_min))) - 1;
    i_max_ = static_cast<int>(std::ceil(std::log2(xi_max))) + 1;
    const auto fsq = frequency_sq(params);
    bands_.resize(static_cast<std::size_t>(i_max_ - i_min_ + 1));
    for (int i = i_min_; i <= i_max_; ++i) {
        auto& b = bands_[static_cast<std::size_t>(i - i_min_)];
        b.resize(fsq.size());
        for (std::size_t k = 0; k < fsq.size(); ++k)
            b[k] = eta_hat(i, std::sqrt(fsq[k]));
    }
}

const std::vector<double>& LPFilterBank::band(int i) const {
    if (i < i_min_ || i > i_max_)
        throw ConfigError("filter bank band index out of range");
    return bands_[static_cast<std::size_t>(i - i_min_)];
}

LPFilterBank build_filter_bank(const SolverParams& params) {
    return LPFilterBank(params);
}

namespace {

double freq_weight(double xi_sq, double alpha, FreqWeight w) {
    if (xi_sq <= 0.0) return 0.0;
    const double base =
        (w == FreqWeight::two_pi) ? 4.0 * M_PI * M_PI * xi_sq : xi_sq;
    return std::pow(base, alpha);
}

} // namespace

double hs_norm_lp(const GridFunction& f, double alpha, const LPFilterBank& bank,
                  FreqWeight w) {
    const auto& p = f.params();
    if (!p.same_grid(bank.params()))
        throw ConfigError("filter bank grid mismatch");
    if (std::abs(alpha) >= 0.5 * p.n() + 2.0)
        throw ConfigError("hs_norm_lp: |alpha| out of quadrature range");
    const auto fsq = frequency_sq(p);
    const Spectrum fh = dft(f);
    const double hn = std::pow(p.spacing(), p.n());
    double acc = 0.0;
    for (int i = bank.i_min(); i <= bank.i_max(); ++i) {
        const auto& b = bank.band(i);
        double band_acc = 0.0;
        for (std::size_t k = 0; k < fh.size(); ++k) {
            if (b[k] == 0.0) continue;
            band_acc += freq_weight(fsq[k], alpha, w) * b[k] * b[k] *
                        std::norm(fh[k]);
        }
        acc += band_acc;
    }
    const double dxi = 1.0 / std::pow(p.box_length(), p.n());
    return std::sqrt(acc * hn * hn * dxi);
}

double hs_norm_direct(const GridFunction& f, double alpha, FreqWeight w) {
    if (alpha < 0.0)
        throw ConfigError("hs_norm_direct requires alpha >= 0");
    const auto& p = f.params();
    const auto fsq = frequency_sq(p);
    const Spectrum fh = dft(f);
    const double hn = std::pow(p.spacing(), p.n());
    double acc = 0.0;
    for (std::size_t k = 0; k < fh.size(); ++k)
        if (fsq[k] > 0.0)
            acc += freq_weight(fsq[k], alpha, w) * std::norm(fh[k]);
    const double dxi = 1.0 / std::pow(p.box_length(), p.n());
    return std::sqrt(acc * hn * hn * dxi);
}

double inf_norm_tail_integral(int n, double a, double A) {
    const double expo = n + 2.0 * a;
    if (n == 2) {
        const int nq = 4096;
        double acc = 0.0;
        for (int i = 0; i < nq; ++i) {
            const double th = (i + 0.5) * (2.0 * M_PI / nq);
            const double mx =
                std::max(std::abs(std::cos(th)), std::abs(std::sin(th)));
            acc += std::pow(mx, 2.0 * a);
        }
        return std::pow(A, -2.0 * a) / (2.0 * a) * acc * (2.0 * M_PI / nq);
    }
    // n = 3: product rule over the sphere
    const int nmu = 256, nph = 512;
    double acc = 0.0;
    for (int i = 0; i < nmu; ++i) {
        const double mu = -1.0 + (i + 0.5) * (2.0 / nmu);
        const double st = std::sqrt(std::max(0.0, 1.0 - mu * mu));
        for (int j = 0; j < nph; ++j) {
            const double ph = (j + 0.5) * (2.0 * M_PI / nph);
            const double mx = std::max(
                {std::abs(st * std::cos(ph)), std::abs(st * std::sin(ph)),
                 std::abs(mu)});
            acc += std::pow(mx, expo - n);
        }
    }
    acc *= (2.0 / nmu) * (2.0 * M_PI / nph);
    return std::pow(A, n - expo) / (expo - n) * acc;
}

namespace {

// wraps a signed lattice offset to [0, N)
inline std::uint32_t wrap(long v, std::uint32_t N) {
    long m = v % static_cast<long>(N);
    if (m < 0) m += N;
    return static_cast<std::uint32_t>(m);
}

double min_image(long idx, std::uint32_t N, double h) {
    long k = idx;
    if (k >= static_cast<long>(N / 2)) k -= static_cast<long>(N);
    return static_cast<double>(k) * h;
}

} // namespace

double gagliardo_seminorm(const GridFunction& f, double alpha) {
    if (!(alpha > 0.0) || !(alpha < 2.0))
        throw ConfigError("gagliardo_seminorm requires alpha in (0,2)");
    const auto& p = f.params();
    const std::uint32_t N = p.grid_size();
    const double h = p.spacing();
    const int n = p.n();
    const double expo = n + 2.0 * alpha;
    const double hn = std::pow(h, n);
    const std::size_t rows = N; // parallelize over the first displacement axis
    std::vector<double> partial(rows, 0.0);
    const auto& v = f.values();

    if (n == 2) {
        parallel_for(rows, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t di = lo; di < hi; ++di) {
                double acc = 0.0;
                const double y1 = min_image(static_cast<long>(di), N, h);
                for (std::uint32_t dj = 0; dj < N; ++dj) {
                    if (di == 0 && dj == 0) continue;
                    const double y2 = min_image(dj, N, h);
                    const double r2 = y1 * y1 + y2 * y2;
                    const double w = std::pow(r2, -0.5 * expo);
                    double inner = 0.0;
                    for (std::uint32_t i = 0; i < N; ++i) {
                        const std::uint32_t ip = wrap(i + di, N) * N;
                        const std::uint32_t im =
                            wrap(static_cast<long>(i) -
                                 static_cast<long>(di), N) * N;
                        const std::uint32_t ic = i * N;
                        for (std::uint32_t j = 0; j < N; ++j) {
                            const std::uint32_t jp = wrap(j + dj, N);
                            const std::uint32_t jm = wrap(
                                static_cast<long>(j) - static_cast<long>(dj),
                                N);
                            const double sd =
                                v[ip + jp] - 2.0 * v[ic + j] + v[im + jm];
                            inner += sd * sd;
                        }
                    }
                    acc += w * inner;
                }
                partial[di] = acc;
            }
        });
    } else {
        parallel_for(rows, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t di = lo; di < hi; ++di) {
                double acc = 0.0;
                const double y1 = min_image(static_cast<long>(di), N, h);
                for (std::uint32_t dj = 0; dj < N; ++dj) {
                    const double y2 = min_image(dj, N, h);
                    for (std::uint32_t dk = 0; dk < N; ++dk) {
                        if (di == 0 && dj == 0 && dk == 0) continue;
                        const double y3 = min_image(dk, N, h);
                        const double r2 = y1 * y1 + y2 * y2 + y3 * y3;
                        const double w = std::pow(r2, -0.5 * expo);
                        double inner = 0.0;
                        for (std::uint32_t i = 0; i < N; ++i) {
                            const std::size_t ip =
                                static_cast<std::size_t>(wrap(i + di, N)) * N *
                                N;
                            const std::size_t im =
                                static_cast<std::size_t>(
                                    wrap(static_cast<long>(i) -
                                         static_cast<long>(di), N)) * N * N;
                            const std::size_t ic =
                                static_cast<std::size_t>(i) * N * N;
                            for (std::uint32_t j = 0; j < N; ++j) {
                                const std::size_t jp =
                                    ip + static_cast<std::size_t>(
                                             wrap(j + dj, N)) * N;
                                const std::size_t jm =
                                    im + static_cast<std::size_t>(wrap(
                                             static_cast<long>(j) -
                                             static_cast<long>(dj), N)) * N;
                                const std::size_t jc =
                                    ic + static_cast<std::size_t>(j) * N;
                                for (std::uint32_t k = 0; k < N; ++k) {
                                    const double sd =
                                        v[jp + wrap(k + dk, N)] -
                                        2.0 * v[jc + k] +
                                        v[jm + wrap(static_cast<long>(k) -
                                                    static_cast<long>(dk),
                                                    N)];
                                    inner += sd * sd;
                                }
                            }
                        }
                        acc += w * inner;
                    }
                }
                partial[di] = acc;
            }
        });
    }
    double total = 0.0;
    for (double x : partial) total += x;
    total *= hn * hn;
    // exact far tail for centrally supported f: sd == -2 f(x) for |y|inf > L/2
    const double l2sq = f.l2_norm() * f.l2_norm();
    total += 4.0 * l2sq *
             inf_norm_tail_integral(n, alpha, 0.5 * p.box_length());
    return std::sqrt(total);
}

double dual_pairing(const GridFunction& phi, const GridFunction& f,
                    const LPFilterBank& bank) {
    const auto& p = phi.params();
    if (!p.same_grid(f.params()) || !p.same_grid(bank.params()))
        throw ConfigError("dual_pairing: grid mismatch");
    const Spectrum ph = dft(phi);
    const Spectrum fh = dft(f);
    const double hn = std::pow(p.spacing(), p.n());
    const double dxi = 1.0 / std::pow(p.box_length(), p.n());
    double acc = 0.0;
    for (int i = bank.i_min(); i <= bank.i_max(); ++i) {
        const auto& b = bank.band(i);
        double band_acc = 0.0;
        for (std::size_t k = 0; k < ph.size(); ++k) {
            if (b[k] == 0.0) continue;
            band_acc += b[k] * (ph[k] * std::conj(fh[k])).real();
        }
        acc += band_acc;
    }
    return acc * hn * hn * dxi;
}

} // namespace fraclap
