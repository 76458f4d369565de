#include "fraclap/frac_ops.hpp"
#include "fraclap/error.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

namespace fraclap {

std::vector<double> frac_laplacian_symbol(const SolverParams& params,
                                          double s) {
    auto fsq = frequency_sq(params);
    std::vector<double> sym(fsq.size());
    for (std::size_t k = 0; k < fsq.size(); ++k)
        sym[k] = fsq[k] > 0.0
                     ? std::pow(4.0 * M_PI * M_PI * fsq[k], s)
                     : 0.0;
    return sym;
}

std::vector<double> riesz_symbol(const SolverParams& params, double sigma) {
    auto fsq = frequency_sq(params);
    std::vector<double> sym(fsq.size());
    for (std::size_t k = 0; k < fsq.size(); ++k)
        sym[k] = fsq[k] > 0.0
                     ? std::pow(4.0 * M_PI * M_PI * fsq[k], -0.5 * sigma)
                     : 0.0;
    return sym;
}

GridFunction delta_s_fourier(const GridFunction& f, double s) {
    return apply_multiplier(f, frac_laplacian_symbol(f.params(), s));
}

GridFunction riesz_fourier(const GridFunction& f, double sigma) {
    const auto& p = f.params();
    if (!(sigma > 0.0) || !(sigma < p.n()))
        throw ConfigError("riesz_fourier: sigma out of (0, n)");
    const double rms =
        f.l2_norm() / std::pow(p.box_length(), 0.5 * p.n());
    if (std::abs(f.mean()) > 1e-10 * rms && rms > 0.0)
        throw ConfigError("riesz_fourier requires zero-mean input");
    return apply_multiplier(f, riesz_symbol(p, sigma));
}

KernelQuadratureScheme default_singular_scheme(int n) {
    return n == 2 ? KernelQuadratureScheme{24, 6, 6}
                  : KernelQuadratureScheme{6, 3, 3};
}

KernelQuadratureScheme default_riesz_scheme(int n) {
    return n == 2 ? KernelQuadratureScheme{8, 3, 0}
                  : KernelQuadratureScheme{4, 2, 0};
}

namespace {

// ---- little quadrature helpers on displacement cells -----------------

struct GaussRule {
    std::vector<double> x, w; // on [-1, 1]
};

GaussRule gauss_rule(int q) {
    // Golub-Welsch via Newton on Legendre polynomials
    GaussRule r;
    r.x.resize(q);
    r.w.resize(q);
    for (int i = 0; i < q; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (q + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= q; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = q * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= q; ++k) {
            double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        double dp = q * (x * p1 - p0) / (x * x - 1.0);
        r.x[i] = x;
        r.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

// integral of g(y) over the cell of side h centered at yc, g = |y|^-a or
// y1^2 |y|^-a; the cell must not contain the origin
double cell_integral(int n, const double* yc, double h, double a,
                     bool moment, const GaussRule& g) {
    const int q = static_cast<int>(g.x.size());
    double acc = 0.0;
    if (n == 2) {
        for (int i = 0; i < q; ++i)
            for (int j = 0; j < q; ++j) {
                const double y1 = yc[0] + 0.5 * h * g.x[i];
                const double y2 = yc[1] + 0.5 * h * g.x[j];
                const double r2 = y1 * y1 + y2 * y2;
                double val = std::pow(r2, -0.5 * a);
                if (moment) val *= y1 * y1;
                acc += g.w[i] * g.w[j] * val;
            }
        return acc * 0.25 * h * h;
    }
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j)
            for (int k = 0; k < q; ++k) {
                const double y1 = yc[0] + 0.5 * h * g.x[i];
                const double y2 = yc[1] + 0.5 * h * g.x[j];
                const double y3 = yc[2] + 0.5 * h * g.x[k];
                const double r2 = y1 * y1 + y2 * y2 + y3 * y3;
                double val = std::pow(r2, -0.5 * a);
                if (moment) val *= y1 * y1;
                acc += g.w[i] * g.w[j] * g.w[k] * val;
            }
    return acc * 0.125 * h * h * h;
}

// integral over the origin cell in polar form; power p is the exponent of
// the radial antiderivative: int_0^rc r^(p-1) dr = rc^p / p (p > 0).
// moment=false: g = |y|^-a, p = n - a ; moment=true: g = y1^2 |y|^-a,
// p = n + 2 - a.
double center_cell_integral(int n, double h, double a, bool moment) {
    if (n == 2) {
        const int nq = 4096;
        const double p = (moment ? 4.0 : 2.0) - a;
        double acc = 0.0;
        for (int i = 0; i < nq; ++i) {
            const double th = (i + 0.5) * (2.0 * M_PI / nq);
            const double c = std::cos(th), s_ = std::sin(th);
            const double rc =
                0.5 * h / std::max(std::abs(c), std::abs(s_));
            double val = std::pow(rc, p) / p;
            if (moment) val *= c * c;
            acc += val;
        }
        return acc * (2.0 * M_PI / nq);
    }
    const int nmu = 128, nph = 256;
    const double p = (moment ? 5.0 : 3.0) - a;
    double acc = 0.0;
    for (int i = 0; i < nmu; ++i) {
        const double mu = -1.0 + (i + 0.5) * (2.0 / nmu);
        const double st = std::sqrt(std::max(0.0, 1.0 - mu * mu));
        for (int j = 0; j < nph; ++j) {
            const double ph = (j + 0.5) * (2.0 * M_PI / nph);
            const double t1 = st * std::cos(ph);
            const double t2 = st * std::sin(ph);
            const double mx =
                std::max({std::abs(t1), std::abs(t2), std::abs(mu)});
            const double rc = 0.5 * h / mx;
            double val = std::pow(rc, p) / p;
            if (moment) val *= t1 * t1;
            acc += val;
        }
    }
    return acc * (2.0 / nmu) * (2.0 * M_PI / nph);
}

// min-image displacement lattice (flattened, same layout as GridFunction)
std::vector<double> displacement_sq(const SolverParams& p,
                                    std::vector<std::array<double, 3>>* pts) {
    const std::uint32_t N = p.grid_size();
    const double h = p.spacing();
    std::vector<double> axis(N);
    for (std::uint32_t i = 0; i < N; ++i) {
        const double k = (i < N / 2) ? static_cast<double>(i)
                                     : static_cast<double>(i) - N;
        axis[i] = k * h;
    }
    std::vector<double> out(p.node_count());
    if (pts) pts->resize(p.node_count());
    std::size_t idx = 0;
    if (p.n() == 2) {
        for (std::uint32_t i = 0; i < N; ++i)
            for (std::uint32_t j = 0; j < N; ++j, ++idx) {
                out[idx] = axis[i] * axis[i] + axis[j] * axis[j];
                if (pts) (*pts)[idx] = {axis[i], axis[j], 0.0};
            }
    } else {
        for (std::uint32_t i = 0; i < N; ++i)
            for (std::uint32_t j = 0; j < N; ++j)
                for (std::uint32_t k = 0; k < N; ++k, ++idx) {
                    out[idx] = axis[i] * axis[i] + axis[j] * axis[j] +
                               axis[k] * axis[k];
                    if (pts)
                        (*pts)[idx] = {axis[i], axis[j], axis[k]};
                }
    }
    return out;
}

std::size_t flat_of(const SolverParams& p, long i, long j, long k) {
    const long N = p.grid_size();
    auto w = [N](long v) {
        long m = v % N;
        return m < 0 ? m + N : m;
    };
    if (p.n() == 2) return static_cast<std::size_t>(w(i) * N + w(j));
    return static_cast<std::size_t>((w(i) * N + w(j)) * N + w(k));
}

// directions and weights for ray-box integrals over the sphere
struct DirRule {
    std::vector<std::array<double, 3>> d;
    std::vector<double> w;
};

DirRule directions(int n, int n2d = 512, int nmu = 48, int nph = 96) {
    DirRule r;
    if (n == 2) {
        r.d.resize(n2d);
        r.w.assign(n2d, 2.0 * M_PI / n2d);
        for (int i = 0; i < n2d; ++i) {
            const double th = (i + 0.5) * (2.0 * M_PI / n2d);
            r.d[i] = {std::cos(th), std::sin(th), 0.0};
        }
        return r;
    }
    for (int i = 0; i < nmu; ++i) {
        const double mu = -1.0 + (i + 0.5) * (2.0 / nmu);
        const double st = std::sqrt(std::max(0.0, 1.0 - mu * mu));
        for (int j = 0; j < nph; ++j) {
            const double ph = (j + 0.5) * (2.0 * M_PI / nph);
            r.d.push_back({st * std::cos(ph), st * std::sin(ph), mu});
            r.w.push_back((2.0 / nmu) * (2.0 * M_PI / nph));
        }
    }
    return r;
}

// int over {|z|inf > A} of |y - z|^-a dz for every lattice displacement y
// (convergent for a > n); exact radial integral per direction
void add_ray_box_tail(const SolverParams& p,
                      const std::vector<std::array<double, 3>>& ypts,
                      double A, double a, double scale,
                      std::vector<double>& W) {
    const int n = p.n();
    DirRule dir = directions(n);
    const double pw = static_cast<double>(n) - a; // r^(n-1-a) antiderivative
    parallel_for(W.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t idx = lo; idx < hi; ++idx) {
            const auto& y = ypts[idx];
            double acc = 0.0;
            for (std::size_t q = 0; q < dir.d.size(); ++q) {
                const auto& th = dir.d[q];
                double rex = 1e300;
                for (int ax = 0; ax < n; ++ax) {
                    if (th[ax] == 0.0) continue;
                    const double t =
                        (A * (th[ax] > 0 ? 1.0 : -1.0) - y[ax]) / th[ax];
                    rex = std::min(rex, t);
                }
                acc += dir.w[q] * std::pow(rex, pw) / (a - n);
            }
            W[idx] += scale * acc;
        }
    });
}

using SchemeKey = std::tuple<int, std::uint32_t, double, double, int>;

std::mutex g_table_mutex;

} // namespace

SecondDifferenceTable build_second_difference_table(
    const SolverParams& params, double s, const KernelQuadratureScheme& sch) {
    const int n = params.n();
    const double h = params.spacing();
    const double L = params.box_length();
    const double a = n + 2.0 * s;
    const double hn = std::pow(h, n);

    std::vector<std::array<double, 3>> ypts;
    std::vector<double> r2 = displacement_sq(params, &ypts);

    // midpoint weights away from the singularity
    std::vector<double> W(r2.size(), 0.0);
    for (std::size_t i = 1; i < r2.size(); ++i)
        W[i] = hn * std::pow(r2[i], -0.5 * a);
    W[0] = 0.0;

    // product-integration weights near the singularity
    GaussRule g = gauss_rule(n == 2 ? 16 : 8);
    const int mp = sch.pi_radius;
    auto for_block = [&](int radius, auto&& fn) {
        for (long i = -radius; i <= radius; ++i)
            for (long j = -radius; j <= radius; ++j) {
                if (n == 2) {
                    fn(i, j, 0L);
                } else {
                    for (long k = -radius; k <= radius; ++k) fn(i, j, k);
                }
            }
    };
    for_block(mp, [&](long i, long j, long k) {
        if (i == 0 && j == 0 && k == 0) return;
        double yc[3] = {i * h, j * h, k * h};
        W[flat_of(params, i, j, k)] =
            cell_integral(n, yc, h, a, false, g);
    });

    // quadratic-subtraction correction: continuum moment of y1^2 k over the
    // block minus the discrete moment of the weights; applied through the
    // finite-difference Laplacian stencil
    double w_cont = center_cell_integral(n, h, a, true);
    double m_disc = 0.0;
    for_block(sch.block_radius, [&](long i, long j, long k) {
        if (i == 0 && j == 0 && k == 0) return;
        double yc[3] = {i * h, j * h, k * h};
        w_cont += cell_integral(n, yc, h, a, true, g);
        m_disc += (i * h) * (i * h) * W[flat_of(params, i, j, k)];
    });
    const double w_corr = w_cont - m_disc;

    // periodization: image shells plus the exact integral tail
    const int M = sch.image_shells;
    {
        std::vector<double> R(W.size(), 0.0);
        parallel_for(W.size(), [&](std::size_t lo, std::size_t hi) {
            for (std::size_t idx = lo; idx < hi; ++idx) {
                const auto& y = ypts[idx];
                double acc = 0.0;
                for (long mi = -M; mi <= M; ++mi)
                    for (long mj = -M; mj <= M; ++mj) {
                        if (n == 2) {
                            if (mi == 0 && mj == 0) continue;
                            const double d1 = y[0] - mi * L;
                            const double d2 = y[1] - mj * L;
                            acc += std::pow(d1 * d1 + d2 * d2, -0.5 * a);
                        } else {
                            for (long mk = -M; mk <= M; ++mk) {
                                if (mi == 0 && mj == 0 && mk == 0) continue;
                                const double d1 = y[0] - mi * L;
                                const double d2 = y[1] - mj * L;
                                const double d3 = y[2] - mk * L;
                                acc += std::pow(
                                    d1 * d1 + d2 * d2 + d3 * d3, -0.5 * a);
                            }
                        }
                    }
                R[idx] = acc;
            }
        });
        for (std::size_t i = 0; i < W.size(); ++i) W[i] += hn * R[i];
        add_ray_box_tail(params, ypts, (M + 0.5) * L, a,
                         hn / std::pow(L, n), W);
    }

    SecondDifferenceTable t;
    t.corr_weights.assign(W.size(), 0.0);
    for (std::size_t i = 0; i < W.size(); ++i)
        t.corr_weights[i] = 2.0 * W[i];
    const double stencil = w_corr / (h * h);
    t.corr_weights[flat_of(params, 1, 0, 0)] += stencil;
    t.corr_weights[flat_of(params, -1, 0, 0)] += stencil;
    t.corr_weights[flat_of(params, 0, 1, 0)] += stencil;
    t.corr_weights[flat_of(params, 0, -1, 0)] += stencil;
    if (n == 3) {
        t.corr_weights[flat_of(params, 0, 0, 1)] += stencil;
        t.corr_weights[flat_of(params, 0, 0, -1)] += stencil;
    }
    t.weight_sum = 0.0;
    for (double w : t.corr_weights) t.weight_sum += w;
    GridFunction wf(params, t.corr_weights);
    t.corr_weights_hat = dft(wf);
    return t;
}

GridFunction apply_second_difference(const GridFunction& f, double s,
                                     const SecondDifferenceTable& table) {
    const auto& p = f.params();
    Spectrum fh = dft(f);
    for (std::size_t k = 0; k < fh.size(); ++k)
        fh[k] *= std::conj(table.corr_weights_hat[k]);
    GridFunction corr = idft(fh, p);
    const double c = c_delta(p.n(), s);
    GridFunction out(p);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = -c * (corr[i] - table.weight_sum * f[i]);
    return out;
}

RieszKernelTable build_riesz_kernel_table(const SolverParams& params,
                                          double sigma,
                                          const KernelQuadratureScheme& sch) {
    const int n = params.n();
    const double h = params.spacing();
    const double L = params.box_length();
    const double a = n - sigma; // kernel power, 0 < a < n
    const double hn = std::pow(h, n);

    std::vector<std::array<double, 3>> ypts;
    std::vector<double> r2 = displacement_sq(params, &ypts);

    std::vector<double> W(r2.size(), 0.0);
    for (std::size_t i = 1; i < r2.size(); ++i)
        W[i] = hn * std::pow(r2[i], -0.5 * a);
    W[0] = center_cell_integral(n, h, a, false);

    GaussRule g = gauss_rule(n == 2 ? 16 : 8);
    for (long i = -sch.pi_radius; i <= sch.pi_radius; ++i)
        for (long j = -sch.pi_radius; j <= sch.pi_radius; ++j) {
            if (n == 2) {
                if (i == 0 && j == 0) continue;
                double yc[3] = {i * h, j * h, 0.0};
                W[flat_of(params, i, j, 0)] =
                    cell_integral(n, yc, h, a, false, g);
            } else {
                for (long k = -sch.pi_radius; k <= sch.pi_radius; ++k) {
                    if (i == 0 && j == 0 && k == 0) continue;
                    double yc[3] = {i * h, j * h, k * h};
                    W[flat_of(params, i, j, k)] =
                        cell_integral(n, yc, h, a, false, g);
                }
            }
        }

    // centered image shells (constants drop against zero-mean input) plus
    // the isotropic quadratic tail of the lattice sum
    const int M = sch.image_shells;
    parallel_for(W.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t idx = lo; idx < hi; ++idx) {
            const auto& y = ypts[idx];
            double acc = 0.0;
            for (long mi = -M; mi <= M; ++mi)
                for (long mj = -M; mj <= M; ++mj) {
                    if (n == 2) {
                        if (mi == 0 && mj == 0) continue;
                        const double d1 = y[0] - mi * L;
                        const double d2 = y[1] - mj * L;
                        const double c0 = std::pow(
                            double(mi) * mi + double(mj) * mj, -0.5 * a) *
                            std::pow(L, -a);
                        acc += std::pow(d1 * d1 + d2 * d2, -0.5 * a) - c0;
                    } else {
                        for (long mk = -M; mk <= M; ++mk) {
                            if (mi == 0 && mj == 0 && mk == 0) continue;
                            const double d1 = y[0] - mi * L;
                            const double d2 = y[1] - mj * L;
                            const double d3 = y[2] - mk * L;
                            const double c0 =
                                std::pow(double(mi) * mi + double(mj) * mj +
                                             double(mk) * mk,
                                         -0.5 * a) *
                                std::pow(L, -a);
                            acc += std::pow(d1 * d1 + d2 * d2 + d3 * d3,
                                            -0.5 * a) -
                                   c0;
                        }
                    }
                }
            W[idx] += hn * acc;
        }
    });
    // quadratic tail: (a^2/4) |y|^2 * (1/L^n) int_{|z|inf>A} |z|^-(a+2) dz
    {
        const double A = (M + 0.5) * L;
        DirRule dir = directions(n);
        double Dtr = 0.0;
        for (std::size_t q = 0; q < dir.d.size(); ++q) {
            double mx = 0.0;
            for (int ax = 0; ax < n; ++ax)
                mx = std::max(mx, std::abs(dir.d[q][ax]));
            Dtr += dir.w[q] * std::pow(A / mx, n - a - 2.0) / (a + 2.0 - n);
        }
        const double coef =
            0.25 * a * a * Dtr / std::pow(L, n) * hn;
        for (std::size_t i = 0; i < W.size(); ++i) W[i] += coef * r2[i];
    }

    RieszKernelTable t;
    t.conv_weights = std::move(W);
    for (std::size_t i = 0; i < t.conv_weights.size(); ++i)
        t.conv_weights[i] *= c_riesz(n, sigma);
    GridFunction wf(params, t.conv_weights);
    t.conv_weights_hat = dft(wf);
    return t;
}

GridFunction apply_riesz_kernel(const GridFunction& f, double sigma,
                                const RieszKernelTable& table) {
    (void)sigma;
    Spectrum fh = dft(f);
    for (std::size_t k = 0; k < fh.size(); ++k)
        fh[k] *= table.conv_weights_hat[k];
    return idft(fh, f.params());
}

namespace {

const SecondDifferenceTable& cached_sd_table(const SolverParams& p, double s) {
    static std::map<SchemeKey, SecondDifferenceTable> cache;
    std::lock_guard<std::mutex> lock(g_table_mutex);
    SchemeKey key{p.n(), p.grid_size(), p.box_length(), s, 0};
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache
                 .emplace(key, build_second_difference_table(
                                   p, s, default_singular_scheme(p.n())))
                 .first;
    return it->second;
}

const RieszKernelTable& cached_riesz_table(const SolverParams& p,
                                           double sigma) {
    static std::map<SchemeKey, RieszKernelTable> cache;
    std::lock_guard<std::mutex> lock(g_table_mutex);
    SchemeKey key{p.n(), p.grid_size(), p.box_length(), sigma, 1};
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache
                 .emplace(key, build_riesz_kernel_table(
                                   p, sigma, default_riesz_scheme(p.n())))
                 .first;
    return it->second;
}

} // namespace

GridFunction delta_s_singular(const GridFunction& f, double s) {
    return apply_second_difference(f, s, cached_sd_table(f.params(), s));
}

GridFunction riesz_kernel(const GridFunction& f, double sigma) {
    const auto& p = f.params();
    if (!(sigma > 0.0) || !(sigma < p.n()))
        throw ConfigError("riesz_kernel: sigma out of (0, n)");
    const double rms = f.l2_norm() / std::pow(p.box_length(), 0.5 * p.n());
    if (std::abs(f.mean()) > 1e-10 * rms && rms > 0.0)
        throw ConfigError("riesz_kernel requires zero-mean input");
    return apply_riesz_kernel(f, sigma, cached_riesz_table(p, sigma));
}

} // namespace fraclap
