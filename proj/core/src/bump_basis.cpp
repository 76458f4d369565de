#include "fraclap/bump_basis.hpp"
#include "fraclap/error.hpp"
#include "fraclap/fft.hpp"

#include <cmath>
#include <functional>

namespace fraclap {

double wendland_c2(double r, double h) {
    const double t = r / h;
    if (t >= 1.0) return 0.0;
    const double u = 1.0 - t;
    const double u2 = u * u;
    return u2 * u2 * (4.0 * t + 1.0);
}

namespace {

void gauss_nodes(int q, std::vector<double>& x, std::vector<double>& w) {
    x.resize(q);
    w.resize(q);
    for (int i = 0; i < q; ++i) {
        double xi = std::cos(M_PI * (i + 0.75) / (q + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = xi;
            for (int k = 2; k <= q; ++k) {
                const double p2 =
                    ((2.0 * k - 1.0) * xi * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double dp = q * (xi * p1 - p0) / (xi * xi - 1.0);
            const double dx = p1 / dp;
            xi -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double p0 = 1.0, p1 = xi;
        for (int k = 2; k <= q; ++k) {
            const double p2 = ((2.0 * k - 1.0) * xi * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        const double dp = q * (xi * p1 - p0) / (xi * xi - 1.0);
        x[i] = xi;
        w[i] = 2.0 / ((1.0 - xi * xi) * dp * dp);
    }
}

double radial_moment(int n, double h, int power) {
    // int_0^h psi(r) r^(n-1+power) dr * sphere area
    std::vector<double> gx, gw;
    gauss_nodes(32, gx, gw);
    double acc = 0.0;
    for (std::size_t i = 0; i < gx.size(); ++i) {
        const double r = 0.5 * h * (gx[i] + 1.0);
        acc += 0.5 * h * gw[i] * wendland_c2(r, h) *
               std::pow(r, n - 1 + power);
    }
    return acc * (n == 2 ? 2.0 * M_PI : 4.0 * M_PI);
}

} // namespace

double wendland_mass(int n, double h) { return radial_moment(n, h, 0); }
double wendland_second_moment(int n, double h) {
    return radial_moment(n, h, 2);
}

// ---- single-bump potential table ----------------------------------------

BumpPotentialTable::BumpPotentialTable(int n, double sigma, double h,
                                       double rho_tab_max)
    : n_(n), sigma_(sigma), h_(h), rho_tab_max_(rho_tab_max) {
    if (!(sigma > 0.0) || !(sigma < n))
        throw ConfigError("BumpPotentialTable: sigma out of (0, n)");
    cr_ = c_riesz(n, sigma);
    m0_ = wendland_mass(n, h);
    m2_ = wendland_second_moment(n, h);
    const double a = n - sigma;
    far_coef_ = a * (2.0 - sigma) / (2.0 * n); // quadrupole coefficient
    // graded rho nodes: dense through the support, log-spaced beyond
    const int n_near = 1200, n_far = 1200;
    std::vector<double> rho, val;
    rho.reserve(n_near + n_far);
    for (int i = 0; i < n_near; ++i)
        rho.push_back(3.0 * h * double(i) / double(n_near));
    const double lo = 3.0 * h, hi = rho_tab_max;
    for (int i = 0; i <= n_far; ++i)
        rho.push_back(lo * std::pow(hi / lo, double(i) / double(n_far)));
    val.resize(rho.size());
    parallel_for(rho.size(), [&](std::size_t a_, std::size_t b_) {
        for (std::size_t i = a_; i < b_; ++i) val[i] = direct_value(rho[i]);
    });
    table_ = MonotoneCubic(std::move(rho), std::move(val));
}

double BumpPotentialTable::direct_value(double rho0) const {
    // p(rho0) = c_r int r^(sigma-1) Theta(rho0, r) dr with Theta the
    // spherical average of psi at distance rho0 from the bump center
    std::vector<double> gx, gw;
    gauss_nodes(24, gx, gw);
    std::vector<double> ax, aw;
    gauss_nodes(32, ax, aw);

    auto theta = [&](double r) {
        // angular integral over the intersection with the support
        if (rho0 + r <= 0.0) return 0.0;
        double acc = 0.0;
        if (n_ == 2) {
            double phimax = M_PI;
            const double c =
                (rho0 * rho0 + r * r - h_ * h_) / (2.0 * rho0 * r);
            if (rho0 > 0.0 && r > 0.0 && c > -1.0)
                phimax = (c >= 1.0) ? 0.0 : std::acos(c);
            if (phimax == 0.0) return 0.0;
            for (std::size_t q = 0; q < ax.size(); ++q) {
                const double ph = 0.5 * phimax * (ax[q] + 1.0);
                const double d2 = rho0 * rho0 + r * r -
                                  2.0 * rho0 * r * std::cos(ph);
                acc += 0.5 * phimax * aw[q] *
                       wendland_c2(std::sqrt(std::max(0.0, d2)), h_);
            }
            return 2.0 * acc; // symmetric in phi
        }
        // n = 3: 2 pi int over mu of psi(sqrt(rho0^2+r^2-2 rho0 r mu))
        double mu_min = -1.0;
        if (rho0 > 0.0 && r > 0.0)
            mu_min = std::clamp(
                (rho0 * rho0 + r * r - h_ * h_) / (2.0 * rho0 * r), -1.0,
                1.0);
        if (mu_min >= 1.0) return 0.0;
        for (std::size_t q = 0; q < ax.size(); ++q) {
            const double mu =
                0.5 * (mu_min + 1.0) + 0.5 * (1.0 - mu_min) * ax[q];
            const double d2 =
                rho0 * rho0 + r * r - 2.0 * rho0 * r * mu;
            acc += 0.5 * (1.0 - mu_min) * aw[q] *
                   wendland_c2(std::sqrt(std::max(0.0, d2)), h_);
        }
        return 2.0 * M_PI * acc;
    };

    const double r_lo = std::max(0.0, rho0 - h_);
    const double r_hi = rho0 + h_;
    double acc = 0.0;
    if (r_lo > 0.0) {
        // smooth radial weight on [r_lo, r_hi]
        const int panels = 8;
        for (int pnl = 0; pnl < panels; ++pnl) {
            const double a_ = r_lo + (r_hi - r_lo) * pnl / panels;
            const double b_ = r_lo + (r_hi - r_lo) * (pnl + 1) / panels;
            for (std::size_t q = 0; q < gx.size(); ++q) {
                const double r = 0.5 * (a_ + b_) + 0.5 * (b_ - a_) * gx[q];
                acc += 0.5 * (b_ - a_) * gw[q] *
                       std::pow(r, sigma_ - 1.0) * theta(r);
            }
        }
    } else {
        // substitution u = r^sigma absorbs the origin weight exactly
        const double U = std::pow(r_hi, sigma_);
        const int panels = 8;
        for (int pnl = 0; pnl < panels; ++pnl) {
            const double a_ = U * pnl / panels;
            const double b_ = U * (pnl + 1) / panels;
            for (std::size_t q = 0; q < gx.size(); ++q) {
                const double u = 0.5 * (a_ + b_) + 0.5 * (b_ - a_) * gx[q];
                const double r = std::pow(u, 1.0 / sigma_);
                acc += 0.5 * (b_ - a_) * gw[q] * theta(r) / sigma_;
            }
        }
    }
    return cr_ * acc;
}

double BumpPotentialTable::operator()(double rho) const {
    if (rho <= rho_tab_max_) return table_(rho);
    const double a = n_ - sigma_;
    return cr_ * std::pow(rho, -a) *
           (m0_ + far_coef_ * m2_ / (rho * rho));
}

// ---- basis ---------------------------------------------------------------

ExteriorBasis make_exterior_basis(const Domain& d, double R_trunc, double h,
                                  double box_length) {
    if (R_trunc + h > 0.25 * box_length)
        throw ConfigError("exterior annulus escapes the central half-box");
    ExteriorBasis b;
    b.n = d.n();
    b.h = h;
    for (const auto& x : exterior_annulus_nodes(d, R_trunc, h)) {
        if (d.boundary_distance(x) > h * (1.0 + 1e-9)) b.nodes.push_back(x);
    }
    return b;
}

// ---- pair integrals -------------------------------------------------------

PairIntegralCache::PairIntegralCache(const BumpPotentialTable& table,
                                     double h, int n)
    : table_(table), h_(h), n_(n) {}

double PairIntegralCache::integrate(double d) const {
    // A(d) = int psi(|w|) p(|w + d e1|) dw, reduced to (radius, angle)
    std::vector<double> gx, gw, ax, aw;
    gauss_nodes(20, gx, gw);
    gauss_nodes(48, ax, aw);
    double acc = 0.0;
    for (std::size_t i = 0; i < gx.size(); ++i) {
        const double r = 0.5 * h_ * (gx[i] + 1.0);
        const double wr = 0.5 * h_ * gw[i] * wendland_c2(r, h_);
        double ang = 0.0;
        if (n_ == 2) {
            for (std::size_t q = 0; q < ax.size(); ++q) {
                const double ph = 0.5 * M_PI * (ax[q] + 1.0); // [0, pi]
                const double rho = std::sqrt(std::max(
                    0.0, d * d + r * r + 2.0 * d * r * std::cos(ph)));
                ang += 0.5 * M_PI * aw[q] * table_(rho);
            }
            ang *= 2.0;         // phi symmetry
            acc += wr * r * ang;
        } else {
            for (std::size_t q = 0; q < ax.size(); ++q) {
                const double mu = ax[q];
                const double rho = std::sqrt(std::max(
                    0.0, d * d + r * r + 2.0 * d * r * mu));
                ang += aw[q] * table_(rho);
            }
            ang *= 2.0 * M_PI;
            acc += wr * r * r * ang;
        }
    }
    return acc;
}

double PairIntegralCache::value(long long d2_cells) const {
    auto it = cache_.find(d2_cells);
    if (it != cache_.end()) return it->second;
    throw Error("pair integral not precomputed");
}

void PairIntegralCache::precompute(const std::vector<long long>& keys,
                                   int threads) {
    std::vector<double> vals(keys.size());
    parallel_for(keys.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i)
            vals[i] = integrate(h_ * std::sqrt(double(keys[i])));
    }, threads);
    for (std::size_t i = 0; i < keys.size(); ++i) cache_[keys[i]] = vals[i];
}

double bump_project(const Point& node, double h, int n,
                    const std::function<double(const Point&)>& F) {
    std::vector<double> gx, gw, ax, aw;
    gauss_nodes(20, gx, gw);
    gauss_nodes(32, ax, aw);
    double acc = 0.0;
    for (std::size_t i = 0; i < gx.size(); ++i) {
        const double r = 0.5 * h * (gx[i] + 1.0);
        const double wr = 0.5 * h * gw[i] * wendland_c2(r, h);
        if (n == 2) {
            // full-circle trapezoid is exact enough for smooth data
            const int nph = 64;
            double ang = 0.0;
            for (int q = 0; q < nph; ++q) {
                const double ph = (q + 0.5) * (2.0 * M_PI / nph);
                Point y = node;
                y[0] += r * std::cos(ph);
                y[1] += r * std::sin(ph);
                ang += F(y);
            }
            acc += wr * r * ang * (2.0 * M_PI / nph);
        } else {
            double ang = 0.0;
            const int nph = 32;
            for (std::size_t q = 0; q < ax.size(); ++q) {
                const double mu = ax[q];
                const double st = std::sqrt(std::max(0.0, 1.0 - mu * mu));
                for (int pq = 0; pq < nph; ++pq) {
                    const double ph = (pq + 0.5) * (2.0 * M_PI / nph);
                    Point y = node;
                    y[0] += r * st * std::cos(ph);
                    y[1] += r * st * std::sin(ph);
                    y[2] += r * mu;
                    ang += aw[q] * F(y) * (2.0 * M_PI / nph);
                }
            }
            acc += wr * r * r * ang;
        }
    }
    return acc;
}

} // namespace fraclap
