#include "fraclap/poisson.hpp"
#include "fraclap/error.hpp"
#include "fraclap/rng.hpp"

#include <boost/math/special_functions/beta.hpp>

#include <cmath>
#include <vector>

namespace fraclap {

double ball_kernel_constant(int n, double s) {
    return std::tgamma(0.5 * n) * std::pow(M_PI, -0.5 * n - 1.0) *
           std::sin(M_PI * s);
}

namespace {

double dist2n(const Point& a, const Point& b, int n) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
    return acc;
}

double sphere_area(int n) { return n == 2 ? 2.0 * M_PI : 4.0 * M_PI; }

// nodes/weights for int_0^T g(t) dt where g ~ t^-s near 0: substitute
// u = t^(1/p), p = 1/(1-s), composite Gauss-Legendre on geometric panels
struct RadialRule {
    std::vector<double> t, w;
};

RadialRule radial_rule(double T, double s, int panels, int q) {
    RadialRule r;
    const double p = 1.0 / (1.0 - s);
    const double U = std::pow(T, 1.0 - s);
    // Gauss nodes on [-1,1]
    std::vector<double> gx(q), gw(q);
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
        gx[i] = x;
        gw[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    std::vector<double> edges;
    edges.push_back(0.0);
    const int geo = panels - 1;
    for (int i = 0; i < geo; ++i)
        edges.push_back(U * std::pow(1e-6, 1.0 - double(i + 1) / geo));
    // (last edge equals U)
    for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
        const double a = edges[k], b = edges[k + 1];
        for (int i = 0; i < q; ++i) {
            const double u = 0.5 * (a + b) + 0.5 * (b - a) * gx[i];
            const double du = 0.5 * (b - a) * gw[i];
            r.t.push_back(std::pow(u, p));
            r.w.push_back(du * p * std::pow(u, p - 1.0));
        }
    }
    return r;
}

// angular rule on S^(n-1)
struct AngularRule {
    std::vector<Point> dir;
    std::vector<double> w;
};

AngularRule angular_rule(int n, const BallQuadratureOptions& opt) {
    AngularRule r;
    if (n == 2) {
        r.dir.resize(opt.n_angular);
        r.w.assign(opt.n_angular, 2.0 * M_PI / opt.n_angular);
        for (int i = 0; i < opt.n_angular; ++i) {
            const double th = (i + 0.5) * (2.0 * M_PI / opt.n_angular);
            r.dir[i] = {std::cos(th), std::sin(th), 0.0};
        }
        return r;
    }
    const int nmu = opt.n_polar, nph = 2 * opt.n_polar;
    for (int i = 0; i < nmu; ++i) {
        const double mu = -1.0 + (i + 0.5) * (2.0 / nmu);
        const double st = std::sqrt(std::max(0.0, 1.0 - mu * mu));
        for (int j = 0; j < nph; ++j) {
            const double ph = (j + 0.5) * (2.0 * M_PI / nph);
            r.dir.push_back({st * std::cos(ph), st * std::sin(ph), mu});
            r.w.push_back((2.0 / nmu) * (2.0 * M_PI / nph));
        }
    }
    return r;
}

double ring_average_abs(const BallKernel& k,
                        const std::function<double(const Point&)>& F,
                        double rho, const AngularRule& ang) {
    double acc = 0.0;
    const double r = k.ball.radius;
    for (std::size_t q = 0; q < ang.dir.size(); ++q) {
        Point y = k.ball.center;
        for (int i = 0; i < k.n; ++i) y[i] += r * rho * ang.dir[q][i];
        acc += ang.w[q] * std::abs(F(y));
    }
    return acc / sphere_area(k.n);
}

double quadrature_core(const BallKernel& k,
                       const std::function<double(const Point&)>& F,
                       const Point& x, const BallQuadratureOptions& opt) {
    const int n = k.n;
    const double s = k.s;
    const double r = k.ball.radius;
    const double C = ball_kernel_constant(n, s);
    const double d2 = dist2n(x, k.ball.center, n);
    if (!(d2 < r * r))
        throw ConfigError("solve_ball_quadrature: x must be interior");
    const double front = std::pow(r * r - d2, s);

    double T; // upper limit in t = rho - 1
    bool with_tail;
    if (std::isfinite(opt.support_radius)) {
        const double rho_max = opt.support_radius / r;
        if (rho_max <= 1.0) return 0.0;
        T = rho_max - 1.0;
        with_tail = false;
    } else {
        T = opt.rho_big - 1.0;
        with_tail = true;
    }

    const RadialRule rad = radial_rule(T, s, opt.radial_panels,
                                       opt.gauss_points);
    const AngularRule ang = angular_rule(n, opt);

    double total = 0.0;
    Point y{0.0, 0.0, 0.0};
    for (std::size_t it = 0; it < rad.t.size(); ++it) {
        const double t = rad.t[it];
        const double rho = 1.0 + t;
        const double edge = std::pow(r * r * t * (2.0 + t), -s);
        double aacc = 0.0;
        for (std::size_t q = 0; q < ang.dir.size(); ++q) {
            y = k.ball.center;
            for (int i = 0; i < n; ++i) y[i] += r * rho * ang.dir[q][i];
            const double dxy2 = dist2n(x, y, n);
            const double Kv = C * front * edge * std::pow(dxy2, -0.5 * n);
            aacc += ang.w[q] * Kv * F(y);
        }
        total += rad.w[it] * std::pow(rho, n - 1.0) * aacc;
    }
    total *= std::pow(r, n);

    if (with_tail) {
        // far-field: K ~ C front (r rho)^(-n) (r^2 rho^2)^(-s)
        const double rho_b = 1.0 + T;
        const double favg_far = ring_average_abs(k, F, rho_b, ang);
        const double favg_mid =
            ring_average_abs(k, F, std::sqrt(rho_b), ang);
        if (favg_far > 1e-12 &&
            favg_far > favg_mid * std::pow(std::sqrt(rho_b), 2.0 * s) * 2.0)
            throw ContractError(
                "poisson.nonintegrable_data",
                "exterior data grows too fast for the stable kernel");
        const double tail = C * front * std::pow(r, -2.0 * s) *
                            sphere_area(n) * std::pow(rho_b, -2.0 * s) /
                            (2.0 * s);
        // signed far average (constant-like data dominates the tail)
        double signed_avg = 0.0;
        {
            Point yy = k.ball.center;
            double acc = 0.0;
            for (std::size_t q = 0; q < ang.dir.size(); ++q) {
                yy = k.ball.center;
                for (int i = 0; i < n; ++i)
                    yy[i] += r * rho_b * ang.dir[q][i];
                acc += ang.w[q] * F(yy);
            }
            signed_avg = acc / sphere_area(n);
        }
        total += tail * signed_avg;
    }
    return total;
}

} // namespace

double ball_kernel_eval(const BallKernel& k, const Point& x, const Point& y) {
    const int n = k.n;
    const double r = k.ball.radius;
    const double dx2 = dist2n(x, k.ball.center, n);
    const double dy2 = dist2n(y, k.ball.center, n);
    if (!(dx2 < r * r))
        throw ConfigError("ball_kernel_eval: x must be strictly inside");
    if (!(dy2 > r * r))
        throw ConfigError("ball_kernel_eval: y must be strictly outside");
    const double C = ball_kernel_constant(n, k.s);
    const double ratio = (r * r - dx2) / (dy2 - r * r);
    return C * std::pow(ratio, k.s) *
           std::pow(dist2n(x, y, n), -0.5 * n);
}

double radial_exit_cdf(double s, double rho) {
    if (rho <= 1.0) return 0.0;
    return 1.0 - boost::math::ibeta(s, 1.0 - s, 1.0 / (rho * rho));
}

double radial_exit_band(double s, double rho1, double rho2) {
    return radial_exit_cdf(s, rho2) - radial_exit_cdf(s, rho1);
}

double kernel_mass(const BallKernel& k, const Point& x,
                   const BallQuadratureOptions& opt) {
    return quadrature_core(k, [](const Point&) { return 1.0; }, x, opt);
}

double solve_ball_quadrature(const BallKernel& k,
                             const std::function<double(const Point&)>& F,
                             const Point& x,
                             const BallQuadratureOptions& opt) {
    return quadrature_core(k, F, x, opt);
}

KernelBoundCheck check_kernel_bounds(const BallKernel& k, std::size_t samples,
                                     std::uint64_t seed) {
    const int n = k.n;
    const double s = k.s;
    const double r = k.ball.radius;
    double rmin = 1e300, rmax = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        CounterRng rng(seed, /*purpose=*/0xB0, i);
        // x uniform in the ball by rejection from the bounding cube
        Point x{0.0, 0.0, 0.0};
        for (;;) {
            double q2 = 0.0;
            for (int d = 0; d < n; ++d) {
                const double v = 2.0 * rng.uniform() - 1.0;
                x[d] = k.ball.center[d] + r * v;
                q2 += v * v;
            }
            if (q2 < 1.0 && q2 > 0.0) break;
        }
        // y: uniform direction, heavy-tail radius density ~ (1+R)^-(n+1)
        double dir[3] = {0.0, 0.0, 0.0};
        rng.unit_vector(n, dir);
        const double U = rng.uniform();
        const double R =
            (1.0 + r) * std::pow(1.0 - U, -1.0 / n) - 1.0;
        Point y = k.ball.center;
        for (int d = 0; d < n; ++d) y[d] += R * dir[d];

        const double dx = r - std::sqrt(dist2n(x, k.ball.center, n));
        const double dy = R - r;
        if (dx <= 0.0 || dy <= 0.0) continue;
        const double K = ball_kernel_eval(k, x, y);
        const double ratio = K * std::pow(dy, s) * std::pow(dy + 1.0, s) *
                             std::pow(dist2n(x, y, n), 0.5 * n) /
                             std::pow(dx, s);
        rmin = std::min(rmin, ratio);
        rmax = std::max(rmax, ratio);
    }
    return {rmin, rmax};
}

} // namespace fraclap
