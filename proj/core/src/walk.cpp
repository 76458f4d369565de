#include "fraclap/walk.hpp"
#include "fraclap/error.hpp"
#include "fraclap/fft.hpp"
#include "fraclap/interp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace fraclap {

// ---- monotone cubic ----------------------------------------------------

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    m_.assign(n, 0.0);
    if (n < 2) return;
    std::vector<double> d(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i)
        d[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);
    m_[0] = d[0];
    m_[n - 1] = d[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (d[i - 1] * d[i] <= 0.0)
            m_[i] = 0.0;
        else
            m_[i] = 2.0 * d[i - 1] * d[i] / (d[i - 1] + d[i]); // harmonic mean
    }
    // Fritsch-Carlson limiter
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (d[i] == 0.0) {
            m_[i] = m_[i + 1] = 0.0;
            continue;
        }
        const double a = m_[i] / d[i], b = m_[i + 1] / d[i];
        const double s2 = a * a + b * b;
        if (s2 > 9.0) {
            const double t = 3.0 / std::sqrt(s2);
            m_[i] = t * a * d[i];
            m_[i + 1] = t * b * d[i];
        }
    }
}

double MonotoneCubic::operator()(double xq) const {
    if (xq <= x_.front()) return y_.front();
    if (xq >= x_.back()) return y_.back();
    const auto it = std::upper_bound(x_.begin(), x_.end(), xq);
    const std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
    const double hseg = x_[i + 1] - x_[i];
    const double t = (xq - x_[i]) / hseg;
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
    return h00 * y_[i] + h10 * hseg * m_[i] + h01 * y_[i + 1] +
           h11 * hseg * m_[i + 1];
}

// ---- radial exit table ---------------------------------------------------

namespace {

// incomplete-beta style series around the endpoints of
// H(w) = int_0^w v^(s-1) (1-v)^(-s) dv
double series_low(double s, double w, int terms = 24) {
    // (1-v)^(-s) = sum c_m v^m, c_0 = 1, c_m = c_{m-1} (s+m-1)/m
    double c = 1.0, acc = 0.0;
    for (int m = 0; m < terms; ++m) {
        acc += c * std::pow(w, s + m) / (s + m);
        c *= (s + m) / (m + 1.0);
    }
    return acc;
}

double series_high(double s, double z, int terms = 24) {
    // int_0^z (1-t)^(s-1) t^(-s) dt, z = 1 - w
    double c = 1.0, acc = 0.0;
    for (int m = 0; m < terms; ++m) {
        acc += c * std::pow(z, 1.0 - s + m) / (1.0 - s + m);
        c *= (m + 1.0 - s) / (m + 1.0);
    }
    return acc;
}

// Gauss-Legendre nodes on [-1,1]
void gauss(int q, std::vector<double>& x, std::vector<double>& w) {
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

} // namespace

RadialExitTable::RadialExitTable(double s, std::size_t nodes_per_side)
    : s_(s), sin_over_pi_(std::sin(M_PI * s) / M_PI) {
    if (!(s > 0.0) || !(s < 1.0))
        throw ConfigError("RadialExitTable: s out of (0,1)");
    // endpoint cut points: CDF mass below/above the table ~ 1e-9
    const double w_min =
        std::pow(1e-9 * s / sin_over_pi_, 1.0 / s);
    const double z_min =
        std::pow(1e-9 * (1.0 - s) / sin_over_pi_, 1.0 / (1.0 - s));

    std::vector<double> gx, gw;
    gauss(16, gx, gw);
    auto integrand = [&](double v) {
        return std::pow(v, s - 1.0) * std::pow(1.0 - v, -s);
    };

    // lower half: w geometric in [w_min, 1/2]
    {
        std::vector<double> lw(nodes_per_side), lu(nodes_per_side);
        const double ratio = std::pow(0.5 / w_min,
                                      1.0 / double(nodes_per_side - 1));
        double acc = series_low(s, w_min);
        double prev = w_min;
        for (std::size_t i = 0; i < nodes_per_side; ++i) {
            const double w = w_min * std::pow(ratio, double(i));
            if (i > 0) {
                double seg = 0.0;
                for (std::size_t q = 0; q < gx.size(); ++q) {
                    const double v =
                        0.5 * (prev + w) + 0.5 * (w - prev) * gx[q];
                    seg += 0.5 * (w - prev) * gw[q] * integrand(v);
                }
                acc += seg;
                prev = w;
            }
            lw[i] = std::log(w);
            lu[i] = std::log(sin_over_pi_ * acc);
        }
        g_half_ = sin_over_pi_ * acc; // CDF at w = 1/2
        inv_lo_ = MonotoneCubic(lu, lw);
        cdf_lo_ = MonotoneCubic(lw, lu);
        u_lo_ = std::exp(lu.front());
    }
    // upper half: z = 1 - w geometric in [z_min, 1/2]; tail T(z) = 1 - CDF
    {
        std::vector<double> lz(nodes_per_side), lt(nodes_per_side);
        const double ratio = std::pow(0.5 / z_min,
                                      1.0 / double(nodes_per_side - 1));
        double acc = series_high(s, z_min); // int_0^z of the flipped integrand
        double prev = z_min;
        for (std::size_t i = 0; i < nodes_per_side; ++i) {
            const double z = z_min * std::pow(ratio, double(i));
            if (i > 0) {
                double seg = 0.0;
                for (std::size_t q = 0; q < gx.size(); ++q) {
                    const double t =
                        0.5 * (prev + z) + 0.5 * (z - prev) * gx[q];
                    seg += 0.5 * (z - prev) * gw[q] *
                           std::pow(1.0 - t, s - 1.0) * std::pow(t, -s);
                }
                acc += seg;
                prev = z;
            }
            lz[i] = std::log(z);
            lt[i] = std::log(sin_over_pi_ * acc);
        }
        // acc at z=1/2 should equal 1 - g_half_; fold any quadrature drift
        // into the high-side scale so the two halves meet exactly
        const double scale = (1.0 - g_half_) / (sin_over_pi_ * acc);
        for (auto& v : lt) v += std::log(scale);
        inv_hi_ = MonotoneCubic(lt, lz);
        cdf_hi_ = MonotoneCubic(lz, lt);
        u_hi_ = std::exp(lt.front()); // tail mass at z_min
    }
}

double RadialExitTable::sample_w(double u) const {
    u = std::clamp(u, 0.0, 1.0 - 1e-12);
    if (u <= g_half_) {
        if (u < u_lo_) // analytic leading-order inversion below the table
            return std::pow(u * s_ / sin_over_pi_, 1.0 / s_);
        return std::exp(inv_lo_(std::log(u)));
    }
    const double t = 1.0 - u; // tail mass
    double z;
    if (t < u_hi_)
        z = std::pow(t * (1.0 - s_) / sin_over_pi_, 1.0 / (1.0 - s_));
    else
        z = std::exp(inv_hi_(std::log(t)));
    return 1.0 - z;
}

double RadialExitTable::sample_rho(double u) const {
    const double w = std::clamp(sample_w(u), 1e-300, 1.0 - 1e-9);
    return 1.0 / std::sqrt(w);
}

double RadialExitTable::cdf_w(double w) const {
    if (w <= 0.0) return 0.0;
    if (w >= 1.0) return 1.0;
    if (w <= 0.5) {
        if (std::log(w) <= cdf_lo_.x_front())
            return sin_over_pi_ * series_low(s_, w);
        return std::exp(cdf_lo_(std::log(w)));
    }
    const double z = 1.0 - w;
    double tail;
    if (std::log(z) <= cdf_hi_.x_front())
        tail = sin_over_pi_ * series_high(s_, z);
    else
        tail = std::exp(cdf_hi_(std::log(z)));
    return 1.0 - tail;
}

double RadialExitTable::cdf_rho(double rho) const {
    if (rho <= 1.0) return 0.0;
    return 1.0 - cdf_w(1.0 / (rho * rho));
}

const RadialExitTable& radial_exit_table(double s) {
    static std::map<double, RadialExitTable> cache;
    static std::mutex m;
    std::lock_guard<std::mutex> lock(m);
    auto it = cache.find(s);
    if (it == cache.end()) it = cache.emplace(s, RadialExitTable(s)).first;
    return it->second;
}

Point sample_ball_exit(const Point& center, double radius, double s, int n,
                       CounterRng& rng) {
    if (!(radius > 0.0)) throw ConfigError("sample_ball_exit: radius <= 0");
    const RadialExitTable& tab = radial_exit_table(s);
    const double rho = tab.sample_rho(rng.uniform());
    double dir[3] = {0.0, 0.0, 0.0};
    rng.unit_vector(n, dir);
    Point z = center;
    for (int i = 0; i < n; ++i) z[i] += radius * rho * dir[i];
    return z;
}

namespace {

struct PathResult {
    Point exit;
    std::size_t steps;
    bool capped;
};

PathResult run_path(const Domain& d, const Point& x0, double s,
                    std::uint64_t seed, std::uint64_t path,
                    const WalkOptions& opt, WalkPath* record) {
    const RadialExitTable& tab = radial_exit_table(s);
    CounterRng rng(seed, /*purpose=*/0x57, path);
    Point pos = x0;
    if (record) record->positions.push_back(pos);
    std::size_t steps = 0;
    const int n = d.n();
    while (steps < opt.step_cap) {
        const double delta = d.boundary_distance(pos);
        const double r = opt.beta * delta;
        const double rho = tab.sample_rho(rng.uniform());
        double dir[3] = {0.0, 0.0, 0.0};
        rng.unit_vector(n, dir);
        Point z = pos;
        for (int i = 0; i < n; ++i) z[i] += r * rho * dir[i];
        ++steps;
        if (record) record->radii.push_back(r);
        if (!d.contains(z)) {
            if (record) {
                record->exit_point = z;
                record->steps = steps;
            }
            return {z, steps, false};
        }
        pos = z;
        if (record) record->positions.push_back(pos);
    }
    if (record) {
        record->exit_point = pos;
        record->steps = steps;
        record->capped = true;
    }
    return {pos, steps, true};
}

} // namespace

WalkPath sample_walk(const Domain& d, const Point& x, double s,
                     std::uint64_t seed, std::uint64_t path_index,
                     const WalkOptions& opt) {
    if (!d.contains(x))
        throw ConfigError("sample_walk: start point must be interior");
    WalkPath p;
    run_path(d, x, s, seed, path_index, opt, &p);
    return p;
}

McEstimate wos_estimate(const Domain& d,
                        const std::function<double(const Point&)>& F,
                        const Point& x, double s, std::size_t n_samples,
                        std::uint64_t seed, const WalkOptions& opt) {
    if (!d.contains(x))
        throw ConfigError("wos_estimate: start point must be interior");
    if (n_samples == 0) throw ConfigError("wos_estimate: need samples");
    struct ShardAcc {
        double sum = 0.0, sumsq = 0.0, steps = 0.0;
        std::size_t caps = 0;
    };
    const std::size_t S = std::max<std::size_t>(1, opt.shards);
    std::vector<ShardAcc> acc(S);
    const std::size_t per = (n_samples + S - 1) / S;
    parallel_for(S, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t sh = lo; sh < hi; ++sh) {
            const std::size_t p0 = sh * per;
            const std::size_t p1 = std::min(n_samples, p0 + per);
            ShardAcc a;
            for (std::size_t p = p0; p < p1; ++p) {
                const PathResult r =
                    run_path(d, x, s, seed, p, opt, nullptr);
                const double v = F(r.exit);
                if (!std::isfinite(v))
                    throw ContractError("wos.nonfinite_data",
                                        "F returned a non-finite value");
                a.sum += v;
                a.sumsq += v * v;
                a.steps += static_cast<double>(r.steps);
                if (r.capped) ++a.caps;
            }
            acc[sh] = a;
        }
    }, opt.threads);
    double sum = 0.0, sumsq = 0.0, steps = 0.0;
    std::size_t caps = 0;
    for (const auto& a : acc) { // fixed order
        sum += a.sum;
        sumsq += a.sumsq;
        steps += a.steps;
        caps += a.caps;
    }
    McEstimate e;
    e.samples = n_samples;
    e.mean = sum / double(n_samples);
    const double var =
        std::max(0.0, (sumsq - sum * sum / double(n_samples)) /
                          std::max<double>(1.0, double(n_samples) - 1.0));
    e.stderr_ = std::sqrt(var / double(n_samples));
    e.mean_steps = steps / double(n_samples);
    e.cap_hits = caps;
    return e;
}

std::vector<McEstimate> annulus_exit_mass(const Domain& d,
                                          const AnnulusFamily& fam,
                                          const Point& x, double s,
                                          std::size_t n_samples,
                                          std::uint64_t seed,
                                          const WalkOptions& opt) {
    if (!fam.in_shrunken(0, x))
        throw ConfigError("annulus_exit_mass: x must lie in the smallest "
                          "shrunken domain");
    std::vector<McEstimate> out;
    const RadialExitTable& tab = radial_exit_table(s);
    const int n = d.n();
    for (std::size_t k = 0; k < fam.offsets.size(); ++k) {
        const double rk = fam.offsets[k];
        struct ShardAcc {
            double sum = 0.0;
            double steps = 0.0;
        };
        const std::size_t S = std::max<std::size_t>(1, opt.shards);
        std::vector<ShardAcc> acc(S);
        const std::size_t per = (n_samples + S - 1) / S;
        parallel_for(S, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t sh = lo; sh < hi; ++sh) {
                const std::size_t p0 = sh * per;
                const std::size_t p1 = std::min(n_samples, p0 + per);
                ShardAcc a;
                for (std::size_t p = p0; p < p1; ++p) {
                    // common random numbers: same stream for every k
                    CounterRng rng(seed, 0x57, p);
                    Point pos = x;
                    std::size_t steps = 0;
                    Point z = pos;
                    while (steps < opt.step_cap) {
                        const double delta =
                            d.boundary_distance(pos) - rk; // inscribed in O_k
                        const double rr = opt.beta * delta;
                        const double rho = tab.sample_rho(rng.uniform());
                        double dir[3] = {0.0, 0.0, 0.0};
                        rng.unit_vector(n, dir);
                        z = pos;
                        for (int i = 0; i < n; ++i)
                            z[i] += rr * rho * dir[i];
                        ++steps;
                        const bool in_k = d.contains(z) &&
                                          d.boundary_distance(z) > rk;
                        if (!in_k) break;
                        pos = z;
                    }
                    a.steps += double(steps);
                    if (d.contains(z)) a.sum += 1.0; // landed in the shell
                }
                acc[sh] = a;
            }
        }, opt.threads);
        double sum = 0.0, steps = 0.0;
        for (const auto& a : acc) {
            sum += a.sum;
            steps += a.steps;
        }
        McEstimate e;
        e.samples = n_samples;
        e.mean = sum / double(n_samples);
        e.stderr_ = std::sqrt(std::max(
                        0.0, e.mean * (1.0 - e.mean) / double(n_samples)));
        e.mean_steps = steps / double(n_samples);
        out.push_back(e);
    }
    return out;
}

} // namespace fraclap
