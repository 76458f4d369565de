#include "fraclap/galerkin.hpp"
#include "fraclap/error.hpp"
#include "fraclap/fft.hpp"
#include "fraclap/frac_ops.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <set>

namespace fraclap {

ExteriorSolver::ExteriorSolver(const Domain& d, const SolverParams& params,
                               double R_trunc, double h)
    : domain_(d), params_(params), R_trunc_(R_trunc),
      basis_(make_exterior_basis(d, R_trunc, h, params.box_length())) {
    if (basis_.nodes.empty())
        throw ConfigError("exterior basis is empty (annulus too thin)");
    const double sigma = 2.0 * params.s();
    // table reaches the farthest periodized image distance
    const double rho_tab =
        2.0 * params.box_length() +
        std::sqrt(double(params.n())) * R_trunc;
    p_table_ = std::make_shared<BumpPotentialTable>(params.n(), sigma, h,
                                                    rho_tab);
    pair_cache_ = std::make_shared<PairIntegralCache>(*p_table_, h,
                                                      params.n());
    // distinct squared lattice distances
    std::set<long long> keys;
    const auto& nd = basis_.nodes;
    for (std::size_t i = 0; i < nd.size(); ++i)
        for (std::size_t j = i; j < nd.size(); ++j) {
            double d2 = 0.0;
            for (int ax = 0; ax < params.n(); ++ax)
                d2 += (nd[i][ax] - nd[j][ax]) * (nd[i][ax] - nd[j][ax]);
            keys.insert(std::llround(d2 / (h * h)));
        }
    pair_keys_.assign(keys.begin(), keys.end());
    pair_cache_->precompute(pair_keys_);
}

void ExteriorSolver::assemble_matrix(GramSystem& sys, int threads) const {
    const std::size_t J = basis_.nodes.size();
    sys.size = J;
    sys.matrix.assign(J * J, 0.0);
    const double h = basis_.h;
    const int n = params_.n();
    parallel_for(J, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            for (std::size_t j = 0; j < J; ++j) {
                double d2 = 0.0;
                for (int ax = 0; ax < n; ++ax)
                    d2 += (basis_.nodes[i][ax] - basis_.nodes[j][ax]) *
                          (basis_.nodes[i][ax] - basis_.nodes[j][ax]);
                sys.matrix[i * J + j] =
                    pair_cache_->value(std::llround(d2 / (h * h)));
            }
        }
    }, threads);
}

void ExteriorSolver::assemble_rhs(
    GramSystem& sys, const std::function<double(const Point&)>& F) const {
    const std::size_t J = basis_.nodes.size();
    sys.rhs.assign(J, 0.0);
    parallel_for(J, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t j = lo; j < hi; ++j)
            sys.rhs[j] = bump_project(basis_.nodes[j], basis_.h,
                                      params_.n(), F);
    });
}

void ExteriorSolver::solve_exterior(GramSystem& sys) {
    const auto J = static_cast<Eigen::Index>(sys.size);
    Eigen::Map<const Eigen::MatrixXd> A(sys.matrix.data(), J, J);
    Eigen::Map<const Eigen::VectorXd> b(sys.rhs.data(), J);
    Eigen::LLT<Eigen::MatrixXd> llt(A);
    if (llt.info() != Eigen::Success)
        throw ContractError("galerkin.gram_not_spd",
                            "Cholesky factorization failed");
    Eigen::VectorXd c = llt.solve(b);
    const double bn = b.norm();
    sys.solve_residual = bn > 0.0 ? (A * c - b).norm() / bn : 0.0;
    if (bn > 0.0 && sys.solve_residual >= 1e-10)
        throw ContractError("galerkin.solve_residual",
                            "relative residual exceeds 1e-10");
    sys.coef.assign(c.data(), c.data() + J);
}

double ExteriorSolver::reconstruct_at(const std::vector<double>& coef,
                                      const Point& x) const {
    const int n = params_.n();
    double acc = 0.0;
    for (std::size_t j = 0; j < basis_.nodes.size(); ++j) {
        double d2 = 0.0;
        for (int ax = 0; ax < n; ++ax)
            d2 += (x[ax] - basis_.nodes[j][ax]) *
                  (x[ax] - basis_.nodes[j][ax]);
        acc += coef[j] * (*p_table_)(std::sqrt(d2));
    }
    return acc;
}

GridFunction ExteriorSolver::reconstruct_u(const std::vector<double>& coef,
                                           int image_shells) const {
    const auto& p = params_;
    const std::uint32_t N = p.grid_size();
    const double hg = p.spacing();
    const double L = p.box_length();
    const int n = p.n();
    // node lattice must sit on the grid so displacements are grid exact
    const double ratio = basis_.h / hg;
    if (std::abs(ratio - std::llround(ratio)) > 1e-9)
        throw ConfigError("basis spacing must be an integer multiple of the "
                          "grid spacing for grid reconstruction");
    // periodized single-bump potential sampled on the displacement lattice
    GridFunction gper(p);
    std::vector<double> axis(N);
    for (std::uint32_t i = 0; i < N; ++i) {
        const double k = (i < N / 2) ? double(i) : double(i) - N;
        axis[i] = k * hg;
    }
    const int M = image_shells;
    parallel_for(N, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            for (std::uint32_t j = 0; j < N; ++j) {
                if (n == 2) {
                    double acc = 0.0;
                    for (int mi = -M; mi <= M; ++mi)
                        for (int mj = -M; mj <= M; ++mj) {
                            const double z1 = axis[i] - mi * L;
                            const double z2 = axis[j] - mj * L;
                            acc += (*p_table_)(std::hypot(z1, z2));
                        }
                    gper[i * N + j] = acc;
                } else {
                    for (std::uint32_t k = 0; k < N; ++k) {
                        double acc = 0.0;
                        for (int mi = -M; mi <= M; ++mi)
                            for (int mj = -M; mj <= M; ++mj)
                                for (int mk = -M; mk <= M; ++mk) {
                                    const double z1 = axis[i] - mi * L;
                                    const double z2 = axis[j] - mj * L;
                                    const double z3 = axis[k] - mk * L;
                                    acc += (*p_table_)(std::sqrt(
                                        z1 * z1 + z2 * z2 + z3 * z3));
                                }
                        gper[(i * N + j) * N + k] = acc;
                    }
                }
            }
        }
    });
    // exact lattice convolution with the coefficient spikes
    GridFunction spikes(p);
    const double half = 0.5 * L;
    for (std::size_t j = 0; j < basis_.nodes.size(); ++j) {
        std::size_t flat = 0;
        for (int ax = 0; ax < n; ++ax) {
            const double idx = (basis_.nodes[j][ax] + half) / hg;
            const long ii = std::llround(idx);
            flat = flat * N + static_cast<std::size_t>(
                                  ((ii % N) + N) % N);
        }
        spikes[flat] += coef[j];
    }
    Spectrum a = dft(spikes), b = dft(gper);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] *= b[i];
    return idft(a, p);
}

ExteriorSolver::TraceError ExteriorSolver::trace_error(
    const std::vector<double>& coef,
    const std::function<double(const Point&)>& F) const {
    // deterministic sample set: annulus lattice offset by half a cell
    TraceError te;
    std::size_t count = 0;
    const double h = basis_.h;
    const double margin = 1.5 * h;
    for (const auto& node : basis_.nodes) {
        Point x = node;
        x[0] += 0.5 * h;
        x[1] += 0.5 * h;
        if (domain_.contains(x)) continue;
        if (domain_.boundary_distance(x) < margin) continue;
        double r = 0.0;
        for (int ax = 0; ax < params_.n(); ++ax) r += x[ax] * x[ax];
        if (std::sqrt(r) > R_trunc_ - margin) continue;
        const double e = reconstruct_at(coef, x) - F(x);
        te.max_err = std::max(te.max_err, std::abs(e));
        te.rms += e * e;
        ++count;
    }
    if (count > 0) te.rms = std::sqrt(te.rms / double(count));
    return te;
}

namespace {

GridFunction grid_bump(const SolverParams& p, const Point& c, double w) {
    GridFunction g(p);
    g.fill([&](const Point& x) {
        double r2 = 0.0;
        for (int ax = 0; ax < p.n(); ++ax)
            r2 += (x[ax] - c[ax]) * (x[ax] - c[ax]);
        r2 /= w * w;
        return r2 < 1.0 ? std::exp(-1.0 / (1.0 - r2)) : 0.0;
    });
    return g;
}

Point domain_anchor(const Domain& d) {
    if (d.is_ball()) return d.ball().center;
    if (const AxisBox* b = std::get_if<AxisBox>(&d.shape())) {
        Point c{0.0, 0.0, 0.0};
        for (int i = 0; i < d.n(); ++i) c[i] = 0.5 * (b->lo[i] + b->hi[i]);
        return c;
    }
    const Polygon& poly = std::get<Polygon>(d.shape());
    Point c{0.0, 0.0, 0.0};
    for (const auto& v : poly.vertices) {
        c[0] += v[0];
        c[1] += v[1];
    }
    c[0] /= double(poly.vertices.size());
    c[1] /= double(poly.vertices.size());
    return c;
}

} // namespace

double weak_residual(const GridFunction& u, const Domain& d, double s,
                     const LPFilterBank& bank) {
    const auto& p = u.params();
    const Point anchor = domain_anchor(d);
    const double rho = d.boundary_distance(anchor);
    if (!(d.contains(anchor)) || !(rho > 0.0))
        throw ConfigError("weak_residual: domain anchor not interior");
    // dipole family: equal bumps at mirrored offsets, three scales
    struct Dip {
        double off, w, axis2;
    };
    const Dip dips[] = {{0.35, 0.25, 0.0}, {0.25, 0.18, 0.25},
                        {0.0, 0.35, 0.40}};
    GridFunction du = delta_s_fourier(u, s);
    const double nu = hs_norm_lp(u, s, bank, FreqWeight::two_pi);
    if (!(nu > 0.0)) return 0.0;
    const double hn = std::pow(p.spacing(), p.n());
    double worst = 0.0;
    for (const auto& dip : dips) {
        Point a = anchor, b = anchor;
        a[0] += dip.off * rho;
        b[0] -= dip.off * rho;
        a[1] += dip.axis2 * rho;
        b[1] -= dip.axis2 * rho;
        const double w = dip.w * rho;
        if (d.boundary_distance(a) <= w || d.boundary_distance(b) <= w)
            throw ConfigError("weak_residual: test bump support touches "
                              "the boundary");
        GridFunction psi = grid_bump(p, a, w);
        GridFunction psib = grid_bump(p, b, w);
        psi -= psib;
        double pair = 0.0;
        for (std::size_t i = 0; i < psi.size(); ++i) pair += du[i] * psi[i];
        pair *= hn;
        const double npsi = hs_norm_lp(psi, s, bank, FreqWeight::two_pi);
        if (npsi > 0.0) worst = std::max(worst, std::abs(pair) / (nu * npsi));
    }
    return worst;
}

double stability_ratio(const GridFunction& u, const GridFunction& F_ext,
                       double s, const LPFilterBank& bank) {
    const double nf = hs_norm_lp(F_ext, s, bank);
    const double nu = hs_norm_lp(u, s, bank);
    if (nf < 1e-14) {
        if (nu > 1e-10)
            throw ContractError("galerkin.zero_data_nonzero_solution",
                                "||F|| = 0 but u != 0");
        return 0.0;
    }
    return nu / nf;
}

double gram_min_eig(const GramSystem& sys, int iterations) {
    const auto J = static_cast<Eigen::Index>(sys.size);
    Eigen::Map<const Eigen::MatrixXd> A(sys.matrix.data(), J, J);
    Eigen::LLT<Eigen::MatrixXd> llt(A);
    if (llt.info() != Eigen::Success)
        throw ContractError("galerkin.gram_not_spd",
                            "Cholesky factorization failed");
    Eigen::VectorXd v = Eigen::VectorXd::Ones(J).normalized();
    double mu = 0.0;
    for (int it = 0; it < iterations; ++it) {
        v = llt.solve(v);
        mu = v.norm();
        v /= mu;
    }
    return 1.0 / mu; // smallest eigenvalue of A
}

} // namespace fraclap
