#include "fraclap/run.hpp"

#include "fraclap/data_functions.hpp"
#include "fraclap/error.hpp"
#include "fraclap/fft.hpp"
#include "fraclap/frac_ops.hpp"
#include "fraclap/galerkin.hpp"
#include "fraclap/geometry.hpp"
#include "fraclap/lp.hpp"
#include "fraclap/poisson.hpp"
#include "fraclap/version.hpp"
#include "fraclap/walk.hpp"

#include <json.hpp>

#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace fraclap {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void expect_keys(const json& j, std::initializer_list<const char*> keys,
                 const std::string& ctx) {
    if (!j.is_object())
        throw ConfigError(ctx + ": expected a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* k : keys)
            if (it.key() == k) {
                known = true;
                break;
            }
        if (!known)
            throw ConfigError(ctx + ": unknown key \"" + it.key() + "\"");
    }
}

template <class T>
T req(const json& j, const char* key, const std::string& ctx) {
    if (!j.contains(key))
        throw ConfigError(ctx + ": missing key \"" + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(ctx + ": bad value for \"" + key + "\"");
    }
}

template <class T>
T opt_or(const json& j, const char* key, T dflt) {
    if (!j.contains(key)) return dflt;
    return j.at(key).get<T>();
}

Point parse_point(const json& j, int n, const std::string& ctx) {
    if (!j.is_array() || static_cast<int>(j.size()) != n)
        throw ConfigError(ctx + ": expected an array of " +
                          std::to_string(n) + " coordinates");
    Point p{0.0, 0.0, 0.0};
    for (int i = 0; i < n; ++i) p[i] = j[i].get<double>();
    return p;
}

SolverParams parse_params(const json& j) {
    expect_keys(j, {"n", "s", "grid_size", "box_length"}, "params");
    return make_params(req<int>(j, "n", "params"),
                       req<double>(j, "s", "params"),
                       req<std::uint32_t>(j, "grid_size", "params"),
                       req<double>(j, "box_length", "params"));
}

Domain parse_domain(const json& j, int n) {
    const std::string shape = req<std::string>(j, "shape", "domain");
    if (shape == "ball") {
        expect_keys(j, {"shape", "center", "radius"}, "domain");
        Ball b;
        b.center = parse_point(j.at("center"), n, "domain.center");
        b.radius = req<double>(j, "radius", "domain");
        return Domain(n, b);
    }
    if (shape == "box") {
        expect_keys(j, {"shape", "lo", "hi"}, "domain");
        AxisBox b;
        b.lo = parse_point(j.at("lo"), n, "domain.lo");
        b.hi = parse_point(j.at("hi"), n, "domain.hi");
        return Domain(n, b);
    }
    if (shape == "polygon") {
        expect_keys(j, {"shape", "vertices"}, "domain");
        if (n != 2) throw ConfigError("polygon domains require n = 2");
        Polygon p;
        for (const auto& v : j.at("vertices"))
            p.vertices.push_back({v[0].get<double>(), v[1].get<double>()});
        return Domain(p);
    }
    throw ConfigError("domain: unknown shape \"" + shape + "\"");
}

DataField parse_field(const json& j, int n) {
    const std::string type = req<std::string>(j, "type", "data");
    if (type == "constant") {
        expect_keys(j, {"type", "value"}, "data");
        return make_constant(req<double>(j, "value", "data"));
    }
    if (type == "radial_bump") {
        expect_keys(j, {"type", "center", "r_inner", "r_outer", "amplitude"},
                    "data");
        return make_radial_bump(parse_point(j.at("center"), n, "data.center"),
                                req<double>(j, "r_inner", "data"),
                                req<double>(j, "r_outer", "data"),
                                opt_or(j, "amplitude", 1.0));
    }
    if (type == "ball_bump") {
        expect_keys(j, {"type", "center", "radius", "amplitude"}, "data");
        return make_ball_bump(parse_point(j.at("center"), n, "data.center"),
                              req<double>(j, "radius", "data"),
                              opt_or(j, "amplitude", 1.0));
    }
    if (type == "gaussian") {
        expect_keys(j, {"type", "center", "width", "amplitude"}, "data");
        return make_gaussian(parse_point(j.at("center"), n, "data.center"),
                             req<double>(j, "width", "data"),
                             opt_or(j, "amplitude", 1.0));
    }
    if (type == "halfspace") {
        expect_keys(j, {"type", "normal", "offset", "amplitude"}, "data");
        return make_halfspace(parse_point(j.at("normal"), n, "data.normal"),
                              req<double>(j, "offset", "data"),
                              opt_or(j, "amplitude", 1.0));
    }
    if (type == "sum") {
        expect_keys(j, {"type", "terms"}, "data");
        std::vector<DataField> terms;
        for (const auto& t : j.at("terms")) terms.push_back(parse_field(t, n));
        return make_sum(std::move(terms));
    }
    throw ConfigError("data: unknown type \"" + type + "\"");
}

struct Report {
    json metrics = json::object();
    std::vector<std::string> violations;
    std::vector<std::string> outputs;
};

class CsvWriter {
  public:
    CsvWriter(const fs::path& path, const std::string& header,
              Report& report) {
        os_.open(path);
        if (!os_) throw IoError("cannot open output: " + path.string());
        os_ << header << "\n";
        report.outputs.push_back(path.filename().string());
    }
    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) os_ << ",";
            os_ << cells[i];
        }
        os_ << "\n";
    }

  private:
    std::ofstream os_;
};

// ---- command handlers ----------------------------------------------------

void cmd_norms(const json& cfg, const fs::path& out, std::uint64_t,
               Report& rep) {
    expect_keys(cfg, {"command", "seed", "params", "alpha", "data"}, "config");
    SolverParams params = parse_params(cfg.at("params"));
    const double alpha = req<double>(cfg, "alpha", "config");
    DataField data = parse_field(cfg.at("data"), params.n());
    GridFunction f(params);
    f.fill([&](const Point& x) { return data(x); });
    if (!f.all_finite())
        throw ContractError("norms.nonfinite_data", "data is not finite");
    LPFilterBank bank = build_filter_bank(params);

    CsvWriter csv(out / "norms.csv", "metric,value", rep);
    auto emit = [&](const std::string& k, double v) {
        csv.row({k, g17(v)});
        rep.metrics[k] = v;
    };
    emit("l2", f.l2_norm());
    emit("hs_lp", hs_norm_lp(f, alpha, bank));
    if (alpha >= 0.0) emit("hs_direct", hs_norm_direct(f, alpha));
    if (alpha > 0.0 && alpha < 2.0 && params.grid_size() <= 128)
        emit("gagliardo", gagliardo_seminorm(f, alpha));
}

void cmd_fraclap_check(const json& cfg, const fs::path& out, std::uint64_t,
                       Report& rep) {
    expect_keys(cfg,
                {"command", "seed", "n", "grid_size", "box_length",
                 "s_values", "tolerance"},
                "config");
    const int n = req<int>(cfg, "n", "config");
    const auto N = req<std::uint32_t>(cfg, "grid_size", "config");
    const double L = req<double>(cfg, "box_length", "config");
    const double tol = opt_or(cfg, "tolerance", 1e-2);
    std::vector<double> svals =
        req<std::vector<double>>(cfg, "s_values", "config");

    CsvWriter csv(out / "fraclap_check.csv", "s,function,rel_l2_diff", rep);
    double worst = 0.0;
    for (double s : svals) {
        SolverParams params = make_params(n, s, N, L);
        for (const auto& nf : make_test_family(params)) {
            GridFunction a = delta_s_singular(nf.f, s);
            GridFunction b = delta_s_fourier(nf.f, s);
            double num = 0.0, den = 0.0;
            for (std::size_t i = 0; i < a.size(); ++i) {
                num += (a[i] - b[i]) * (a[i] - b[i]);
                den += b[i] * b[i];
            }
            const double rel = std::sqrt(num / den);
            worst = std::max(worst, rel);
            csv.row({g17(s), nf.name, g17(rel)});
        }
    }
    rep.metrics["max_rel_l2_diff"] = worst;
    rep.metrics["tolerance"] = tol;
    if (worst > tol)
        throw ContractError("fraclap.definition_consistency",
                            "singular vs multiplier mismatch above tolerance");
}

void cmd_kernel_check(const json& cfg, const fs::path& out,
                      std::uint64_t seed, Report& rep) {
    expect_keys(cfg,
                {"command", "seed", "n", "s", "domain", "mass_points",
                 "mass_tol", "bound_samples"},
                "config");
    const int n = req<int>(cfg, "n", "config");
    const double s = req<double>(cfg, "s", "config");
    Domain d = parse_domain(cfg.at("domain"), n);
    if (!d.is_ball())
        throw ConfigError("kernel-check requires a ball domain");
    const int mass_points = opt_or(cfg, "mass_points", 10);
    const double mass_tol = opt_or(cfg, "mass_tol", 1e-3);
    const auto bound_samples =
        opt_or<std::uint64_t>(cfg, "bound_samples", 100000);

    BallKernel k{n, s, d.ball()};
    CsvWriter csv(out / "kernel_check.csv", "x1,x2,x3,mass,mass_err", rep);
    double worst = 0.0;
    for (int i = 0; i < mass_points; ++i) {
        // deterministic interior ladder: radius and angle sweep
        const double fr = 0.9 * double(i) / std::max(1, mass_points - 1);
        const double th = 2.39996322972865332 * i; // golden angle
        Point x = d.ball().center;
        x[0] += fr * d.ball().radius * std::cos(th);
        x[1] += fr * d.ball().radius * std::sin(th);
        const double m = kernel_mass(k, x);
        worst = std::max(worst, std::abs(m - 1.0));
        csv.row({g17(x[0]), g17(x[1]), g17(x[2]), g17(m),
                 g17(std::abs(m - 1.0))});
    }
    rep.metrics["max_mass_err"] = worst;
    const KernelBoundCheck b = check_kernel_bounds(k, bound_samples, seed);
    rep.metrics["ratio_min"] = b.ratio_min;
    rep.metrics["ratio_max"] = b.ratio_max;
    CsvWriter csv2(out / "kernel_bounds.csv", "ratio_min,ratio_max", rep);
    csv2.row({g17(b.ratio_min), g17(b.ratio_max)});
    if (worst > mass_tol)
        throw ContractError("poisson.kernel_mass",
                            "kernel mass deviates from 1 beyond tolerance");
    if (!(b.ratio_min > 0.0) || !std::isfinite(b.ratio_max))
        throw ContractError("poisson.kernel_bounds",
                            "bound ratios not finite and positive");
}

void cmd_solve_wos(const json& cfg, const fs::path& out, std::uint64_t seed,
                   Report& rep) {
    expect_keys(cfg,
                {"command", "seed", "n", "s", "domain", "data", "points",
                 "samples", "beta"},
                "config");
    const int n = req<int>(cfg, "n", "config");
    const double s = req<double>(cfg, "s", "config");
    Domain d = parse_domain(cfg.at("domain"), n);
    DataField data = parse_field(cfg.at("data"), n);
    const auto samples = req<std::uint64_t>(cfg, "samples", "config");
    WalkOptions wopt;
    wopt.beta = opt_or(cfg, "beta", 1.0);

    CsvWriter csv(out / "wos.csv", "x1,x2,x3,mean,stderr,mean_steps", rep);
    std::size_t caps = 0;
    for (const auto& pj : cfg.at("points")) {
        const Point x = parse_point(pj, n, "points");
        const McEstimate e = wos_estimate(
            d, [&](const Point& y) { return data(y); }, x, s, samples, seed,
            wopt);
        caps += e.cap_hits;
        csv.row({g17(x[0]), g17(x[1]), g17(x[2]), g17(e.mean),
                 g17(e.stderr_), g17(e.mean_steps)});
    }
    const double cap_rate =
        double(caps) / double(samples * cfg.at("points").size());
    rep.metrics["cap_rate"] = cap_rate;
    if (cap_rate >= 1e-6)
        throw ContractError("wos.step_cap_rate",
                            "walk step-cap rate above 1e-6");
}

void cmd_solve_ball_quadrature(const json& cfg, const fs::path& out,
                               std::uint64_t, Report& rep) {
    expect_keys(cfg, {"command", "seed", "n", "s", "domain", "data", "points"},
                "config");
    const int n = req<int>(cfg, "n", "config");
    const double s = req<double>(cfg, "s", "config");
    Domain d = parse_domain(cfg.at("domain"), n);
    if (!d.is_ball())
        throw ConfigError("solve-ball-quadrature requires a ball domain");
    DataField data = parse_field(cfg.at("data"), n);
    BallKernel k{n, s, d.ball()};
    BallQuadratureOptions qopt;
    qopt.support_radius = data.support_radius;

    CsvWriter csv(out / "ball_quadrature.csv", "x1,x2,x3,u", rep);
    for (const auto& pj : cfg.at("points")) {
        const Point x = parse_point(pj, n, "points");
        const double u = solve_ball_quadrature(
            k, [&](const Point& y) { return data(y); }, x, qopt);
        csv.row({g17(x[0]), g17(x[1]), g17(x[2]), g17(u)});
    }
}

struct GalerkinRun {
    GridFunction u;
    std::vector<double> probe_values;
    double gram_min_eig = 0.0;
    double solve_residual = 0.0;
    double weak_resid = 0.0;
    double trace_max = 0.0;
    double trace_rms = 0.0;
    double stability = 0.0;
    std::size_t unknowns = 0;
};

GalerkinRun galerkin_solve(const SolverParams& params, const Domain& d,
                           double R_trunc, double h, const DataField& data,
                           const std::vector<Point>& probes,
                           bool with_grid_diagnostics, int image_shells) {
    ExteriorSolver solver(d, params, R_trunc, h);
    GramSystem sys;
    solver.assemble_matrix(sys);
    solver.assemble_rhs(sys, [&](const Point& y) { return data(y); });
    ExteriorSolver::solve_exterior(sys);

    GalerkinRun r{GridFunction(params), {}, 0, 0, 0, 0, 0, 0, 0};
    r.unknowns = sys.size;
    r.solve_residual = sys.solve_residual;
    r.gram_min_eig = gram_min_eig(sys);
    for (const auto& x : probes)
        r.probe_values.push_back(solver.reconstruct_at(sys.coef, x));
    const auto te = solver.trace_error(
        sys.coef, [&](const Point& y) { return data(y); });
    r.trace_max = te.max_err;
    r.trace_rms = te.rms;
    if (with_grid_diagnostics) {
        r.u = solver.reconstruct_u(sys.coef, image_shells);
        LPFilterBank bank = build_filter_bank(params);
        r.weak_resid = weak_residual(r.u, d, params.s(), bank);
        GridFunction fext(params);
        fext.fill([&](const Point& x) {
            return d.contains(x) ? 0.0 : data(x);
        });
        r.stability = stability_ratio(r.u, fext, params.s(), bank);
    }
    return r;
}

void cmd_solve_galerkin(const json& cfg, const fs::path& out, std::uint64_t,
                        Report& rep) {
    expect_keys(cfg,
                {"command", "seed", "params", "domain", "R_trunc", "h",
                 "data", "probes", "image_shells", "weak_residual_tol"},
                "config");
    SolverParams params = parse_params(cfg.at("params"));
    Domain d = parse_domain(cfg.at("domain"), params.n());
    const double R_trunc = req<double>(cfg, "R_trunc", "config");
    const double h = req<double>(cfg, "h", "config");
    DataField data = parse_field(cfg.at("data"), params.n());
    const int image_shells = opt_or(cfg, "image_shells", 4);
    const double wtol = opt_or(cfg, "weak_residual_tol", 5e-3);
    std::vector<Point> probes;
    for (const auto& pj : cfg.at("probes"))
        probes.push_back(parse_point(pj, params.n(), "probes"));

    const GalerkinRun r = galerkin_solve(params, d, R_trunc, h, data, probes,
                                         true, image_shells);
    CsvWriter csv(out / "galerkin.csv", "x1,x2,x3,u", rep);
    for (std::size_t i = 0; i < probes.size(); ++i)
        csv.row({g17(probes[i][0]), g17(probes[i][1]), g17(probes[i][2]),
                 g17(r.probe_values[i])});
    rep.metrics["unknowns"] = r.unknowns;
    rep.metrics["gram_min_eig"] = r.gram_min_eig;
    rep.metrics["solve_residual"] = r.solve_residual;
    rep.metrics["weak_residual"] = r.weak_resid;
    rep.metrics["trace_max"] = r.trace_max;
    rep.metrics["trace_rms"] = r.trace_rms;
    rep.metrics["stability_ratio"] = r.stability;
    if (r.weak_resid > wtol)
        throw ContractError("galerkin.weak_residual",
                            "weak residual above tolerance");
}

void cmd_compare(const json& cfg, const fs::path& out, std::uint64_t seed,
                 Report& rep) {
    expect_keys(cfg,
                {"command", "seed", "params", "domain", "R_trunc",
                 "h_levels", "data", "probes", "samples", "quad_tol",
                 "image_shells"},
                "config");
    SolverParams params = parse_params(cfg.at("params"));
    Domain d = parse_domain(cfg.at("domain"), params.n());
    if (!d.is_ball()) throw ConfigError("compare requires a ball domain");
    const double R_trunc = req<double>(cfg, "R_trunc", "config");
    DataField data = parse_field(cfg.at("data"), params.n());
    const auto samples = req<std::uint64_t>(cfg, "samples", "config");
    const double quad_tol = opt_or(cfg, "quad_tol", 1e-3);
    std::vector<double> levels =
        req<std::vector<double>>(cfg, "h_levels", "config");
    if (levels.size() < 2)
        throw ConfigError("compare needs at least two h levels");
    std::vector<Point> probes;
    for (const auto& pj : cfg.at("probes"))
        probes.push_back(parse_point(pj, params.n(), "probes"));

    // route 1: kernel quadrature
    BallKernel k{params.n(), params.s(), d.ball()};
    BallQuadratureOptions qopt;
    qopt.support_radius = data.support_radius;
    std::vector<double> u_quad;
    for (const auto& x : probes)
        u_quad.push_back(solve_ball_quadrature(
            k, [&](const Point& y) { return data(y); }, x, qopt));

    // route 2: walk on stable spheres
    std::vector<McEstimate> u_wos;
    for (const auto& x : probes)
        u_wos.push_back(wos_estimate(
            d, [&](const Point& y) { return data(y); }, x, params.s(),
            samples, seed));

    // route 3: exterior Galerkin at increasing resolution
    std::vector<std::vector<double>> u_gal;
    for (double h : levels) {
        const GalerkinRun r = galerkin_solve(params, d, R_trunc, h, data,
                                             probes, false, 4);
        u_gal.push_back(r.probe_values);
    }
    const auto& fine = u_gal.back();
    const auto& coarse = u_gal[u_gal.size() - 2];

    CsvWriter csv(out / "compare.csv",
                  "x1,x2,x3,u_quad,u_wos,wos_stderr,u_gal,gal_budget,"
                  "d_quad_wos,d_quad_gal,d_wos_gal,pass",
                  rep);
    bool all_pass = true;
    double worst_excess = 0.0;
    for (std::size_t i = 0; i < probes.size(); ++i) {
        const double gal_budget = std::abs(fine[i] - coarse[i]);
        const double dqw = std::abs(u_quad[i] - u_wos[i].mean);
        const double dqg = std::abs(u_quad[i] - fine[i]);
        const double dwg = std::abs(u_wos[i].mean - fine[i]);
        const double mc3 = 3.0 * u_wos[i].stderr_;
        const bool ok = dqw <= mc3 + quad_tol &&
                        dqg <= gal_budget + quad_tol &&
                        dwg <= mc3 + gal_budget;
        all_pass = all_pass && ok;
        worst_excess = std::max(
            worst_excess,
            std::max({dqw - (mc3 + quad_tol), dqg - (gal_budget + quad_tol),
                      dwg - (mc3 + gal_budget)}));
        csv.row({g17(probes[i][0]), g17(probes[i][1]), g17(probes[i][2]),
                 g17(u_quad[i]), g17(u_wos[i].mean), g17(u_wos[i].stderr_),
                 g17(fine[i]), g17(gal_budget), g17(dqw), g17(dqg), g17(dwg),
                 ok ? "1" : "0"});
    }
    rep.metrics["worst_budget_excess"] = worst_excess;
    if (!all_pass)
        throw ContractError("compare.pairwise_disagreement",
                            "solver pair outside combined error budget");
}

void cmd_annulus_decay(const json& cfg, const fs::path& out,
                       std::uint64_t seed, Report& rep) {
    expect_keys(cfg,
                {"command", "seed", "n", "s", "domain", "offsets", "x",
                 "samples"},
                "config");
    const int n = req<int>(cfg, "n", "config");
    const double s = req<double>(cfg, "s", "config");
    Domain d = parse_domain(cfg.at("domain"), n);
    const auto samples = req<std::uint64_t>(cfg, "samples", "config");
    AnnulusFamily fam(d, req<std::vector<double>>(cfg, "offsets", "config"));
    const Point x = parse_point(cfg.at("x"), n, "x");

    const auto probs = annulus_exit_mass(d, fam, x, s, samples, seed);
    CsvWriter csv(out / "annulus_decay.csv", "r_k,p_k,stderr,mean_steps",
                  rep);
    for (std::size_t k = 0; k < probs.size(); ++k)
        csv.row({g17(fam.offsets[k]), g17(probs[k].mean),
                 g17(probs[k].stderr_), g17(probs[k].mean_steps)});
    rep.metrics["p_first"] = probs.front().mean;
    rep.metrics["p_last"] = probs.back().mean;
}

const char* kCommands[] = {"norms",
                           "fraclap-check",
                           "kernel-check",
                           "solve-wos",
                           "solve-galerkin",
                           "solve-ball-quadrature",
                           "compare",
                           "annulus-decay"};

} // namespace

const char* const* known_commands(std::size_t* count) {
    *count = sizeof(kCommands) / sizeof(kCommands[0]);
    return kCommands;
}

int run_command(const std::string& command, const RunOptions& options) {
    const auto t0 = std::chrono::steady_clock::now();
    json cfg;
    Report rep;
    std::uint64_t seed = 0;
    fs::path out;
    try {
        std::ifstream is(options.config_path);
        if (!is)
            throw IoError("cannot open config: " + options.config_path);
        try {
            cfg = json::parse(is);
        } catch (const json::exception& e) {
            throw ConfigError(std::string("malformed JSON config: ") +
                              e.what());
        }
        if (cfg.contains("command") &&
            cfg.at("command").get<std::string>() != command)
            throw ConfigError("config \"command\" does not match invocation");
        bool known = false;
        for (const char* c : kCommands)
            if (command == c) known = true;
        if (!known) throw ConfigError("unknown command: " + command);
        seed = options.seed_override
                   ? *options.seed_override
                   : opt_or<std::uint64_t>(cfg, "seed", 12345);
        if (options.threads > 0) set_default_threads(options.threads);

        out = options.out_dir;
        std::error_code ec;
        fs::create_directories(out, ec);
        if (ec && !fs::exists(out))
            throw IoError("cannot create output dir: " + out.string());

        try {
            if (command == "norms")
                cmd_norms(cfg, out, seed, rep);
            else if (command == "fraclap-check")
                cmd_fraclap_check(cfg, out, seed, rep);
            else if (command == "kernel-check")
                cmd_kernel_check(cfg, out, seed, rep);
            else if (command == "solve-wos")
                cmd_solve_wos(cfg, out, seed, rep);
            else if (command == "solve-galerkin")
                cmd_solve_galerkin(cfg, out, seed, rep);
            else if (command == "solve-ball-quadrature")
                cmd_solve_ball_quadrature(cfg, out, seed, rep);
            else if (command == "compare")
                cmd_compare(cfg, out, seed, rep);
            else if (command == "annulus-decay")
                cmd_annulus_decay(cfg, out, seed, rep);
        } catch (const ContractError& e) {
            rep.violations.push_back(e.name);
            rep.metrics["contract_error_detail"] = e.what();
            // fall through to report writing with exit 2
        }

        json report;
        report["command"] = command;
        report["version"] = kVersion;
        report["seed"] = seed;
        report["config"] = cfg;
        report["metrics"] = rep.metrics;
        report["contract_violations"] = rep.violations;
        report["outputs"] = rep.outputs;
        report["wall_time_s"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          t0)
                .count();
        std::ofstream ro(out / "report.json");
        if (!ro) throw IoError("cannot write report");
        ro << report.dump(2) << "\n";

        if (!rep.violations.empty()) {
            std::cerr << "contract violation: " << rep.violations.front()
                      << "\n";
            return static_cast<int>(ExitCode::contract_violation);
        }
        return static_cast<int>(ExitCode::ok);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return static_cast<int>(ExitCode::config_error);
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return static_cast<int>(ExitCode::io_error);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(ExitCode::contract_violation);
    }
}

} // namespace fraclap
