// fraclap: fractional Dirichlet solvers and norm machinery.
//
//   fraclap <command> --config path.json --out dir/ [--seed k] [--threads t]
//
// Commands: norms, fraclap-check, kernel-check, solve-wos, solve-galerkin,
// solve-ball-quadrature, compare, annulus-decay.  Each writes CSV outputs
// plus report.json into the output directory.

#include "fraclap/run.hpp"
#include "fraclap/version.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <string>

int main(int argc, char** argv) {
    CLI::App app{"fractional Laplace Dirichlet solvers"};
    app.set_version_flag("--version", fraclap::kVersion);
    app.require_subcommand(1);

    std::size_t n_cmds = 0;
    const char* const* cmds = fraclap::known_commands(&n_cmds);

    std::string config, out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int threads = 0;

    for (std::size_t i = 0; i < n_cmds; ++i) {
        CLI::App* sub = app.add_subcommand(cmds[i]);
        sub->add_option("--config", config, "JSON config path")->required();
        sub->add_option("--out", out_dir, "output directory")->required();
        sub->add_option("--seed", seed, "seed override")
            ->each([&](const std::string&) { seed_set = true; });
        sub->add_option("--threads", threads, "worker threads");
    }

    CLI11_PARSE(app, argc, argv);

    fraclap::RunOptions opt;
    opt.config_path = config;
    opt.out_dir = out_dir;
    if (seed_set) opt.seed_override = seed;
    opt.threads = threads;
    return fraclap::run_command(app.get_subcommands().front()->get_name(),
                                opt);
}
