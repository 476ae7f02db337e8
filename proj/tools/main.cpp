#include <CLI11.hpp>
#include <cstdio>
#include <exception>

#include "cli_common.hpp"
#include "gravmeas/errors.hpp"
#include "gravmeas/version.hpp"

using namespace gravmeas;
using cli::CliOptions;

int main(int argc, char** argv) {
    CLI::App app{"restricted-path-integral propagators and interference for a "
                 "monitored particle in an inhomogeneous gravitational field"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    CliOptions opt;
    auto add_common = [&](CLI::App* sub, bool config_required) {
        auto* c = sub->add_option("--config", opt.config_path, "scenario config file");
        if (config_required) c->required();
        sub->add_option("--record", opt.record_path, "alpha-beam record CSV");
        sub->add_option("--record-beta", opt.record_beta_path, "beta-beam record CSV");
        sub->add_option("--out", opt.out_dir, "output directory");
        sub->add_option("--format", opt.format, "stdout payload: json|csv")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--sweep", opt.sweep, "KEY=start:stop:steps parameter sweep");
        sub->add_flag("--toy-units", opt.toy_units,
                      "default missing constants to G = hbar = 1");
    };

    add_common(app.add_subcommand("propagator",
                                  "unmeasured and monitored propagators"), true);
    add_common(app.add_subcommand("interference", "five-term pattern and direct cross term"),
               true);
    add_common(app.add_subcommand("cow", "neutron-interferometry phase and R-dependence"),
               true);
    add_common(app.add_subcommand("estimate", "trap-grade monitoring feasibility numbers"),
               true);

    CLI::App* sweep = app.add_subcommand("sweep", "sweep a config key over a target command");
    add_common(sweep, true);
    sweep->add_option("--target", opt.target, "propagator|interference|cow")
        ->check(CLI::IsMember({"propagator", "interference", "cow"}));

    CLI::App* verify =
        app.add_subcommand("verify", "oracle triangle, limit suite and comparison table");
    add_common(verify, false);
    verify->add_flag("--list", opt.list_checks, "print the check inventory and exit");
    verify->add_option("--filter", opt.filter, "run only checks whose name contains this");
    verify->add_option("--tolerance-scale", opt.tolerance_scale,
                       "multiply every tolerance (diagnostics only)");

    CLI11_PARSE(app, argc, argv);

    opt.subcommand = app.get_subcommands().front()->get_name();
    if (opt.toy_units) opt.overrides.push_back("--toy-units");
    if (!opt.sweep.empty()) opt.overrides.push_back("--sweep " + opt.sweep);
    if (!opt.record_path.empty()) opt.overrides.push_back("--record " + opt.record_path);
    if (!opt.record_beta_path.empty())
        opt.overrides.push_back("--record-beta " + opt.record_beta_path);
    if (opt.tolerance_scale != 1.0)
        opt.overrides.push_back("--tolerance-scale " + std::to_string(opt.tolerance_scale));

    try {
        if (opt.subcommand == "propagator") return cli::run_propagator(opt);
        if (opt.subcommand == "interference") return cli::run_interference(opt);
        if (opt.subcommand == "cow") return cli::run_cow(opt);
        if (opt.subcommand == "estimate") return cli::run_estimate(opt);
        if (opt.subcommand == "sweep") return cli::run_sweep(opt);
        if (opt.subcommand == "verify") return cli::run_verify(opt);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const SingularKernel& e) {
        std::fprintf(stderr, "numerical fault: %s\n", e.what());
        return 3;
    } catch (const GridMismatch& e) {
        std::fprintf(stderr, "numerical fault: %s\n", e.what());
        return 3;
    } catch (const DegenerateDenominator& e) {
        std::fprintf(stderr, "numerical fault: %s\n", e.what());
        return 3;
    } catch (const BoundaryLeak& e) {
        std::fprintf(stderr, "numerical fault: %s (leak %.3g)\n", e.what(), e.leak_magnitude);
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 2;
}
