#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "chemsim/harness.hpp"
#include "chemsim/kernels.hpp"

using namespace chemsim;

namespace {

cli::RunConfig resolve_config(const std::string& config_path,
                              const std::string& preset,
                              const std::string& kernels, long seed,
                              bool have_seed) {
    cli::RunConfig cfg;
    if (!config_path.empty()) {
        cfg = cli::load_run_config(config_path);
    } else if (!preset.empty()) {
        cfg = cli::preset_config(preset);
        cli::apply_env(cfg);
    } else {
        throw ConfigError("one of --config or --preset is required");
    }
    if (!kernels.empty()) cfg.kernels = kernels;
    if (have_seed) cfg.seed = static_cast<unsigned long>(seed);
    cfg.validate();
    return cfg;
}

std::string default_out(const cli::RunConfig& cfg, const std::string& out) {
    if (!out.empty()) return out;
    return "out/" + (cfg.preset.empty() ? std::string("run") : cfg.preset);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"structure-preserving simulator and bound-verification "
                 "harness for a chemotaxis-consumption system with singular "
                 "sensitivity and logistic source"};
    app.require_subcommand(1);

    std::string config_path, preset, out_dir, kernels;
    long seed = 0;
    bool quiet = false;
    app.add_flag("--quiet", quiet, "suppress progress output");

    auto add_common = [&](CLI::App* sub, bool needs_scenario) {
        sub->fallthrough();  // lets the global --quiet trail the subcommand
        if (needs_scenario) {
            sub->add_option("--config", config_path, "run config file");
            sub->add_option("--preset", preset,
                            "named preset (steady-decay, 2d-thm1, 1d-bounded, "
                            "1d-perturbed)");
            sub->add_option("--seed", seed, "override the config seed");
            sub->add_option("--kernels", kernels,
                            "kernel backend: auto|scalar|avx2");
        }
        sub->add_option("--out", out_dir, "output directory");
    };

    auto* run = app.add_subcommand("run", "simulate and check every monitor");
    add_common(run, true);

    auto* sweep = app.add_subcommand(
        "sweep", "run a parameter grid and summarize gate/monitor outcomes");
    sweep->fallthrough();
    std::string sweep_config;
    int jobs = 0;
    sweep->add_option("--config", sweep_config, "sweep config file")
        ->required();
    sweep->add_option("--jobs", jobs, "concurrent runs (default: cores)");
    sweep->add_option("--out", out_dir, "output directory");

    auto* checkexp = app.add_subcommand(
        "check-exponents", "closed-form exponent window, gates and bootstrap");
    checkexp->fallthrough();
    double chi = 0.0, mu = 0.0, p0 = 0.0;
    int n = 2;
    checkexp->add_option("--chi", chi, "sensitivity chi")->required();
    checkexp->add_option("--mu", mu, "crowding mu")->required();
    checkexp->add_option("--n", n, "spatial dimension")->required();
    auto* p0opt = checkexp->add_option("--p0", p0, "bootstrap start exponent");

    auto* compare = app.add_subcommand(
        "compare-formulations",
        "refinement study of the gap between the two formulations");
    int levels = 3;
    add_common(compare, true);
    compare->add_option("--levels", levels, "refinement levels (default 3)");

    auto* verify = app.add_subcommand(
        "verify", "check the canonical barrier orderings along a run");
    add_common(verify, true);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            const auto cfg =
                resolve_config(config_path, preset, kernels, seed,
                               run->count("--seed") > 0);
            return cli::execute_run(cfg, default_out(cfg, out_dir), quiet);
        }
        if (sweep->parsed()) {
            const auto sc = cli::load_sweep_config(sweep_config);
            const std::string out =
                out_dir.empty() ? "out/sweep" : out_dir;
            return cli::execute_sweep(sc, out, quiet, jobs);
        }
        if (checkexp->parsed()) {
            return cli::execute_check_exponents(chi, mu, n, p0,
                                                p0opt->count() > 0, quiet);
        }
        if (compare->parsed()) {
            const auto cfg =
                resolve_config(config_path, preset, kernels, seed,
                               compare->count("--seed") > 0);
            return cli::execute_compare(cfg, levels,
                                        default_out(cfg, out_dir), quiet);
        }
        if (verify->parsed()) {
            const auto cfg =
                resolve_config(config_path, preset, kernels, seed,
                               verify->count("--seed") > 0);
            return cli::execute_verify(cfg, default_out(cfg, out_dir), quiet);
        }
    } catch (const CflError& e) {
        std::fprintf(stderr, "CFL refusal: %s\n", e.what());
        return cli::kExitConfig;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return cli::kExitConfig;
    } catch (const NumericsError& e) {
        std::fprintf(stderr, "numerics error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
