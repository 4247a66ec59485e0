#include "chemsim/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <atomic>
#include <limits>
#include <thread>

#include "chemsim/analysis.hpp"
#include "chemsim/kernels.hpp"

namespace chemsim::cli {

namespace {

RunOptions options_from(const RunConfig& cfg) {
    RunOptions o;
    o.t_end = cfg.t_end;
    o.cadence = cfg.cadence;
    o.safety = cfg.safety;
    o.fixed_dt = cfg.dt_override;
    o.blowup_ceiling = cfg.mon.blowup_ceiling;
    o.blowup_q = cfg.mon.blowup_q;
    return o;
}

}  // namespace

RunArtifacts simulate(const RunConfig& cfg, Formulation form) {
    cfg.validate();
    if (!kernels::select_backend(cfg.kernels))
        throw ConfigError("kernel backend '" + cfg.kernels +
                          "' is not available on this machine");
    const Grid grid = cfg.grid.make();
    const Field u0 = build_initial(grid, cfg.u0, cfg.seed, true, false);
    const Field v0 = build_initial(grid, cfg.v0, cfg.seed + 1, false, true);
    const ModelParams params = cfg.effective_params(v0);

    RunArtifacts art;
    art.params = params;
    RunResult rr;
    if (form == Formulation::uv) {
        rr = run_uv({u0, v0, 0.0}, params, options_from(cfg));
    } else {
        StateUV s0{u0, v0, 0.0};
        rr = run_uw(to_uw(s0), params, options_from(cfg));
    }
    art.traj = std::move(rr.traj);
    art.blowup = rr.blowup;
    if (cfg.monitors_enabled)
        art.report = monitors::evaluate(art.traj, params, cfg.mon);
    art.exit_code = art.blowup.flagged              ? kExitBlowup
                    : (!art.report.all_pass())      ? kExitMonitorFail
                                                    : kExitOk;
    return art;
}

namespace {

void write_run_outputs(const RunConfig& cfg, const RunArtifacts& art,
                       const std::string& out_dir, const std::string& suffix,
                       bool quiet) {
    const std::string hash = cfg.hash();
    std::optional<std::pair<double, double>> pr = cfg.mon.energy_pr;
    if (!pr && cfg.mon.energy_enabled) {
        if (auto ap = analysis::admissible_pair(art.params.chi, art.params.mu,
                                                art.traj.grid().dim))
            pr = std::make_pair(ap->p, ap->r);
    }
    if (cfg.write_series)
        write_series_csv(out_dir + "/series" + suffix + ".csv", art.traj, pr,
                         hash);
    if (cfg.write_report)
        write_json_file(out_dir + "/report" + suffix + ".json",
                        run_report_json(cfg, art.params, art.traj, art.blowup,
                                        art.report));
    if (cfg.dump_fields) {
        for (size_t k = 0; k < art.traj.size();
             k += static_cast<size_t>(cfg.dump_every)) {
            char name[64];
            std::snprintf(name, sizeof(name), "/fields%s/u_%05zu.csv",
                          suffix.c_str(), k);
            write_field_dump(out_dir + name, art.traj.t_at(k),
                             art.traj.u_at(k), hash);
            std::snprintf(name, sizeof(name), "/fields%s/v_%05zu.csv",
                          suffix.c_str(), k);
            write_field_dump(out_dir + name, art.traj.t_at(k),
                             art.traj.v_at(k), hash);
        }
    }
    if (!quiet) {
        int passed = 0, failed = 0;
        for (const auto& e : art.report.entries) {
            if (e.verdict == monitors::Verdict::pass) ++passed;
            if (e.verdict == monitors::Verdict::fail) ++failed;
        }
        std::printf("[%s%s] steps=%ld snapshots=%zu monitors: %d pass, %d "
                    "fail%s%s\n",
                    cfg.preset.empty() ? "run" : cfg.preset.c_str(),
                    suffix.c_str(), art.traj.diag.n_steps, art.traj.size(),
                    passed, failed,
                    art.blowup.flagged ? " blow-up: " : "",
                    art.blowup.flagged ? art.blowup.reason.c_str() : "");
    }
}

}  // namespace

int execute_run(const RunConfig& cfg, const std::string& out_dir, bool quiet) {
    std::filesystem::create_directories(out_dir);
    int code = kExitOk;
    if (cfg.formulation == "uv" || cfg.formulation == "both") {
        RunArtifacts art = simulate(cfg, Formulation::uv);
        write_run_outputs(cfg, art, out_dir,
                          cfg.formulation == "both" ? "_uv" : "", quiet);
        code = std::max(code, art.exit_code);
    }
    if (cfg.formulation == "uw" || cfg.formulation == "both") {
        RunArtifacts art = simulate(cfg, Formulation::uw);
        write_run_outputs(cfg, art, out_dir,
                          cfg.formulation == "both" ? "_uw" : "", quiet);
        code = std::max(code, art.exit_code);
    }
    return code;
}

int execute_sweep(const SweepConfig& sc, const std::string& out_dir, bool quiet,
                  int jobs) {
    std::filesystem::create_directories(out_dir);
    struct Combo {
        double chi, mu, kappa;
        size_t index;
    };
    std::vector<Combo> combos;
    for (double chi : sc.chi_values)
        for (double mu : sc.mu_values)
            for (double kappa : sc.kappa_values)
                combos.push_back({chi, mu, kappa, combos.size()});

    std::vector<SweepRow> rows(combos.size());
    if (jobs <= 0)
        jobs = static_cast<int>(std::thread::hardware_concurrency());
    jobs = std::max(1, std::min<int>(jobs, static_cast<int>(combos.size())));

    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= combos.size()) return;
            const Combo& c = combos[i];
            RunConfig cfg = sc.base;
            cfg.params.chi = c.chi;
            cfg.params.mu = c.mu;
            cfg.params.kappa = c.kappa;
            SweepRow row{};
            row.chi = c.chi;
            row.mu = c.mu;
            row.kappa = c.kappa;
            const auto gate =
                analysis::theorem_gate(c.chi, c.mu, cfg.grid.dim);
            row.chi_ok = gate.chi_ok;
            row.mu_strict = gate.mu_strict;
            row.mu_relaxed = gate.mu_relaxed;
            try {
                const Formulation form = cfg.formulation == "uw"
                                             ? Formulation::uw
                                             : Formulation::uv;
                RunArtifacts art = simulate(cfg, form);
                for (const auto& e : art.report.entries) {
                    if (e.verdict == monitors::Verdict::pass)
                        ++row.monitors_passed;
                    if (e.verdict == monitors::Verdict::fail)
                        ++row.monitors_failed;
                }
                row.blowup = art.blowup.flagged;
                row.final_u_linf =
                    lp_norm(art.traj.u_at(art.traj.size() - 1),
                            std::numeric_limits<double>::infinity());
                row.exit_code = art.exit_code;
                char sub[96];
                std::snprintf(sub, sizeof(sub),
                              "/run_%03zu_chi%g_mu%g_kappa%g", c.index, c.chi,
                              c.mu, c.kappa);
                write_json_file(out_dir + sub + "/report.json",
                                run_report_json(cfg, art.params, art.traj,
                                                art.blowup, art.report));
            } catch (const std::exception& e) {
                row.exit_code = kExitConfig;
                row.final_u_linf = std::nan("");
                if (!quiet)
                    std::fprintf(stderr, "sweep combo %zu failed: %s\n",
                                 c.index, e.what());
            }
            rows[c.index] = row;
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    write_sweep_csv(out_dir + "/summary.csv", rows, sc.base.hash());
    if (!quiet) {
        std::printf("chi,mu,kappa,gates,monitors,blowup,final_u_linf\n");
        for (const auto& r : rows)
            std::printf("%g,%g,%g,%d%d%d,%d/%d,%d,%g\n", r.chi, r.mu, r.kappa,
                        r.chi_ok, r.mu_strict, r.mu_relaxed,
                        r.monitors_passed,
                        r.monitors_passed + r.monitors_failed, r.blowup,
                        r.final_u_linf);
    }
    int worst = kExitOk;
    for (const auto& r : rows) worst = std::max(worst, r.exit_code);
    return sc.aggregate == "count" ? kExitOk : worst;
}

CompareResult compare_formulations(const RunConfig& cfg, int levels) {
    if (levels < 2) throw ConfigError("compare: needs at least 2 levels");
    CompareResult res;
    double dt0 = 0.0;  // base step, fixed at level 0 and quartered per level
    for (int lev = 0; lev < levels; ++lev) {
        RunConfig c = cfg;
        const int mult = 1 << lev;
        for (int d = 0; d < c.grid.dim; ++d) c.grid.cells[d] *= mult;
        c.validate();
        if (!kernels::select_backend(c.kernels))
            throw ConfigError("kernel backend unavailable");
        const Grid grid = c.grid.make();
        const Field u0 = build_initial(grid, c.u0, c.seed, true, false);
        const Field v0 = build_initial(grid, c.v0, c.seed + 1, false, true);
        const ModelParams params = c.effective_params(v0);
        StateUV s_uv{u0, v0, 0.0};
        StateUW s_uw = to_uw(s_uv);

        if (lev == 0) {
            dt0 = cfg.dt_override
                      ? *cfg.dt_override
                      : cfg.safety * std::min(suggest_dt(s_uv, params, 1.0),
                                              suggest_dt(s_uw, params, 1.0));
        }
        const double dt = dt0 / std::pow(4.0, lev);

        RunOptions o;
        o.t_end = c.t_end;
        o.cadence = c.t_end;  // endpoints only
        o.fixed_dt = dt;
        o.safety = c.safety;
        o.blowup_ceiling = std::numeric_limits<double>::infinity();
        RunResult r_uv = run_uv(s_uv, params, o);
        RunResult r_uw = run_uw(s_uw, params, o);

        const Field v_end = r_uv.traj.v_at(r_uv.traj.size() - 1);
        const Field v_rec = r_uw.traj.v_at(r_uw.traj.size() - 1);
        double gap = 0.0;
        for (int i = 0; i < v_end.size(); ++i)
            gap = std::max(gap, std::fabs(v_end[i] - v_rec[i]));
        res.levels.push_back({grid.nx(), dt, gap});
    }
    for (size_t k = 0; k + 1 < res.levels.size(); ++k) {
        const double g0 = res.levels[k].gap, g1 = res.levels[k + 1].gap;
        res.orders.push_back(g1 > 0.0 ? std::log(g0 / g1) / std::log(4.0)
                                      : std::numeric_limits<double>::infinity());
    }
    return res;
}

int execute_compare(const RunConfig& cfg, int levels,
                    const std::string& out_dir, bool quiet) {
    const CompareResult res = compare_formulations(cfg, levels);
    std::filesystem::create_directories(out_dir);
    std::ofstream out(out_dir + "/compare.csv");
    out << "# config_hash=" << cfg.hash() << "\n";
    out << "level,cells,dt,sup_gap,order_vs_prev\n";
    for (size_t k = 0; k < res.levels.size(); ++k) {
        out << k << ',' << res.levels[k].cells << ',' << res.levels[k].dt << ','
            << res.levels[k].gap << ',';
        if (k > 0) out << res.orders[k - 1];
        out << "\n";
    }
    if (!quiet) {
        std::printf("level  cells        dt        sup|v_uv - v_uw|   order\n");
        for (size_t k = 0; k < res.levels.size(); ++k)
            std::printf("%5zu  %5d  %.3e  %.6e  %s\n", k, res.levels[k].cells,
                        res.levels[k].dt, res.levels[k].gap,
                        k > 0 ? std::to_string(res.orders[k - 1]).c_str() : "-");
    }
    return kExitOk;
}

int execute_verify(const RunConfig& cfg, const std::string& out_dir,
                   bool quiet) {
    const Formulation form =
        cfg.formulation == "uw" ? Formulation::uw : Formulation::uv;
    RunArtifacts art = simulate(cfg, form);
    const auto pairs = comparison::canonical_barriers(art.traj, art.params);
    const double tol = comparison::default_tolerance(art.traj);

    nlohmann::json j;
    j["schema"] = "chemsim-verify-v1";
    j["config_hash"] = cfg.hash();
    j["kernels"] = kernels::backend_name();
    j["tolerance"] = tol;
    nlohmann::json reports = nlohmann::json::array();
    bool all_pass = true;
    for (const auto& p : pairs) {
        const auto r = comparison::verify_ordering(p.sub, p.super, tol);
        all_pass = all_pass && r.pass;
        nlohmann::json jr = ordering_report_json(r);
        jr["barrier"] = p.name;
        reports.push_back(jr);
        if (!quiet)
            std::printf("[%s] %s: min gap %.3e (tol %.3e) -> %s\n",
                        p.name.c_str(), r.name.c_str(), r.min_gap, tol,
                        r.pass ? "pass" : "FAIL");
    }
    j["pairs"] = reports;
    j["all_pass"] = all_pass;
    std::filesystem::create_directories(out_dir);
    write_json_file(out_dir + "/verify.json", j);
    if (art.blowup.flagged) return kExitBlowup;
    return all_pass ? kExitOk : kExitMonitorFail;
}

int execute_check_exponents(double chi, double mu, int n, double p0,
                            bool have_p0, bool quiet) {
    (void)quiet;
    const auto gate = analysis::theorem_gate(chi, mu, n);
    std::printf("gates for chi=%g, mu=%g, n=%d:\n", chi, mu, n);
    std::printf("  chi < sqrt(2/n)        : %s\n", gate.chi_ok ? "yes" : "no");
    std::printf("  mu  > (n-2)/n (strict) : %s\n",
                gate.mu_strict ? "yes" : "no");
    std::printf("  mu  > (n-2)/(2n)       : %s\n",
                gate.mu_relaxed ? "yes" : "no");
    if (gate.one_d_note)
        std::printf("  n=1: global existence and boundedness hold for any "
                    "chi>0, mu>0, kappa>=0\n");

    const auto ap = analysis::admissible_pair(chi, mu, n);
    double p_start = have_p0 ? p0 : 0.0;
    if (ap) {
        std::printf("admissible pair: p=%.12g, r=%.12g  (r window (%.12g, "
                    "%.12g), cap mu*p=%.12g)\n",
                    ap->p, ap->r, ap->window.r_minus, ap->window.r_plus,
                    ap->window.r_cap);
        if (!have_p0) p_start = ap->p;
    } else {
        std::printf("admissible pair: none for these parameters\n");
    }
    if (p_start > 0.5 * n) {
        const auto trace = analysis::bootstrap_sequence(p_start, n);
        std::printf("bootstrap from p0=%.6g:", p_start);
        for (const auto& s : trace.steps) {
            if (std::isinf(s.p)) std::printf(" inf");
            else std::printf(" %.6g", s.p);
            if (s.rule == analysis::BootstrapRule::exceptional)
                std::printf("(exceptional)");
        }
        std::printf("  [%zu entries, %s]\n", trace.length(),
                    trace.terminated ? "terminated" : "cap reached");
    } else if (have_p0) {
        std::printf("bootstrap: p0=%.6g rejected (needs p0 > n/2)\n", p_start);
    } else {
        std::printf("bootstrap: skipped (no admissible p)\n");
    }
    return kExitOk;
}

}  // namespace chemsim::cli
