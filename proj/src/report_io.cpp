#include "chemsim/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

#include "chemsim/kernels.hpp"

namespace chemsim::cli {

namespace {

std::ofstream open_out(const std::string& path) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open output file: " + path);
    return out;
}

void put(std::ofstream& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    out << buf;
}

}  // namespace

void write_series_csv(const std::string& path, const Trajectory& traj,
                      const std::optional<std::pair<double, double>>& energy_pr,
                      const std::string& config_hash) {
    std::ofstream out = open_out(path);
    out << "# config_hash=" << config_hash << "\n";
    out << "# kernels=" << kernels::backend_name() << "\n";
    const bool oned = traj.grid().dim == 1;
    out << "t,u_l1,u_l2,u_linf,v_l1,v_linf,v_min";
    if (energy_pr) out << ",energy";
    if (oned) out << ",wx_l2,win_wxx2,win_wx6,win_ux2,win_u6,wx_l4";
    out << "\n";

    monitors::OnedSeries suite;
    if (oned) suite = monitors::compute_oned_series(traj);
    const double inf = std::numeric_limits<double>::infinity();
    const double vol = traj.grid().cell_volume();
    for (size_t k = 0; k < traj.size(); ++k) {
        const Field& u = traj.u_at(k);
        const Field v = traj.v_at(k);
        put(out, traj.t_at(k));
        out << ',';
        put(out, lp_norm(u, 1.0));
        out << ',';
        put(out, lp_norm(u, 2.0));
        out << ',';
        put(out, lp_norm(u, inf));
        out << ',';
        put(out, lp_norm(v, 1.0));
        out << ',';
        put(out, lp_norm(v, inf));
        out << ',';
        put(out, kernels::ops().reduce_min(v.data(), v.size()));
        if (energy_pr) {
            double e = 0.0;
            for (int i = 0; i < u.size(); ++i)
                e += std::pow(u[i], energy_pr->first) *
                     std::pow(v[i], -energy_pr->second);
            out << ',';
            put(out, e * vol);
        }
        if (oned) {
            out << ',';
            put(out, suite.wx_l2[k]);
            out << ',';
            put(out, suite.win_wxx2[k]);
            out << ',';
            put(out, suite.win_wx6[k]);
            out << ',';
            put(out, suite.win_ux2[k]);
            out << ',';
            put(out, suite.win_u6[k]);
            out << ',';
            put(out, suite.wx_l4[k]);
        }
        out << "\n";
    }
}

nlohmann::json monitor_entry_json(const monitors::MonitorEntry& e) {
    nlohmann::json j;
    j["name"] = e.name;
    j["statement"] = e.statement;
    j["kind"] = e.kind;
    j["tolerance"] = e.tolerance;
    j["max_rel_violation"] = e.max_rel_violation;
    j["verdict"] = monitors::verdict_name(e.verdict);
    j["covered"] = e.covered;
    if (!e.note.empty()) j["note"] = e.note;
    nlohmann::json series = nlohmann::json::array();
    for (const auto& s : e.series) series.push_back({s.t, s.value, s.bound});
    j["series"] = series;
    return j;
}

nlohmann::json run_report_json(const RunConfig& cfg, const ModelParams& eff,
                               const Trajectory& traj, const BlowupFlag& blowup,
                               const monitors::MonitorReport& rep) {
    nlohmann::json j;
    j["schema"] = "chemsim-report-v1";
    j["config_hash"] = cfg.hash();
    j["kernels"] = kernels::backend_name();
    if (!cfg.preset.empty()) j["preset"] = cfg.preset;
    j["formulation"] = traj.form == Formulation::uv ? "uv" : "uw";
    const Grid& g = traj.grid();
    j["grid"] = {{"dim", g.dim},
                 {"extent", {g.extent[0], g.dim == 2 ? g.extent[1] : 0.0}},
                 {"cells", {g.cells[0], g.dim == 2 ? g.cells[1] : 0}}};
    j["params"] = {{"chi", eff.chi},
                   {"kappa", eff.kappa},
                   {"mu", eff.mu},
                   {"alpha", eff.alpha},
                   {"eta", eff.eta}};
    const StepDiagnostics& d = traj.diag;
    j["run"] = {{"t_end", traj.snaps.back().t},
                {"snapshots", traj.size()},
                {"steps", d.n_steps},
                {"dt_min", d.dt_min},
                {"dt_max", d.dt_max},
                {"max_diffusion_cfl", d.max_diffusion_cfl},
                {"max_advection_cfl", d.max_advection_cfl},
                {"clip_mass_u", d.clip_mass_u},
                {"clip_mass_w", d.clip_mass_w},
                {"sensitivity_guard_activations", d.guard_activations},
                {"min_u", d.min_u},
                {"min_v", d.min_v}};
    j["blowup"] = {{"flagged", blowup.flagged},
                   {"t", blowup.t},
                   {"value", blowup.value},
                   {"reason", blowup.reason}};
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : rep.entries) entries.push_back(monitor_entry_json(e));
    j["monitors"] = entries;
    j["tolerances"] = {{"hard", cfg.mon.tol_hard},
                       {"mass", cfg.mon.tol_mass},
                       {"window", cfg.mon.tol_window},
                       {"energy_endpoint", cfg.mon.tol_energy_endpoint},
                       {"energy_ratio", cfg.mon.tol_energy_ratio},
                       {"decay", cfg.mon.tol_decay},
                       {"lower", cfg.mon.tol_lower},
                       {"trend", cfg.mon.tol_trend},
                       {"scheme_slack", cfg.mon.scheme_slack}};
    j["all_pass"] = rep.all_pass();
    return j;
}

nlohmann::json ordering_report_json(const comparison::OrderingReport& r) {
    nlohmann::json j;
    j["pair"] = r.name;
    j["tolerance"] = r.tol;
    j["min_gap"] = r.min_gap;
    j["initial_ordering_ok"] = r.initial_ordering_ok;
    j["verdict"] = r.pass ? "pass" : "fail";
    if (r.t_first_violation >= 0.0) {
        j["t_first_violation"] = r.t_first_violation;
        j["cell_first_violation"] = r.cell_first_violation;
    }
    j["note"] = r.note;
    return j;
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
    std::ofstream out = open_out(path);
    out << j.dump(2) << "\n";
}

void write_field_dump(const std::string& path, double t, const Field& f,
                      const std::string& config_hash) {
    std::ofstream out = open_out(path);
    out << "# config_hash=" << config_hash << "\n";
    const Grid& g = f.grid;
    if (g.dim == 1) {
        out << "t,dim,nx\n";
        put(out, t);
        out << ",1," << g.nx() << "\n";
    } else {
        out << "t,dim,nx,ny\n";
        put(out, t);
        out << ",2," << g.nx() << "," << g.ny() << "\n";
    }
    for (int j = 0; j < g.ny(); ++j) {
        for (int i = 0; i < g.nx(); ++i) {
            if (i) out << ',';
            put(out, f.at(i, j));
        }
        out << "\n";
    }
}

void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows,
                     const std::string& config_hash) {
    std::ofstream out = open_out(path);
    out << "# config_hash=" << config_hash << "\n";
    out << "chi,mu,kappa,chi_ok,mu_gate_strict,mu_gate_relaxed,"
           "monitors_passed,monitors_failed,blowup,final_u_linf,exit_code\n";
    for (const auto& r : rows) {
        put(out, r.chi);
        out << ',';
        put(out, r.mu);
        out << ',';
        put(out, r.kappa);
        out << ',' << (r.chi_ok ? 1 : 0) << ',' << (r.mu_strict ? 1 : 0) << ','
            << (r.mu_relaxed ? 1 : 0) << ',' << r.monitors_passed << ','
            << r.monitors_failed << ',' << (r.blowup ? 1 : 0) << ',';
        put(out, r.final_u_linf);
        out << ',' << r.exit_code << "\n";
    }
}

}  // namespace chemsim::cli
