#include "chemsim/monitors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "chemsim/kernels.hpp"

namespace chemsim::monitors {

namespace {
constexpr double kTiny = 1e-300;

double rel_excess(double value, double bound) {
    // how far value sits above bound, relative to the bound's scale
    if (value <= bound) return 0.0;
    return (value - bound) / std::max(std::fabs(bound), kTiny);
}

Verdict verdict_from(double max_rel_violation, double tol) {
    return max_rel_violation <= tol ? Verdict::pass : Verdict::fail;
}
}  // namespace

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        default: return "info";
    }
}

bool MonitorReport::all_pass() const {
    for (const auto& e : entries)
        if (e.verdict == Verdict::fail) return false;
    return true;
}

const MonitorEntry* MonitorReport::find(const std::string& name) const {
    for (const auto& e : entries)
        if (e.name == name) return &e;
    return nullptr;
}

std::vector<double> sliding_window_integral(const std::vector<double>& t,
                                            const std::vector<double>& y,
                                            double width) {
    const size_t n = t.size();
    std::vector<double> prefix(n, 0.0);  // trapezoid integral over [t0, tk]
    for (size_t k = 1; k < n; ++k)
        prefix[k] =
            prefix[k - 1] + 0.5 * (y[k - 1] + y[k]) * (t[k] - t[k - 1]);
    auto prefix_at = [&](double tau) {
        if (tau <= t.front()) return 0.0;
        size_t lo = static_cast<size_t>(
            std::upper_bound(t.begin(), t.end(), tau) - t.begin());
        if (lo >= n) return prefix[n - 1];
        const size_t k = lo - 1;  // t[k] <= tau < t[k+1]
        const double dt = t[k + 1] - t[k];
        if (dt <= 0.0) return prefix[k];
        const double frac = (tau - t[k]) / dt;
        const double y_tau = y[k] + frac * (y[k + 1] - y[k]);
        return prefix[k] + 0.5 * (y[k] + y_tau) * (tau - t[k]);
    };
    std::vector<double> out(n, 0.0);
    for (size_t k = 0; k < n; ++k)
        out[k] = prefix[k] - prefix_at(t[k] - width);
    return out;
}

double odi_bound(double y0, double C, double a) {
    if (!(a > 0.0)) throw ConfigError("odi_bound: requires a > 0");
    return y0 + C / (1.0 - std::exp(-a));
}

MonitorEntry mass_bound(const Trajectory& traj, const ModelParams& p,
                        double tol) {
    MonitorEntry e;
    e.name = "mass-l1";
    e.statement = "int u <= max(int u0, kappa*|Omega|/mu)";
    e.kind = "hard-bound";
    e.tolerance = tol;
    const double mass0 = integrate(traj.u_at(0));
    const double m =
        std::max(mass0, p.kappa * traj.grid().volume / p.mu);
    for (size_t k = 0; k < traj.size(); ++k) {
        const double v = integrate(traj.u_at(k));
        e.series.push_back({traj.t_at(k), v, m});
        e.max_rel_violation =
            std::max(e.max_rel_violation,
                     m > 0.0 ? rel_excess(v, m) : (v > kTiny ? 1.0 : 0.0));
    }
    e.verdict = verdict_from(e.max_rel_violation, tol);
    return e;
}

MonitorEntry spacetime_u2(const Trajectory& traj, const ModelParams& p,
                          double tol) {
    MonitorEntry e;
    e.name = "window-u2";
    e.statement = "int_{(t-1)+}^{t} int u^2 <= (kappa+1)*m/mu";
    e.kind = "hard-bound";
    e.tolerance = tol;
    const double mass0 = integrate(traj.u_at(0));
    const double m = std::max(mass0, p.kappa * traj.grid().volume / p.mu);
    const double bound = (p.kappa + 1.0) * m / p.mu;
    std::vector<double> t, y;
    for (size_t k = 0; k < traj.size(); ++k) {
        t.push_back(traj.t_at(k));
        const double l2 = lp_norm(traj.u_at(k), 2.0);
        y.push_back(l2 * l2);
    }
    const auto win = sliding_window_integral(t, y, 1.0);
    for (size_t k = 0; k < t.size(); ++k) {
        e.series.push_back({t[k], win[k], bound});
        e.max_rel_violation =
            std::max(e.max_rel_violation,
                     bound > 0.0 ? rel_excess(win[k], bound)
                                 : (win[k] > kTiny ? 1.0 : 0.0));
    }
    e.verdict = verdict_from(e.max_rel_violation, tol);
    return e;
}

std::vector<MonitorEntry> vp_decay(const Trajectory& traj,
                                   const std::vector<double>& p_list,
                                   double tol) {
    std::vector<MonitorEntry> out;
    for (double p : p_list) {
        MonitorEntry e;
        char buf[64];
        std::snprintf(buf, sizeof(buf), "vp-decay-p%g", p);
        e.name = buf;
        e.statement = "t -> ||v||_p nonincreasing between snapshots";
        e.kind = "hard-bound";
        e.tolerance = tol;
        double prev = 0.0;
        for (size_t k = 0; k < traj.size(); ++k) {
            const double val = lp_norm(traj.v_at(k), p);
            const double bound = k == 0 ? val : prev;
            e.series.push_back({traj.t_at(k), val, bound});
            if (k > 0) {
                if (prev > kTiny)
                    e.max_rel_violation =
                        std::max(e.max_rel_violation, rel_excess(val, prev));
                else if (val > kTiny)
                    e.max_rel_violation = std::max(e.max_rel_violation, 1.0);
            }
            prev = val;
        }
        e.verdict = verdict_from(e.max_rel_violation, tol);
        out.push_back(std::move(e));
    }
    return out;
}

MonitorEntry vinf_bound(const Trajectory& traj, double tol) {
    MonitorEntry e;
    e.name = "vinf-sup";
    e.statement = "||v(t)||_inf <= ||v0||_inf";
    e.kind = "hard-bound";
    e.tolerance = tol;
    const double bound = traj.v0_sup;
    for (size_t k = 0; k < traj.size(); ++k) {
        const double val = lp_norm(traj.v_at(k),
                                   std::numeric_limits<double>::infinity());
        e.series.push_back({traj.t_at(k), val, bound});
        e.max_rel_violation = std::max(e.max_rel_violation,
                                       rel_excess(val, bound));
    }
    e.verdict = verdict_from(e.max_rel_violation, tol);
    return e;
}

MonitorEntry energy_upvr(const Trajectory& traj, double p, double r,
                         const ModelParams& mp, double tol_endpoint,
                         double tol_ratio) {
    MonitorEntry e;
    char buf[96];
    std::snprintf(buf, sizeof(buf), "gronwall-upvr(p=%.6g,r=%.6g)", p, r);
    e.name = "gronwall-upvr";
    e.statement = buf;
    e.kind = "hard-bound";
    e.tolerance = tol_endpoint;

    // admissibility of (p, r) for this chi, mu
    bool covered = false;
    if (p > 1.0 && p * mp.chi * mp.chi < 1.0) {
        const auto w = analysis::exponent_window(p, mp.chi, mp.mu);
        covered = r > w.r_minus && r < std::min(w.r_plus, w.r_cap);
    }
    e.covered = covered;
    if (!covered)
        e.note = "(p,r) outside the proven window; informational only";

    const Grid& g = traj.grid();
    const double vol = g.cell_volume();
    auto energy = [&](size_t k) {
        const Field u = traj.u_at(k);
        const Field v = traj.v_at(k);
        double s = 0.0;
        for (int i = 0; i < u.size(); ++i)
            s += std::pow(u[i], p) * std::pow(v[i], -r);
        return s * vol;
    };

    std::vector<double> E(traj.size());
    for (size_t k = 0; k < traj.size(); ++k) E[k] = energy(k);
    const double E0 = E[0];
    double worst_endpoint = 0.0, worst_ratio = 0.0;
    for (size_t k = 0; k < traj.size(); ++k) {
        const double bound = std::exp(p * mp.kappa * traj.t_at(k)) * E0;
        e.series.push_back({traj.t_at(k), E[k], bound});
        if (bound > kTiny)
            worst_endpoint = std::max(worst_endpoint, rel_excess(E[k], bound));
        else if (E[k] > kTiny)
            worst_endpoint = std::max(worst_endpoint, 1.0);
        if (k > 0) {
            const double dt = traj.t_at(k) - traj.t_at(k - 1);
            const double rb = std::exp(p * mp.kappa * dt) * E[k - 1];
            if (rb > kTiny)
                worst_ratio = std::max(worst_ratio, rel_excess(E[k], rb));
            else if (E[k] > kTiny)
                worst_ratio = std::max(worst_ratio, 1.0);
        }
    }
    e.max_rel_violation = std::max(worst_endpoint, worst_ratio);
    const bool ok = worst_endpoint <= tol_endpoint && worst_ratio <= tol_ratio;
    e.verdict = covered ? (ok ? Verdict::pass : Verdict::fail) : Verdict::info;
    char note[160];
    std::snprintf(note, sizeof(note),
                  "endpoint excess %.3e (tol %.1e), step-ratio excess %.3e "
                  "(tol %.1e)%s",
                  worst_endpoint, tol_endpoint, worst_ratio, tol_ratio,
                  covered ? "" : "; not covered");
    e.note = note;
    return e;
}

MonitorEntry lower_bound_v(const Trajectory& traj, double tol) {
    MonitorEntry e;
    e.name = "v-lower-exp";
    e.statement = "min v(t) >= (inf v0) * exp(-C t), C = running max ||u||_inf";
    e.kind = "hard-bound";
    e.tolerance = tol;
    double c_run = 0.0;
    for (size_t k = 0; k < traj.size(); ++k) {
        const Field u = traj.u_at(k);
        c_run = std::max(c_run, lp_norm(u, std::numeric_limits<double>::infinity()));
        const Field v = traj.v_at(k);
        const double vmin =
            kernels::ops().reduce_min(v.data(), v.size());
        const double bound = traj.v0_inf * std::exp(-c_run * traj.t_at(k));
        e.series.push_back({traj.t_at(k), vmin, bound});
        if (vmin < bound) {
            const double viol = (bound - vmin) / std::max(bound, kTiny);
            e.max_rel_violation = std::max(e.max_rel_violation, viol);
        }
    }
    e.verdict = verdict_from(e.max_rel_violation, tol);
    return e;
}

namespace {

// face-weighted integral of |g|^q over one axis of face values
double face_power_integral(const std::vector<double>& g, double q,
                           double cell_volume) {
    double s = 0.0;
    for (double x : g) s += std::pow(std::fabs(x), q);
    return s * cell_volume;
}

// Trend verdict: the running max over the second half must not exceed the
// first-half max by more than tol_trend. Window-integral series pass
// t_min = window width so that the ramp-up phase (where the window is not
// yet saturated) is not mistaken for growth; too-short runs yield an
// informational verdict instead of a spurious one.
MonitorEntry trend_entry(const std::string& name, const std::string& stmt,
                         const std::vector<double>& t,
                         const std::vector<double>& y, double tol_trend,
                         double t_min = 0.0) {
    MonitorEntry e;
    e.name = name;
    e.statement = stmt;
    e.kind = "trend";
    e.tolerance = tol_trend;
    for (size_t k = 0; k < t.size(); ++k) e.series.push_back({t[k], y[k], 0.0});
    const double t_mid = 0.5 * (t_min + t.back());
    size_t n1 = 0, n2 = 0;
    double m1 = 0.0, m2 = 0.0;
    for (size_t k = 0; k < t.size(); ++k) {
        if (t[k] < t_min) continue;
        if (t[k] <= t_mid) {
            m1 = std::max(m1, y[k]);
            ++n1;
        } else {
            m2 = std::max(m2, y[k]);
            ++n2;
        }
    }
    for (auto& s : e.series) s.bound = m1 * (1.0 + tol_trend);
    if (n1 < 2 || n2 < 2) {
        e.verdict = Verdict::info;
        e.note = "run too short for a trend verdict";
        return e;
    }
    const double floor = 1e-12 * (1.0 + m1);
    if (m2 > m1 * (1.0 + tol_trend) + floor)
        e.max_rel_violation = (m2 - m1) / std::max(m1, kTiny) - tol_trend;
    e.verdict = verdict_from(e.max_rel_violation, 0.0);
    char note[96];
    std::snprintf(note, sizeof(note), "first-half max %.6g, second-half max %.6g",
                  m1, m2);
    e.note = note;
    return e;
}

}  // namespace

OnedSeries compute_oned_series(const Trajectory& traj) {
    const Grid& g = traj.grid();
    if (g.dim != 1)
        throw ConfigError("oned series: requires a one-dimensional grid");
    OnedSeries s;
    const double vol = g.cell_volume();
    std::vector<double> wxx2, wx6, ux2, u6;
    for (size_t k = 0; k < traj.size(); ++k) {
        s.t.push_back(traj.t_at(k));
        const Field w = traj.w_at(k);
        const Field& u = traj.u_at(k);
        const FaceFlux wx = gradient_faces(w);
        const FaceFlux ux = gradient_faces(u);
        const Field wlap = laplacian_neumann(w);

        s.wx_l2.push_back(std::sqrt(face_power_integral(wx.x, 2.0, vol)));
        s.wx_l4.push_back(face_power_integral(wx.x, 4.0, vol));
        wx6.push_back(face_power_integral(wx.x, 6.0, vol));
        double l2 = 0.0;
        for (int i = 0; i < wlap.size(); ++i) l2 += wlap[i] * wlap[i];
        wxx2.push_back(l2 * vol);
        s.u_l2.push_back(lp_norm(u, 2.0));
        ux2.push_back(face_power_integral(ux.x, 2.0, vol));
        double s6 = 0.0;
        for (int i = 0; i < u.size(); ++i) {
            const double u2 = u[i] * u[i];
            s6 += u2 * u2 * u2;
        }
        u6.push_back(s6 * vol);
    }
    s.win_wxx2 = sliding_window_integral(s.t, wxx2, 1.0);
    s.win_wx6 = sliding_window_integral(s.t, wx6, 1.0);
    s.win_ux2 = sliding_window_integral(s.t, ux2, 1.0);
    s.win_u6 = sliding_window_integral(s.t, u6, 1.0);
    return s;
}

std::vector<MonitorEntry> oned_suite(const Trajectory& traj,
                                     const ModelParams&, double tol_trend) {
    if (traj.grid().dim != 1)
        throw ConfigError("oned_suite: requires a one-dimensional grid");
    if (traj.form != Formulation::uw)
        throw ConfigError("oned_suite: requires the transformed (uw) "
                          "formulation");
    const OnedSeries s = compute_oned_series(traj);
    std::vector<MonitorEntry> out;
    const double w = 1.0;  // width of the sliding windows
    out.push_back(trend_entry("oned-wx-l2", "||w_x||_2 uniformly bounded",
                              s.t, s.wx_l2, tol_trend));
    out.push_back(trend_entry("oned-win-wxx2",
                              "window int w_xx^2 uniformly bounded", s.t,
                              s.win_wxx2, tol_trend, w));
    out.push_back(trend_entry("oned-win-wx6",
                              "window int w_x^6 uniformly bounded", s.t,
                              s.win_wx6, tol_trend, w));
    out.push_back(trend_entry("oned-u-l2", "||u||_2 uniformly bounded", s.t,
                              s.u_l2, tol_trend));
    out.push_back(trend_entry("oned-win-ux2",
                              "window int u_x^2 uniformly bounded", s.t,
                              s.win_ux2, tol_trend, w));
    out.push_back(trend_entry("oned-win-u6", "window int u^6 uniformly bounded",
                              s.t, s.win_u6, tol_trend, w));
    out.push_back(trend_entry("oned-wx-l4", "int w_x^4 uniformly bounded", s.t,
                              s.wx_l4, tol_trend));
    return out;
}

MonitorEntry blowup_detector(const Trajectory& traj, double q, double ceiling) {
    MonitorEntry e;
    e.name = "extensibility";
    e.statement = "||u||_inf + ||v||_{W^{1,q}} stays finite (heuristic)";
    e.kind = "info";
    e.tolerance = 0.0;
    e.verdict = Verdict::info;
    if (q <= 0.0) q = traj.grid().dim + 1.0;
    std::vector<double> vals;
    double t_cross = -1.0;
    for (size_t k = 0; k < traj.size(); ++k) {
        const double val = extensibility_value(traj.u_at(k), traj.v_at(k), q);
        vals.push_back(val);
        e.series.push_back({traj.t_at(k), val, ceiling});
        if (t_cross < 0.0 && val >= ceiling) t_cross = traj.t_at(k);
    }
    bool superlinear = false;
    const size_t n = vals.size();
    const size_t w = std::max<size_t>(5, n / 5);
    if (n >= w && w >= 4) {
        bool increasing = true;
        for (size_t k = n - w + 1; k < n; ++k)
            if (vals[k] <= vals[k - 1]) increasing = false;
        if (increasing && vals[n - w] > kTiny &&
            vals[n - 1] > 10.0 * vals[n - w]) {
            const auto slope = [&](size_t a, size_t b) {
                return (std::log(vals[b]) - std::log(vals[a])) /
                       (traj.t_at(b) - traj.t_at(a));
            };
            const size_t mid = n - w / 2;
            if (slope(mid, n - 1) > 1.5 * slope(n - w, mid)) superlinear = true;
        }
    }
    if (t_cross >= 0.0) {
        char note[128];
        std::snprintf(note, sizeof(note),
                      "suspected finite-time blow-up: ceiling %.3e first "
                      "crossed at t=%.6g",
                      ceiling, t_cross);
        e.note = note;
        e.max_rel_violation = 1.0;
    } else if (superlinear) {
        e.note = "suspected finite-time blow-up: superlinear log-scale growth "
                 "over the last window";
        e.max_rel_violation = 1.0;
    } else {
        e.note = "no flag";
    }
    return e;
}

std::vector<MonitorEntry> step_invariants(const Trajectory& traj, double tol) {
    std::vector<MonitorEntry> out;
    const StepDiagnostics& d = traj.diag;
    const double t_end = traj.snaps.back().t;

    double u_scale = 0.0;
    for (size_t k = 0; k < traj.size(); ++k)
        u_scale = std::max(u_scale, lp_norm(traj.u_at(k),
                           std::numeric_limits<double>::infinity()));

    {
        MonitorEntry e;
        e.name = "positivity-u";
        e.statement = "min u >= 0 at every step";
        e.kind = "per-step";
        e.tolerance = tol;
        e.series.push_back({t_end, d.min_u, 0.0});
        if (d.min_u < 0.0)
            e.max_rel_violation = -d.min_u / std::max(u_scale, kTiny);
        e.verdict = verdict_from(e.max_rel_violation, tol);
        out.push_back(std::move(e));
    }
    {
        MonitorEntry e;
        e.name = "positivity-v";
        e.statement = "min v > 0 at every step";
        e.kind = "per-step";
        e.tolerance = 0.0;
        e.series.push_back({t_end, d.min_v, 0.0});
        e.max_rel_violation = d.min_v > 0.0 ? 0.0 : 1.0;
        e.verdict = verdict_from(e.max_rel_violation, 0.0);
        out.push_back(std::move(e));
    }
    if (d.per_step_vp_checked) {
        {
            MonitorEntry e;
            e.name = "vinf-monotone-step";
            e.statement = "||v||_inf nonincreasing at every step";
            e.kind = "per-step";
            e.tolerance = tol;
            e.series.push_back({t_end, d.max_vinf_ratio, 1.0});
            e.max_rel_violation = std::max(0.0, d.max_vinf_ratio - 1.0);
            e.verdict = verdict_from(e.max_rel_violation, tol);
            out.push_back(std::move(e));
        }
        const double plist[3] = {1.0, 2.0, 4.0};
        for (int i = 0; i < 3; ++i) {
            MonitorEntry e;
            char buf[48];
            std::snprintf(buf, sizeof(buf), "vp-monotone-step-p%g", plist[i]);
            e.name = buf;
            e.statement = "||v||_p^p nonincreasing at every step";
            e.kind = "per-step";
            e.tolerance = tol;
            e.series.push_back({t_end, d.max_vp_ratio[i], 1.0});
            e.max_rel_violation = std::max(0.0, d.max_vp_ratio[i] - 1.0);
            e.verdict = verdict_from(e.max_rel_violation, tol);
            out.push_back(std::move(e));
        }
    }
    return out;
}

MonitorReport evaluate(const Trajectory& traj, const ModelParams& p,
                       const MonitorConfig& cfg) {
    MonitorReport r;
    const Grid& g = traj.grid();
    const double h = g.min_spacing();
    const double t_end = traj.snaps.back().t;
    double slack = cfg.scheme_slack;
    if (slack <= 0.0) {
        // uv snapshot checks compose per-step exact inequalities; the uw
        // reconstruction carries first-order time and second-order space error
        slack = (traj.form == Formulation::uw)
                    ? 50.0 * (traj.diag.dt_max + h * h)
                    : 0.0;
    }
    const double lower_slack =
        10.0 * (traj.diag.dt_max + h * h) * std::max(1.0, t_end);

    for (auto& e : step_invariants(traj, cfg.tol_hard))
        r.entries.push_back(std::move(e));
    r.entries.push_back(mass_bound(traj, p, cfg.tol_mass));
    r.entries.push_back(spacetime_u2(traj, p, cfg.tol_window));
    for (auto& e : vp_decay(traj, cfg.p_list, cfg.tol_decay + slack))
        r.entries.push_back(std::move(e));
    r.entries.push_back(vinf_bound(traj, cfg.tol_hard + slack));
    if (cfg.energy_enabled) {
        std::optional<std::pair<double, double>> pr = cfg.energy_pr;
        if (!pr) {
            if (auto ap = analysis::admissible_pair(p.chi, p.mu, g.dim))
                pr = std::make_pair(ap->p, ap->r);
        }
        if (pr) {
            r.entries.push_back(energy_upvr(traj, pr->first, pr->second, p,
                                            cfg.tol_energy_endpoint,
                                            cfg.tol_energy_ratio + slack));
        } else {
            MonitorEntry e;
            e.name = "gronwall-upvr";
            e.statement = "int u^p v^-r <= e^{p kappa t} int u0^p v0^-r";
            e.kind = "info";
            e.covered = false;
            e.verdict = Verdict::info;
            e.note = "no admissible (p,r) for these chi, mu, n";
            r.entries.push_back(std::move(e));
        }
    }
    r.entries.push_back(lower_bound_v(traj, cfg.tol_lower + lower_slack));
    if (cfg.oned_suite && g.dim == 1 && traj.form == Formulation::uw) {
        for (auto& e : oned_suite(traj, p, cfg.tol_trend))
            r.entries.push_back(std::move(e));
    }
    r.entries.push_back(blowup_detector(traj, cfg.blowup_q, cfg.blowup_ceiling));
    return r;
}

}  // namespace chemsim::monitors
