#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chemsim/analysis.hpp"
#include "chemsim/dynamics.hpp"

namespace chemsim::monitors {

enum class Verdict { pass, fail, info };

const char* verdict_name(Verdict v);

struct Sample {
    double t;
    double value;
    double bound;
};

struct MonitorEntry {
    std::string name;       // short stable id, e.g. "mass-l1"
    std::string statement;  // the inequality being checked
    std::string kind;       // "per-step" | "hard-bound" | "trend" | "info"
    double tolerance = 0.0;
    double max_rel_violation = 0.0;
    Verdict verdict = Verdict::pass;
    bool covered = true;  // false: parameters outside the proven window
    std::string note;
    std::vector<Sample> series;
};

struct MonitorConfig {
    double tol_hard = 1e-6;   // per-step invariants, exact by scheme design
    double tol_mass = 1e-3;
    double tol_window = 1e-2;
    double tol_energy_endpoint = 1e-3;
    double tol_energy_ratio = 1e-6;
    double tol_decay = 1e-6;  // snapshot-level norm monotonicity
    double tol_lower = 1e-6;  // v lower barrier, plus scheme slack
    double tol_trend = 0.05;
    // Extra slack for snapshot-level checks that are not exact by scheme
    // construction; 0 selects an automatic value from the run diagnostics.
    double scheme_slack = 0.0;
    std::vector<double> p_list = {1.0, 2.0, 4.0};
    bool energy_enabled = true;
    std::optional<std::pair<double, double>> energy_pr;  // auto when unset
    double blowup_ceiling = 1e6;
    double blowup_q = 0.0;  // 0 -> dim+1
    bool oned_suite = true;
};

struct MonitorReport {
    std::vector<MonitorEntry> entries;
    bool all_pass() const;
    const MonitorEntry* find(const std::string& name) const;
};

// Trapezoidal integral of y over [max(0, t_k - width), t_k] for every k.
std::vector<double> sliding_window_integral(const std::vector<double>& t,
                                            const std::vector<double>& y,
                                            double width);

// y(0) + C / (1 - e^{-a}); the closed-form ceiling of the linear ODI with
// decay rate a and unit-window forcing budget C. Requires a > 0.
double odi_bound(double y0, double C, double a);

// Individual monitors (pure folds over the trajectory).
MonitorEntry mass_bound(const Trajectory& traj, const ModelParams& p,
                        double tol);
MonitorEntry spacetime_u2(const Trajectory& traj, const ModelParams& p,
                          double tol);
std::vector<MonitorEntry> vp_decay(const Trajectory& traj,
                                   const std::vector<double>& p_list,
                                   double tol);
MonitorEntry vinf_bound(const Trajectory& traj, double tol);
MonitorEntry energy_upvr(const Trajectory& traj, double p, double r,
                         const ModelParams& mp, double tol_endpoint,
                         double tol_ratio);
MonitorEntry lower_bound_v(const Trajectory& traj, double tol);

// The seven 1d series: ||w_x||_2, window int w_xx^2, window int w_x^6,
// ||u||_2, window int u_x^2, window int u^6, int w_x^4. Requires a dim-1
// trajectory in the transformed formulation.
struct OnedSeries {
    std::vector<double> t;
    std::vector<double> wx_l2, win_wxx2, win_wx6, u_l2, win_ux2, win_u6, wx_l4;
};
OnedSeries compute_oned_series(const Trajectory& traj);
std::vector<MonitorEntry> oned_suite(const Trajectory& traj,
                                     const ModelParams& p, double tol_trend);

MonitorEntry blowup_detector(const Trajectory& traj, double q, double ceiling);

// Entries distilled from the per-step diagnostics streamed during the run.
std::vector<MonitorEntry> step_invariants(const Trajectory& traj, double tol);

MonitorReport evaluate(const Trajectory& traj, const ModelParams& p,
                       const MonitorConfig& cfg);

}  // namespace chemsim::monitors
