#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "chemsim/grid.hpp"
#include "chemsim/params.hpp"

namespace chemsim {

// Singular formulation: cell density u >= 0, signal v > 0.
struct StateUV {
    Field u;
    Field v;
    double t = 0.0;
};

// Transformed formulation: w = -log(v / sup v0) >= 0; v0_sup is recorded at
// initialization so v can be reconstructed.
struct StateUW {
    Field u;
    Field w;
    double t = 0.0;
    double v0_sup = 1.0;
};

enum class Formulation { uv, uw };

Field source_term(const Field& u, const ModelParams& p);
Field regularized_sensitivity(const Field& v, double chi, double eta);

Field to_w(const Field& v, double v0_sup);
StateUW to_uw(const StateUV& s);
Field reconstruct_v(const StateUW& s);

// safety * min( h^2/(2 dim), h/max|face drift|, 1/(kappa + mu max u) ),
// terms with vanishing denominators dropped. safety must be in (0, 1].
double suggest_dt(const StateUV& s, const ModelParams& p, double safety);
double suggest_dt(const StateUW& s, const ModelParams& p, double safety);

// One explicit step. The signal update is a pointwise semi-implicit
// absorption v/(1+dt*u) followed by explicit diffusion, which keeps v > 0
// and max v nonincreasing under the diffusion CFL. The cell update is
// explicit diffusion plus donor-cell chemotactic advection, then one Euler
// step of the source clipped at zero. Throws CflError when dt exceeds the
// safety=1 stability bound; NaN anywhere is a hard error.
StateUV step_uv(const StateUV& s, const ModelParams& p, double dt);
StateUW step_uw(const StateUW& s, const ModelParams& p, double dt);

struct StepDiagnostics {
    long n_steps = 0;
    double dt_min = std::numeric_limits<double>::infinity();
    double dt_max = 0.0;
    double max_diffusion_cfl = 0.0;  // dt * 2*dim/h_min^2
    double max_advection_cfl = 0.0;  // dt * max|a|/h_min
    double clip_mass_u = 0.0;        // integral of clipped-off u per run
    double clip_mass_w = 0.0;
    long guard_activations = 0;      // faces with the sensitivity floor active

    // Worst-case per-step invariant values, streamed during the run.
    double min_u = std::numeric_limits<double>::infinity();
    double min_v = std::numeric_limits<double>::infinity();
    // max over steps of ||v(t_{k+1})||_inf / ||v(t_k)||_inf (uv runs)
    double max_vinf_ratio = 0.0;
    // max over steps of ||v||_p^p ratios for p = 1, 2, 4 (uv runs)
    double max_vp_ratio[3] = {0.0, 0.0, 0.0};
    bool per_step_vp_checked = false;
};

struct Snapshot {
    double t;
    Field u;
    Field aux;  // v (uv runs) or w (uw runs)
};

struct Trajectory {
    Formulation form = Formulation::uv;
    double v0_sup = 1.0;
    double v0_inf = 1.0;
    std::vector<Snapshot> snaps;
    StepDiagnostics diag;

    const Grid& grid() const { return snaps.front().u.grid; }
    size_t size() const { return snaps.size(); }
    double t_at(size_t k) const { return snaps[k].t; }
    const Field& u_at(size_t k) const { return snaps[k].u; }
    // Signal field at snapshot k; reconstructed from w for uw runs.
    Field v_at(size_t k) const;
    // w field at snapshot k; derived from v for uv runs.
    Field w_at(size_t k) const;
};

struct BlowupFlag {
    bool flagged = false;
    double t = 0.0;
    double value = 0.0;
    std::string reason;
};

struct RunOptions {
    double t_end = 1.0;
    double cadence = 0.05;
    double safety = 0.4;
    std::optional<double> fixed_dt;  // overrides adaptive choice, still CFL-checked
    double blowup_ceiling = 1e6;
    double blowup_q = 0.0;  // 0 -> dim + 1
    long max_steps = 200000000;
};

struct RunResult {
    Trajectory traj;
    BlowupFlag blowup;
};

// Heuristic extensibility functional ||u||_inf + (||v||_q^q + ||grad v||_q^q)^{1/q}.
double extensibility_value(const Field& u, const Field& v, double q);

RunResult run_uv(const StateUV& s0, const ModelParams& p, const RunOptions& o);
RunResult run_uw(const StateUW& s0, const ModelParams& p, const RunOptions& o);

}  // namespace chemsim
