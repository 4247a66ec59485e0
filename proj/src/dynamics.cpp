#include "chemsim/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <utility>

#include "chemsim/kernels.hpp"

namespace chemsim {

using kernels::FieldStats;

Field source_term(const Field& u, const ModelParams& p) {
    p.validate();
    check_finite(u, "source_term input");
    Field out(u.grid);
    const int n = u.size();
    for (int i = 0; i < n; ++i) {
        const double x = u[i];
        if (x < 0.0)
            throw NumericsError("source_term: negative cell density "
                                "(corrupted state)");
        out[i] = (p.alpha == 2.0) ? p.kappa * x - p.mu * (x * x)
                                  : p.kappa * x - p.mu * std::pow(x, p.alpha);
    }
    return out;
}

Field regularized_sensitivity(const Field& v, double chi, double eta) {
    if (!(chi > 0.0) || !(eta > 0.0))
        throw ConfigError("regularized_sensitivity: chi and eta must be > 0");
    check_finite(v, "sensitivity input");
    Field out(v.grid);
    const int n = v.size();
    for (int i = 0; i < n; ++i) {
        if (!(v[i] > 0.0))
            throw NumericsError("regularized_sensitivity: signal must be "
                                "positive");
        out[i] = kernels::sensitivity(v[i], chi, eta);
    }
    return out;
}

Field to_w(const Field& v, double v0_sup) {
    if (!(v0_sup > 0.0)) throw ConfigError("to_w: v0_sup must be > 0");
    Field w(v.grid);
    for (int i = 0; i < v.size(); ++i) {
        if (!(v[i] > 0.0)) throw NumericsError("to_w: signal must be positive");
        w[i] = -std::log(v[i] / v0_sup);
    }
    return w;
}

StateUW to_uw(const StateUV& s) {
    const double v0_sup = kernels::ops().reduce_max(s.v.data(), s.v.size());
    StateUW out;
    out.u = s.u;
    out.w = to_w(s.v, v0_sup);
    out.t = s.t;
    out.v0_sup = v0_sup;
    return out;
}

Field reconstruct_v(const StateUW& s) {
    Field v(s.w.grid);
    for (int i = 0; i < s.w.size(); ++i) v[i] = s.v0_sup * std::exp(-s.w[i]);
    return v;
}

Field Trajectory::v_at(size_t k) const {
    const Snapshot& s = snaps[k];
    if (form == Formulation::uv) return s.aux;
    Field v(s.aux.grid);
    for (int i = 0; i < s.aux.size(); ++i)
        v[i] = v0_sup * std::exp(-s.aux[i]);
    return v;
}

Field Trajectory::w_at(size_t k) const {
    const Snapshot& s = snaps[k];
    if (form == Formulation::uw) return s.aux;
    return to_w(s.aux, v0_sup);
}

namespace {

struct Scratch {
    std::vector<double> ax, ay;    // face drift
    std::vector<double> fx, fy;    // face flux / face gradients
    std::vector<double> lap, aux, rhs;

    explicit Scratch(const Grid& g) {
        const size_t nxf = static_cast<size_t>((g.nx() + 1) * g.ny());
        const size_t nyf =
            g.dim == 2 ? static_cast<size_t>(g.nx() * (g.ny() + 1)) : 0;
        ax.assign(nxf, 0.0);
        fx.assign(nxf, 0.0);
        if (g.dim == 2) {
            ay.assign(nyf, 0.0);
            fy.assign(nyf, 0.0);
        }
        const size_t n = static_cast<size_t>(g.n_cells());
        lap.assign(n, 0.0);
        aux.assign(n, 0.0);
        rhs.assign(n, 0.0);
    }
};

struct DriftInfo {
    double amax = 0.0;
    long guarded = 0;
};

DriftInfo compute_drift_uv(const Grid& g, const double* v,
                           const ModelParams& p, Scratch& s) {
    const auto& k = kernels::ops();
    DriftInfo d;
    if (g.dim == 1) {
        d.guarded = k.drift_uv_1d(v, g.nx(), 1.0 / g.spacing[0], p.chi, p.eta,
                                  s.ax.data());
        d.amax = k.reduce_max_abs(s.ax.data(), static_cast<int>(s.ax.size()));
    } else {
        d.guarded = k.drift_uv_2d_x(v, g.nx(), g.ny(), 1.0 / g.spacing[0],
                                    p.chi, p.eta, s.ax.data());
        d.guarded += k.drift_uv_2d_y(v, g.nx(), g.ny(), 1.0 / g.spacing[1],
                                     p.chi, p.eta, s.ay.data());
        d.amax = std::max(
            k.reduce_max_abs(s.ax.data(), static_cast<int>(s.ax.size())),
            k.reduce_max_abs(s.ay.data(), static_cast<int>(s.ay.size())));
    }
    return d;
}

DriftInfo compute_drift_uw(const Grid& g, const double* w,
                           const ModelParams& p, Scratch& s) {
    const auto& k = kernels::ops();
    DriftInfo d;
    if (g.dim == 1) {
        k.drift_uw_1d(w, g.nx(), 1.0 / g.spacing[0], p.chi, s.ax.data());
        d.amax = k.reduce_max_abs(s.ax.data(), static_cast<int>(s.ax.size()));
    } else {
        k.drift_uw_2d_x(w, g.nx(), g.ny(), 1.0 / g.spacing[0], p.chi,
                        s.ax.data());
        k.drift_uw_2d_y(w, g.nx(), g.ny(), 1.0 / g.spacing[1], p.chi,
                        s.ay.data());
        d.amax = std::max(
            k.reduce_max_abs(s.ax.data(), static_cast<int>(s.ax.size())),
            k.reduce_max_abs(s.ay.data(), static_cast<int>(s.ay.size())));
    }
    return d;
}

double dt_bound(const Grid& g, double amax, double umax,
                const ModelParams& p) {
    const double h = g.min_spacing();
    double bound = h * h / (2.0 * g.dim);
    if (amax > 0.0) bound = std::min(bound, h / amax);
    const double source_rate = p.kappa + p.mu * umax;
    if (source_rate > 0.0) bound = std::min(bound, 1.0 / source_rate);
    return bound;
}

void check_dt(double dt, double bound) {
    if (!(dt > 0.0)) throw ConfigError("step: dt must be positive");
    if (dt > bound * (1.0 + 1e-9)) {
        char msg[160];
        std::snprintf(msg, sizeof(msg),
                      "refusing time step dt=%.6e above stability bound %.6e",
                      dt, bound);
        throw CflError(msg, dt, bound);
    }
}

double source_general_clip(double* u, int n, double dt, const ModelParams& p) {
    double clipped = 0.0;
    for (int i = 0; i < n; ++i) {
        const double base = u[i] > 0.0 ? u[i] : 0.0;
        const double x =
            u[i] + dt * (p.kappa * u[i] - p.mu * std::pow(base, p.alpha));
        if (x < 0.0) {
            clipped -= x;
            u[i] = 0.0;
        } else {
            u[i] = x;
        }
    }
    return clipped;
}

// Transport + source for u; expects face drift already in s.ax/s.ay.
// Returns the clipped-off amount (cell-volume weighted).
double advance_u(const Grid& g, const double* u, const ModelParams& p,
                 double dt, Scratch& s, double* unew) {
    const auto& k = kernels::ops();
    const int n = g.n_cells();
    if (g.dim == 1) {
        const double inv_h = 1.0 / g.spacing[0];
        k.upwind_1d(s.ax.data(), u, g.nx(), s.fx.data());
        k.divergence_1d(s.fx.data(), g.nx(), inv_h, s.rhs.data());
        k.laplacian_1d(u, g.nx(), inv_h, s.lap.data());
    } else {
        const double inv_hx = 1.0 / g.spacing[0];
        const double inv_hy = 1.0 / g.spacing[1];
        k.upwind_2d_x(s.ax.data(), u, g.nx(), g.ny(), s.fx.data());
        k.upwind_2d_y(s.ay.data(), u, g.nx(), g.ny(), s.fy.data());
        k.divergence_2d(s.fx.data(), s.fy.data(), g.nx(), g.ny(), inv_hx,
                        inv_hy, s.rhs.data());
        k.laplacian_2d(u, g.nx(), g.ny(), inv_hx, inv_hy, s.lap.data());
    }
    k.transport_update(u, s.lap.data(), s.rhs.data(), n, dt, unew);
    double clipped;
    if (p.alpha == 2.0)
        clipped = k.source_logistic2_clip(unew, n, dt, p.kappa, p.mu);
    else
        clipped = source_general_clip(unew, n, dt, p);
    return clipped * g.cell_volume();
}

void advance_v(const Grid& g, const double* v, const double* u, double dt,
               Scratch& s, double* vnew) {
    const auto& k = kernels::ops();
    const int n = g.n_cells();
    k.absorb(v, u, n, dt, s.aux.data());
    if (g.dim == 1)
        k.laplacian_1d(s.aux.data(), g.nx(), 1.0 / g.spacing[0], s.lap.data());
    else
        k.laplacian_2d(s.aux.data(), g.nx(), g.ny(), 1.0 / g.spacing[0],
                       1.0 / g.spacing[1], s.lap.data());
    k.axpy(s.aux.data(), s.lap.data(), n, dt, vnew);
}

// w' = w + dt*(lap w - |grad w|^2 + u), then floor at 0. The squared
// gradient lives at cells as the mean of squared face gradients.
double advance_w(const Grid& g, const double* w, const double* u, double dt,
                 Scratch& s, double* wnew) {
    const auto& k = kernels::ops();
    const int n = g.n_cells();
    if (g.dim == 1) {
        const double inv_h = 1.0 / g.spacing[0];
        k.grad_faces_1d(w, g.nx(), inv_h, s.fx.data());
        k.gradsq_cell_1d(s.fx.data(), g.nx(), s.aux.data());
        k.laplacian_1d(w, g.nx(), inv_h, s.lap.data());
    } else {
        k.grad_faces_2d_x(w, g.nx(), g.ny(), 1.0 / g.spacing[0], s.fx.data());
        k.grad_faces_2d_y(w, g.nx(), g.ny(), 1.0 / g.spacing[1], s.fy.data());
        k.gradsq_cell_2d(s.fx.data(), s.fy.data(), g.nx(), g.ny(),
                         s.aux.data());
        k.laplacian_2d(w, g.nx(), g.ny(), 1.0 / g.spacing[0],
                       1.0 / g.spacing[1], s.lap.data());
    }
    // rhs = |grad w|^2 - u, so the update is w + dt*(lap - rhs)
    k.axpy(s.aux.data(), u, n, -1.0, s.rhs.data());
    k.transport_update(w, s.lap.data(), s.rhs.data(), n, dt, wnew);
    return k.clip_floor0(wnew, n) * g.cell_volume();
}

FieldStats stats_of(const double* f, int n) {
    FieldStats st{};
    kernels::ops().field_stats(f, n, &st);
    return st;
}

void ensure_finite(const FieldStats& st, const char* what, double t) {
    if (!std::isfinite(st.sum) || !std::isfinite(st.min) ||
        !std::isfinite(st.max)) {
        char msg[128];
        std::snprintf(msg, sizeof(msg), "non-finite %s at t=%.6g", what, t);
        throw NumericsError(msg);
    }
}

}  // namespace

double suggest_dt(const StateUV& s, const ModelParams& p, double safety) {
    p.validate();
    if (!(safety > 0.0) || safety > 1.0)
        throw CflError("suggest_dt: safety factor must be in (0,1]", 0.0, 0.0);
    Scratch scratch(s.u.grid);
    const DriftInfo d = compute_drift_uv(s.u.grid, s.v.data(), p, scratch);
    const double umax = kernels::ops().reduce_max(s.u.data(), s.u.size());
    return safety * dt_bound(s.u.grid, d.amax, umax, p);
}

double suggest_dt(const StateUW& s, const ModelParams& p, double safety) {
    p.validate();
    if (!(safety > 0.0) || safety > 1.0)
        throw CflError("suggest_dt: safety factor must be in (0,1]", 0.0, 0.0);
    Scratch scratch(s.u.grid);
    const DriftInfo d = compute_drift_uw(s.u.grid, s.w.data(), p, scratch);
    const double umax = kernels::ops().reduce_max(s.u.data(), s.u.size());
    return safety * dt_bound(s.u.grid, d.amax, umax, p);
}

StateUV step_uv(const StateUV& s, const ModelParams& p, double dt) {
    p.validate();
    if (s.u.grid != s.v.grid)
        throw ConfigError("step_uv: u and v live on different grids");
    const Grid& g = s.u.grid;
    Scratch scratch(g);
    const DriftInfo d = compute_drift_uv(g, s.v.data(), p, scratch);
    const double umax = kernels::ops().reduce_max(s.u.data(), s.u.size());
    check_dt(dt, dt_bound(g, d.amax, umax, p));

    StateUV out;
    out.u = Field(g);
    out.v = Field(g);
    out.t = s.t + dt;
    advance_u(g, s.u.data(), p, dt, scratch, out.u.data());
    advance_v(g, s.v.data(), s.u.data(), dt, scratch, out.v.data());
    ensure_finite(stats_of(out.u.data(), out.u.size()), "u", out.t);
    ensure_finite(stats_of(out.v.data(), out.v.size()), "v", out.t);
    return out;
}

StateUW step_uw(const StateUW& s, const ModelParams& p, double dt) {
    p.validate();
    if (s.u.grid != s.w.grid)
        throw ConfigError("step_uw: u and w live on different grids");
    const Grid& g = s.u.grid;
    Scratch scratch(g);
    const DriftInfo d = compute_drift_uw(g, s.w.data(), p, scratch);
    const double umax = kernels::ops().reduce_max(s.u.data(), s.u.size());
    check_dt(dt, dt_bound(g, d.amax, umax, p));

    StateUW out;
    out.u = Field(g);
    out.w = Field(g);
    out.t = s.t + dt;
    out.v0_sup = s.v0_sup;
    advance_u(g, s.u.data(), p, dt, scratch, out.u.data());
    advance_w(g, s.w.data(), s.u.data(), dt, scratch, out.w.data());
    ensure_finite(stats_of(out.u.data(), out.u.size()), "u", out.t);
    ensure_finite(stats_of(out.w.data(), out.w.size()), "w", out.t);
    return out;
}

double extensibility_value(const Field& u, const Field& v, double q) {
    const double uinf = kernels::ops().reduce_max_abs(u.data(), u.size());
    const double vol = v.grid.cell_volume();
    double vq = 0.0;
    for (int i = 0; i < v.size(); ++i) vq += std::pow(std::fabs(v[i]), q);
    FaceFlux grad = gradient_faces(v);
    double gq = 0.0;
    for (double gx : grad.x) gq += std::pow(std::fabs(gx), q);
    for (double gy : grad.y) gq += std::pow(std::fabs(gy), q);
    return uinf + std::pow((vq + gq) * vol, 1.0 / q);
}

namespace {

template <Formulation F>
RunResult run_impl(const Field& u0, const Field& aux0, double v0_sup,
                   const ModelParams& p, const RunOptions& o) {
    p.validate();
    if (!(o.safety > 0.0) || o.safety > 1.0)
        throw CflError("run: safety factor must be in (0,1]", 0.0, 0.0);
    if (!(o.t_end > 0.0)) throw ConfigError("run: t_end must be positive");
    if (!(o.cadence > 0.0)) throw ConfigError("run: cadence must be positive");
    if (u0.grid != aux0.grid)
        throw ConfigError("run: state fields live on different grids");
    const Grid& g = u0.grid;
    const int n = g.n_cells();
    check_finite(u0, "initial cell density");
    check_finite(aux0, "initial signal");
    for (int i = 0; i < n; ++i) {
        if (u0[i] < 0.0)
            throw ConfigError("run: initial cell density must be >= 0");
        if (F == Formulation::uv && !(aux0[i] > 0.0))
            throw ConfigError("run: initial signal must be > 0");
        if (F == Formulation::uw && aux0[i] < 0.0)
            throw ConfigError("run: initial w must be >= 0");
    }

    RunResult res;
    Trajectory& traj = res.traj;
    traj.form = F;
    if (F == Formulation::uv) {
        traj.v0_sup = kernels::ops().reduce_max(aux0.data(), n);
        traj.v0_inf = kernels::ops().reduce_min(aux0.data(), n);
    } else {
        traj.v0_sup = v0_sup;
        const double wmax = kernels::ops().reduce_max(aux0.data(), n);
        traj.v0_inf = v0_sup * std::exp(-wmax);
    }
    traj.diag.per_step_vp_checked = (F == Formulation::uv);

    const double q = o.blowup_q > 0.0 ? o.blowup_q : g.dim + 1.0;
    auto snapshot_v = [&](const Field& aux) {
        if (F == Formulation::uv) return aux;
        Field v(g);
        for (int i = 0; i < n; ++i) v[i] = traj.v0_sup * std::exp(-aux[i]);
        return v;
    };

    traj.snaps.push_back({0.0, u0, aux0});
    {
        const double val = extensibility_value(u0, snapshot_v(aux0), q);
        if (val >= o.blowup_ceiling) {
            res.blowup = {true, 0.0, val, "extensibility value at or above "
                                          "ceiling at t=0"};
            return res;
        }
    }

    Scratch scratch(g);
    std::vector<double> u_cur = u0.values, u_next(u_cur.size());
    std::vector<double> a_cur = aux0.values, a_next(a_cur.size());
    StepDiagnostics& diag = traj.diag;

    FieldStats ust = stats_of(u_cur.data(), n);
    FieldStats ast = stats_of(a_cur.data(), n);
    diag.min_u = ust.min;
    double prev_vinf = 0.0, prev_p1 = 0.0, prev_p2 = 0.0, prev_p4 = 0.0;
    if (F == Formulation::uv) {
        diag.min_v = ast.min;
        prev_vinf = ast.max;
        prev_p1 = ast.sum_abs;
        prev_p2 = ast.sum_sq;
        prev_p4 = ast.sum_p4;
    } else {
        diag.min_v = traj.v0_sup * std::exp(-ast.max);
    }

    const double h = g.min_spacing();
    double t = 0.0;
    long snap_index = 1;
    const double t_eps = 1e-12 * std::max(1.0, o.cadence);

    while (t < o.t_end - t_eps) {
        if (diag.n_steps >= o.max_steps)
            throw NumericsError("run: step budget exhausted");
        const DriftInfo d =
            (F == Formulation::uv)
                ? compute_drift_uv(g, a_cur.data(), p, scratch)
                : compute_drift_uw(g, a_cur.data(), p, scratch);
        diag.guard_activations += d.guarded;
        const double bound = dt_bound(g, d.amax, ust.max, p);
        double dt;
        if (o.fixed_dt) {
            dt = *o.fixed_dt;
            check_dt(dt, bound);
        } else {
            dt = o.safety * bound;
        }
        const double t_target =
            std::min(static_cast<double>(snap_index) * o.cadence, o.t_end);
        bool hit = false;
        if (t + dt >= t_target - t_eps) {
            dt = t_target - t;
            hit = true;
        }
        if (dt > 0.0) {
            diag.clip_mass_u +=
                advance_u(g, u_cur.data(), p, dt, scratch, u_next.data());
            if (F == Formulation::uv)
                advance_v(g, a_cur.data(), u_cur.data(), dt, scratch,
                          a_next.data());
            else
                diag.clip_mass_w += advance_w(g, a_cur.data(), u_cur.data(),
                                              dt, scratch, a_next.data());
            u_cur.swap(u_next);
            a_cur.swap(a_next);
            ++diag.n_steps;
            diag.dt_min = std::min(diag.dt_min, dt);
            diag.dt_max = std::max(diag.dt_max, dt);
            diag.max_diffusion_cfl =
                std::max(diag.max_diffusion_cfl, dt * 2.0 * g.dim / (h * h));
            diag.max_advection_cfl =
                std::max(diag.max_advection_cfl, dt * d.amax / h);

            ust = stats_of(u_cur.data(), n);
            ast = stats_of(a_cur.data(), n);
            ensure_finite(ust, "u", t + dt);
            ensure_finite(ast, F == Formulation::uv ? "v" : "w", t + dt);
            diag.min_u = std::min(diag.min_u, ust.min);
            if (F == Formulation::uv) {
                diag.min_v = std::min(diag.min_v, ast.min);
                if (prev_vinf > 0.0)
                    diag.max_vinf_ratio =
                        std::max(diag.max_vinf_ratio, ast.max / prev_vinf);
                if (prev_p1 > 0.0)
                    diag.max_vp_ratio[0] =
                        std::max(diag.max_vp_ratio[0], ast.sum_abs / prev_p1);
                if (prev_p2 > 0.0)
                    diag.max_vp_ratio[1] =
                        std::max(diag.max_vp_ratio[1], ast.sum_sq / prev_p2);
                if (prev_p4 > 0.0)
                    diag.max_vp_ratio[2] =
                        std::max(diag.max_vp_ratio[2], ast.sum_p4 / prev_p4);
                prev_vinf = ast.max;
                prev_p1 = ast.sum_abs;
                prev_p2 = ast.sum_sq;
                prev_p4 = ast.sum_p4;
            } else {
                diag.min_v =
                    std::min(diag.min_v, traj.v0_sup * std::exp(-ast.max));
            }
        }
        t = hit ? t_target : t + dt;
        if (hit) {
            Field u_f(g);
            u_f.values = u_cur;
            Field a_f(g);
            a_f.values = a_cur;
            traj.snaps.push_back({t, std::move(u_f), std::move(a_f)});
            if (t >= static_cast<double>(snap_index) * o.cadence - t_eps)
                ++snap_index;
            const Field& usnap = traj.snaps.back().u;
            const double val =
                extensibility_value(usnap, snapshot_v(traj.snaps.back().aux), q);
            if (val >= o.blowup_ceiling) {
                char why[128];
                std::snprintf(why, sizeof(why),
                              "extensibility value %.3e crossed ceiling %.3e",
                              val, o.blowup_ceiling);
                res.blowup = {true, t, val, why};
                break;
            }
        }
    }
    return res;
}

}  // namespace

RunResult run_uv(const StateUV& s0, const ModelParams& p, const RunOptions& o) {
    return run_impl<Formulation::uv>(s0.u, s0.v, 0.0, p, o);
}

RunResult run_uw(const StateUW& s0, const ModelParams& p, const RunOptions& o) {
    return run_impl<Formulation::uw>(s0.u, s0.w, s0.v0_sup, p, o);
}

}  // namespace chemsim
