#include "chemsim/comparison.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "chemsim/kernels.hpp"

namespace chemsim::comparison {

namespace {

void require_aligned(const SampledCandidate& a, const SampledCandidate& b) {
    if (a.times.size() != b.times.size() || a.fields.size() != b.fields.size())
        throw ConfigError("verify_ordering: candidates sampled on different "
                          "time sets");
    for (size_t k = 0; k < a.times.size(); ++k) {
        if (std::fabs(a.times[k] - b.times[k]) >
            1e-9 * (1.0 + std::fabs(a.times[k])))
            throw ConfigError("verify_ordering: candidate time samples differ");
        if (a.fields[k].grid != b.fields[k].grid)
            throw ConfigError("verify_ordering: candidates live on different "
                              "grids");
    }
}

}  // namespace

OrderingReport verify_ordering(const SampledCandidate& sub,
                               const SampledCandidate& super, double tol) {
    require_aligned(sub, super);
    if (sub.times.empty())
        throw ConfigError("verify_ordering: empty candidates");
    OrderingReport r;
    r.name = sub.name + " <= " + super.name;
    r.tol = tol;
    r.min_gap = std::numeric_limits<double>::infinity();

    // Hypothesis first: the initial ordering.
    {
        const Field& s0 = sub.fields[0];
        const Field& S0 = super.fields[0];
        for (int i = 0; i < s0.size(); ++i)
            r.min_gap = std::min(r.min_gap, S0[i] - s0[i]);
        if (r.min_gap < -tol) {
            r.initial_ordering_ok = false;
            r.pass = false;
            r.t_first_violation = sub.times[0];
            r.note = "hypothesis failed: initial ordering sub(.,0) <= "
                     "super(.,0) is violated";
            return r;
        }
    }
    for (size_t k = 0; k < sub.times.size(); ++k) {
        const Field& lo = sub.fields[k];
        const Field& hi = super.fields[k];
        for (int i = 0; i < lo.size(); ++i) {
            const double gap = hi[i] - lo[i];
            if (gap < r.min_gap) r.min_gap = gap;
            if (gap < -tol && r.t_first_violation < 0.0) {
                r.t_first_violation = sub.times[k];
                r.cell_first_violation = i;
            }
        }
    }
    r.pass = r.min_gap >= -tol;
    r.note = r.pass ? "ordering preserved"
                    : "ordering violated beyond tolerance";
    return r;
}

DefectSummary defect_pattern(const EvolutionProblem& prob,
                             const SampledCandidate& cand, double tol) {
    if (cand.fields.size() < 2)
        throw ConfigError("defect_pattern: needs at least two samples");
    DefectSummary s;
    s.min_defect = std::numeric_limits<double>::infinity();
    s.max_defect = -std::numeric_limits<double>::infinity();
    long total = 0, nonneg = 0, nonpos = 0;
    for (size_t k = 1; k < cand.fields.size(); ++k) {
        const Field& c = cand.fields[k];
        const Field& cprev = cand.fields[k - 1];
        const double dt = cand.times[k] - cand.times[k - 1];
        const Field lap = laplacian_neumann(c);
        Field adv(c.grid, 0.0);
        if (prob.drift) {
            FaceFlux b = prob.drift(k);
            if (b.grid != c.grid)
                throw ConfigError("defect_pattern: drift grid mismatch");
            // flux of b*c with centered face values of c
            FaceFlux bc(c.grid);
            const Grid& g = c.grid;
            const int nx = g.nx(), ny = g.ny();
            for (int j = 0; j < ny; ++j)
                for (int i = 1; i < nx; ++i) {
                    const size_t f = static_cast<size_t>(i + j * (nx + 1));
                    bc.x[f] = b.x[f] * 0.5 * (c.at(i - 1, j) + c.at(i, j));
                }
            if (g.dim == 2) {
                for (int j = 1; j < ny; ++j)
                    for (int i = 0; i < nx; ++i) {
                        const size_t f = static_cast<size_t>(i + j * nx);
                        bc.y[f] = b.y[f] * 0.5 * (c.at(i, j - 1) + c.at(i, j));
                    }
            }
            adv = divergence(bc);
        }
        for (int i = 0; i < c.size(); ++i) {
            const double cdot = (c[i] - cprev[i]) / dt;
            const double f =
                prob.reaction ? prob.reaction(i, k, c[i]) : 0.0;
            const double defect = cdot - lap[i] - adv[i] - f;
            s.min_defect = std::min(s.min_defect, defect);
            s.max_defect = std::max(s.max_defect, defect);
            ++total;
            if (defect >= -tol) ++nonneg;
            if (defect <= tol) ++nonpos;
        }
    }
    s.frac_nonneg = total ? static_cast<double>(nonneg) / total : 0.0;
    s.frac_nonpos = total ? static_cast<double>(nonpos) / total : 0.0;
    return s;
}

SampledCandidate candidate_from_u(const Trajectory& traj) {
    SampledCandidate c;
    c.name = "simulated u";
    for (size_t k = 0; k < traj.size(); ++k) {
        c.times.push_back(traj.t_at(k));
        c.fields.push_back(traj.u_at(k));
    }
    return c;
}

SampledCandidate candidate_from_v(const Trajectory& traj) {
    SampledCandidate c;
    c.name = "simulated v";
    for (size_t k = 0; k < traj.size(); ++k) {
        c.times.push_back(traj.t_at(k));
        c.fields.push_back(traj.v_at(k));
    }
    return c;
}

std::vector<BarrierPair> canonical_barriers(const Trajectory& traj,
                                            const ModelParams&) {
    const Grid& g = traj.grid();
    std::vector<BarrierPair> out;

    // 1. zero subsolution under the simulated cell density
    {
        BarrierPair p;
        p.name = "u-nonneg";
        p.super = candidate_from_u(traj);
        p.sub.name = "0";
        p.sub.times = p.super.times;
        for (size_t k = 0; k < traj.size(); ++k)
            p.sub.fields.emplace_back(g, 0.0);
        out.push_back(std::move(p));
    }
    // 2. exponential lower barrier under the simulated signal
    {
        BarrierPair p;
        p.name = "v-lower-exp";
        p.super = candidate_from_v(traj);
        p.super.name = "simulated v";
        p.sub.name = "(inf v0) exp(-C t)";
        p.sub.times = p.super.times;
        double c_run = 0.0;
        for (size_t k = 0; k < traj.size(); ++k) {
            const Field u = traj.u_at(k);
            c_run = std::max(c_run, lp_norm(u, std::numeric_limits<double>::infinity()));
            p.sub.fields.emplace_back(
                g, traj.v0_inf * std::exp(-c_run * traj.t_at(k)));
        }
        out.push_back(std::move(p));
    }
    // 3. constant supersolution over the simulated signal
    {
        BarrierPair p;
        p.name = "v-upper-sup";
        p.sub = candidate_from_v(traj);
        p.super.name = "||v0||_inf";
        p.super.times = p.sub.times;
        for (size_t k = 0; k < traj.size(); ++k)
            p.super.fields.emplace_back(g, traj.v0_sup);
        out.push_back(std::move(p));
    }
    return out;
}

double default_tolerance(const Trajectory& traj) {
    const double h = traj.grid().min_spacing();
    const double t_end = traj.snaps.back().t;
    return 1e-8 +
           10.0 * (traj.diag.dt_max + h * h) * std::max(1.0, t_end);
}

}  // namespace chemsim::comparison
