#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "chemsim/comparison.hpp"

using namespace chemsim;
using namespace chemsim::comparison;

namespace {

ModelParams make_params(double chi, double kappa, double mu) {
    ModelParams p;
    p.chi = chi;
    p.kappa = kappa;
    p.mu = mu;
    p.eta = 1e-10;
    return p;
}

RunResult steady_run(double kappa, double mu, double t_end) {
    const Grid g = build_grid(1, {1.0}, {128});
    StateUV s{Field(g, kappa / mu), Field(g, 1.0), 0.0};
    RunOptions o;
    o.t_end = t_end;
    o.cadence = 0.05;
    return run_uv(s, make_params(0.5, kappa, mu), o);
}

SampledCandidate constant_candidate(const Grid& g,
                                    const std::vector<double>& times,
                                    double value, const std::string& name) {
    SampledCandidate c;
    c.name = name;
    c.times = times;
    for (size_t k = 0; k < times.size(); ++k) c.fields.emplace_back(g, value);
    return c;
}

}  // namespace

TEST_CASE("verify_ordering basics") {
    const Grid g = build_grid(1, {1.0}, {16});
    const std::vector<double> times = {0.0, 0.1, 0.2};
    SUBCASE("ordered constants pass and report the gap") {
        const auto lo = constant_candidate(g, times, 1.0, "lo");
        const auto hi = constant_candidate(g, times, 2.0, "hi");
        const auto r = verify_ordering(lo, hi, 1e-9);
        CHECK(r.pass);
        CHECK(r.initial_ordering_ok);
        CHECK(r.min_gap == doctest::Approx(1.0));
        CHECK(r.t_first_violation == -1.0);
    }
    SUBCASE("violation is located in time") {
        auto lo = constant_candidate(g, times, 1.0, "lo");
        auto hi = constant_candidate(g, times, 2.0, "hi");
        hi.fields[2][7] = 0.5;  // dips below lo at the third sample
        const auto r = verify_ordering(lo, hi, 1e-9);
        CHECK_FALSE(r.pass);
        CHECK(r.initial_ordering_ok);
        CHECK(r.t_first_violation == doctest::Approx(0.2));
        CHECK(r.cell_first_violation == 7);
        CHECK(r.min_gap == doctest::Approx(-0.5));
    }
    SUBCASE("violated initial ordering is a hypothesis failure") {
        const auto lo = constant_candidate(g, times, 3.0, "lo");
        const auto hi = constant_candidate(g, times, 2.0, "hi");
        const auto r = verify_ordering(lo, hi, 1e-9);
        CHECK_FALSE(r.pass);
        CHECK_FALSE(r.initial_ordering_ok);
        CHECK(r.note.find("hypothesis") != std::string::npos);
    }
    SUBCASE("mismatched grids are rejected") {
        const Grid g2 = build_grid(1, {1.0}, {32});
        const auto lo = constant_candidate(g, times, 1.0, "lo");
        const auto hi = constant_candidate(g2, times, 2.0, "hi");
        CHECK_THROWS_AS(verify_ordering(lo, hi, 1e-9), ConfigError);
    }
    SUBCASE("mismatched time samples are rejected") {
        const auto lo = constant_candidate(g, times, 1.0, "lo");
        const auto hi = constant_candidate(g, {0.0, 0.1, 0.3}, 2.0, "hi");
        CHECK_THROWS_AS(verify_ordering(lo, hi, 1e-9), ConfigError);
    }
}

TEST_CASE("negation symmetry") {
    // verify(sub, super) passes iff verify(-super, -sub) passes
    const Grid g = build_grid(1, {1.0}, {32});
    const std::vector<double> times = {0.0, 0.5};
    for (double offset : {0.5, -0.25}) {
        SampledCandidate lo, hi, nlo, nhi;
        lo.name = "lo";
        hi.name = "hi";
        nlo.name = "-hi";
        nhi.name = "-lo";
        lo.times = hi.times = nlo.times = nhi.times = times;
        for (size_t k = 0; k < times.size(); ++k) {
            Field a(g), b(g);
            for (int i = 0; i < 32; ++i) {
                a[i] = std::sin(0.3 * i);
                b[i] = a[i] + offset;
            }
            Field na = b, nb = a;
            for (auto& x : na.values) x = -x;
            for (auto& x : nb.values) x = -x;
            lo.fields.push_back(a);
            hi.fields.push_back(b);
            nlo.fields.push_back(na);
            nhi.fields.push_back(nb);
        }
        const auto r1 = verify_ordering(lo, hi, 1e-9);
        const auto r2 = verify_ordering(nlo, nhi, 1e-9);
        CHECK(r1.pass == r2.pass);
        CHECK(r1.min_gap == doctest::Approx(r2.min_gap));
    }
}

TEST_CASE("canonical barriers on the steady scenario") {
    const double kappa = 1.0, mu = 1.0;
    const RunResult r = steady_run(kappa, mu, 2.0);
    const auto pairs = canonical_barriers(r.traj, make_params(0.5, kappa, mu));
    REQUIRE(pairs.size() == 3);
    const double tol = default_tolerance(r.traj);
    SUBCASE("all three pass") {
        for (const auto& p : pairs) {
            const auto rep = verify_ordering(p.sub, p.super, tol);
            CHECK(rep.pass);
        }
    }
    SUBCASE("the exponential barrier is tight on the steady scenario") {
        const auto& p = pairs[1];  // v-lower-exp
        const double dt = r.traj.diag.dt_max;
        const double h = r.traj.grid().min_spacing();
        for (size_t k = 0; k < p.sub.times.size(); ++k) {
            double min_gap = 1e300;
            for (int i = 0; i < p.sub.fields[k].size(); ++i)
                min_gap = std::min(min_gap,
                                   p.super.fields[k][i] - p.sub.fields[k][i]);
            CHECK(min_gap <= 10.0 * (dt + h * h));
            CHECK(min_gap >= -tol);
        }
    }
    SUBCASE("zero subsolution under u and constant supersolution over v") {
        const auto rep0 = verify_ordering(pairs[0].sub, pairs[0].super, 0.0);
        CHECK(rep0.pass);  // u >= 0 exactly by scheme construction
        const auto rep2 = verify_ordering(pairs[2].sub, pairs[2].super, 1e-14);
        CHECK(rep2.pass);  // max principle holds exactly
    }
}

TEST_CASE("defect sign patterns certify the canonical barriers") {
    const double kappa = 1.0, mu = 1.0;
    const RunResult rr = steady_run(kappa, mu, 1.0);
    const Grid& g = rr.traj.grid();

    // supersolution candidate vbar = ||v0||_inf for the signal equation
    // c_t = lap c - u c: defect = 0 - 0 + u*vbar >= 0
    EvolutionProblem prob;
    prob.grid = g;
    prob.t_horizon = 1.0;
    prob.reaction = [&](int i, size_t k, double c) {
        return -rr.traj.u_at(k)[i] * c;
    };
    prob.lipschitz = kappa / mu;

    SampledCandidate vbar;
    vbar.name = "const sup";
    for (size_t k = 0; k < rr.traj.size(); ++k) {
        vbar.times.push_back(rr.traj.t_at(k));
        vbar.fields.emplace_back(g, rr.traj.v0_sup);
    }
    const auto ds = defect_pattern(prob, vbar, 1e-12);
    CHECK(ds.frac_nonneg == doctest::Approx(1.0));
    CHECK(ds.min_defect >= 0.0);

    // zero candidate: identically zero defect for the cell equation with
    // f(0) = 0
    EvolutionProblem prob_u;
    prob_u.grid = g;
    prob_u.t_horizon = 1.0;
    prob_u.reaction = [&](int, size_t, double c) {
        return kappa * c - mu * c * c;
    };
    SampledCandidate zero;
    zero.name = "0";
    zero.times = vbar.times;
    for (size_t k = 0; k < vbar.times.size(); ++k)
        zero.fields.emplace_back(g, 0.0);
    const auto dz = defect_pattern(prob_u, zero, 1e-12);
    CHECK(dz.frac_nonneg == doctest::Approx(1.0));
    CHECK(dz.frac_nonpos == doctest::Approx(1.0));
}
