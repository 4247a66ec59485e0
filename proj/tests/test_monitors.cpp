#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "chemsim/monitors.hpp"

using namespace chemsim;
using namespace chemsim::monitors;

namespace {

ModelParams make_params(double chi, double kappa, double mu) {
    ModelParams p;
    p.chi = chi;
    p.kappa = kappa;
    p.mu = mu;
    p.eta = 1e-10;
    return p;
}

// steady scenario: u = kappa/mu, v0 = 1, exact signal decay exp(-(kappa/mu) t)
RunResult steady_run(double kappa, double mu, double t_end, int cells = 64) {
    const Grid g = build_grid(1, {1.0}, {cells});
    StateUV s{Field(g, kappa / mu), Field(g, 1.0), 0.0};
    RunOptions o;
    o.t_end = t_end;
    o.cadence = 0.05;
    return run_uv(s, make_params(0.5, kappa, mu), o);
}

}  // namespace

TEST_CASE("odi_bound closed form") {
    CHECK(odi_bound(2.5, 0.0, 1.0) == doctest::Approx(2.5));
    CHECK(odi_bound(1.0, 1.0, std::log(2.0)) == doctest::Approx(3.0));
    CHECK_THROWS_AS(odi_bound(1.0, 1.0, 0.0), ConfigError);
    CHECK_THROWS_AS(odi_bound(1.0, 1.0, -2.0), ConfigError);
    // decreasing in a, increasing in C
    CHECK(odi_bound(1.0, 1.0, 2.0) < odi_bound(1.0, 1.0, 1.0));
    CHECK(odi_bound(1.0, 2.0, 1.0) > odi_bound(1.0, 1.0, 1.0));
}

TEST_CASE("sliding window integral") {
    std::vector<double> t, y;
    for (int k = 0; k <= 60; ++k) {
        t.push_back(0.05 * k);
        y.push_back(2.0);  // constant rate
    }
    const auto w = sliding_window_integral(t, y, 1.0);
    // before t=1 the window is [0, t]; after, exactly width 1
    CHECK(w[4] == doctest::Approx(2.0 * 0.2));
    CHECK(w[20] == doctest::Approx(2.0));
    CHECK(w[60] == doctest::Approx(2.0));
    // linear y integrates exactly under the trapezoid rule
    std::vector<double> ylin;
    for (double tv : t) ylin.push_back(3.0 * tv);
    const auto wl = sliding_window_integral(t, ylin, 1.0);
    const double expect = 3.0 * (2.0 * 2.0 - 1.0 * 1.0) / 2.0;  // t in [1,2]
    CHECK(wl[40] == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("mass_bound") {
    SUBCASE("logistic comparison oracle fixes the ceiling") {
        // independent oracle: RK4 on dy/dt = kappa y - mu/|Omega| y^2
        const double kappa = 1.0, mu = 0.25, y0 = 1.0, volume = 1.0;
        auto f = [&](double y) { return kappa * y - mu / volume * y * y; };
        double y = y0, sup = y0;
        const double dt = 1e-4;
        for (int k = 0; k < 200000; ++k) {
            const double k1 = f(y);
            const double k2 = f(y + 0.5 * dt * k1);
            const double k3 = f(y + 0.5 * dt * k2);
            const double k4 = f(y + dt * k3);
            y += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            sup = std::max(sup, y);
        }
        const double m = std::max(y0, kappa * volume / mu);
        CHECK(m == doctest::Approx(4.0));
        CHECK(sup <= m * (1.0 + 1e-12));
        CHECK(y == doctest::Approx(m).epsilon(1e-4));  // saturates at the cap
    }
    SUBCASE("equilibrium mass is constant and meets the bound exactly") {
        const RunResult r = steady_run(1.0, 0.25, 2.0);
        const auto e = mass_bound(r.traj, make_params(0.5, 1.0, 0.25), 1e-3);
        CHECK(e.verdict == Verdict::pass);
        for (const auto& smp : e.series) {
            CHECK(smp.value == doctest::Approx(4.0).epsilon(1e-9));
            CHECK(smp.bound == doctest::Approx(4.0));
        }
    }
    SUBCASE("kappa = 0 is nonincreasing from the initial mass") {
        const Grid g = build_grid(1, {1.0}, {64});
        StateUV s{Field(g, 2.0), Field(g, 1.0), 0.0};
        RunOptions o;
        o.t_end = 1.0;
        const RunResult r = run_uv(s, make_params(0.5, 0.0, 1.0), o);
        const auto e = mass_bound(r.traj, make_params(0.5, 0.0, 1.0), 1e-3);
        CHECK(e.verdict == Verdict::pass);
        CHECK(e.series.front().bound == doctest::Approx(integrate(s.u)));
        for (size_t k = 1; k < e.series.size(); ++k)
            CHECK(e.series[k].value <= e.series[k - 1].value * (1.0 + 1e-12));
    }
}

TEST_CASE("spacetime_u2") {
    SUBCASE("frozen bound arithmetic") {
        const RunResult r = steady_run(1.0, 0.25, 1.5);
        const auto e = spacetime_u2(r.traj, make_params(0.5, 1.0, 0.25), 1e-2);
        // m = max(4, kappa |Omega| / mu = 4) = 4; bound = (1+1)*4/0.25 = 32
        CHECK(e.series.front().bound == doctest::Approx(32.0));
        CHECK(e.verdict == Verdict::pass);
        // steady window integral tends to (kappa/mu)^2 * |Omega| * 1 = 16
        CHECK(e.series.back().value == doctest::Approx(16.0).epsilon(1e-6));
    }
    SUBCASE("vanishing density gives a zero window") {
        const Grid g = build_grid(1, {1.0}, {32});
        StateUV s{Field(g, 0.0), Field(g, 1.0), 0.0};
        RunOptions o;
        o.t_end = 1.0;
        const RunResult r = run_uv(s, make_params(0.5, 1.0, 1.0), o);
        const auto e = spacetime_u2(r.traj, make_params(0.5, 1.0, 1.0), 1e-2);
        for (const auto& smp : e.series) CHECK(smp.value == 0.0);
        CHECK(e.verdict == Verdict::pass);
    }
}

TEST_CASE("vp_decay and vinf_bound") {
    SUBCASE("pure diffusion contracts every p-norm") {
        const Grid g = build_grid(1, {1.0}, {64});
        Field v0(g);
        for (int i = 0; i < 64; ++i)
            v0[i] = 1.0 + 0.5 * std::cos(2.0 * 3.14159265358979 *
                                         g.x_center(i));
        StateUV s{Field(g, 0.0), v0, 0.0};
        RunOptions o;
        o.t_end = 1.0;
        const RunResult r = run_uv(s, make_params(0.5, 1.0, 1.0), o);
        for (const auto& e : vp_decay(r.traj, {1.0, 2.0, 4.0}, 1e-9))
            CHECK(e.verdict == Verdict::pass);
        CHECK(vinf_bound(r.traj, 1e-12).verdict == Verdict::pass);
    }
    SUBCASE("steady scenario decays strictly at the exact rate") {
        const RunResult r = steady_run(2.0, 1.0, 1.0);
        const auto entries = vp_decay(r.traj, {1.0, 2.0, 4.0}, 1e-9);
        for (const auto& e : entries) CHECK(e.verdict == Verdict::pass);
        // ||v(t)||_p = exp(-2t) for every p on the unit-volume domain
        const auto& e2 = entries[1];
        for (const auto& smp : e2.series)
            CHECK(smp.value ==
                  doctest::Approx(std::exp(-2.0 * smp.t)).epsilon(1e-3));
    }
    SUBCASE("constant signal with no cells stays exactly constant") {
        const Grid g = build_grid(1, {1.0}, {32});
        StateUV s{Field(g, 0.0), Field(g, 2.0), 0.0};
        RunOptions o;
        o.t_end = 0.5;
        const RunResult r = run_uv(s, make_params(0.5, 1.0, 1.0), o);
        for (const auto& e : vp_decay(r.traj, {1.0, 2.0, 4.0}, 0.0))
            CHECK(e.verdict == Verdict::pass);
        for (const auto& smp : vinf_bound(r.traj, 0.0).series)
            CHECK(smp.value == 2.0);
    }
}

TEST_CASE("energy_upvr") {
    SUBCASE("vanishing density: identically zero functional") {
        const Grid g = build_grid(1, {1.0}, {32});
        StateUV s{Field(g, 0.0), Field(g, 1.0), 0.0};
        RunOptions o;
        o.t_end = 0.5;
        const ModelParams p = make_params(0.5, 0.0, 1.0);
        const RunResult r = run_uv(s, p, o);
        const auto e = energy_upvr(r.traj, 2.0, 0.5, p, 1e-3, 1e-6);
        for (const auto& smp : e.series) CHECK(smp.value == 0.0);
        CHECK(e.verdict == Verdict::pass);
    }
    SUBCASE("kappa = 0 makes the functional nonincreasing") {
        const Grid g = build_grid(1, {1.0}, {64});
        Field u0(g), v0(g);
        for (int i = 0; i < 64; ++i) {
            u0[i] = 0.5 + 0.2 * std::cos(3.14159265358979 * g.x_center(i));
            v0[i] = 1.0 + 0.3 * std::cos(3.14159265358979 * g.x_center(i));
        }
        const ModelParams p = make_params(0.5, 0.0, 1.0);
        StateUV s{u0, v0, 0.0};
        RunOptions o;
        o.t_end = 1.0;
        const RunResult r = run_uv(s, p, o);
        const auto ap = analysis::admissible_pair(p.chi, p.mu, 1);
        REQUIRE(ap.has_value());
        const auto e =
            energy_upvr(r.traj, ap->p, ap->r, p, 1e-3, 1e-4);
        CHECK(e.covered);
        CHECK(e.verdict == Verdict::pass);
        for (size_t k = 1; k < e.series.size(); ++k)
            CHECK(e.series[k].value <=
                  e.series[k - 1].value * (1.0 + 1e-4));
    }
    SUBCASE("steady closed form and the admissibility inequality") {
        // E(t) = (kappa/mu)^p e^{r (kappa/mu) t} |Omega|, within the bound
        // e^{p kappa t} E(0) exactly when r <= p mu
        const double kappa = 1.0, mu = 1.0;
        const RunResult r = steady_run(kappa, mu, 1.0);
        const ModelParams p = make_params(0.5, kappa, mu);
        const double pe = 2.0, re = 0.6;
        const auto e = energy_upvr(r.traj, pe, re, p, 1e-3, 1e-5);
        CHECK(e.covered);  // r in (r-, min(r+, mu p)) for chi=0.5, p=2
        for (const auto& smp : e.series) {
            const double closed = std::exp(re * (kappa / mu) * smp.t);
            CHECK(smp.value == doctest::Approx(closed).epsilon(1e-3));
        }
        CHECK(e.verdict == Verdict::pass);
        // inadmissible r > mu p is informational
        const auto e2 = energy_upvr(r.traj, 2.0, 2.5, p, 1e-3, 1e-5);
        CHECK_FALSE(e2.covered);
        CHECK(e2.verdict == Verdict::info);
    }
    SUBCASE("per-step ratio bounds telescope to the endpoint bound") {
        const RunResult r = steady_run(1.0, 0.5, 1.0);
        const ModelParams p = make_params(0.5, 1.0, 0.5);
        const auto e = energy_upvr(r.traj, 1.5, 0.2, p, 1e-3, 1e-5);
        // if every ratio respects its bound, the endpoint respects the
        // product bound
        double ratio_worst = 0.0;
        for (size_t k = 1; k < e.series.size(); ++k) {
            const double dt = e.series[k].t - e.series[k - 1].t;
            const double rb =
                std::exp(p.kappa * 1.5 * dt) * e.series[k - 1].value;
            ratio_worst = std::max(
                ratio_worst, (e.series[k].value - rb) / std::max(rb, 1e-300));
        }
        const size_t n = e.series.size();
        const double endpoint_excess =
            (e.series.back().value - e.series.back().bound) /
            e.series.back().bound;
        CHECK(endpoint_excess <=
              std::pow(1.0 + std::max(ratio_worst, 0.0), double(n)) - 1.0 +
                  1e-12);
    }
}

TEST_CASE("lower_bound_v") {
    SUBCASE("no cells: signal never drops below its initial minimum") {
        const Grid g = build_grid(1, {1.0}, {64});
        Field v0(g);
        for (int i = 0; i < 64; ++i)
            v0[i] = 1.0 + 0.4 * std::cos(3.14159265358979 * g.x_center(i));
        StateUV s{Field(g, 0.0), v0, 0.0};
        RunOptions o;
        o.t_end = 1.0;
        const RunResult r = run_uv(s, make_params(0.5, 1.0, 1.0), o);
        const auto e = lower_bound_v(r.traj, 1e-9);
        CHECK(e.verdict == Verdict::pass);
        for (const auto& smp : e.series)  // C = 0: bound froze at inf v0
            CHECK(smp.bound == doctest::Approx(r.traj.v0_inf));
    }
    SUBCASE("steady scenario meets the barrier with equality") {
        const RunResult r = steady_run(1.0, 1.0, 1.5);
        const auto e = lower_bound_v(r.traj, 1e-6);
        CHECK(e.verdict == Verdict::pass);
        for (const auto& smp : e.series)
            CHECK(smp.value == doctest::Approx(smp.bound).epsilon(1e-3));
    }
}

TEST_CASE("oned_suite") {
    SUBCASE("requires the transformed formulation on a 1d grid") {
        const RunResult r = steady_run(1.0, 1.0, 0.5);
        CHECK_THROWS_AS(oned_suite(r.traj, make_params(0.5, 1.0, 1.0), 0.05),
                        ConfigError);
        const Grid g2 = build_grid(2, {1.0, 1.0}, {8, 8});
        StateUV s2{Field(g2, 1.0), Field(g2, 1.0), 0.0};
        RunOptions o2;
        o2.t_end = 0.1;
        const RunResult r2 = run_uw(to_uw(s2), make_params(0.5, 1.0, 1.0), o2);
        CHECK_THROWS_AS(oned_suite(r2.traj, make_params(0.5, 1.0, 1.0), 0.05),
                        ConfigError);
    }
    SUBCASE("homogeneous state: every w_x series is identically zero") {
        // long enough that the width-1 windows saturate inside each half
        const Grid g = build_grid(1, {1.0}, {64});
        StateUV s0{Field(g, 2.0), Field(g, 1.0), 0.0};
        RunOptions o;
        o.t_end = 3.0;
        const ModelParams p = make_params(0.5, 1.0, 0.5);
        const RunResult r = run_uw(to_uw(s0), p, o);
        const auto entries = oned_suite(r.traj, p, 0.05);
        CHECK(entries.size() == 7);
        for (const auto& e : entries) CHECK(e.verdict == Verdict::pass);
        const auto series = compute_oned_series(r.traj);
        for (double x : series.wx_l2) CHECK(x == 0.0);
        for (double x : series.wx_l4) CHECK(x == 0.0);
    }
    SUBCASE("u == 0: the w_x energy contracts") {
        // with no cells, d/dt int w_x^2 <= 0 along the transformed flow
        const Grid g = build_grid(1, {1.0}, {64});
        Field v0(g);
        for (int i = 0; i < 64; ++i)
            v0[i] = 1.0 + 0.4 * std::cos(3.14159265358979 * g.x_center(i));
        StateUV s0{Field(g, 0.0), v0, 0.0};
        RunOptions o;
        o.t_end = 1.0;
        const ModelParams p = make_params(0.5, 1.0, 0.5);
        const RunResult r = run_uw(to_uw(s0), p, o);
        const auto series = compute_oned_series(r.traj);
        for (size_t k = 1; k < series.wx_l2.size(); ++k)
            CHECK(series.wx_l2[k] <= series.wx_l2[k - 1] * (1.0 + 1e-10));
    }
}

TEST_CASE("blowup_detector") {
    SUBCASE("bounded steady run does not flag") {
        const RunResult r = steady_run(1.0, 1.0, 1.0);
        const auto e = blowup_detector(r.traj, 2.0, 1e6);
        CHECK(e.verdict == Verdict::info);
        CHECK(e.note == "no flag");
    }
    SUBCASE("ceiling semantics report the first crossing") {
        const RunResult r = steady_run(1.0, 0.25, 1.0);
        // series starts around ||u||_inf + ||v||_q-ish ~ 5; a ceiling of 4
        // must be crossed at t = 0
        const auto e = blowup_detector(r.traj, 2.0, 4.0);
        CHECK(e.note.find("suspected finite-time blow-up") != std::string::npos);
        CHECK(e.note.find("t=0") != std::string::npos);
    }
}

TEST_CASE("step invariants and full evaluation") {
    const RunResult r = steady_run(1.0, 0.5, 1.0);
    const ModelParams p = make_params(0.5, 1.0, 0.5);
    SUBCASE("per-step entries pass on a clean run") {
        const auto entries = step_invariants(r.traj, 1e-6);
        CHECK(entries.size() == 6);  // positivity x2, vinf, vp x3
        for (const auto& e : entries) CHECK(e.verdict == Verdict::pass);
    }
    SUBCASE("evaluate aggregates everything and passes") {
        MonitorConfig cfg;
        const MonitorReport rep = evaluate(r.traj, p, cfg);
        CHECK(rep.all_pass());
        CHECK(rep.find("mass-l1") != nullptr);
        CHECK(rep.find("window-u2") != nullptr);
        CHECK(rep.find("gronwall-upvr") != nullptr);
        CHECK(rep.find("v-lower-exp") != nullptr);
        CHECK(rep.find("extensibility") != nullptr);
        CHECK(rep.find("does-not-exist") == nullptr);
    }
    SUBCASE("uw runs omit the uv-only per-step monitors") {
        const Grid g = build_grid(1, {1.0}, {64});
        StateUV s0{Field(g, 2.0), Field(g, 1.0), 0.0};
        RunOptions o;
        o.t_end = 3.0;  // window monitors need saturated windows per half
        const RunResult ruw = run_uw(to_uw(s0), p, o);
        const auto entries = step_invariants(ruw.traj, 1e-6);
        CHECK(entries.size() == 2);  // positivity only
        MonitorConfig cfg;
        const MonitorReport rep = evaluate(ruw.traj, p, cfg);
        CHECK(rep.all_pass());
        CHECK(rep.find("oned-wx-l2") != nullptr);
    }
}
