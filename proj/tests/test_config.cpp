#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>

#include "chemsim/config.hpp"
#include "chemsim/harness.hpp"

using namespace chemsim;
using namespace chemsim::cli;

TEST_CASE("presets validate and carry their names") {
    for (const auto& name : preset_names()) {
        const RunConfig cfg = preset_config(name);
        CHECK(cfg.preset == name);
        CHECK_NOTHROW(cfg.validate());
    }
    CHECK_THROWS_AS(preset_config("no-such-preset"), ConfigError);
}

TEST_CASE("ini parsing") {
    SUBCASE("values override preset defaults") {
        const std::string text = R"(
# comment
[run]
preset = steady-decay
formulation = uw
seed = 42

[params]
chi = 0.75          ; trailing comment
mu  = 2.0

[time]
t_end = 1.5
)";
        const RunConfig cfg = parse_run_config(text);
        CHECK(cfg.preset == "steady-decay");
        CHECK(cfg.formulation == "uw");
        CHECK(cfg.seed == 42);
        CHECK(cfg.params.chi == doctest::Approx(0.75));
        CHECK(cfg.params.mu == doctest::Approx(2.0));
        CHECK(cfg.params.kappa == doctest::Approx(1.0));  // preset value kept
        CHECK(cfg.t_end == doctest::Approx(1.5));
    }
    SUBCASE("unknown keys and sections are rejected") {
        CHECK_THROWS_AS(parse_run_config("[run]\nbogus = 1\n"), ConfigError);
        CHECK_THROWS_AS(parse_run_config("[nosuch]\nx = 1\n"), ConfigError);
        CHECK_THROWS_AS(parse_run_config("chi = 1\n"), ConfigError);
        CHECK_THROWS_AS(parse_run_config("[params]\nchi = abc\n"), ConfigError);
        CHECK_THROWS_AS(parse_run_config("[params\nchi = 1\n"), ConfigError);
    }
    SUBCASE("window monitors pin the cadence") {
        const std::string base = "[run]\npreset = steady-decay\n[time]\n";
        CHECK_THROWS_AS(parse_run_config(base + "cadence = 0.2\n"),
                        ConfigError);
        const RunConfig ok = parse_run_config(
            base + "cadence = 0.2\n[monitors]\nenabled = false\n");
        CHECK(ok.cadence == doctest::Approx(0.2));
    }
    SUBCASE("energy spec forms") {
        const std::string base = "[run]\npreset = steady-decay\n[monitors]\n";
        const RunConfig a = parse_run_config(base + "energy = off\n");
        CHECK_FALSE(a.mon.energy_enabled);
        const RunConfig b = parse_run_config(base + "energy = 2.0, 0.5\n");
        REQUIRE(b.mon.energy_pr.has_value());
        CHECK(b.mon.energy_pr->first == doctest::Approx(2.0));
        CHECK(b.mon.energy_pr->second == doctest::Approx(0.5));
        CHECK_THROWS_AS(parse_run_config(base + "energy = 1,2,3\n"),
                        ConfigError);
    }
}

TEST_CASE("environment overrides") {
    setenv("CHEMSIM_PARAMS__CHI", "1.25", 1);
    const RunConfig cfg = parse_run_config("[run]\npreset = steady-decay\n");
    unsetenv("CHEMSIM_PARAMS__CHI");
    CHECK(cfg.params.chi == doctest::Approx(1.25));
    const RunConfig cfg2 = parse_run_config("[run]\npreset = steady-decay\n");
    CHECK(cfg2.params.chi == doctest::Approx(0.5));
}

TEST_CASE("config hash is stable and value-sensitive") {
    const RunConfig a = preset_config("2d-thm1");
    const RunConfig b = preset_config("2d-thm1");
    CHECK(a.hash() == b.hash());
    RunConfig c = preset_config("2d-thm1");
    c.params.chi = 0.81;
    CHECK(c.hash() != a.hash());
    RunConfig d = preset_config("2d-thm1");
    d.seed = 7;
    CHECK(d.hash() != a.hash());
}

TEST_CASE("initial data construction") {
    const Grid g = build_grid(1, {1.0}, {64});
    SUBCASE("gaussian bump adds mass around the center") {
        InitSpec spec;
        spec.kind = InitSpec::Kind::gaussian;
        spec.value = 0.5;
        spec.amplitude = 2.0;
        spec.width = 0.1;
        const Field f = build_initial(g, spec, 0, true, false);
        CHECK(f[32] > 2.0);
        CHECK(f[0] == doctest::Approx(0.5).epsilon(1e-4));
    }
    SUBCASE("cosine perturbation respects Neumann symmetry") {
        InitSpec spec;
        spec.kind = InitSpec::Kind::cosine;
        spec.value = 1.0;
        spec.amplitude = 0.4;
        spec.mode[0] = 2;
        const Field f = build_initial(g, spec, 0, false, true);
        // even mode: symmetric about the midpoint
        for (int i = 0; i < 32; ++i)
            CHECK(f[i] == doctest::Approx(f[63 - i]).epsilon(1e-12));
    }
    SUBCASE("a signal touching zero is rejected") {
        InitSpec spec;
        spec.kind = InitSpec::Kind::cosine;
        spec.value = 0.4;
        spec.amplitude = 0.41;
        CHECK_THROWS_AS(build_initial(g, spec, 0, false, true), ConfigError);
    }
    SUBCASE("negative density is rejected") {
        InitSpec spec;
        spec.kind = InitSpec::Kind::constant;
        spec.value = -0.1;
        CHECK_THROWS_AS(build_initial(g, spec, 0, true, false), ConfigError);
    }
    SUBCASE("noise is deterministic per seed") {
        InitSpec spec;
        spec.kind = InitSpec::Kind::constant;
        spec.value = 1.0;
        spec.noise = 0.1;
        const Field a = build_initial(g, spec, 5, false, true);
        const Field b = build_initial(g, spec, 5, false, true);
        const Field c = build_initial(g, spec, 6, false, true);
        for (int i = 0; i < 64; ++i) CHECK(a[i] == b[i]);
        bool any_diff = false;
        for (int i = 0; i < 64; ++i) any_diff = any_diff || a[i] != c[i];
        CHECK(any_diff);
    }
}

TEST_CASE("eta default tracks the initial signal floor") {
    RunConfig cfg = preset_config("steady-decay");
    const Grid g = cfg.grid.make();
    const Field v0 = build_initial(g, cfg.v0, cfg.seed, false, true);
    const ModelParams p = cfg.effective_params(v0);
    CHECK(p.eta == doctest::Approx(1e-10));  // inf v0 = 1
    cfg.eta_auto = false;
    cfg.params.eta = 1e-6;
    CHECK(cfg.effective_params(v0).eta == doctest::Approx(1e-6));
}

TEST_CASE("sweep config") {
    const std::string text = R"(
[run]
preset = steady-decay
[sweep]
chi = 0.25, 0.5, 0.75
mu = 0.1, 0.5
cap = 10
)";
    const SweepConfig sc = parse_sweep_config(text);
    CHECK(sc.chi_values.size() == 3);
    CHECK(sc.mu_values.size() == 2);
    CHECK(sc.kappa_values.size() == 1);  // base value
    CHECK(sc.cap == 10);
    SUBCASE("cap is enforced") {
        const std::string big = R"(
[run]
preset = steady-decay
[sweep]
chi = 1,2,3,4
mu = 1,2,3
cap = 11
)";
        CHECK_THROWS_AS(parse_sweep_config(big), ConfigError);
    }
}

TEST_CASE("simulate honors the formulation and produces artifacts") {
    RunConfig cfg = preset_config("steady-decay");
    cfg.t_end = 0.5;
    const RunArtifacts uv = simulate(cfg, Formulation::uv);
    CHECK(uv.traj.form == Formulation::uv);
    CHECK(uv.exit_code == kExitOk);
    CHECK(uv.report.all_pass());
    const RunArtifacts uw = simulate(cfg, Formulation::uw);
    CHECK(uw.traj.form == Formulation::uw);
    CHECK(uw.exit_code == kExitOk);
}
