#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "chemsim/analysis.hpp"
#include "chemsim/common.hpp"

using namespace chemsim;
using namespace chemsim::analysis;

TEST_CASE("r_bounds closed form") {
    SUBCASE("p=2, chi=0.5") {
        const auto [rm, rp] = r_bounds(2.0, 0.5);
        CHECK(rm == doctest::Approx(0.5 * (1.0 - std::sqrt(0.5))).epsilon(1e-14));
        CHECK(rp == doctest::Approx(0.5 * (1.0 + std::sqrt(0.5))).epsilon(1e-14));
        CHECK(rm == doctest::Approx(0.14644660940672627).epsilon(1e-12));
        CHECK(rp == doctest::Approx(0.85355339059327373).epsilon(1e-12));
    }
    SUBCASE("window collapses at p = 1/chi^2") {
        const double chi = 0.6;
        const double p = 1.0 / (chi * chi);
        const auto [rm, rp] = r_bounds(p, chi);
        CHECK(rm == doctest::Approx(rp));
        CHECK(rm == doctest::Approx(0.5 * (p - 1.0)));
    }
    SUBCASE("both bounds vanish as p -> 1") {
        const auto [rm, rp] = r_bounds(1.0 + 1e-9, 0.5);
        CHECK(std::fabs(rm) < 1e-9);
        CHECK(std::fabs(rp) < 1e-9);
    }
    SUBCASE("domain errors") {
        CHECK_THROWS_AS(r_bounds(5.0, 0.5), ConfigError);  // p chi^2 > 1
        CHECK_THROWS_AS(r_bounds(0.9, 0.5), ConfigError);  // p <= 1
    }
}

TEST_CASE("r window equals the root condition of the quadratic") {
    // r in (r-, r+)  <=>  r^2 - (p-1) r + p (p-1)^2 chi^2 / 4 < 0
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> up(1.01, 6.0);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    int checked = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const double p = up(rng);
        const double chi = u01(rng) * 0.99 / std::sqrt(p);
        if (!(chi > 0.0)) continue;
        const auto [rm, rp] = r_bounds(p, chi);
        // independent route: solve the quadratic
        const double b = p - 1.0;
        const double c = p * (p - 1.0) * (p - 1.0) * chi * chi / 4.0;
        const double disc = b * b - 4.0 * c;
        REQUIRE(disc >= 0.0);
        const double q1 = (b - std::sqrt(disc)) / 2.0;
        const double q2 = (b + std::sqrt(disc)) / 2.0;
        CHECK(rm == doctest::Approx(q1).epsilon(1e-12));
        CHECK(rp == doctest::Approx(q2).epsilon(1e-12));
        // a few sample r values on both sides
        const double r_in = 0.5 * (rm + rp);
        const double quad_in = r_in * r_in - b * r_in + c;
        if (rp - rm > 1e-9) CHECK(quad_in < 0.0);
        const double r_out = rp + 0.1 * (1.0 + rp);
        CHECK(r_out * r_out - b * r_out + c > 0.0);
        ++checked;
    }
    CHECK(checked > 900);
}

TEST_CASE("the defining quadratic test holds inside the admissible window") {
    // (p(p-1)chi + 2pr)^2 / (4p(p-1)) - (p r chi + r(r+1)) < 0
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> up(1.05, 5.0);
    std::uniform_real_distribution<double> u01(0.05, 0.95);
    for (int trial = 0; trial < 1000; ++trial) {
        const double p = up(rng);
        const double chi = u01(rng) / std::sqrt(p);
        const auto [rm, rp] = r_bounds(p, chi);
        if (rp - rm < 1e-10) continue;
        const double r = rm + u01(rng) * (rp - rm);
        const double lhs =
            std::pow(p * (p - 1.0) * chi + 2.0 * p * r, 2) /
                (4.0 * p * (p - 1.0)) -
            (p * r * chi + r * (r + 1.0));
        CHECK(lhs < 0.0);
    }
}

TEST_CASE("admissible_pair") {
    SUBCASE("n=3, chi=0.7, mu=0.4") {
        const auto ap = admissible_pair(0.7, 0.4, 3);
        REQUIRE(ap.has_value());
        // p interval (1.5, 1/0.49); extra constraint (p-1)/(2p) < 0.4 holds
        // for all p < 5, so the midpoint is (1.5 + 1/0.49)/2
        CHECK(ap->p == doctest::Approx((1.5 + 1.0 / 0.49) / 2.0).epsilon(1e-12));
        CHECK(ap->p == doctest::Approx(1.7704).epsilon(1e-4));
        // the returned r is strictly inside its window
        const auto [rm, rp] = r_bounds(ap->p, 0.7);
        CHECK(ap->r > rm);
        CHECK(ap->r < std::min(rp, 0.4 * ap->p));
        CHECK((ap->p - 1.0) / (2.0 * ap->p) < 0.4);
    }
    SUBCASE("boundary chi = sqrt(2/n) is excluded") {
        CHECK_FALSE(admissible_pair(1.0, 0.7, 2).has_value());
    }
    SUBCASE("n=2 admits a pair for any positive mu") {
        for (double mu : {1e-4, 1e-2, 0.3, 1.0, 10.0}) {
            const auto ap = admissible_pair(0.5, mu, 2);
            REQUIRE(ap.has_value());
            const auto [rm, rp] = r_bounds(ap->p, 0.5);
            CHECK(ap->p > 1.0);
            CHECK(ap->p < 4.0);  // 1/chi^2
            CHECK(ap->r > rm);
            CHECK(ap->r < std::min(rp, mu * ap->p));
        }
    }
    SUBCASE("returned pairs always re-check against the window") {
        std::mt19937_64 rng(99);
        std::uniform_real_distribution<double> uc(0.05, 1.2);
        std::uniform_real_distribution<double> um(0.01, 2.0);
        for (int trial = 0; trial < 500; ++trial) {
            const int n = 2 + static_cast<int>(trial % 4);
            const double chi = uc(rng);
            const double mu = um(rng);
            const auto ap = admissible_pair(chi, mu, n);
            if (!ap) continue;
            CHECK(ap->p > 0.5 * n);
            CHECK(ap->p * chi * chi < 1.0);
            const auto [rm, rp] = r_bounds(ap->p, chi);
            CHECK(ap->r > rm);
            CHECK(ap->r < std::min(rp, mu * ap->p));
        }
    }
}

TEST_CASE("bootstrap_sequence") {
    const double inf = std::numeric_limits<double>::infinity();
    SUBCASE("n=2, p0=1.5 escapes in one application") {
        const auto tr = bootstrap_sequence(1.5, 2);
        REQUIRE(tr.length() == 3);
        CHECK(tr.steps[0].p == 1.5);
        CHECK(tr.steps[1].p == doctest::Approx(2.25));
        CHECK(tr.steps[2].p == inf);
        CHECK(tr.terminated);
    }
    SUBCASE("exact hit of p = n takes the exceptional value") {
        const auto tr = bootstrap_sequence(2.0, 2);
        REQUIRE(tr.length() >= 4);
        CHECK(tr.steps[0].p == 2.0);
        CHECK(tr.steps[1].p == doctest::Approx(1.5));
        CHECK(tr.steps[1].rule == BootstrapRule::exceptional);
        CHECK(tr.steps[2].p == doctest::Approx(2.25));
        CHECK(tr.steps[3].p == inf);
    }
    SUBCASE("n=3, p0=1.6") {
        const auto tr = bootstrap_sequence(1.6, 3);
        CHECK(tr.steps[1].p == doctest::Approx(9.28 / 5.6).epsilon(1e-12));
        CHECK(tr.terminated);
        CHECK(tr.length() <= 50);
    }
    SUBCASE("random starts terminate within 50 entries") {
        std::mt19937_64 rng(321);
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        for (int trial = 0; trial < 1000; ++trial) {
            const int n = 2 + static_cast<int>(trial % 4);
            const double p0 =
                0.5 * n + (1e-6 + u01(rng)) * n;  // (n/2, 1.5n + eps)
            const auto tr = bootstrap_sequence(p0, n);
            CHECK(tr.terminated);
            CHECK(tr.length() <= 50);
            CHECK(std::isinf(tr.steps.back().p));
        }
    }
    SUBCASE("p0 at or below the fixed point is rejected") {
        CHECK_THROWS_AS(bootstrap_sequence(1.0, 2), ConfigError);
        CHECK_THROWS_AS(bootstrap_sequence(0.7, 2), ConfigError);
    }
}

TEST_CASE("theorem_gate") {
    SUBCASE("n=2 admits any positive mu") {
        const auto g = theorem_gate(0.5, 0.1, 2);
        CHECK(g.chi_ok);
        CHECK(g.mu_strict);
        CHECK(g.mu_relaxed);
        CHECK_FALSE(g.one_d_note);
    }
    SUBCASE("n=4 separates the two mu thresholds") {
        const auto g = theorem_gate(0.6, 0.3, 4);
        CHECK(g.chi_ok);  // sqrt(2/4) ~ 0.7071
        CHECK(g.mu_relaxed);        // 0.3 > 0.25
        CHECK_FALSE(g.mu_strict);   // 0.3 < 0.5
    }
    SUBCASE("the chi boundary is excluded") {
        CHECK_FALSE(theorem_gate(1.0, 0.5, 2).chi_ok);
    }
    SUBCASE("n=1 note") { CHECK(theorem_gate(5.0, 0.1, 1).one_d_note); }
}
