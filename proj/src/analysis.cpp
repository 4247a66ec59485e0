#include "chemsim/analysis.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "chemsim/common.hpp"

namespace chemsim::analysis {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::pair<double, double> r_bounds(double p, double chi) {
    if (!(p > 1.0)) throw ConfigError("r_bounds: requires p > 1");
    if (!(chi > 0.0)) throw ConfigError("r_bounds: requires chi > 0");
    const double disc = 1.0 - p * chi * chi;
    if (disc < 0.0)
        throw ConfigError("r_bounds: p*chi^2 = " + std::to_string(p * chi * chi) +
                          " exceeds 1");
    const double root = std::sqrt(disc);
    const double half = 0.5 * (p - 1.0);
    return {half * (1.0 - root), half * (1.0 + root)};
}

ExponentWindow exponent_window(double p, double chi, double mu) {
    ExponentWindow w;
    w.p_low = 1.0;
    w.p_high = 1.0 / (chi * chi);
    w.p = p;
    auto [rm, rp] = r_bounds(p, chi);
    w.r_minus = rm;
    w.r_plus = rp;
    w.r_cap = mu * p;
    return w;
}

std::optional<AdmissiblePair> admissible_pair(double chi, double mu, int n) {
    if (!(chi > 0.0) || !(mu > 0.0) || n < 1)
        throw ConfigError("admissible_pair: requires chi > 0, mu > 0, n >= 1");
    // p-interval (n/2, 1/chi^2), additionally (p-1)/(2p) < mu, i.e.
    // p*(1-2mu) < 1. The functional needs p > 1 as well, which only binds
    // for n = 1.
    const double p_lo = std::max(0.5 * n, 1.0);
    double p_hi = 1.0 / (chi * chi);
    if (mu < 0.5) p_hi = std::min(p_hi, 1.0 / (1.0 - 2.0 * mu));
    if (!(p_lo < p_hi)) return std::nullopt;
    const double p = 0.5 * (p_lo + p_hi);
    ExponentWindow w = exponent_window(p, chi, mu);
    if (!w.nonempty()) return std::nullopt;
    const double r = 0.5 * (w.r_minus + std::min(w.r_plus, w.r_cap));
    return AdmissiblePair{p, r, w};
}

BootstrapTrace bootstrap_sequence(double p0, int n) {
    if (n < 1) throw ConfigError("bootstrap_sequence: requires n >= 1");
    if (!(p0 > 0.5 * n))
        throw ConfigError("bootstrap_sequence: requires p0 > n/2 (phi has its "
                          "fixed point at n/2)");
    BootstrapTrace trace;
    trace.steps.push_back({p0, BootstrapRule::start});
    double p = p0;
    for (int k = 0; k < 10000; ++k) {
        if (std::fabs(p - n) <= 1e-12) {
            p = 0.75 * n;
            trace.steps.push_back({p, BootstrapRule::exceptional});
            continue;
        }
        if (p > n) {
            trace.steps.push_back({kInf, BootstrapRule::escaped});
            trace.terminated = true;
            return trace;
        }
        p = p * (3.0 * n - 2.0 * p) / (4.0 * (n - p));
        trace.steps.push_back({p, BootstrapRule::standard});
    }
    return trace;  // cap reached; terminated stays false
}

GateReport theorem_gate(double chi, double mu, int n) {
    if (n < 1) throw ConfigError("theorem_gate: requires n >= 1");
    GateReport g{};
    g.n = n;
    g.chi = chi;
    g.mu = mu;
    g.chi_ok = chi > 0.0 && chi < std::sqrt(2.0 / n);
    g.mu_strict = mu > static_cast<double>(n - 2) / n;
    g.mu_relaxed = mu > static_cast<double>(n - 2) / (2.0 * n);
    g.one_d_note = (n == 1);
    return g;
}

}  // namespace chemsim::analysis
