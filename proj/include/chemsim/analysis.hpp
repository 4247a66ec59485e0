#pragma once

#include <optional>
#include <vector>

namespace chemsim::analysis {

// Admissible exponent window for the weighted functional int u^p v^-r:
// p must lie in (1, 1/chi^2) and r in (r_minus, min(r_plus, mu*p)).
struct ExponentWindow {
    double p_low = 1.0;
    double p_high = 0.0;  // 1/chi^2
    double p = 0.0;
    double r_minus = 0.0;
    double r_plus = 0.0;
    double r_cap = 0.0;  // mu*p
    bool nonempty() const { return r_minus < (r_plus < r_cap ? r_plus : r_cap); }
};

// r_pm = (p-1)/2 * (1 -+/+ sqrt(1 - p chi^2)). Requires p > 1, chi > 0 and
// p*chi^2 <= 1 (equality collapses the window to a point).
std::pair<double, double> r_bounds(double p, double chi);

ExponentWindow exponent_window(double p, double chi, double mu);

struct AdmissiblePair {
    double p;
    double r;
    ExponentWindow window;
};

// Midpoint choice inside the feasible region: p in (n/2, 1/chi^2) with
// (p-1)/(2p) < mu, then r the midpoint of (r_minus, min(r_plus, mu*p)).
// Empty result means the region is empty for these parameters.
std::optional<AdmissiblePair> admissible_pair(double chi, double mu, int n);

enum class BootstrapRule { start, standard, exceptional, escaped };

struct BootstrapStep {
    double p;  // +infinity marks termination
    BootstrapRule rule;
};

struct BootstrapTrace {
    std::vector<BootstrapStep> steps;
    bool terminated = false;  // reached +infinity
    size_t length() const { return steps.size(); }
};

// Integrability bootstrap p_{k+1} = phi(p_k), phi(x) = x(3n-2x)/(4(n-x)) for
// x < n; an exact hit of x = n (within 1e-12) takes the exceptional value
// 3n/4; x > n escapes to +infinity. Requires p0 > n/2 (the fixed point of
// phi); iteration is capped at 10^4 as a defense, though termination is
// guaranteed in far fewer steps.
BootstrapTrace bootstrap_sequence(double p0, int n);

struct GateReport {
    int n;
    double chi, mu;
    bool chi_ok;       // chi < sqrt(2/n)
    bool mu_strict;    // mu > (n-2)/n
    bool mu_relaxed;   // mu > (n-2)/(2n)
    bool one_d_note;   // n == 1: bounded for any chi > 0, mu > 0, kappa >= 0
};

GateReport theorem_gate(double chi, double mu, int n);

}  // namespace chemsim::analysis
