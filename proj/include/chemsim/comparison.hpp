#pragma once

#include <functional>
#include <string>
#include <vector>

#include "chemsim/dynamics.hpp"

namespace chemsim::comparison {

// A sub- or supersolution candidate sampled on a shared set of times.
struct SampledCandidate {
    std::string name;
    std::vector<double> times;
    std::vector<Field> fields;
};

// Advection-diffusion-reaction problem description for the optional defect
// report: c_t = lap c + div(b c) + f(x,t,c), no-flux drift at the boundary.
struct EvolutionProblem {
    Grid grid;
    double t_horizon = 0.0;
    // face drift at snapshot k; empty function means b == 0
    std::function<FaceFlux(size_t)> drift;
    // reaction f at cell i, snapshot k, candidate value c
    std::function<double(int, size_t, double)> reaction;
    double lipschitz = 0.0;  // stated constant on the compact range
};

struct OrderingReport {
    std::string name;
    double tol = 0.0;
    double min_gap = 0.0;  // min over space-time of (super - sub)
    bool initial_ordering_ok = true;
    bool pass = false;
    double t_first_violation = -1.0;  // -1: none
    int cell_first_violation = -1;
    std::string note;
};

// Sign pattern of the discrete defect c_t - lap c - div(b c) - f along the
// candidate; informational (the user certifies sub/supersolution status).
struct DefectSummary {
    double min_defect = 0.0;
    double max_defect = 0.0;
    double frac_nonneg = 0.0;  // fraction of samples with defect >= -tol
    double frac_nonpos = 0.0;
};

OrderingReport verify_ordering(const SampledCandidate& sub,
                               const SampledCandidate& super, double tol);

DefectSummary defect_pattern(const EvolutionProblem& prob,
                             const SampledCandidate& cand, double tol);

struct BarrierPair {
    std::string name;
    SampledCandidate sub;
    SampledCandidate super;
};

// The canonical pairs: 0 <= u, (inf v0) e^{-Ct} <= v with C the running max
// of ||u||_inf, and v <= ||v0||_inf.
std::vector<BarrierPair> canonical_barriers(const Trajectory& traj,
                                            const ModelParams& p);

// 1e-8 plus scheme-order slack per unit time.
double default_tolerance(const Trajectory& traj);

SampledCandidate candidate_from_u(const Trajectory& traj);
SampledCandidate candidate_from_v(const Trajectory& traj);

}  // namespace chemsim::comparison
