#pragma once

#include <string>

#include "chemsim/grid.hpp"

namespace chemsim {

// Initial-data families: constant, gaussian bump over a base level, or a
// Neumann-compatible cosine perturbation of a base level. An optional
// multiplicative uniform noise (seeded) perturbs the profile cell-wise.
struct InitSpec {
    enum class Kind { constant, gaussian, cosine };
    Kind kind = Kind::constant;
    double value = 1.0;      // constant value / base level
    double amplitude = 0.0;  // bump or perturbation amplitude
    double width = 0.1;      // gaussian sigma, absolute length units
    double center[2] = {-1.0, -1.0};  // negative -> domain center
    int mode[2] = {1, 1};             // cosine modes per axis
    double noise = 0.0;               // relative, uniform in [-noise, +noise]
};

InitSpec parse_init_kind(const std::string& kind);

// Builds the field and enforces the sign constraints of the problem class:
// cell densities must be >= 0 everywhere, signals strictly positive.
Field build_initial(const Grid& g, const InitSpec& spec, unsigned long seed,
                    bool require_nonneg, bool require_positive);

}  // namespace chemsim
