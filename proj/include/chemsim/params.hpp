#pragma once

#include "chemsim/common.hpp"

namespace chemsim {

// chi: chemotactic sensitivity strength, kappa/mu: logistic growth/crowding,
// alpha: crowding exponent (>= 2), eta: floor below which the singular
// sensitivity chi/v is regularized. The floor should be inert in healthy
// runs; every activation is counted in the run diagnostics.
struct ModelParams {
    double chi = 1.0;
    double kappa = 0.0;
    double mu = 1.0;
    double alpha = 2.0;
    double eta = 1e-10;

    void validate() const {
        if (!(chi > 0.0)) throw ConfigError("params: chi must be > 0");
        if (!(kappa >= 0.0)) throw ConfigError("params: kappa must be >= 0");
        if (!(mu > 0.0)) throw ConfigError("params: mu must be > 0");
        if (!(alpha >= 2.0))
            throw ConfigError("params: alpha must be >= 2 (smaller exponents "
                              "fall outside the admissible source class)");
        if (!(eta > 0.0)) throw ConfigError("params: eta must be > 0");
    }
};

}  // namespace chemsim
