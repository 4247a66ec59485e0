#include "chemsim/scenario.hpp"

#include <cmath>
#include <random>

namespace chemsim {

InitSpec parse_init_kind(const std::string& kind) {
    InitSpec s;
    if (kind == "constant") s.kind = InitSpec::Kind::constant;
    else if (kind == "gaussian") s.kind = InitSpec::Kind::gaussian;
    else if (kind == "cosine") s.kind = InitSpec::Kind::cosine;
    else
        throw ConfigError("unknown initial-data kind '" + kind +
                          "' (expected constant|gaussian|cosine)");
    return s;
}

Field build_initial(const Grid& g, const InitSpec& spec, unsigned long seed,
                    bool require_nonneg, bool require_positive) {
    Field f(g);
    const double pi = 3.14159265358979323846;
    double cx = spec.center[0] >= 0.0 ? spec.center[0] : 0.5 * g.extent[0];
    double cy = spec.center[1] >= 0.0 ? spec.center[1] : 0.5 * g.extent[1];
    for (int j = 0; j < g.ny(); ++j) {
        for (int i = 0; i < g.nx(); ++i) {
            const double x = g.x_center(i);
            const double y = g.dim == 2 ? g.y_center(j) : 0.0;
            double v = spec.value;
            switch (spec.kind) {
                case InitSpec::Kind::constant:
                    break;
                case InitSpec::Kind::gaussian: {
                    double r2 = (x - cx) * (x - cx);
                    if (g.dim == 2) r2 += (y - cy) * (y - cy);
                    v += spec.amplitude *
                         std::exp(-r2 / (2.0 * spec.width * spec.width));
                    break;
                }
                case InitSpec::Kind::cosine: {
                    double c = std::cos(spec.mode[0] * pi * x / g.extent[0]);
                    if (g.dim == 2)
                        c *= std::cos(spec.mode[1] * pi * y / g.extent[1]);
                    v += spec.amplitude * c;
                    break;
                }
            }
            f.at(i, j) = v;
        }
    }
    if (spec.noise > 0.0) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> dist(-spec.noise, spec.noise);
        for (double& v : f.values) v *= 1.0 + dist(rng);
    }
    for (double v : f.values) {
        if (require_positive && !(v > 0.0))
            throw ConfigError("initial data violates positivity: signal must "
                              "be > 0 everywhere");
        if (require_nonneg && v < 0.0)
            throw ConfigError("initial data violates nonnegativity: cell "
                              "density must be >= 0 everywhere");
    }
    return f;
}

}  // namespace chemsim
