#include "chemsim/grid.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "chemsim/kernels.hpp"

namespace chemsim {

Grid build_grid(int dim, const std::vector<double>& extents,
                const std::vector<int>& cells_per_axis) {
    if (dim != 1 && dim != 2)
        throw ConfigError("grid: dim must be 1 or 2, got " +
                          std::to_string(dim));
    if (static_cast<int>(extents.size()) != dim ||
        static_cast<int>(cells_per_axis.size()) != dim)
        throw ConfigError("grid: extents/cells must have one entry per axis");
    Grid g;
    g.dim = dim;
    g.volume = 1.0;
    for (int d = 0; d < dim; ++d) {
        if (!(extents[d] > 0.0) || !std::isfinite(extents[d]))
            throw ConfigError("grid: extents must be positive");
        if (cells_per_axis[d] < 3)
            throw ConfigError("grid: need at least 3 cells per axis");
        g.extent[d] = extents[d];
        g.cells[d] = cells_per_axis[d];
        g.spacing[d] = extents[d] / cells_per_axis[d];
        g.volume *= extents[d];
    }
    return g;
}

void check_finite(const Field& f, const char* what) {
    for (double v : f.values) {
        if (!std::isfinite(v))
            throw NumericsError(std::string("non-finite value in ") + what);
    }
}

Field laplacian_neumann(const Field& f) {
    check_finite(f, "laplacian input");
    Field out(f.grid);
    const auto& k = kernels::ops();
    if (f.grid.dim == 1) {
        k.laplacian_1d(f.data(), f.grid.nx(), 1.0 / f.grid.spacing[0],
                       out.data());
    } else {
        k.laplacian_2d(f.data(), f.grid.nx(), f.grid.ny(),
                       1.0 / f.grid.spacing[0], 1.0 / f.grid.spacing[1],
                       out.data());
    }
    return out;
}

FaceFlux gradient_faces(const Field& f) {
    FaceFlux g(f.grid);
    const auto& k = kernels::ops();
    if (f.grid.dim == 1) {
        k.grad_faces_1d(f.data(), f.grid.nx(), 1.0 / f.grid.spacing[0],
                        g.x.data());
    } else {
        k.grad_faces_2d_x(f.data(), f.grid.nx(), f.grid.ny(),
                          1.0 / f.grid.spacing[0], g.x.data());
        k.grad_faces_2d_y(f.data(), f.grid.nx(), f.grid.ny(),
                          1.0 / f.grid.spacing[1], g.y.data());
    }
    return g;
}

Field divergence(const FaceFlux& flux) {
    Field out(flux.grid);
    const auto& k = kernels::ops();
    if (flux.grid.dim == 1) {
        k.divergence_1d(flux.x.data(), flux.grid.nx(),
                        1.0 / flux.grid.spacing[0], out.data());
    } else {
        k.divergence_2d(flux.x.data(), flux.y.data(), flux.grid.nx(),
                        flux.grid.ny(), 1.0 / flux.grid.spacing[0],
                        1.0 / flux.grid.spacing[1], out.data());
    }
    return out;
}

double integrate(const Field& f) {
    return kernels::ops().reduce_sum(f.data(), f.size()) *
           f.grid.cell_volume();
}

double lp_norm(const Field& f, double p) {
    if (std::isinf(p))
        return kernels::ops().reduce_max_abs(f.data(), f.size());
    if (!(p >= 1.0)) throw ConfigError("lp_norm: p must be >= 1 or infinity");
    const double vol = f.grid.cell_volume();
    double s = 0.0;
    if (p == 1.0 || p == 2.0 || p == 4.0) {
        kernels::FieldStats st{};
        kernels::ops().field_stats(f.data(), f.size(), &st);
        s = (p == 1.0) ? st.sum_abs : (p == 2.0 ? st.sum_sq : st.sum_p4);
    } else {
        for (double v : f.values) s += std::pow(std::fabs(v), p);
    }
    return std::pow(s * vol, 1.0 / p);
}

}  // namespace chemsim
