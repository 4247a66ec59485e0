#pragma once

#include <vector>

#include "chemsim/common.hpp"

namespace chemsim {

// Uniform cell-centered mesh on an interval (dim 1) or rectangle (dim 2) with
// homogeneous Neumann boundaries realized by mirror ghost cells. Cell (i,j)
// is centered at ((i+1/2)hx, (j+1/2)hy); storage is row-major, x fastest.
struct Grid {
    int dim = 1;
    double extent[2] = {1.0, 1.0};
    int cells[2] = {1, 1};
    double spacing[2] = {1.0, 1.0};
    double volume = 1.0;

    int nx() const { return cells[0]; }
    int ny() const { return dim == 2 ? cells[1] : 1; }
    int n_cells() const { return nx() * ny(); }
    double cell_volume() const {
        return dim == 2 ? spacing[0] * spacing[1] : spacing[0];
    }
    double min_spacing() const {
        return dim == 2 && spacing[1] < spacing[0] ? spacing[1] : spacing[0];
    }
    int idx(int i, int j = 0) const { return i + nx() * j; }
    double x_center(int i) const { return (i + 0.5) * spacing[0]; }
    double y_center(int j) const { return (j + 0.5) * spacing[1]; }

    friend bool operator==(const Grid& a, const Grid& b) {
        if (a.dim != b.dim) return false;
        for (int d = 0; d < a.dim; ++d)
            if (a.extent[d] != b.extent[d] || a.cells[d] != b.cells[d])
                return false;
        return true;
    }
    friend bool operator!=(const Grid& a, const Grid& b) { return !(a == b); }
};

Grid build_grid(int dim, const std::vector<double>& extents,
                const std::vector<int>& cells_per_axis);

// One real value per cell. NaN/Inf entries are a hard error state; callers
// that produce fields by arithmetic validate with check_finite.
struct Field {
    Grid grid;
    std::vector<double> values;

    Field() = default;
    explicit Field(const Grid& g, double fill = 0.0)
        : grid(g), values(static_cast<size_t>(g.n_cells()), fill) {}

    int size() const { return static_cast<int>(values.size()); }
    double* data() { return values.data(); }
    const double* data() const { return values.data(); }
    double& operator[](int i) { return values[static_cast<size_t>(i)]; }
    double operator[](int i) const { return values[static_cast<size_t>(i)]; }
    double& at(int i, int j) { return values[static_cast<size_t>(grid.idx(i, j))]; }
    double at(int i, int j) const {
        return values[static_cast<size_t>(grid.idx(i, j))];
    }
};

// Face-centered values, one per face and axis. Boundary faces always carry 0
// (discrete no-flux condition).
struct FaceFlux {
    Grid grid;
    std::vector<double> x;  // (nx+1)*ny
    std::vector<double> y;  // nx*(ny+1), empty in 1d

    FaceFlux() = default;
    explicit FaceFlux(const Grid& g)
        : grid(g),
          x(static_cast<size_t>((g.nx() + 1) * g.ny()), 0.0),
          y(g.dim == 2 ? static_cast<size_t>(g.nx() * (g.ny() + 1)) : 0, 0.0) {}
};

Field laplacian_neumann(const Field& f);
FaceFlux gradient_faces(const Field& f);
Field divergence(const FaceFlux& flux);
double integrate(const Field& f);
// (integral of |f|^p)^(1/p); p = infinity gives max |f|. Requires p >= 1.
double lp_norm(const Field& f, double p);

void check_finite(const Field& f, const char* what);

}  // namespace chemsim
