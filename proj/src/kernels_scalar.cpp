#include "chemsim/kernels.hpp"

#include <cmath>

// Scalar reference kernels. These define the semantics; the AVX2 variants are
// checked against them element by element. Keep the arithmetic expression
// order in sync with kernels_avx2.cpp.

namespace chemsim::kernels {
namespace {

void laplacian_1d_s(const double* f, int n, double inv_h, double* out) {
    for (int i = 0; i < n; ++i) {
        const double gl = (i > 0) ? (f[i] - f[i - 1]) * inv_h : 0.0;
        const double gr = (i + 1 < n) ? (f[i + 1] - f[i]) * inv_h : 0.0;
        out[i] = (gr - gl) * inv_h;
    }
}

void laplacian_2d_s(const double* f, int nx, int ny, double inv_hx,
                    double inv_hy, double* out) {
    for (int j = 0; j < ny; ++j) {
        const double* row = f + static_cast<long>(j) * nx;
        const double* up = (j > 0) ? row - nx : nullptr;
        const double* dn = (j + 1 < ny) ? row + nx : nullptr;
        double* o = out + static_cast<long>(j) * nx;
        for (int i = 0; i < nx; ++i) {
            const double gxl = (i > 0) ? (row[i] - row[i - 1]) * inv_hx : 0.0;
            const double gxr =
                (i + 1 < nx) ? (row[i + 1] - row[i]) * inv_hx : 0.0;
            const double gyl = up ? (row[i] - up[i]) * inv_hy : 0.0;
            const double gyr = dn ? (dn[i] - row[i]) * inv_hy : 0.0;
            o[i] = (gxr - gxl) * inv_hx + (gyr - gyl) * inv_hy;
        }
    }
}

void grad_faces_1d_s(const double* f, int n, double inv_h, double* g) {
    g[0] = 0.0;
    g[n] = 0.0;
    for (int i = 1; i < n; ++i) g[i] = (f[i] - f[i - 1]) * inv_h;
}

void grad_faces_2d_x_s(const double* f, int nx, int ny, double inv_hx,
                       double* gx) {
    for (int j = 0; j < ny; ++j) {
        const double* row = f + static_cast<long>(j) * nx;
        double* g = gx + static_cast<long>(j) * (nx + 1);
        g[0] = 0.0;
        g[nx] = 0.0;
        for (int i = 1; i < nx; ++i) g[i] = (row[i] - row[i - 1]) * inv_hx;
    }
}

void grad_faces_2d_y_s(const double* f, int nx, int ny, double inv_hy,
                       double* gy) {
    for (int i = 0; i < nx; ++i) {
        gy[i] = 0.0;
        gy[static_cast<long>(ny) * nx + i] = 0.0;
    }
    for (int j = 1; j < ny; ++j) {
        const double* rlo = f + static_cast<long>(j - 1) * nx;
        const double* rhi = f + static_cast<long>(j) * nx;
        double* g = gy + static_cast<long>(j) * nx;
        for (int i = 0; i < nx; ++i) g[i] = (rhi[i] - rlo[i]) * inv_hy;
    }
}

void divergence_1d_s(const double* g, int n, double inv_h, double* out) {
    for (int i = 0; i < n; ++i) out[i] = (g[i + 1] - g[i]) * inv_h;
}

void divergence_2d_s(const double* gx, const double* gy, int nx, int ny,
                     double inv_hx, double inv_hy, double* out) {
    for (int j = 0; j < ny; ++j) {
        const double* gxr = gx + static_cast<long>(j) * (nx + 1);
        const double* gylo = gy + static_cast<long>(j) * nx;
        const double* gyhi = gylo + nx;
        double* o = out + static_cast<long>(j) * nx;
        for (int i = 0; i < nx; ++i)
            o[i] = (gxr[i + 1] - gxr[i]) * inv_hx + (gyhi[i] - gylo[i]) * inv_hy;
    }
}

void gradsq_cell_1d_s(const double* g, int n, double* out) {
    for (int i = 0; i < n; ++i)
        out[i] = 0.5 * (g[i] * g[i] + g[i + 1] * g[i + 1]);
}

void gradsq_cell_2d_s(const double* gx, const double* gy, int nx, int ny,
                      double* out) {
    for (int j = 0; j < ny; ++j) {
        const double* gxr = gx + static_cast<long>(j) * (nx + 1);
        const double* gylo = gy + static_cast<long>(j) * nx;
        const double* gyhi = gylo + nx;
        double* o = out + static_cast<long>(j) * nx;
        for (int i = 0; i < nx; ++i) {
            o[i] = 0.5 * (gxr[i] * gxr[i] + gxr[i + 1] * gxr[i + 1]) +
                   0.5 * (gylo[i] * gylo[i] + gyhi[i] * gyhi[i]);
        }
    }
}

void absorb_s(const double* v, const double* u, int n, double dt, double* out) {
    for (int i = 0; i < n; ++i) out[i] = v[i] / (1.0 + dt * u[i]);
}

void axpy_s(const double* a, const double* b, int n, double c, double* out) {
    for (int i = 0; i < n; ++i) out[i] = a[i] + c * b[i];
}

void transport_update_s(const double* u, const double* a, const double* b,
                        int n, double dt, double* out) {
    for (int i = 0; i < n; ++i) out[i] = u[i] + dt * (a[i] - b[i]);
}

double source_logistic2_clip_s(double* u, int n, double dt, double kappa,
                               double mu) {
    double clipped = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = u[i] + dt * (kappa * u[i] - mu * (u[i] * u[i]));
        if (x < 0.0) {
            clipped -= x;
            u[i] = 0.0;
        } else {
            u[i] = x;
        }
    }
    return clipped;
}

double clip_floor0_s(double* w, int n) {
    double clipped = 0.0;
    for (int i = 0; i < n; ++i) {
        if (w[i] < 0.0) {
            clipped -= w[i];
            w[i] = 0.0;
        }
    }
    return clipped;
}

inline long drift_uv_face(const double* vl, const double* vr, int m,
                          double inv_h, double chi, double eta, double* a) {
    long guarded = 0;
    for (int i = 0; i < m; ++i) {
        const double p = vl[i];
        const double q = vr[i];
        const double hm = 2.0 * p * q / (p + q);
        double s;
        if (hm >= eta) {
            s = chi / hm;
        } else {
            ++guarded;
            if (hm <= 0.5 * eta) {
                s = 2.0 * chi / eta;
            } else {
                const double t = (hm - 0.5 * eta) / (0.5 * eta);
                const double z = t * t * (3.0 - 2.0 * t);
                s = (1.0 - z) * (2.0 * chi / eta) + z * (chi / hm);
            }
        }
        a[i] = s * ((q - p) * inv_h);
    }
    return guarded;
}

long drift_uv_1d_s(const double* v, int n, double inv_h, double chi, double eta,
                   double* a) {
    a[0] = 0.0;
    a[n] = 0.0;
    return drift_uv_face(v, v + 1, n - 1, inv_h, chi, eta, a + 1);
}

long drift_uv_2d_x_s(const double* v, int nx, int ny, double inv_hx, double chi,
                     double eta, double* ax) {
    long guarded = 0;
    for (int j = 0; j < ny; ++j) {
        const double* row = v + static_cast<long>(j) * nx;
        double* a = ax + static_cast<long>(j) * (nx + 1);
        a[0] = 0.0;
        a[nx] = 0.0;
        guarded += drift_uv_face(row, row + 1, nx - 1, inv_hx, chi, eta, a + 1);
    }
    return guarded;
}

long drift_uv_2d_y_s(const double* v, int nx, int ny, double inv_hy, double chi,
                     double eta, double* ay) {
    long guarded = 0;
    for (int i = 0; i < nx; ++i) {
        ay[i] = 0.0;
        ay[static_cast<long>(ny) * nx + i] = 0.0;
    }
    for (int j = 1; j < ny; ++j) {
        const double* rlo = v + static_cast<long>(j - 1) * nx;
        const double* rhi = v + static_cast<long>(j) * nx;
        guarded += drift_uv_face(rlo, rhi, nx, inv_hy, chi, eta,
                                 ay + static_cast<long>(j) * nx);
    }
    return guarded;
}

void drift_uw_1d_s(const double* w, int n, double inv_h, double chi,
                   double* a) {
    a[0] = 0.0;
    a[n] = 0.0;
    const double c = -chi;
    for (int i = 1; i < n; ++i) a[i] = c * ((w[i] - w[i - 1]) * inv_h);
}

void drift_uw_2d_x_s(const double* w, int nx, int ny, double inv_hx, double chi,
                     double* ax) {
    const double c = -chi;
    for (int j = 0; j < ny; ++j) {
        const double* row = w + static_cast<long>(j) * nx;
        double* a = ax + static_cast<long>(j) * (nx + 1);
        a[0] = 0.0;
        a[nx] = 0.0;
        for (int i = 1; i < nx; ++i) a[i] = c * ((row[i] - row[i - 1]) * inv_hx);
    }
}

void drift_uw_2d_y_s(const double* w, int nx, int ny, double inv_hy, double chi,
                     double* ay) {
    const double c = -chi;
    for (int i = 0; i < nx; ++i) {
        ay[i] = 0.0;
        ay[static_cast<long>(ny) * nx + i] = 0.0;
    }
    for (int j = 1; j < ny; ++j) {
        const double* rlo = w + static_cast<long>(j - 1) * nx;
        const double* rhi = w + static_cast<long>(j) * nx;
        double* a = ay + static_cast<long>(j) * nx;
        for (int i = 0; i < nx; ++i) a[i] = c * ((rhi[i] - rlo[i]) * inv_hy);
    }
}

void upwind_1d_s(const double* a, const double* u, int n, double* flux) {
    flux[0] = 0.0;
    flux[n] = 0.0;
    for (int i = 1; i < n; ++i)
        flux[i] = (a[i] > 0.0) ? a[i] * u[i - 1] : a[i] * u[i];
}

void upwind_2d_x_s(const double* ax, const double* u, int nx, int ny,
                   double* flux) {
    for (int j = 0; j < ny; ++j) {
        const double* row = u + static_cast<long>(j) * nx;
        const double* a = ax + static_cast<long>(j) * (nx + 1);
        double* fl = flux + static_cast<long>(j) * (nx + 1);
        fl[0] = 0.0;
        fl[nx] = 0.0;
        for (int i = 1; i < nx; ++i)
            fl[i] = (a[i] > 0.0) ? a[i] * row[i - 1] : a[i] * row[i];
    }
}

void upwind_2d_y_s(const double* ay, const double* u, int nx, int ny,
                   double* flux) {
    for (int i = 0; i < nx; ++i) {
        flux[i] = 0.0;
        flux[static_cast<long>(ny) * nx + i] = 0.0;
    }
    for (int j = 1; j < ny; ++j) {
        const double* rlo = u + static_cast<long>(j - 1) * nx;
        const double* rhi = u + static_cast<long>(j) * nx;
        const double* a = ay + static_cast<long>(j) * nx;
        double* fl = flux + static_cast<long>(j) * nx;
        for (int i = 0; i < nx; ++i)
            fl[i] = (a[i] > 0.0) ? a[i] * rlo[i] : a[i] * rhi[i];
    }
}

double reduce_sum_s(const double* f, int n) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += f[i];
    return s;
}

double reduce_min_s(const double* f, int n) {
    double m = f[0];
    for (int i = 1; i < n; ++i)
        if (f[i] < m) m = f[i];
    return m;
}

double reduce_max_s(const double* f, int n) {
    double m = f[0];
    for (int i = 1; i < n; ++i)
        if (f[i] > m) m = f[i];
    return m;
}

double reduce_max_abs_s(const double* f, int n) {
    double m = 0.0;
    for (int i = 0; i < n; ++i) {
        const double a = std::fabs(f[i]);
        if (a > m) m = a;
    }
    return m;
}

void field_stats_s(const double* f, int n, FieldStats* s) {
    double mn = f[0], mx = f[0];
    double sum = 0.0, sabs = 0.0, ssq = 0.0, sp4 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = f[i];
        if (x < mn) mn = x;
        if (x > mx) mx = x;
        sum += x;
        sabs += std::fabs(x);
        const double x2 = x * x;
        ssq += x2;
        sp4 += x2 * x2;
    }
    *s = FieldStats{mn, mx, sum, sabs, ssq, sp4};
}

}  // namespace

const Ops scalar_ops = {
    laplacian_1d_s,    laplacian_2d_s,
    grad_faces_1d_s,   grad_faces_2d_x_s, grad_faces_2d_y_s,
    divergence_1d_s,   divergence_2d_s,
    gradsq_cell_1d_s,  gradsq_cell_2d_s,
    absorb_s,          axpy_s,            transport_update_s,
    source_logistic2_clip_s,              clip_floor0_s,
    drift_uv_1d_s,     drift_uv_2d_x_s,   drift_uv_2d_y_s,
    drift_uw_1d_s,     drift_uw_2d_x_s,   drift_uw_2d_y_s,
    upwind_1d_s,       upwind_2d_x_s,     upwind_2d_y_s,
    reduce_sum_s,      reduce_min_s,      reduce_max_s, reduce_max_abs_s,
    field_stats_s,
};

}  // namespace chemsim::kernels
