#pragma once

#include <string_view>

// Inner-loop kernels for the cell/face sweeps of the solver. Every kernel has
// a scalar reference implementation and (on x86-64 with AVX2) a vectorized
// variant; the active set is chosen at runtime. Element-wise kernels produce
// bit-identical results in both variants (the whole project is built with
// FP contraction off); reductions may differ in association order and agree
// to ~1e-13 relative, which the equivalence tests pin down.
//
// Array conventions (all double, cell-centered fields row-major, x fastest):
//   field       : n = nx (1d) or nx*ny (2d)
//   x-faces     : nx+1 per row, (nx+1)*ny total; entries 0 and nx of each row
//                 are boundary faces and always hold 0 (no-flux)
//   y-faces     : nx*(ny+1); rows 0 and ny are boundary faces, always 0

namespace chemsim::kernels {

struct FieldStats {
    double min;
    double max;
    double sum;      // plain sum of values
    double sum_abs;  // sum |v|
    double sum_sq;   // sum v^2
    double sum_p4;   // sum v^4
};

struct Ops {
    // -- stencils ------------------------------------------------------------
    // Mirror-ghost Neumann Laplacian; algebraically identical to
    // divergence(gradient_faces(f)), including the order of operations.
    void (*laplacian_1d)(const double* f, int n, double inv_h, double* out);
    void (*laplacian_2d)(const double* f, int nx, int ny, double inv_hx,
                         double inv_hy, double* out);

    // Two-point face gradients, boundary faces zero.
    void (*grad_faces_1d)(const double* f, int n, double inv_h, double* g);
    void (*grad_faces_2d_x)(const double* f, int nx, int ny, double inv_hx,
                            double* gx);
    void (*grad_faces_2d_y)(const double* f, int nx, int ny, double inv_hy,
                            double* gy);

    // Outgoing-minus-incoming face sums over spacing.
    void (*divergence_1d)(const double* g, int n, double inv_h, double* out);
    void (*divergence_2d)(const double* gx, const double* gy, int nx, int ny,
                          double inv_hx, double inv_hy, double* out);

    // Cell value of |grad f|^2 as the mean of squared face gradients per axis.
    void (*gradsq_cell_1d)(const double* g, int n, double* out);
    void (*gradsq_cell_2d)(const double* gx, const double* gy, int nx, int ny,
                           double* out);

    // -- pointwise updates ---------------------------------------------------
    // out = v / (1 + dt*u); positivity-unconditional absorption step.
    void (*absorb)(const double* v, const double* u, int n, double dt,
                   double* out);
    // out = a + c*b
    void (*axpy)(const double* a, const double* b, int n, double c,
                 double* out);
    // out = u + dt*(a - b); transport update from Laplacian a and flux
    // divergence b.
    void (*transport_update)(const double* u, const double* a, const double* b,
                             int n, double dt, double* out);
    // In-place u += dt*(kappa*u - mu*u^2), clipped at 0. Returns the summed
    // clipped magnitude (before the cell-volume weight).
    double (*source_logistic2_clip)(double* u, int n, double dt, double kappa,
                                    double mu);
    // In-place w = max(w, 0); returns summed clipped magnitude.
    double (*clip_floor0)(double* w, int n);

    // -- chemotactic face drift + upwind flux --------------------------------
    // Drift toward higher v: a = S_eta(harmonic mean of adjacent v) * grad v.
    // Returns the number of faces where the sensitivity guard was active
    // (face value below eta).
    long (*drift_uv_1d)(const double* v, int n, double inv_h, double chi,
                        double eta, double* a);
    long (*drift_uv_2d_x)(const double* v, int nx, int ny, double inv_hx,
                          double chi, double eta, double* ax);
    long (*drift_uv_2d_y)(const double* v, int nx, int ny, double inv_hy,
                          double chi, double eta, double* ay);
    // Transformed system: a = -chi * grad w.
    void (*drift_uw_1d)(const double* w, int n, double inv_h, double chi,
                        double* a);
    void (*drift_uw_2d_x)(const double* w, int nx, int ny, double inv_hx,
                          double chi, double* ax);
    void (*drift_uw_2d_y)(const double* w, int nx, int ny, double inv_hy,
                          double chi, double* ay);
    // First-order donor-cell flux: F = a>0 ? a*u_left : a*u_right.
    void (*upwind_1d)(const double* a, const double* u, int n, double* flux);
    void (*upwind_2d_x)(const double* ax, const double* u, int nx, int ny,
                        double* flux);
    void (*upwind_2d_y)(const double* ay, const double* u, int nx, int ny,
                        double* flux);

    // -- reductions ----------------------------------------------------------
    double (*reduce_sum)(const double* f, int n);
    double (*reduce_min)(const double* f, int n);
    double (*reduce_max)(const double* f, int n);
    double (*reduce_max_abs)(const double* f, int n);
    void (*field_stats)(const double* f, int n, FieldStats* s);
};

extern const Ops scalar_ops;
#if defined(__x86_64__) || defined(_M_X64)
extern const Ops avx2_ops;
#endif

bool avx2_available();

// "auto" | "scalar" | "avx2"; returns false (and leaves the selection alone)
// if the request cannot be honored on this machine.
bool select_backend(std::string_view name);
const char* backend_name();

const Ops& ops();

// Shared scalar helper: the regularized sensitivity S_eta(v).
//   chi/v for v >= eta, 2chi/eta for v <= eta/2, cubic smoothstep blend
//   in between; continuous and monotone decreasing in v.
inline double sensitivity(double v, double chi, double eta) {
    if (v >= eta) return chi / v;
    if (v <= 0.5 * eta) return 2.0 * chi / eta;
    const double s = (v - 0.5 * eta) / (0.5 * eta);
    const double z = s * s * (3.0 - 2.0 * s);
    return (1.0 - z) * (2.0 * chi / eta) + z * (chi / v);
}

}  // namespace chemsim::kernels
