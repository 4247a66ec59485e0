// AVX2 variants of the inner-loop kernels. Compiled with -mavx2 in its own
// translation unit; selected at runtime only when the CPU reports AVX2.
//
// Element-wise kernels replicate the scalar reference expression for each
// element (same operations, same order, no FMA contraction), so results are
// bit-identical to kernels_scalar.cpp. Reductions combine lanes in a fixed
// but different order and are compared with a small tolerance instead.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>

#include "chemsim/kernels.hpp"

namespace chemsim::kernels {
namespace {

inline __m256d load(const double* p) { return _mm256_loadu_pd(p); }
inline void store(double* p, __m256d v) { _mm256_storeu_pd(p, v); }

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s2 = _mm_add_pd(lo, hi);
    const __m128d s1 = _mm_add_sd(s2, _mm_unpackhi_pd(s2, s2));
    return _mm_cvtsd_f64(s1);
}

inline double hmin(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d m2 = _mm_min_pd(lo, hi);
    const __m128d m1 = _mm_min_sd(m2, _mm_unpackhi_pd(m2, m2));
    return _mm_cvtsd_f64(m1);
}

inline double hmax(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d m2 = _mm_max_pd(lo, hi);
    const __m128d m1 = _mm_max_sd(m2, _mm_unpackhi_pd(m2, m2));
    return _mm_cvtsd_f64(m1);
}

inline __m256d vabs(__m256d v) {
    const __m256d signmask = _mm256_set1_pd(-0.0);
    return _mm256_andnot_pd(signmask, v);
}

void laplacian_1d_v(const double* f, int n, double inv_h, double* out) {
    const __m256d vh = _mm256_set1_pd(inv_h);
    int i = 1;
    for (; i + 4 <= n - 1; i += 4) {
        const __m256d fm = load(f + i - 1);
        const __m256d fc = load(f + i);
        const __m256d fp = load(f + i + 1);
        const __m256d gl = _mm256_mul_pd(_mm256_sub_pd(fc, fm), vh);
        const __m256d gr = _mm256_mul_pd(_mm256_sub_pd(fp, fc), vh);
        store(out + i, _mm256_mul_pd(_mm256_sub_pd(gr, gl), vh));
    }
    for (int k = (n > 1 ? i : 0); k < n; ++k) {
        const double gl = (k > 0) ? (f[k] - f[k - 1]) * inv_h : 0.0;
        const double gr = (k + 1 < n) ? (f[k + 1] - f[k]) * inv_h : 0.0;
        out[k] = (gr - gl) * inv_h;
    }
    if (n > 1) {
        const double gr0 = (f[1] - f[0]) * inv_h;
        out[0] = (gr0 - 0.0) * inv_h;
    } else {
        out[0] = 0.0;
    }
}

void laplacian_2d_v(const double* f, int nx, int ny, double inv_hx,
                    double inv_hy, double* out) {
    const __m256d vhx = _mm256_set1_pd(inv_hx);
    const __m256d vhy = _mm256_set1_pd(inv_hy);
    const __m256d zero = _mm256_setzero_pd();
    for (int j = 0; j < ny; ++j) {
        const double* row = f + static_cast<long>(j) * nx;
        const double* up = (j > 0) ? row - nx : nullptr;
        const double* dn = (j + 1 < ny) ? row + nx : nullptr;
        double* o = out + static_cast<long>(j) * nx;
        int i = 1;
        for (; i + 4 <= nx - 1; i += 4) {
            const __m256d fc = load(row + i);
            const __m256d fm = load(row + i - 1);
            const __m256d fp = load(row + i + 1);
            const __m256d gxl = _mm256_mul_pd(_mm256_sub_pd(fc, fm), vhx);
            const __m256d gxr = _mm256_mul_pd(_mm256_sub_pd(fp, fc), vhx);
            const __m256d gyl =
                up ? _mm256_mul_pd(_mm256_sub_pd(fc, load(up + i)), vhy) : zero;
            const __m256d gyr =
                dn ? _mm256_mul_pd(_mm256_sub_pd(load(dn + i), fc), vhy) : zero;
            const __m256d xpart = _mm256_mul_pd(_mm256_sub_pd(gxr, gxl), vhx);
            const __m256d ypart = _mm256_mul_pd(_mm256_sub_pd(gyr, gyl), vhy);
            store(o + i, _mm256_add_pd(xpart, ypart));
        }
        for (int k = (nx > 1 ? i : 0); k < nx; ++k) {
            const double gxl = (k > 0) ? (row[k] - row[k - 1]) * inv_hx : 0.0;
            const double gxr =
                (k + 1 < nx) ? (row[k + 1] - row[k]) * inv_hx : 0.0;
            const double gyl = up ? (row[k] - up[k]) * inv_hy : 0.0;
            const double gyr = dn ? (dn[k] - row[k]) * inv_hy : 0.0;
            o[k] = (gxr - gxl) * inv_hx + (gyr - gyl) * inv_hy;
        }
        {
            const int k = 0;
            const double gxr =
                (k + 1 < nx) ? (row[k + 1] - row[k]) * inv_hx : 0.0;
            const double gyl = up ? (row[k] - up[k]) * inv_hy : 0.0;
            const double gyr = dn ? (dn[k] - row[k]) * inv_hy : 0.0;
            o[k] = (gxr - 0.0) * inv_hx + (gyr - gyl) * inv_hy;
        }
    }
}

void pair_diff(const double* lo, const double* hi, int m, double inv_h,
               double* g) {
    const __m256d vh = _mm256_set1_pd(inv_h);
    int i = 0;
    for (; i + 4 <= m; i += 4)
        store(g + i, _mm256_mul_pd(_mm256_sub_pd(load(hi + i), load(lo + i)), vh));
    for (; i < m; ++i) g[i] = (hi[i] - lo[i]) * inv_h;
}

void grad_faces_1d_v(const double* f, int n, double inv_h, double* g) {
    g[0] = 0.0;
    g[n] = 0.0;
    pair_diff(f, f + 1, n - 1, inv_h, g + 1);
}

void grad_faces_2d_x_v(const double* f, int nx, int ny, double inv_hx,
                       double* gx) {
    for (int j = 0; j < ny; ++j) {
        const double* row = f + static_cast<long>(j) * nx;
        double* g = gx + static_cast<long>(j) * (nx + 1);
        g[0] = 0.0;
        g[nx] = 0.0;
        pair_diff(row, row + 1, nx - 1, inv_hx, g + 1);
    }
}

void grad_faces_2d_y_v(const double* f, int nx, int ny, double inv_hy,
                       double* gy) {
    for (int i = 0; i < nx; ++i) {
        gy[i] = 0.0;
        gy[static_cast<long>(ny) * nx + i] = 0.0;
    }
    for (int j = 1; j < ny; ++j) {
        pair_diff(f + static_cast<long>(j - 1) * nx,
                  f + static_cast<long>(j) * nx, nx, inv_hy,
                  gy + static_cast<long>(j) * nx);
    }
}

void divergence_1d_v(const double* g, int n, double inv_h, double* out) {
    pair_diff(g, g + 1, n, inv_h, out);
}

void divergence_2d_v(const double* gx, const double* gy, int nx, int ny,
                     double inv_hx, double inv_hy, double* out) {
    const __m256d vhx = _mm256_set1_pd(inv_hx);
    const __m256d vhy = _mm256_set1_pd(inv_hy);
    for (int j = 0; j < ny; ++j) {
        const double* gxr = gx + static_cast<long>(j) * (nx + 1);
        const double* gylo = gy + static_cast<long>(j) * nx;
        const double* gyhi = gylo + nx;
        double* o = out + static_cast<long>(j) * nx;
        int i = 0;
        for (; i + 4 <= nx; i += 4) {
            const __m256d x = _mm256_mul_pd(
                _mm256_sub_pd(load(gxr + i + 1), load(gxr + i)), vhx);
            const __m256d y = _mm256_mul_pd(
                _mm256_sub_pd(load(gyhi + i), load(gylo + i)), vhy);
            store(o + i, _mm256_add_pd(x, y));
        }
        for (; i < nx; ++i)
            o[i] = (gxr[i + 1] - gxr[i]) * inv_hx + (gyhi[i] - gylo[i]) * inv_hy;
    }
}

void gradsq_cell_1d_v(const double* g, int n, double* out) {
    const __m256d half = _mm256_set1_pd(0.5);
    int i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d gl = load(g + i);
        const __m256d gr = load(g + i + 1);
        store(out + i,
              _mm256_mul_pd(half, _mm256_add_pd(_mm256_mul_pd(gl, gl),
                                                _mm256_mul_pd(gr, gr))));
    }
    for (; i < n; ++i) out[i] = 0.5 * (g[i] * g[i] + g[i + 1] * g[i + 1]);
}

void gradsq_cell_2d_v(const double* gx, const double* gy, int nx, int ny,
                      double* out) {
    const __m256d half = _mm256_set1_pd(0.5);
    for (int j = 0; j < ny; ++j) {
        const double* gxr = gx + static_cast<long>(j) * (nx + 1);
        const double* gylo = gy + static_cast<long>(j) * nx;
        const double* gyhi = gylo + nx;
        double* o = out + static_cast<long>(j) * nx;
        int i = 0;
        for (; i + 4 <= nx; i += 4) {
            const __m256d xl = load(gxr + i);
            const __m256d xr = load(gxr + i + 1);
            const __m256d yl = load(gylo + i);
            const __m256d yh = load(gyhi + i);
            const __m256d xs = _mm256_mul_pd(
                half, _mm256_add_pd(_mm256_mul_pd(xl, xl), _mm256_mul_pd(xr, xr)));
            const __m256d ys = _mm256_mul_pd(
                half, _mm256_add_pd(_mm256_mul_pd(yl, yl), _mm256_mul_pd(yh, yh)));
            store(o + i, _mm256_add_pd(xs, ys));
        }
        for (; i < nx; ++i) {
            o[i] = 0.5 * (gxr[i] * gxr[i] + gxr[i + 1] * gxr[i + 1]) +
                   0.5 * (gylo[i] * gylo[i] + gyhi[i] * gyhi[i]);
        }
    }
}

void absorb_v(const double* v, const double* u, int n, double dt, double* out) {
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d vdt = _mm256_set1_pd(dt);
    int i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d den = _mm256_add_pd(one, _mm256_mul_pd(vdt, load(u + i)));
        store(out + i, _mm256_div_pd(load(v + i), den));
    }
    for (; i < n; ++i) out[i] = v[i] / (1.0 + dt * u[i]);
}

void axpy_v(const double* a, const double* b, int n, double c, double* out) {
    const __m256d vc = _mm256_set1_pd(c);
    int i = 0;
    for (; i + 4 <= n; i += 4)
        store(out + i, _mm256_add_pd(load(a + i), _mm256_mul_pd(vc, load(b + i))));
    for (; i < n; ++i) out[i] = a[i] + c * b[i];
}

void transport_update_v(const double* u, const double* a, const double* b,
                        int n, double dt, double* out) {
    const __m256d vdt = _mm256_set1_pd(dt);
    int i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(load(a + i), load(b + i));
        store(out + i, _mm256_add_pd(load(u + i), _mm256_mul_pd(vdt, d)));
    }
    for (; i < n; ++i) out[i] = u[i] + dt * (a[i] - b[i]);
}

double source_logistic2_clip_v(double* u, int n, double dt, double kappa,
                               double mu) {
    const __m256d vdt = _mm256_set1_pd(dt);
    const __m256d vk = _mm256_set1_pd(kappa);
    const __m256d vm = _mm256_set1_pd(mu);
    const __m256d zero = _mm256_setzero_pd();
    __m256d vclip = zero;
    int i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d x0 = load(u + i);
        const __m256d growth = _mm256_mul_pd(vk, x0);
        const __m256d crowd = _mm256_mul_pd(vm, _mm256_mul_pd(x0, x0));
        const __m256d x = _mm256_add_pd(
            x0, _mm256_mul_pd(vdt, _mm256_sub_pd(growth, crowd)));
        const __m256d neg = _mm256_cmp_pd(x, zero, _CMP_LT_OQ);
        vclip = _mm256_sub_pd(vclip, _mm256_and_pd(neg, x));
        store(u + i, _mm256_blendv_pd(x, zero, neg));
    }
    double clipped = hsum(vclip);
    for (; i < n; ++i) {
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

double clip_floor0_v(double* w, int n) {
    const __m256d zero = _mm256_setzero_pd();
    __m256d vclip = zero;
    int i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d x = load(w + i);
        const __m256d neg = _mm256_cmp_pd(x, zero, _CMP_LT_OQ);
        vclip = _mm256_sub_pd(vclip, _mm256_and_pd(neg, x));
        store(w + i, _mm256_blendv_pd(x, zero, neg));
    }
    double clipped = hsum(vclip);
    for (; i < n; ++i) {
        if (w[i] < 0.0) {
            clipped -= w[i];
            w[i] = 0.0;
        }
    }
    return clipped;
}

inline long drift_uv_face_v(const double* vl, const double* vr, int m,
                            double inv_h, double chi, double eta, double* a) {
    const __m256d vh = _mm256_set1_pd(inv_h);
    const __m256d two = _mm256_set1_pd(2.0);
    const __m256d three = _mm256_set1_pd(3.0);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d vchi = _mm256_set1_pd(chi);
    const __m256d veta = _mm256_set1_pd(eta);
    const __m256d vhalfeta = _mm256_set1_pd(0.5 * eta);
    const __m256d vcap = _mm256_set1_pd(2.0 * chi / eta);
    long guarded = 0;
    int i = 0;
    for (; i + 4 <= m; i += 4) {
        const __m256d p = load(vl + i);
        const __m256d q = load(vr + i);
        const __m256d hm = _mm256_div_pd(
            _mm256_mul_pd(_mm256_mul_pd(two, p), q), _mm256_add_pd(p, q));
        const __m256d s_free = _mm256_div_pd(vchi, hm);
        // cubic smoothstep blend between the capped and the singular branch
        const __m256d t = _mm256_div_pd(_mm256_sub_pd(hm, vhalfeta), vhalfeta);
        const __m256d z = _mm256_mul_pd(
            _mm256_mul_pd(t, t), _mm256_sub_pd(three, _mm256_add_pd(t, t)));
        const __m256d s_blend = _mm256_add_pd(
            _mm256_mul_pd(_mm256_sub_pd(one, z), vcap), _mm256_mul_pd(z, s_free));
        const __m256d below_eta = _mm256_cmp_pd(hm, veta, _CMP_LT_OQ);
        const __m256d below_half = _mm256_cmp_pd(hm, vhalfeta, _CMP_LE_OQ);
        __m256d s = _mm256_blendv_pd(s_free, s_blend, below_eta);
        s = _mm256_blendv_pd(s, vcap, below_half);
        guarded += __builtin_popcount(
            static_cast<unsigned>(_mm256_movemask_pd(below_eta)));
        store(a + i, _mm256_mul_pd(s, _mm256_mul_pd(_mm256_sub_pd(q, p), vh)));
    }
    for (; i < m; ++i) {
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

long drift_uv_1d_v(const double* v, int n, double inv_h, double chi, double eta,
                   double* a) {
    a[0] = 0.0;
    a[n] = 0.0;
    return drift_uv_face_v(v, v + 1, n - 1, inv_h, chi, eta, a + 1);
}

long drift_uv_2d_x_v(const double* v, int nx, int ny, double inv_hx, double chi,
                     double eta, double* ax) {
    long guarded = 0;
    for (int j = 0; j < ny; ++j) {
        const double* row = v + static_cast<long>(j) * nx;
        double* a = ax + static_cast<long>(j) * (nx + 1);
        a[0] = 0.0;
        a[nx] = 0.0;
        guarded += drift_uv_face_v(row, row + 1, nx - 1, inv_hx, chi, eta, a + 1);
    }
    return guarded;
}

long drift_uv_2d_y_v(const double* v, int nx, int ny, double inv_hy, double chi,
                     double eta, double* ay) {
    long guarded = 0;
    for (int i = 0; i < nx; ++i) {
        ay[i] = 0.0;
        ay[static_cast<long>(ny) * nx + i] = 0.0;
    }
    for (int j = 1; j < ny; ++j) {
        guarded += drift_uv_face_v(v + static_cast<long>(j - 1) * nx,
                                   v + static_cast<long>(j) * nx, nx, inv_hy,
                                   chi, eta, ay + static_cast<long>(j) * nx);
    }
    return guarded;
}

inline void neg_scaled_diff(const double* lo, const double* hi, int m,
                            double inv_h, double chi, double* a) {
    const double c = -chi;
    const __m256d vc = _mm256_set1_pd(c);
    const __m256d vh = _mm256_set1_pd(inv_h);
    int i = 0;
    for (; i + 4 <= m; i += 4) {
        const __m256d g =
            _mm256_mul_pd(_mm256_sub_pd(load(hi + i), load(lo + i)), vh);
        store(a + i, _mm256_mul_pd(vc, g));
    }
    for (; i < m; ++i) a[i] = c * ((hi[i] - lo[i]) * inv_h);
}

void drift_uw_1d_v(const double* w, int n, double inv_h, double chi,
                   double* a) {
    a[0] = 0.0;
    a[n] = 0.0;
    neg_scaled_diff(w, w + 1, n - 1, inv_h, chi, a + 1);
}

void drift_uw_2d_x_v(const double* w, int nx, int ny, double inv_hx, double chi,
                     double* ax) {
    for (int j = 0; j < ny; ++j) {
        const double* row = w + static_cast<long>(j) * nx;
        double* a = ax + static_cast<long>(j) * (nx + 1);
        a[0] = 0.0;
        a[nx] = 0.0;
        neg_scaled_diff(row, row + 1, nx - 1, inv_hx, chi, a + 1);
    }
}

void drift_uw_2d_y_v(const double* w, int nx, int ny, double inv_hy, double chi,
                     double* ay) {
    for (int i = 0; i < nx; ++i) {
        ay[i] = 0.0;
        ay[static_cast<long>(ny) * nx + i] = 0.0;
    }
    for (int j = 1; j < ny; ++j) {
        neg_scaled_diff(w + static_cast<long>(j - 1) * nx,
                        w + static_cast<long>(j) * nx, nx, inv_hy, chi,
                        ay + static_cast<long>(j) * nx);
    }
}

inline void upwind_face_v(const double* a, const double* ul, const double* ur,
                          int m, double* flux) {
    const __m256d zero = _mm256_setzero_pd();
    int i = 0;
    for (; i + 4 <= m; i += 4) {
        const __m256d av = load(a + i);
        const __m256d pos = _mm256_cmp_pd(av, zero, _CMP_GT_OQ);
        const __m256d donor = _mm256_blendv_pd(load(ur + i), load(ul + i), pos);
        store(flux + i, _mm256_mul_pd(av, donor));
    }
    for (; i < m; ++i)
        flux[i] = (a[i] > 0.0) ? a[i] * ul[i] : a[i] * ur[i];
}

void upwind_1d_v(const double* a, const double* u, int n, double* flux) {
    flux[0] = 0.0;
    flux[n] = 0.0;
    upwind_face_v(a + 1, u, u + 1, n - 1, flux + 1);
}

void upwind_2d_x_v(const double* ax, const double* u, int nx, int ny,
                   double* flux) {
    for (int j = 0; j < ny; ++j) {
        const double* row = u + static_cast<long>(j) * nx;
        const double* a = ax + static_cast<long>(j) * (nx + 1);
        double* fl = flux + static_cast<long>(j) * (nx + 1);
        fl[0] = 0.0;
        fl[nx] = 0.0;
        upwind_face_v(a + 1, row, row + 1, nx - 1, fl + 1);
    }
}

void upwind_2d_y_v(const double* ay, const double* u, int nx, int ny,
                   double* flux) {
    for (int i = 0; i < nx; ++i) {
        flux[i] = 0.0;
        flux[static_cast<long>(ny) * nx + i] = 0.0;
    }
    for (int j = 1; j < ny; ++j) {
        upwind_face_v(ay + static_cast<long>(j) * nx,
                      u + static_cast<long>(j - 1) * nx,
                      u + static_cast<long>(j) * nx, nx,
                      flux + static_cast<long>(j) * nx);
    }
}

double reduce_sum_v(const double* f, int n) {
    __m256d acc = _mm256_setzero_pd();
    int i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, load(f + i));
    double s = hsum(acc);
    for (; i < n; ++i) s += f[i];
    return s;
}

double reduce_min_v(const double* f, int n) {
    if (n < 4) {
        double m = f[0];
        for (int i = 1; i < n; ++i)
            if (f[i] < m) m = f[i];
        return m;
    }
    __m256d acc = load(f);
    int i = 4;
    for (; i + 4 <= n; i += 4) acc = _mm256_min_pd(acc, load(f + i));
    double m = hmin(acc);
    for (; i < n; ++i)
        if (f[i] < m) m = f[i];
    return m;
}

double reduce_max_v(const double* f, int n) {
    if (n < 4) {
        double m = f[0];
        for (int i = 1; i < n; ++i)
            if (f[i] > m) m = f[i];
        return m;
    }
    __m256d acc = load(f);
    int i = 4;
    for (; i + 4 <= n; i += 4) acc = _mm256_max_pd(acc, load(f + i));
    double m = hmax(acc);
    for (; i < n; ++i)
        if (f[i] > m) m = f[i];
    return m;
}

double reduce_max_abs_v(const double* f, int n) {
    __m256d acc = _mm256_setzero_pd();
    int i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_max_pd(acc, vabs(load(f + i)));
    double m = hmax(acc);
    for (; i < n; ++i) {
        const double a = std::fabs(f[i]);
        if (a > m) m = a;
    }
    return m >= 0.0 ? m : 0.0;
}

void field_stats_v(const double* f, int n, FieldStats* s) {
    if (n < 4) {
        scalar_ops.field_stats(f, n, s);
        return;
    }
    __m256d vmin = load(f);
    __m256d vmax = vmin;
    __m256d vsum = _mm256_setzero_pd();
    __m256d vabs_ = _mm256_setzero_pd();
    __m256d vsq = _mm256_setzero_pd();
    __m256d vp4 = _mm256_setzero_pd();
    int i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d x = load(f + i);
        vmin = _mm256_min_pd(vmin, x);
        vmax = _mm256_max_pd(vmax, x);
        vsum = _mm256_add_pd(vsum, x);
        vabs_ = _mm256_add_pd(vabs_, vabs(x));
        const __m256d x2 = _mm256_mul_pd(x, x);
        vsq = _mm256_add_pd(vsq, x2);
        vp4 = _mm256_add_pd(vp4, _mm256_mul_pd(x2, x2));
    }
    double mn = hmin(vmin), mx = hmax(vmax);
    double sum = hsum(vsum), sabs = hsum(vabs_);
    double ssq = hsum(vsq), sp4 = hsum(vp4);
    for (; i < n; ++i) {
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

const Ops avx2_ops = {
    laplacian_1d_v,    laplacian_2d_v,
    grad_faces_1d_v,   grad_faces_2d_x_v, grad_faces_2d_y_v,
    divergence_1d_v,   divergence_2d_v,
    gradsq_cell_1d_v,  gradsq_cell_2d_v,
    absorb_v,          axpy_v,            transport_update_v,
    source_logistic2_clip_v,              clip_floor0_v,
    drift_uv_1d_v,     drift_uv_2d_x_v,   drift_uv_2d_y_v,
    drift_uw_1d_v,     drift_uw_2d_x_v,   drift_uw_2d_y_v,
    upwind_1d_v,       upwind_2d_x_v,     upwind_2d_y_v,
    reduce_sum_v,      reduce_min_v,      reduce_max_v, reduce_max_abs_v,
    field_stats_v,
};

}  // namespace chemsim::kernels

#endif  // x86-64
