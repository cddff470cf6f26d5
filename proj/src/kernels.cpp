#include "ifslab/kernels.hpp"

namespace ifslab::kernels {

void affine2_scalar(double* xs, double* ys, std::size_t n,
                    double m00, double m01, double m10, double m11,
                    double tx, double ty) {
    for (std::size_t i = 0; i < n; ++i) {
        double x = xs[i], y = ys[i];
        xs[i] = m00 * x + m01 * y + tx;
        ys[i] = m10 * x + m11 * y + ty;
    }
}

void affine1_scalar(double* xs, std::size_t n, double m, double t) {
    for (std::size_t i = 0; i < n; ++i) xs[i] = m * xs[i] + t;
}

double min_dist2_scalar(const double* xs, const double* ys, std::size_t n,
                        double px, double py) {
    double best = 1e300;
    for (std::size_t i = 0; i < n; ++i) {
        double dx = xs[i] - px;
        double d = dx * dx;
        if (ys) {
            double dy = ys[i] - py;
            d = d + dy * dy;
        }
        if (d < best) best = d;
    }
    return best;
}

static bool detect_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

static const bool g_avx2 = detect_avx2();

#if defined(__x86_64__) || defined(_M_X64)
Affine2Fn affine2_batch = g_avx2 ? affine2_avx2 : affine2_scalar;
Affine1Fn affine1_batch = g_avx2 ? affine1_avx2 : affine1_scalar;
MinDist2Fn min_dist2 = g_avx2 ? min_dist2_avx2 : min_dist2_scalar;
#else
Affine2Fn affine2_batch = affine2_scalar;
Affine1Fn affine1_batch = affine1_scalar;
MinDist2Fn min_dist2 = min_dist2_scalar;
#endif

bool using_avx2() { return g_avx2; }

} // namespace ifslab::kernels
