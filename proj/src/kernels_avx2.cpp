// AVX2 variants.  This TU is the only one compiled with -mavx2; dispatch in
// kernels.cpp picks these up only when the CPU reports AVX2.  Lane math is
// plain mul+add (no FMA) so results are bit-identical to the scalar path.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "ifslab/kernels.hpp"

namespace ifslab::kernels {

void affine2_avx2(double* xs, double* ys, std::size_t n,
                  double m00, double m01, double m10, double m11,
                  double tx, double ty) {
    const __m256d v00 = _mm256_set1_pd(m00), v01 = _mm256_set1_pd(m01);
    const __m256d v10 = _mm256_set1_pd(m10), v11 = _mm256_set1_pd(m11);
    const __m256d vtx = _mm256_set1_pd(tx), vty = _mm256_set1_pd(ty);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d x = _mm256_loadu_pd(xs + i);
        __m256d y = _mm256_loadu_pd(ys + i);
        __m256d nx = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(v00, x), _mm256_mul_pd(v01, y)), vtx);
        __m256d ny = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(v10, x), _mm256_mul_pd(v11, y)), vty);
        _mm256_storeu_pd(xs + i, nx);
        _mm256_storeu_pd(ys + i, ny);
    }
    for (; i < n; ++i) {
        double x = xs[i], y = ys[i];
        xs[i] = m00 * x + m01 * y + tx;
        ys[i] = m10 * x + m11 * y + ty;
    }
}

void affine1_avx2(double* xs, std::size_t n, double m, double t) {
    const __m256d vm = _mm256_set1_pd(m), vt = _mm256_set1_pd(t);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d x = _mm256_loadu_pd(xs + i);
        _mm256_storeu_pd(xs + i, _mm256_add_pd(_mm256_mul_pd(vm, x), vt));
    }
    for (; i < n; ++i) xs[i] = m * xs[i] + t;
}

double min_dist2_avx2(const double* xs, const double* ys, std::size_t n,
                      double px, double py) {
    const __m256d vpx = _mm256_set1_pd(px), vpy = _mm256_set1_pd(py);
    __m256d vbest = _mm256_set1_pd(1e300);
    std::size_t i = 0;
    if (ys) {
        for (; i + 4 <= n; i += 4) {
            __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs + i), vpx);
            __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys + i), vpy);
            __m256d d = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
            vbest = _mm256_min_pd(vbest, d);
        }
    } else {
        for (; i + 4 <= n; i += 4) {
            __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs + i), vpx);
            vbest = _mm256_min_pd(vbest, _mm256_mul_pd(dx, dx));
        }
    }
    double lanes[4];
    _mm256_storeu_pd(lanes, vbest);
    double best = lanes[0];
    for (int k = 1; k < 4; ++k)
        if (lanes[k] < best) best = lanes[k];
    for (; i < n; ++i) {
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

} // namespace ifslab::kernels

#endif
