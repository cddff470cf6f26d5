#pragma once

#include <cstddef>

namespace ifslab::kernels {

// Batch kernels over SoA point arrays.  Scalar reference and AVX2 variants
// are kept bit-identical: same operations (mul, add, min) in the same
// per-lane order, no FMA contraction.  Selected once at startup.

// 2-D: (x,y) <- (m00 x + m01 y + tx, m10 x + m11 y + ty)
using Affine2Fn = void (*)(double* xs, double* ys, std::size_t n,
                           double m00, double m01, double m10, double m11,
                           double tx, double ty);
// 1-D: x <- m x + t
using Affine1Fn = void (*)(double* xs, std::size_t n, double m, double t);
// min over i of (xs[i]-px)^2 + (ys[i]-py)^2   (ys may be null for 1-D)
using MinDist2Fn = double (*)(const double* xs, const double* ys, std::size_t n,
                              double px, double py);

extern Affine2Fn affine2_batch;
extern Affine1Fn affine1_batch;
extern MinDist2Fn min_dist2;

// Reference implementations, always available (used by equivalence tests).
void affine2_scalar(double*, double*, std::size_t, double, double, double, double, double, double);
void affine1_scalar(double*, std::size_t, double, double);
double min_dist2_scalar(const double*, const double*, std::size_t, double, double);

#if defined(__x86_64__) || defined(_M_X64)
void affine2_avx2(double*, double*, std::size_t, double, double, double, double, double, double);
void affine1_avx2(double*, std::size_t, double, double);
double min_dist2_avx2(const double*, const double*, std::size_t, double, double);
#endif

// True when the AVX2 variants are active.
bool using_avx2();

} // namespace ifslab::kernels
