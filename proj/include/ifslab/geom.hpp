#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "ifslab/errors.hpp"

namespace ifslab {

// Small dense vector/matrix for dimensions 1..3.  Fixed capacity 3, runtime
// dimension `d`.  Everything here is closed-form; no iterative linear algebra.

inline constexpr int kMaxDim = 3;

struct Vec {
    int d = 0;
    std::array<double, kMaxDim> v{};

    Vec() = default;
    explicit Vec(int dim) : d(dim) {}
    Vec(std::initializer_list<double> xs) {
        d = static_cast<int>(xs.size());
        int i = 0;
        for (double x : xs) v[i++] = x;
    }

    double& operator[](int i) { return v[static_cast<size_t>(i)]; }
    double operator[](int i) const { return v[static_cast<size_t>(i)]; }

    Vec& operator+=(const Vec& o) {
        for (int i = 0; i < d; ++i) v[i] += o.v[i];
        return *this;
    }
    Vec& operator-=(const Vec& o) {
        for (int i = 0; i < d; ++i) v[i] -= o.v[i];
        return *this;
    }
    Vec& operator*=(double s) {
        for (int i = 0; i < d; ++i) v[i] *= s;
        return *this;
    }
};

inline Vec operator+(Vec a, const Vec& b) { return a += b; }
inline Vec operator-(Vec a, const Vec& b) { return a -= b; }
inline Vec operator*(double s, Vec a) { return a *= s; }

inline double dot(const Vec& a, const Vec& b) {
    double s = 0;
    for (int i = 0; i < a.d; ++i) s += a[i] * b[i];
    return s;
}
inline double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }
inline double dist2(const Vec& a, const Vec& b) { return norm2(a - b); }

struct Mat {
    int d = 0;
    std::array<double, kMaxDim * kMaxDim> m{}; // row-major

    Mat() = default;
    explicit Mat(int dim) : d(dim) {}

    double& operator()(int r, int c) { return m[static_cast<size_t>(r * d + c)]; }
    double operator()(int r, int c) const { return m[static_cast<size_t>(r * d + c)]; }

    static Mat identity(int dim) {
        Mat I(dim);
        for (int i = 0; i < dim; ++i) I(i, i) = 1.0;
        return I;
    }
};

inline Vec operator*(const Mat& A, const Vec& x) {
    Vec y(A.d);
    for (int r = 0; r < A.d; ++r) {
        double s = 0;
        for (int c = 0; c < A.d; ++c) s += A(r, c) * x[c];
        y[r] = s;
    }
    return y;
}

inline Mat operator*(const Mat& A, const Mat& B) {
    Mat C(A.d);
    for (int r = 0; r < A.d; ++r)
        for (int c = 0; c < A.d; ++c) {
            double s = 0;
            for (int k = 0; k < A.d; ++k) s += A(r, k) * B(k, c);
            C(r, c) = s;
        }
    return C;
}

inline Mat operator*(double s, Mat A) {
    for (int i = 0; i < A.d * A.d; ++i) A.m[static_cast<size_t>(i)] *= s;
    return A;
}

inline Mat operator-(const Mat& A, const Mat& B) {
    Mat C(A.d);
    for (int i = 0; i < A.d * A.d; ++i)
        C.m[static_cast<size_t>(i)] = A.m[static_cast<size_t>(i)] - B.m[static_cast<size_t>(i)];
    return C;
}

inline Mat transpose(const Mat& A) {
    Mat T(A.d);
    for (int r = 0; r < A.d; ++r)
        for (int c = 0; c < A.d; ++c) T(c, r) = A(r, c);
    return T;
}

double det(const Mat& A);

// Solve A x = b by Gaussian elimination with partial pivoting.
// Throws SingularSystem when the pivot falls below `tol`.
Vec solve(const Mat& A, const Vec& b, double tol = 1e-12);

// Moduli of the eigenvalues of A, closed form (quadratic / trig cubic).
std::vector<double> eigen_moduli(const Mat& A);

// Spectral radius: max eigenvalue modulus.
double spectral_radius(const Mat& A);

// Eigenvalues of a symmetric matrix, closed form, ascending order.
std::vector<double> symmetric_eigenvalues(const Mat& A);

// Spectral norm (largest singular value) via eigenvalues of A^T A.
double spectral_norm(const Mat& A);

// Smallest singular value.
double min_singular_value(const Mat& A);

// Frobenius norm.
inline double frobenius_norm(const Mat& A) {
    double s = 0;
    for (int i = 0; i < A.d * A.d; ++i) s += A.m[static_cast<size_t>(i)] * A.m[static_cast<size_t>(i)];
    return std::sqrt(s);
}

// If L^T L == r^2 I entrywise within `tol`, return r >= 0 (the similarity
// ratio, computed as |det L|^(1/d) so exact ratios round cleanly); otherwise
// return a negative value.
double similarity_ratio(const Mat& L, double tol = 1e-9);

// --- 2-D convex hull utilities -------------------------------------------

struct Pt2 {
    double x = 0, y = 0;
};

// Andrew monotone chain.  Returns hull in CCW order, collinear points
// dropped (cross-product tolerance 1e-12 scaled by extent).
std::vector<Pt2> convex_hull(std::vector<Pt2> pts);

// Separating axis test: do two convex polygons (CCW) overlap with positive
// area?  Touching boundaries count as disjoint here.
bool convex_overlap(const std::vector<Pt2>& a, const std::vector<Pt2>& b);

// Euclidean distance from point to convex polygon (0 if inside).
double point_polygon_distance(const Pt2& p, const std::vector<Pt2>& poly);

} // namespace ifslab
