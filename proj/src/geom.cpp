#include "ifslab/geom.hpp"

#include <algorithm>
#include <complex>

namespace ifslab {

double det(const Mat& A) {
    switch (A.d) {
    case 1:
        return A(0, 0);
    case 2:
        return A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0);
    case 3:
        return A(0, 0) * (A(1, 1) * A(2, 2) - A(1, 2) * A(2, 1)) -
               A(0, 1) * (A(1, 0) * A(2, 2) - A(1, 2) * A(2, 0)) +
               A(0, 2) * (A(1, 0) * A(2, 1) - A(1, 1) * A(2, 0));
    default:
        throw UnsupportedDimension("det only for d<=3");
    }
}

Vec solve(const Mat& A, const Vec& b, double tol) {
    int d = A.d;
    // augmented copy
    double a[kMaxDim][kMaxDim + 1];
    for (int r = 0; r < d; ++r) {
        for (int c = 0; c < d; ++c) a[r][c] = A(r, c);
        a[r][d] = b[r];
    }
    for (int col = 0; col < d; ++col) {
        int piv = col;
        for (int r = col + 1; r < d; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (std::abs(a[piv][col]) < tol)
            throw SingularSystem("pivot below tolerance in solve");
        if (piv != col)
            for (int c = col; c <= d; ++c) std::swap(a[piv][c], a[col][c]);
        for (int r = 0; r < d; ++r) {
            if (r == col) continue;
            double f = a[r][col] / a[col][col];
            for (int c = col; c <= d; ++c) a[r][c] -= f * a[col][c];
        }
    }
    Vec x(d);
    for (int r = 0; r < d; ++r) x[r] = a[r][d] / a[r][r];
    return x;
}

std::vector<double> eigen_moduli(const Mat& A) {
    switch (A.d) {
    case 1:
        return {std::abs(A(0, 0))};
    case 2: {
        double tr = A(0, 0) + A(1, 1);
        double dt = det(A);
        double disc = tr * tr / 4.0 - dt;
        if (disc >= 0) {
            double s = std::sqrt(disc);
            return {std::abs(tr / 2.0 - s), std::abs(tr / 2.0 + s)};
        }
        double mod = std::sqrt(dt); // complex pair, |lambda|^2 = det
        return {mod, mod};
    }
    case 3: {
        // characteristic polynomial x^3 - c2 x^2 + c1 x - c0
        double c2 = A(0, 0) + A(1, 1) + A(2, 2);
        double c1 = A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0) +
                    A(0, 0) * A(2, 2) - A(0, 2) * A(2, 0) +
                    A(1, 1) * A(2, 2) - A(1, 2) * A(2, 1);
        double c0 = det(A);
        // depressed cubic: x = y + c2/3, y^3 + p y + q = 0
        double p = c1 - c2 * c2 / 3.0;
        double q = -2.0 * c2 * c2 * c2 / 27.0 + c2 * c1 / 3.0 - c0;
        double shift = c2 / 3.0;
        double disc = q * q / 4.0 + p * p * p / 27.0;
        std::vector<double> out;
        if (disc > 0) {
            double s = std::sqrt(disc);
            double u = std::cbrt(-q / 2.0 + s);
            double v = std::cbrt(-q / 2.0 - s);
            double y1 = u + v;                    // real root
            double re = -y1 / 2.0;                // complex pair real part
            double im = std::sqrt(3.0) / 2.0 * std::abs(u - v);
            out.push_back(std::abs(y1 + shift));
            double mod = std::hypot(re + shift, im);
            out.push_back(mod);
            out.push_back(mod);
        } else {
            // three real roots, trig form
            double r = std::sqrt(std::max(0.0, -p * p * p / 27.0));
            double phi = (r < 1e-300) ? 0.0 : std::acos(std::clamp(-q / (2.0 * r), -1.0, 1.0));
            double m = 2.0 * std::sqrt(std::max(0.0, -p / 3.0));
            for (int k = 0; k < 3; ++k)
                out.push_back(std::abs(m * std::cos((phi + 2.0 * M_PI * k) / 3.0) + shift));
        }
        return out;
    }
    default:
        throw UnsupportedDimension("eigen_moduli only for d<=3");
    }
}

double spectral_radius(const Mat& A) {
    double r = 0;
    for (double m : eigen_moduli(A)) r = std::max(r, m);
    return r;
}

std::vector<double> symmetric_eigenvalues(const Mat& A) {
    switch (A.d) {
    case 1:
        return {A(0, 0)};
    case 2: {
        double tr = A(0, 0) + A(1, 1);
        double dt = det(A);
        double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - dt));
        return {tr / 2.0 - disc, tr / 2.0 + disc};
    }
    case 3: {
        // Smith's trigonometric method for symmetric 3x3.
        double p1 = A(0, 1) * A(0, 1) + A(0, 2) * A(0, 2) + A(1, 2) * A(1, 2);
        double qv = (A(0, 0) + A(1, 1) + A(2, 2)) / 3.0;
        if (p1 == 0.0) {
            std::vector<double> e = {A(0, 0), A(1, 1), A(2, 2)};
            std::sort(e.begin(), e.end());
            return e;
        }
        double p2 = (A(0, 0) - qv) * (A(0, 0) - qv) + (A(1, 1) - qv) * (A(1, 1) - qv) +
                    (A(2, 2) - qv) * (A(2, 2) - qv) + 2.0 * p1;
        double pp = std::sqrt(p2 / 6.0);
        Mat B(3);
        for (int i = 0; i < 9; ++i) B.m[static_cast<size_t>(i)] = A.m[static_cast<size_t>(i)];
        for (int i = 0; i < 3; ++i) B(i, i) -= qv;
        B = (1.0 / pp) * B;
        double r = std::clamp(det(B) / 2.0, -1.0, 1.0);
        double phi = std::acos(r) / 3.0;
        double e1 = qv + 2.0 * pp * std::cos(phi);
        double e3 = qv + 2.0 * pp * std::cos(phi + 2.0 * M_PI / 3.0);
        double e2 = 3.0 * qv - e1 - e3;
        std::vector<double> e = {e1, e2, e3};
        std::sort(e.begin(), e.end());
        return e;
    }
    default:
        throw UnsupportedDimension("symmetric_eigenvalues only for d<=3");
    }
}

double spectral_norm(const Mat& A) {
    Mat G = transpose(A) * A;
    auto e = symmetric_eigenvalues(G);
    return std::sqrt(std::max(0.0, e.back()));
}

double min_singular_value(const Mat& A) {
    Mat G = transpose(A) * A;
    auto e = symmetric_eigenvalues(G);
    return std::sqrt(std::max(0.0, e.front()));
}

double similarity_ratio(const Mat& L, double tol) {
    Mat G = transpose(L) * L;
    double dt = std::abs(det(L));
    double r;
    switch (L.d) {
    case 1: r = dt; break;
    case 2: r = std::sqrt(dt); break;
    case 3: r = std::cbrt(dt); break;
    default: throw UnsupportedDimension("similarity_ratio only for d<=3");
    }
    double r2 = r * r;
    for (int i = 0; i < L.d; ++i)
        for (int j = 0; j < L.d; ++j) {
            double want = (i == j) ? r2 : 0.0;
            if (std::abs(G(i, j) - want) > tol) return -1.0;
        }
    return r;
}

static double cross(const Pt2& o, const Pt2& a, const Pt2& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

std::vector<Pt2> convex_hull(std::vector<Pt2> pts) {
    if (pts.empty()) throw EmptyInput("convex_hull of no points");
    std::sort(pts.begin(), pts.end(), [](const Pt2& a, const Pt2& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const Pt2& a, const Pt2& b) { return a.x == b.x && a.y == b.y; }),
              pts.end());
    size_t n = pts.size();
    if (n <= 2) return pts;
    double ext = 0;
    for (auto& p : pts) ext = std::max({ext, std::abs(p.x), std::abs(p.y)});
    double eps = 1e-12 * std::max(1.0, ext * ext);
    std::vector<Pt2> h(2 * n);
    size_t k = 0;
    for (size_t i = 0; i < n; ++i) { // lower
        while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= eps) --k;
        h[k++] = pts[i];
    }
    for (size_t i = n - 1, t = k + 1; i-- > 0;) { // upper
        while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= eps) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

// project polygon onto axis, return [lo, hi]
static void project(const std::vector<Pt2>& poly, double ax, double ay, double& lo, double& hi) {
    lo = 1e300;
    hi = -1e300;
    for (auto& p : poly) {
        double s = p.x * ax + p.y * ay;
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
}

bool convex_overlap(const std::vector<Pt2>& a, const std::vector<Pt2>& b) {
    auto axes_of = [](const std::vector<Pt2>& poly, const std::vector<Pt2>& other) {
        std::vector<std::pair<double, double>> axes;
        size_t n = poly.size();
        if (n == 1) return axes;
        for (size_t i = 0; i < n; ++i) {
            const Pt2& p = poly[i];
            const Pt2& q = poly[(i + 1) % n];
            double ax = -(q.y - p.y), ay = q.x - p.x;
            double len = std::hypot(ax, ay);
            if (len > 0) axes.emplace_back(ax / len, ay / len);
            if (n == 2) break;
        }
        if (n == 2) { // degenerate segment: also test along the segment
            double ax = poly[1].x - poly[0].x, ay = poly[1].y - poly[0].y;
            double len = std::hypot(ax, ay);
            if (len > 0) axes.emplace_back(ax / len, ay / len);
        }
        (void)other;
        return axes;
    };
    auto axes = axes_of(a, b);
    auto axes2 = axes_of(b, a);
    axes.insert(axes.end(), axes2.begin(), axes2.end());
    if (axes.empty()) { // both single points
        return a[0].x == b[0].x && a[0].y == b[0].y;
    }
    for (auto [ax, ay] : axes) {
        double alo, ahi, blo, bhi;
        project(a, ax, ay, alo, ahi);
        project(b, ax, ay, blo, bhi);
        if (ahi <= blo || bhi <= alo) return false;
    }
    return true;
}

double point_polygon_distance(const Pt2& p, const std::vector<Pt2>& poly) {
    if (poly.empty()) throw EmptyInput("point_polygon_distance with empty polygon");
    size_t n = poly.size();
    if (n == 1) return std::hypot(p.x - poly[0].x, p.y - poly[0].y);
    bool inside = n >= 3;
    double best = 1e300;
    for (size_t i = 0; i < n; ++i) {
        const Pt2& a = poly[i];
        const Pt2& b = poly[(i + 1) % n];
        if (n >= 3 && cross(a, b, p) < 0) inside = false;
        double vx = b.x - a.x, vy = b.y - a.y;
        double wx = p.x - a.x, wy = p.y - a.y;
        double L2 = vx * vx + vy * vy;
        double t = (L2 > 0) ? std::clamp((wx * vx + wy * vy) / L2, 0.0, 1.0) : 0.0;
        best = std::min(best, std::hypot(wx - t * vx, wy - t * vy));
        if (n == 2 && i == 0) break;
    }
    return inside ? 0.0 : best;
}

} // namespace ifslab
