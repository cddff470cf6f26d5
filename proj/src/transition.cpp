#include "ifslab/transition.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace ifslab {

SpecialFunction special_function(const OneParamFamily& fam) {
    Classification c = classify_auto(fam);
    if (!c.is_bounded) throw NotBounded("family is not bounded");
    ScalingData sd = scaling_data(fam);
    SpecialFunction sf;
    sf.index = sd.argmax;
    sf.q_star = fam.members[static_cast<size_t>(sd.argmax)].q;
    return sf;
}

PointSample lower_transition_attractor(const OneParamFamily& fam, double epsilon,
                                       std::size_t max_points, bool allow_truncation) {
    SpecialFunction sf = special_function(fam); // throws NotBounded
    ScalingData sd = scaling_data(fam);
    double t0 = 1.0 / sd.ratios[static_cast<size_t>(sd.argmax)];
    auto maps = instantiate(fam, t0);
    Ball trap = trapping_ball(fam, t0);

    // dedup on a snap lattice finer than the requested epsilon, so orbit
    // points epsilon apart are never merged
    double snap = std::max(epsilon / 8.0, 1e-15 * std::max(1.0, trap.radius));
    auto snap_key = [&](const Vec& p) {
        std::int64_t kx = static_cast<std::int64_t>(std::floor(p[0] / snap));
        std::int64_t ky = (fam.d >= 2) ? static_cast<std::int64_t>(std::floor(p[1] / snap)) : 0;
        return BoxCover::key(kx, ky);
    };

    PointSample s;
    s.d = fam.d;
    std::unordered_set<std::int64_t> seen;
    std::vector<Vec> frontier = {sf.q_star};
    seen.insert(snap_key(sf.q_star));
    s.xs.push_back(sf.q_star[0]);
    if (fam.d >= 2) s.ys.push_back(sf.q_star[1]);

    while (!frontier.empty()) {
        std::vector<Vec> next;
        for (const auto& p : frontier)
            for (const auto& g : maps) {
                Vec q = g(p);
                if (dist2(q, trap.center) > trap.radius * (1.0 + 1e-9) + 1e-12)
                    throw Error("orbit point escaped the trapping ball");
                if (!seen.insert(snap_key(q)).second) continue;
                if (s.xs.size() >= max_points) {
                    if (allow_truncation) return s;
                    throw BudgetExceeded("lower_transition_attractor point budget");
                }
                s.xs.push_back(q[0]);
                if (fam.d >= 2) s.ys.push_back(q[1]);
                next.push_back(q);
            }
        frontier = std::move(next);
    }
    return s;
}

namespace {

constexpr double kPi = 3.14159265358979323846;

double hull_containment_gap(const HullResult& inner, const HullResult& outer) {
    if (inner.d == 1)
        return std::max({0.0, outer.lo - inner.lo, inner.hi - outer.hi});
    double worst = 0;
    for (const auto& v : inner.polygon)
        worst = std::max(worst, point_polygon_distance(v, outer.polygon));
    return worst;
}

// Outer approximation of conv(A) by iterating the hull recursion
// conv(A) = conv(∪ f_i(conv A)) on support functions over a fixed direction
// grid: s'(u) = max_i [ s(L_iᵀu) + a_i·u ], with off-grid directions bounded
// from above by conic interpolation between neighbors (sound since the
// support function is sublinear).  Converges geometrically even when the
// contraction factor is close to 1, where grid covers are impractical.
HullResult support_hull(const std::vector<AffineMap>& maps, const Ball& trap) {
    const int d = maps[0].L.d;
    HullResult h;
    h.d = d;
    if (d == 1) {
        double lo = trap.center[0] - trap.radius, hi = trap.center[0] + trap.radius;
        for (int it = 0; it < 100000; ++it) {
            double nlo = 1e300, nhi = -1e300;
            for (const auto& g : maps) {
                double va = g.L(0, 0) * lo + g.a[0];
                double vb = g.L(0, 0) * hi + g.a[0];
                nlo = std::min(nlo, std::min(va, vb));
                nhi = std::max(nhi, std::max(va, vb));
            }
            bool stable = std::abs(nlo - lo) < 1e-14 && std::abs(nhi - hi) < 1e-14;
            lo = nlo;
            hi = nhi;
            if (stable) break;
        }
        h.lo = lo;
        h.hi = hi;
        return h;
    }

    constexpr int m = 2048;
    std::vector<double> ux(m), uy(m), S(m);
    for (int j = 0; j < m; ++j) {
        double phi = 2.0 * kPi * j / m;
        ux[j] = std::cos(phi);
        uy[j] = std::sin(phi);
        S[j] = trap.center[0] * ux[j] + trap.center[1] * uy[j] + trap.radius;
    }
    // per (map, direction): s(L^T u) + a·u <= ca*S[ia] + cb*S[ib] + off
    struct Coef {
        int ia, ib;
        double ca, cb, off;
    };
    std::vector<Coef> coef(maps.size() * m);
    for (std::size_t i = 0; i < maps.size(); ++i) {
        const auto& g = maps[i];
        for (int j = 0; j < m; ++j) {
            double vx = g.L(0, 0) * ux[j] + g.L(1, 0) * uy[j];
            double vy = g.L(0, 1) * ux[j] + g.L(1, 1) * uy[j];
            double vn = std::hypot(vx, vy);
            Coef cf;
            cf.off = g.a[0] * ux[j] + g.a[1] * uy[j];
            if (vn < 1e-300) {
                cf.ia = cf.ib = 0;
                cf.ca = cf.cb = 0;
            } else {
                double phi = std::atan2(vy, vx);
                double pos = phi / (2.0 * kPi) * m;
                double fl = std::floor(pos);
                int ia = static_cast<int>(fl) % m;
                if (ia < 0) ia += m;
                int ib = (ia + 1) % m;
                // solve v = ca*u_ia + cb*u_ib (neighbors span the cone of v)
                double det = ux[ia] * uy[ib] - uy[ia] * ux[ib];
                cf.ia = ia;
                cf.ib = ib;
                cf.ca = (vx * uy[ib] - vy * ux[ib]) / det;
                cf.cb = (ux[ia] * vy - uy[ia] * vx) / det;
            }
            coef[i * m + j] = cf;
        }
    }
    std::vector<double> T(m);
    for (int it = 0; it < 20000; ++it) {
        double change = 0;
        for (int j = 0; j < m; ++j) {
            double best = -1e300;
            for (std::size_t i = 0; i < maps.size(); ++i) {
                const Coef& cf = coef[i * m + j];
                best = std::max(best, cf.ca * S[cf.ia] + cf.cb * S[cf.ib] + cf.off);
            }
            T[j] = best;
        }
        for (int j = 0; j < m; ++j) change = std::max(change, std::abs(T[j] - S[j]));
        S.swap(T);
        if (change < 1e-13 * (1.0 + trap.radius)) break;
    }
    // polygon from consecutive support-line intersections (outer)
    std::vector<Pt2> pts;
    pts.reserve(m);
    for (int j = 0; j < m; ++j) {
        int k = (j + 1) % m;
        double det = ux[j] * uy[k] - uy[j] * ux[k];
        if (std::abs(det) < 1e-300) continue;
        pts.push_back(Pt2{(S[j] * uy[k] - S[k] * uy[j]) / det,
                          (ux[j] * S[k] - ux[k] * S[j]) / det});
    }
    h.polygon = convex_hull(std::move(pts));
    return h;
}

} // namespace

TransitionHulls transition_hull(const OneParamFamily& fam, const std::vector<double>& t_grid,
                                double cell, std::size_t node_budget) {
    Classification c = classify_auto(fam);
    if (!c.is_bounded) throw NotBounded("transition_hull needs a bounded family");
    TransitionHulls out;
    out.cell = cell;

    for (double t : t_grid) {
        Ball trap = trapping_ball(fam, t);
        auto maps = instantiate(fam, t);
        HullResult h = support_hull(maps, trap);
        if (!out.hulls.empty() && hull_containment_gap(out.hulls.back(), h) > 2 * cell)
            throw NestingViolation("hull at t=" + std::to_string(t) +
                                   " does not contain its predecessor within slack");
        out.ts.push_back(t);
        out.hulls.push_back(h);
    }
    if (out.hulls.empty()) throw EmptyInput("transition_hull with empty t grid");

    // K* estimate: outermost hull plus the orbit closure points
    PointSample orbit = lower_transition_attractor(fam, cell, 500'000, true);
    if (fam.d == 1) {
        HullResult k = out.hulls.back();
        for (double x : orbit.xs) {
            k.lo = std::min(k.lo, x);
            k.hi = std::max(k.hi, x);
        }
        out.k_star = k;
    } else {
        std::vector<Pt2> pts = out.hulls.back().polygon;
        for (std::size_t i = 0; i < orbit.xs.size(); ++i)
            pts.push_back(Pt2{orbit.xs[i], orbit.ys[i]});
        out.k_star.d = 2;
        out.k_star.polygon = convex_hull(std::move(pts));
    }
    return out;
}

double invariance_residual(const PointSample& sample, const OneParamFamily& fam) {
    ScalingData sd = scaling_data(fam);
    double t0 = 1.0 / sd.ratios[static_cast<size_t>(sd.argmax)];
    auto maps = instantiate(fam, t0);
    PointSample image = apply_instance(maps, sample);
    return hausdorff(image, sample);
}

UpperTransitionEvidence upper_transition_evidence(const OneParamFamily& fam,
                                                  const std::vector<double>& t_sequence,
                                                  double cell, std::size_t node_budget) {
    Classification c = classify_auto(fam);
    if (!c.is_bounded) throw NotBounded("upper transition evidence needs a bounded family");
    UpperTransitionEvidence out;

    std::vector<BoxCover> covers;
    for (double t : t_sequence) {
        Ball trap = trapping_ball(fam, t);
        covers.push_back(word_cover(instantiate(fam, t), trap, cell, node_budget));
    }
    if (covers.size() < 2) throw EmptyInput("need at least two t values");

    bool monotone = true;
    double prev = 1e300;
    for (std::size_t i = 0; i + 1 < covers.size(); ++i) {
        double dist = hausdorff(covers[i], covers[i + 1]);
        out.table.push_back(CauchyRow{t_sequence[i], t_sequence[i + 1], dist});
        if (dist > prev + 1e-12) monotone = false;
        prev = dist;
    }
    double final_dist = out.table.back().dist;
    out.verdict = (monotone && final_dist < 5 * cell) ? "cauchy-evidence" : "inconclusive";

    // hull convergence toward K*
    std::vector<double> grid;
    for (double t : t_sequence) grid.push_back(t);
    TransitionHulls th = transition_hull(fam, grid, cell, node_budget);
    out.hull_gap = 0;
    const HullResult& last = th.hulls.back();
    if (fam.d == 1) {
        out.hull_gap = std::max(std::abs(last.lo - th.k_star.lo),
                                std::abs(last.hi - th.k_star.hi));
    } else {
        for (const auto& v : th.k_star.polygon)
            out.hull_gap = std::max(out.hull_gap, point_polygon_distance(v, last.polygon));
    }
    return out;
}

} // namespace ifslab
