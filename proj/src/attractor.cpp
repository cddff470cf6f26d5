#include "ifslab/attractor.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "ifslab/kernels.hpp"
#include "ifslab/parallel.hpp"

namespace ifslab {

void BoxCover::centers(std::vector<double>& xs, std::vector<double>& ys) const {
    xs.clear();
    ys.clear();
    xs.reserve(cells.size());
    if (d == 1) {
        for (std::int64_t k : cells) xs.push_back((k + 0.5) * cell);
    } else {
        ys.reserve(cells.size());
        for (std::int64_t k : cells) {
            std::int64_t ix, iy;
            unpack(k, ix, iy);
            xs.push_back((ix + 0.5) * cell);
            ys.push_back((iy + 0.5) * cell);
        }
    }
}

std::vector<Pt2> BoxCover::boundary_corners() const {
    std::vector<Pt2> out;
    if (d != 2) throw UnsupportedDimension("boundary_corners is 2-D only");
    for (std::int64_t k : cells) {
        std::int64_t ix, iy;
        unpack(k, ix, iy);
        bool boundary = false;
        for (int dx = -1; dx <= 1 && !boundary; ++dx)
            for (int dy = -1; dy <= 1 && !boundary; ++dy)
                if ((dx || dy) && !cells.count(key(ix + dx, iy + dy))) boundary = true;
        if (!boundary) continue;
        for (int cx = 0; cx <= 1; ++cx)
            for (int cy = 0; cy <= 1; ++cy)
                out.push_back(Pt2{(ix + cx) * cell, (iy + cy) * cell});
    }
    return out;
}

// --- trapping balls ---------------------------------------------------------

Ball trapping_ball(const OneParamFamily& fam, double t) {
    const int d = fam.d;
    if (t == 0.0) {
        Vec c(d);
        for (const auto& m : fam.members) c += m.q;
        c *= 1.0 / static_cast<double>(fam.members.size());
        double R = 0;
        for (const auto& m : fam.members) R = std::max(R, norm2(m.q));
        return Ball{c, R + 1.0};
    }

    // bounded family: t-uniform ball around the special fixed point.
    // Semi-linearity gives t f_i(x) + q_i = q_i + t L_i (x - q_i), so
    // |f(x) - q*| <= t r_i (R + |q_i - q*|) + |q_i - q*| and the radius below
    // is invariant for every t <= t0.
    bool semi = true, sim = true;
    std::vector<double> ratios;
    for (const auto& m : fam.members) {
        if (norm2(m.L * m.q + m.a) > 1e-12 * (1.0 + norm2(m.q))) semi = false;
        double r = similarity_ratio(m.L);
        if (r < 0) {
            sim = false;
            break;
        }
        ratios.push_back(r);
    }
    if (semi && sim) {
        double rmax = *std::max_element(ratios.begin(), ratios.end());
        int hits = 0, argmax = 0;
        for (size_t i = 0; i < ratios.size(); ++i)
            if (ratios[i] > rmax - 1e-12) {
                ++hits;
                argmax = static_cast<int>(i);
            }
        double t0 = 1.0 / rmax;
        if (hits == 1 && t <= t0 * (1.0 + 1e-12)) {
            const Vec& qs = fam.members[static_cast<size_t>(argmax)].q;
            double R = 0;
            for (size_t i = 0; i < fam.members.size(); ++i) {
                if (static_cast<int>(i) == argmax) continue;
                double tri = std::min(t, t0) * ratios[i];
                double dq = dist2(fam.members[i].q, qs);
                R = std::max(R, (1.0 + tri) * dq / (1.0 - tri));
            }
            if (R == 0) R = 1.0;
            return Ball{qs, R * (1.0 + 1e-9) + 1e-12};
        }
    }

    // one-step norm bound around the origin
    auto maps = instantiate(fam, t);
    double s = 0, tmax = 0;
    for (const auto& g : maps) {
        s = std::max(s, spectral_norm(g.L));
        tmax = std::max(tmax, norm2(g.a));
    }
    if (s < 1.0 - 1e-12) {
        double R = tmax / (1.0 - s);
        if (R == 0) R = 1.0;
        return Ball{Vec(d), R * (1.0 + 1e-9)};
    }

    // depth-m fallback: find m with all length-m product norms < 1, trap
    // under F^m, then inflate over the intermediate prefixes.
    std::vector<AffineMap> level = maps;
    std::vector<AffineMap> prefixes = maps;
    for (int m = 2; m <= 12; ++m) {
        std::vector<AffineMap> next;
        next.reserve(level.size() * maps.size());
        for (const auto& w : level)
            for (const auto& g : maps)
                next.push_back(AffineMap{w.L * g.L, w.L * g.a + w.a});
        level = std::move(next);
        double sm = 0, tm = 0;
        for (const auto& w : level) {
            sm = std::max(sm, spectral_norm(w.L));
            tm = std::max(tm, norm2(w.a));
        }
        if (sm < 1.0 - 1e-12) {
            double R = tm / (1.0 - sm);
            if (R == 0) R = 1.0;
            double Rp = R;
            for (const auto& p : prefixes)
                Rp = std::max(Rp, spectral_norm(p.L) * R + norm2(p.a));
            return Ball{Vec(d), Rp * (1.0 + 1e-9)};
        }
        for (const auto& w : level) prefixes.push_back(w);
    }
    throw NoContractiveDepth("no word depth <= 12 with contracting products");
}

// --- lattice marking helpers ------------------------------------------------

namespace {

inline std::int64_t ifloor(double x) { return static_cast<std::int64_t>(std::floor(x)); }

// mark cells of a 1-D lattice meeting (lo, hi); strict => positive-length
// overlap required (ties within eps unmarked)
template <class MarkFn>
void mark_interval(double lo, double hi, double h, bool strict, MarkFn&& mark) {
    double eps = strict ? 1e-12 * std::max({1.0, std::abs(lo), std::abs(hi)}) : 0.0;
    std::int64_t i0 = ifloor((lo + eps) / h);
    std::int64_t i1 = ifloor((hi - eps) / h);
    if (strict && hi - lo <= 2 * eps) return;
    for (std::int64_t i = i0; i <= i1; ++i) {
        if (strict) {
            double clo = i * h, chi = (i + 1) * h;
            if (std::min(hi, chi) - std::max(lo, clo) <= eps) continue;
        }
        mark(i);
    }
}

// strict positive-area overlap (SAT) between the parallelogram
// {c + s*u + t*v : |s|,|t| <= 1/2} and the cell box [ix h,(ix+1)h]x[iy h,(iy+1)h]
bool parallelogram_cell_overlap(const Vec& c, const Vec& u, const Vec& v,
                                std::int64_t ix, std::int64_t iy, double h, double eps) {
    double bx = (ix + 0.5) * h, by = (iy + 0.5) * h;
    // candidate axes: lattice axes and the parallelogram edge normals
    double axes[4][2] = {{1, 0}, {0, 1}, {-u[1], u[0]}, {-v[1], v[0]}};
    for (auto& a : axes) {
        double len = std::hypot(a[0], a[1]);
        if (len < 1e-300) continue;
        double px = a[0] / len, py = a[1] / len;
        double cp = c[0] * px + c[1] * py;
        double rp = (std::abs(u[0] * px + u[1] * py) + std::abs(v[0] * px + v[1] * py)) / 2.0;
        double cb = bx * px + by * py;
        double rb = (std::abs(px) + std::abs(py)) * h / 2.0;
        if (std::min(cp + rp, cb + rb) - std::max(cp - rp, cb - rb) <= eps) return false;
    }
    return true;
}

// cells whose closed box meets the closed disk (outer marking, non-strict)
template <class MarkFn>
void mark_disk_2d(double cx, double cy, double r, double h, MarkFn&& mark) {
    std::int64_t ix0 = ifloor((cx - r) / h), ix1 = ifloor((cx + r) / h);
    std::int64_t iy0 = ifloor((cy - r) / h), iy1 = ifloor((cy + r) / h);
    double r2 = r * r;
    for (std::int64_t ix = ix0; ix <= ix1; ++ix)
        for (std::int64_t iy = iy0; iy <= iy1; ++iy) {
            double nx = std::clamp(cx, ix * h, (ix + 1) * h);
            double ny = std::clamp(cy, iy * h, (iy + 1) * h);
            double dx = nx - cx, dy = ny - cy;
            if (dx * dx + dy * dy <= r2) mark(ix, iy);
        }
}

} // namespace

// --- conservative Hutchinson fixpoint ----------------------------------------

namespace {

// one conservative sweep: map every occupied cell box through every map,
// mark strict-positive-overlap cells of the image parallelogram/interval
BoxCover sweep(const BoxCover& S, const std::vector<AffineMap>& maps, const Ball& trap,
               int threads) {
    BoxCover T;
    T.d = S.d;
    T.cell = S.cell;
    T.level = S.level;
    const double h = S.cell;
    // escape guard: allow the stationary marking overshoot ~h/(1-s) of the
    // cell-wise Hutchinson iteration plus slack, so legitimate runs near the
    // trap boundary are not killed
    double smax = 0;
    for (const auto& g : maps) smax = std::max(smax, spectral_norm(g.L));
    const double denom = std::max(0.05, 1.0 - smax);
    const double lim = trap.radius +
                       2.0 * h * std::sqrt(static_cast<double>(S.d)) * (1.0 + 1.0 / denom);

    std::vector<std::int64_t> occ(S.cells.begin(), S.cells.end());
    std::sort(occ.begin(), occ.end()); // deterministic order

    auto emit = [&](std::unordered_set<std::int64_t>& out, std::size_t lo, std::size_t hi) {
        for (std::size_t n = lo; n < hi; ++n) {
            std::int64_t k = occ[n];
            if (S.d == 1) {
                double x0 = k * h, x1 = (k + 1) * h;
                for (const auto& g : maps) {
                    double a = g.L(0, 0) * x0 + g.a[0];
                    double b = g.L(0, 0) * x1 + g.a[0];
                    if (a > b) std::swap(a, b);
                    mark_interval(a, b, h, true, [&](std::int64_t i) {
                        if (std::abs((i + 0.5) * h - trap.center[0]) > lim)
                            throw NotTrapping("cover escaped the trapping ball");
                        out.insert(i);
                    });
                }
            } else {
                std::int64_t ix, iy;
                BoxCover::unpack(k, ix, iy);
                Vec c{(ix + 0.5) * h, (iy + 0.5) * h};
                for (const auto& g : maps) {
                    Vec ic = g.L * c + g.a;
                    Vec u{g.L(0, 0) * h, g.L(1, 0) * h};
                    Vec v{g.L(0, 1) * h, g.L(1, 1) * h};
                    double rx = (std::abs(u[0]) + std::abs(v[0])) / 2.0;
                    double ry = (std::abs(u[1]) + std::abs(v[1])) / 2.0;
                    double eps = 1e-12 * std::max({1.0, std::abs(ic[0]) + rx, std::abs(ic[1]) + ry});
                    std::int64_t jx0 = ifloor((ic[0] - rx) / h), jx1 = ifloor((ic[0] + rx) / h);
                    std::int64_t jy0 = ifloor((ic[1] - ry) / h), jy1 = ifloor((ic[1] + ry) / h);
                    for (std::int64_t jx = jx0; jx <= jx1; ++jx)
                        for (std::int64_t jy = jy0; jy <= jy1; ++jy) {
                            if (!parallelogram_cell_overlap(ic, u, v, jx, jy, h, eps)) continue;
                            double px = (jx + 0.5) * h - trap.center[0];
                            double py = (jy + 0.5) * h - trap.center[1];
                            if (std::hypot(px, py) > lim)
                                throw NotTrapping("cover escaped the trapping ball");
                            out.insert(BoxCover::key(jx, jy));
                        }
                }
            }
        }
    };

    if (threads <= 1 || occ.size() < 1024) {
        emit(T.cells, 0, occ.size());
    } else {
        int nt = threads;
        std::vector<std::unordered_set<std::int64_t>> parts(static_cast<size_t>(nt));
        std::size_t per = (occ.size() + nt - 1) / nt;
        parallel_for(static_cast<std::size_t>(nt), nt, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t c = lo; c < hi; ++c)
                emit(parts[c], c * per, std::min(occ.size(), (c + 1) * per));
        });
        for (auto& p : parts)
            T.cells.insert(p.begin(), p.end());
    }
    return T;
}

} // namespace

BoxCover compute_attractor(const std::vector<AffineMap>& maps, const Ball& trap,
                           double cell, int max_iters, int threads) {
    if (maps.empty()) throw EmptyInput("compute_attractor with no maps");
    const int d = maps[0].L.d;
    if (d > 2) throw UnsupportedDimension("grid covers support d <= 2");
    if (cell <= 0) throw Error("cell must be positive");

    double diam = 2 * trap.radius;
    if (max_iters <= 0)
        max_iters = static_cast<int>(std::min(1e7, 10.0 * diam / cell + 1000.0));

    int k = 0;
    while (cell * static_cast<double>(1LL << (k + 1)) <= diam / 32.0 && k < 40) ++k;

    // the grid fixpoint overhangs the attractor by ~cell/(1-s); refine below
    // the requested cell until the overhang fits inside half a target cell,
    // then re-bin, so the returned cover is within ~1.5 cells of A
    double smax = 0;
    for (const auto& g : maps) smax = std::max(smax, spectral_norm(g.L));
    int extra = 0;
    if (smax < 1.0)
        while (extra < 6 &&
               std::pow(2.0, extra) * (1.0 - smax) < 3.0)
            ++extra;

    BoxCover S;
    S.d = d;
    S.cell = cell * static_cast<double>(1LL << k);
    if (d == 1) {
        mark_interval(trap.center[0] - trap.radius - 2 * S.cell,
                      trap.center[0] + trap.radius + 2 * S.cell, S.cell, false,
                      [&](std::int64_t i) { S.cells.insert(i); });
    } else {
        mark_disk_2d(trap.center[0], trap.center[1], trap.radius + 2 * S.cell, S.cell,
                     [&](std::int64_t ix, std::int64_t iy) { S.cells.insert(BoxCover::key(ix, iy)); });
    }

    int iters = 0;
    for (int lev = k;; --lev) {
        for (;;) {
            if (++iters > max_iters) throw BudgetExceeded("no cover fixpoint within max_iters");
            BoxCover T = sweep(S, maps, trap, threads);
            bool same = T.cells.size() == S.cells.size();
            if (same)
                for (std::int64_t c : T.cells)
                    if (!S.cells.count(c)) {
                        same = false;
                        break;
                    }
            S.cells = std::move(T.cells);
            if (same) break;
        }
        if (lev == -extra) break;
        if (lev <= 0 && S.cells.size() * (d == 1 ? 2 : 4) > 4'000'000) {
            extra = -lev; // sub-cell budget exhausted: keep what we have
            break;
        }
        // refine: inflate by one parent cell, then split into children
        std::unordered_set<std::int64_t> inflated;
        std::unordered_set<std::int64_t> child;
        if (d == 1) {
            for (std::int64_t c : S.cells)
                for (std::int64_t n = c - 1; n <= c + 1; ++n) inflated.insert(n);
            for (std::int64_t c : inflated) {
                child.insert(2 * c);
                child.insert(2 * c + 1);
            }
        } else {
            for (std::int64_t c : S.cells) {
                std::int64_t ix, iy;
                BoxCover::unpack(c, ix, iy);
                for (int dx = -1; dx <= 1; ++dx)
                    for (int dy = -1; dy <= 1; ++dy)
                        inflated.insert(BoxCover::key(ix + dx, iy + dy));
            }
            for (std::int64_t c : inflated) {
                std::int64_t ix, iy;
                BoxCover::unpack(c, ix, iy);
                for (int dx = 0; dx <= 1; ++dx)
                    for (int dy = 0; dy <= 1; ++dy)
                        child.insert(BoxCover::key(2 * ix + dx, 2 * iy + dy));
            }
        }
        S.cells = std::move(child);
        S.cell /= 2.0;
    }
    if (extra > 0) {
        std::unordered_set<std::int64_t> up;
        for (std::int64_t c : S.cells) {
            if (d == 1) {
                up.insert(c >> extra);
            } else {
                std::int64_t ix, iy;
                BoxCover::unpack(c, ix, iy);
                up.insert(BoxCover::key(ix >> extra, iy >> extra));
            }
        }
        S.cells = std::move(up);
        S.cell = cell;
    }
    S.level = k;
    return S;
}

// --- adaptive word rasterization ---------------------------------------------

namespace {

// Dyadic occupancy pyramid over the cell lattice: level-j blocks are "full"
// when all children are full; lets the word recursion skip subtrees whose
// whole image ball lands on already-marked area.
struct OccupancyPyramid {
    int d;
    double h;
    static constexpr int J = 20;
    std::vector<std::unordered_set<std::int64_t>> full;

    OccupancyPyramid(int dim, double cell) : d(dim), h(cell), full(J + 1) {}

    void mark(std::int64_t ix, std::int64_t iy) {
        std::int64_t k = (d == 1) ? ix : BoxCover::key(ix, iy);
        if (!full[0].insert(k).second) return;
        for (int j = 1; j <= J; ++j) {
            std::int64_t bx = ix >> j, by = iy >> j;
            bool all = true;
            if (d == 1) {
                for (int cx = 0; cx <= 1 && all; ++cx)
                    all = full[static_cast<size_t>(j - 1)].count((bx << 1) + cx) > 0;
            } else {
                for (int cx = 0; cx <= 1 && all; ++cx)
                    for (int cy = 0; cy <= 1 && all; ++cy)
                        all = full[static_cast<size_t>(j - 1)].count(
                                  BoxCover::key((bx << 1) + cx, (by << 1) + cy)) > 0;
            }
            if (!all) break;
            std::int64_t bk = (d == 1) ? bx : BoxCover::key(bx, by);
            if (!full[static_cast<size_t>(j)].insert(bk).second) break;
        }
    }

    bool blocks_full(int j, double lo0, double hi0, double lo1, double hi1) const {
        double B = h * static_cast<double>(1LL << j);
        std::int64_t x0 = ifloor(lo0 / B), x1 = ifloor(hi0 / B);
        if (d == 1) {
            for (std::int64_t x = x0; x <= x1; ++x)
                if (!full[static_cast<size_t>(j)].count(x)) return false;
            return true;
        }
        std::int64_t y0 = ifloor(lo1 / B), y1 = ifloor(hi1 / B);
        for (std::int64_t x = x0; x <= x1; ++x)
            for (std::int64_t y = y0; y <= y1; ++y)
                if (!full[static_cast<size_t>(j)].count(BoxCover::key(x, y))) return false;
        return true;
    }

    // conservative: true only when the ball's bounding box is tiled by full blocks
    bool covered(const Vec& c, double r) const {
        int j = 0;
        while (j < J && h * static_cast<double>(1LL << (j + 1)) < r) ++j;
        double lo0 = c[0] - r, hi0 = c[0] + r;
        double lo1 = (d == 2) ? c[1] - r : 0, hi1 = (d == 2) ? c[1] + r : 0;
        if (blocks_full(j, lo0, hi0, lo1, hi1)) return true;
        if (j > 0 && blocks_full(j - 1, lo0, hi0, lo1, hi1)) return true;
        return false;
    }
};

struct WordNode {
    Mat M;
    Vec b;
    double nrm;
};

BoxCover word_cover_impl(const std::vector<AffineMap>& maps, const Ball& root,
                         double cell, std::size_t max_nodes, double leaf_frac) {
    const int d = maps[0].L.d;
    OccupancyPyramid occ(d, cell);

    std::vector<WordNode> stack;
    stack.push_back(WordNode{Mat::identity(d), Vec(d), 1.0});
    std::size_t nodes = 0;

    while (!stack.empty()) {
        WordNode nd = std::move(stack.back());
        stack.pop_back();
        if (++nodes > max_nodes) throw BudgetExceeded("word rasterization node budget");
        Vec c = nd.M * root.center + nd.b;
        double r = nd.nrm * root.radius;
        if (2 * r <= leaf_frac * cell) {
            if (d == 1)
                mark_interval(c[0] - r, c[0] + r, cell, false,
                              [&](std::int64_t i) { occ.mark(i, 0); });
            else
                mark_disk_2d(c[0], c[1], r, cell,
                             [&](std::int64_t ix, std::int64_t iy) { occ.mark(ix, iy); });
            continue;
        }
        if (occ.covered(c, r)) continue;
        for (int i = static_cast<int>(maps.size()) - 1; i >= 0; --i) {
            const auto& g = maps[static_cast<size_t>(i)];
            WordNode ch;
            ch.M = nd.M * g.L;
            ch.b = nd.M * g.a + nd.b;
            ch.nrm = spectral_norm(ch.M);
            stack.push_back(std::move(ch));
        }
    }

    BoxCover out;
    out.d = d;
    out.cell = cell;
    out.cells = std::move(occ.full[0]);
    return out;
}

} // namespace

BoxCover word_cover(const std::vector<AffineMap>& maps, const Ball& trap,
                    double cell, std::size_t max_nodes, double leaf_frac) {
    if (maps.empty()) throw EmptyInput("word_cover with no maps");
    const int d = maps[0].L.d;
    if (d > 2) throw UnsupportedDimension("grid covers support d <= 2");
    if (cell <= 0) throw Error("cell must be positive");
    if (leaf_frac <= 0) throw Error("leaf_frac must be positive");

    // bootstrap pass to shrink the enclosing ball (the leaf scale depends on
    // the root radius, so a tight ball saves a large constant factor)
    Ball root = trap;
    for (double coarse = trap.radius / 8.0; coarse > 8.0 * cell; coarse /= 8.0) {
        BoxCover cc = word_cover_impl(maps, root, coarse, max_nodes, leaf_frac);
        double lo0 = 1e300, hi0 = -1e300, lo1 = 1e300, hi1 = -1e300;
        for (std::int64_t k : cc.cells) {
            std::int64_t ix, iy;
            if (d == 1) {
                ix = k;
                iy = 0;
            } else
                BoxCover::unpack(k, ix, iy);
            lo0 = std::min(lo0, ix * cc.cell);
            hi0 = std::max(hi0, (ix + 1) * cc.cell);
            if (d == 2) {
                lo1 = std::min(lo1, iy * cc.cell);
                hi1 = std::max(hi1, (iy + 1) * cc.cell);
            }
        }
        Vec c(d);
        c[0] = (lo0 + hi0) / 2;
        double r = (hi0 - lo0) / 2;
        if (d == 2) {
            c[1] = (lo1 + hi1) / 2;
            r = std::hypot((hi0 - lo0) / 2, (hi1 - lo1) / 2);
        }
        if (r + cc.cell >= root.radius) break; // no improvement
        root = Ball{c, r + cc.cell};
    }
    return word_cover_impl(maps, root, cell, max_nodes, leaf_frac);
}

// --- chaos game --------------------------------------------------------------

PointSample chaos_game(const std::vector<AffineMap>& maps, std::size_t n,
                       const std::vector<double>& weights, std::uint64_t seed,
                       const Ball& trap) {
    if (maps.empty()) throw EmptyInput("chaos_game with no maps");
    if (weights.size() != maps.size()) throw Error("chaos_game: weights size mismatch");
    double wsum = 0;
    for (double w : weights) {
        if (w <= 0) throw Error("chaos_game: weights must be strictly positive");
        wsum += w;
    }
    const int d = maps[0].L.d;
    PointSample s;
    s.d = d;
    s.seed = seed;
    s.weights = weights;
    s.xs.reserve(n);
    if (d == 2) s.ys.reserve(n);

    // documented 64-bit linear generator: state' = state*6364136223846793005
    // + 1442695040888963407; u = (state' >> 11) * 2^-53
    std::uint64_t state = seed;
    auto next_u = [&state]() {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<double>(state >> 11) * 0x1.0p-53;
    };
    Vec x = trap.center;
    auto step = [&]() {
        double u = next_u() * wsum;
        std::size_t i = 0;
        double acc = 0;
        for (; i + 1 < weights.size(); ++i) {
            acc += weights[i];
            if (u < acc) break;
        }
        x = maps[i](x);
    };
    for (int b = 0; b < 100; ++b) step();
    for (std::size_t i = 0; i < n; ++i) {
        step();
        s.xs.push_back(x[0]);
        if (d == 2) s.ys.push_back(x[1]);
    }
    return s;
}

// --- Hausdorff distance -------------------------------------------------------

namespace {

struct BucketGrid {
    double g = 1;
    int d = 1;
    std::unordered_map<std::int64_t, std::vector<std::uint32_t>> buckets;
    const std::vector<double>*xs, *ys;

    BucketGrid(const std::vector<double>& bx, const std::vector<double>& by)
        : xs(&bx), ys(&by) {
        d = by.empty() ? 1 : 2;
        double lo0 = 1e300, hi0 = -1e300, lo1 = 0, hi1 = 0;
        for (double v : bx) {
            lo0 = std::min(lo0, v);
            hi0 = std::max(hi0, v);
        }
        if (d == 2) {
            lo1 = 1e300;
            hi1 = -1e300;
            for (double v : by) {
                lo1 = std::min(lo1, v);
                hi1 = std::max(hi1, v);
            }
        }
        double extent = std::max(hi0 - lo0, d == 2 ? hi1 - lo1 : 0.0);
        double perdim = std::ceil(std::pow(static_cast<double>(bx.size()), 1.0 / d));
        g = std::max(extent / std::max(1.0, perdim), focus_min(extent));
        for (std::uint32_t i = 0; i < bx.size(); ++i)
            buckets[bucket_of(bx[i], d == 2 ? by[i] : 0.0)].push_back(i);
    }
    static double focus_min(double extent) { return std::max(1e-300, extent * 1e-12); }

    std::int64_t bucket_of(double x, double y) const {
        std::int64_t bx = ifloor(x / g);
        std::int64_t by = (d == 2) ? ifloor(y / g) : 0;
        return BoxCover::key(bx, by);
    }

    double min_dist2_to(double px, double py) const {
        std::int64_t bx = ifloor(px / g);
        std::int64_t by = (d == 2) ? ifloor(py / g) : 0;
        double best = 1e300;
        for (std::int64_t k = 0;; ++k) {
            bool any = false;
            // ring at Chebyshev radius k
            for (std::int64_t dx = -k; dx <= k; ++dx) {
                std::int64_t dy0 = (d == 2) ? -k : 0, dy1 = (d == 2) ? k : 0;
                for (std::int64_t dy = dy0; dy <= dy1; ++dy) {
                    if (std::max(std::abs(dx), std::abs(dy)) != k) continue;
                    auto it = buckets.find(BoxCover::key(bx + dx, by + dy));
                    if (it == buckets.end()) continue;
                    any = true;
                    for (std::uint32_t i : it->second) {
                        double ddx = (*xs)[i] - px;
                        double d2 = ddx * ddx;
                        if (d == 2) {
                            double ddy = (*ys)[i] - py;
                            d2 += ddy * ddy;
                        }
                        best = std::min(best, d2);
                    }
                }
            }
            // points in rings > k are at Euclidean distance >= (k)*g - slack;
            // safe stop once best <= (k*g)^2
            double safe = static_cast<double>(k) * g;
            if (best <= safe * safe) return best;
            if (k > (1 << 24)) return best; // degenerate guard
            (void)any;
        }
    }
};

double directed_hausdorff(const std::vector<double>& axs, const std::vector<double>& ays,
                          const std::vector<double>& bxs, const std::vector<double>& bys,
                          int threads) {
    if (axs.empty() || bxs.empty()) throw EmptyInput("hausdorff with empty set");
    // small targets: brute force through the batch kernel
    if (bxs.size() <= 2048) {
        double worst = 0;
        for (std::size_t i = 0; i < axs.size(); ++i) {
            double d2 = kernels::min_dist2(bxs.data(), bys.empty() ? nullptr : bys.data(),
                                           bxs.size(), axs[i], ays.empty() ? 0.0 : ays[i]);
            worst = std::max(worst, d2);
        }
        return std::sqrt(worst);
    }
    BucketGrid grid(bxs, bys);
    std::vector<double> worst_per(static_cast<size_t>(std::max(1, threads)), 0.0);
    std::size_t per = (axs.size() + worst_per.size() - 1) / worst_per.size();
    parallel_for(worst_per.size(), threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t c = lo; c < hi; ++c) {
            double w = 0;
            for (std::size_t i = c * per; i < std::min(axs.size(), (c + 1) * per); ++i)
                w = std::max(w, grid.min_dist2_to(axs[i], ays.empty() ? 0.0 : ays[i]));
            worst_per[c] = w;
        }
    });
    double worst = 0;
    for (double w : worst_per) worst = std::max(worst, w);
    return std::sqrt(worst);
}

} // namespace

double hausdorff(const std::vector<double>& axs, const std::vector<double>& ays,
                 const std::vector<double>& bxs, const std::vector<double>& bys,
                 int threads) {
    return std::max(directed_hausdorff(axs, ays, bxs, bys, threads),
                    directed_hausdorff(bxs, bys, axs, ays, threads));
}

double hausdorff(const BoxCover& a, const BoxCover& b, int threads) {
    if (a.d != b.d) throw Error("hausdorff: dimension mismatch");
    std::vector<double> ax, ay, bx, by;
    a.centers(ax, ay);
    b.centers(bx, by);
    return hausdorff(ax, ay, bx, by, threads);
}

double hausdorff(const PointSample& a, const PointSample& b, int threads) {
    if (a.d != b.d) throw Error("hausdorff: dimension mismatch");
    return hausdorff(a.xs, a.ys, b.xs, b.ys, threads);
}

// --- hulls --------------------------------------------------------------------

HullResult cover_hull(const BoxCover& c) {
    if (c.empty()) throw EmptyInput("hull of empty cover");
    HullResult h;
    h.d = c.d;
    if (c.d == 1) {
        std::int64_t lo = INT64_MAX, hi = INT64_MIN;
        for (std::int64_t k : c.cells) {
            lo = std::min(lo, k);
            hi = std::max(hi, k);
        }
        h.lo = lo * c.cell;
        h.hi = (hi + 1) * c.cell;
        return h;
    }
    h.polygon = convex_hull(c.boundary_corners());
    return h;
}

HullResult sample_hull(const PointSample& s) {
    if (s.xs.empty()) throw EmptyInput("hull of empty sample");
    HullResult h;
    h.d = s.d;
    if (s.d == 1) {
        h.lo = *std::min_element(s.xs.begin(), s.xs.end());
        h.hi = *std::max_element(s.xs.begin(), s.xs.end());
        return h;
    }
    std::vector<Pt2> pts;
    pts.reserve(s.xs.size());
    for (std::size_t i = 0; i < s.xs.size(); ++i) pts.push_back(Pt2{s.xs[i], s.ys[i]});
    h.polygon = convex_hull(std::move(pts));
    return h;
}

PointSample apply_instance(const std::vector<AffineMap>& maps, const PointSample& s) {
    PointSample out;
    out.d = s.d;
    out.seed = s.seed;
    out.weights = s.weights;
    for (const auto& g : maps) {
        std::vector<double> xs = s.xs, ys = s.ys;
        if (s.d == 1) {
            kernels::affine1_batch(xs.data(), xs.size(), g.L(0, 0), g.a[0]);
        } else {
            kernels::affine2_batch(xs.data(), ys.data(), xs.size(), g.L(0, 0), g.L(0, 1),
                                   g.L(1, 0), g.L(1, 1), g.a[0], g.a[1]);
        }
        out.xs.insert(out.xs.end(), xs.begin(), xs.end());
        out.ys.insert(out.ys.end(), ys.begin(), ys.end());
    }
    return out;
}

} // namespace ifslab
