#include "ifslab/interior.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <unordered_map>

namespace ifslab {

double measure_zero_threshold(const OneParamFamily& fam) {
    double sum = 0;
    for (const auto& m : fam.members) sum += std::abs(det(m.L));
    return std::pow(sum, -1.0 / static_cast<double>(fam.d));
}

bool ball_certificate(const std::vector<AffineMap>& maps, const Ball& ball, int n,
                      int subdivision, std::size_t word_budget) {
    if (maps.empty()) throw EmptyInput("ball_certificate with no maps");
    const int d = maps[0].L.d;
    double nwords = std::pow(static_cast<double>(maps.size()), n);
    if (nwords > static_cast<double>(word_budget))
        throw BudgetExceeded("ball_certificate word count over budget");

    // depth-n word images: inscribed balls of the exact affine images
    struct Img {
        Vec c;
        double r;
    };
    std::vector<Img> imgs = {{ball.center, ball.radius}};
    std::vector<Img> next;
    for (int k = 0; k < n; ++k) {
        next.clear();
        next.reserve(imgs.size() * maps.size());
        for (const auto& im : imgs)
            for (const auto& g : maps)
                next.push_back(Img{g(im.c), min_singular_value(g.L) * im.r});
        imgs.swap(next);
    }
    double rmin = 1e300;
    for (const auto& im : imgs) rmin = std::min(rmin, im.r);
    if (rmin <= 0) return false;

    if (subdivision <= 0)
        subdivision = static_cast<int>(std::ceil(2.0 * ball.radius * std::sqrt(2.0) /
                                                 (rmin / 4.0))) + 1;
    double h = 2.0 * ball.radius / subdivision;
    double diag = h * std::sqrt(static_cast<double>(d));
    if (diag >= rmin / 4.0) {
        subdivision = static_cast<int>(std::ceil(2.0 * ball.radius *
                                                 std::sqrt(static_cast<double>(d)) /
                                                 (rmin / 4.0))) + 1;
        h = 2.0 * ball.radius / subdivision;
        diag = h * std::sqrt(static_cast<double>(d));
    }

    // every sub-cell meeting the ball, inflated by its own diameter, must fit
    // inside some image ball
    auto covered = [&](const Vec& cc) {
        for (const auto& im : imgs) {
            if (dist2(cc, im.c) + diag / 2.0 + diag <= im.r) return true;
        }
        return false;
    };
    std::int64_t steps = subdivision;
    for (std::int64_t i = 0; i < steps; ++i) {
        double x = ball.center[0] - ball.radius + (i + 0.5) * h;
        if (d == 1) {
            Vec cc{x};
            if (std::abs(x - ball.center[0]) > ball.radius + h) continue;
            if (!covered(cc)) return false;
        } else {
            for (std::int64_t j = 0; j < steps; ++j) {
                double y = ball.center[1] - ball.radius + (j + 0.5) * h;
                Vec cc{x, y};
                // only sub-cells that can meet the ball
                if (dist2(cc, ball.center) > ball.radius + diag) continue;
                if (!covered(cc)) return false;
            }
        }
    }
    return true;
}

ConeParams nonempty_threshold_bound_2d(const OneParamFamily& fam) {
    if (fam.d != 2) throw NotApplicable("cone bound is 2-D only");
    Classification c = classify_auto(fam);
    if (!c.is_semi_linear || c.is_linear)
        throw NotApplicable("cone bound needs a semi-linear, non-linear family");
    ScalingData sd = scaling_data(fam); // throws NotSimilarity
    double rmax = sd.ratios[static_cast<size_t>(sd.argmax)];

    const Mat& L = fam.members[static_cast<size_t>(sd.argmax)].L;
    if (det(L) <= 0) throw NotApplicable("maximal member must be orientation-preserving");
    double phi = std::atan2(L(1, 0) / rmax, L(0, 0) / rmax);

    // irrationality proxy for phi/pi
    double x = phi / M_PI;
    for (int q = 1; q <= 64; ++q) {
        double p = std::round(x * q);
        if (std::abs(x - p / q) <= 1e-6)
            throw NotApplicable("rotation angle fails the irrationality proxy");
    }

    // s: largest non-maximal normalized ratio
    double s = 0;
    for (std::size_t i = 0; i < sd.ratios.size(); ++i)
        if (static_cast<int>(i) != sd.argmax) s = std::max(s, sd.ratios[i] / rmax);
    if (s <= 0 || s >= 1.0 - 1e-12)
        throw NotApplicable("no member with ratio strictly below the maximum");

    // orbit density: smallest M with max circular gap of {k phi mod 2pi} <= theta;
    // gaps are maintained incrementally (each insertion splits one gap)
    auto orbit_M = [&](double theta) -> int {
        std::set<double> angs;
        std::multiset<double> gaps;
        double a = 0;
        angs.insert(0.0);
        gaps.insert(2 * M_PI);
        for (int k = 0; k <= 2'000'000; ++k) {
            if (*gaps.rbegin() <= theta) return k;
            a = std::fmod(a + phi, 2 * M_PI);
            if (a < 0) a += 2 * M_PI;
            auto [it, fresh] = angs.insert(a);
            if (!fresh) continue;
            auto nxt = std::next(it);
            auto prv = (it == angs.begin()) ? std::prev(angs.end()) : std::prev(it);
            double lo = *prv, hi = (nxt == angs.end()) ? *angs.begin() + 2 * M_PI : *nxt;
            if (lo > a) lo -= 2 * M_PI; // wrap when inserting before begin
            double old = hi - lo;
            auto g = gaps.find(old);
            if (g != gaps.end()) gaps.erase(g);
            gaps.insert(a - lo);
            gaps.insert(hi - a);
        }
        return -1;
    };

    double t0 = 1.0 / rmax;
    ConeParams best;
    bool found = false;
    std::unordered_map<long long, int> m_cache;
    for (int ke = 1; ke <= 30; ++ke) {
        double eps = std::pow(2.0, -ke);
        for (int kt = 1; kt <= 20; ++kt) {
            double theta = std::pow(2.0, -kt);
            double lhs = 2.0 * (1.0 - eps) * std::cos(theta);
            double rhs = 1.0 + (1.0 - eps) * (1.0 - eps) * (1.0 - s * s);
            if (lhs - rhs < 1e-9) continue;
            int M;
            auto it = m_cache.find(kt);
            if (it != m_cache.end())
                M = it->second;
            else {
                M = orbit_M(theta);
                m_cache[kt] = M;
            }
            if (M < 0) continue;
            double tau = std::pow(1.0 - eps, M + 1) * t0;
            if (!found || tau > best.tau) {
                best = ConeParams{eps, theta, M, s, tau, phi};
                found = true;
            }
        }
    }
    if (!found) throw NoFeasibleCone("no (epsilon, theta) grid point satisfies the inequality");
    return best;
}

std::vector<std::pair<Vec, double>> interior_ball_candidates(const BoxCover& cover,
                                                             std::size_t top_k) {
    if (cover.empty()) throw EmptyInput("interior_ball_candidates of empty cover");
    // multi-source BFS Chebyshev distance transform from the boundary inward
    std::unordered_map<std::int64_t, int> dist;
    std::deque<std::int64_t> queue;
    auto neighbors = [&](std::int64_t k, auto&& fn) {
        if (cover.d == 1) {
            fn(k - 1);
            fn(k + 1);
        } else {
            std::int64_t ix, iy;
            BoxCover::unpack(k, ix, iy);
            for (int dx = -1; dx <= 1; ++dx)
                for (int dy = -1; dy <= 1; ++dy)
                    if (dx || dy) fn(BoxCover::key(ix + dx, iy + dy));
        }
    };
    for (std::int64_t k : cover.cells) {
        bool boundary = false;
        neighbors(k, [&](std::int64_t n) {
            if (!cover.cells.count(n)) boundary = true;
        });
        if (boundary) {
            dist[k] = 1;
            queue.push_back(k);
        }
    }
    while (!queue.empty()) {
        std::int64_t k = queue.front();
        queue.pop_front();
        int dk = dist[k];
        neighbors(k, [&](std::int64_t n) {
            if (!cover.cells.count(n) || dist.count(n)) return;
            dist[n] = dk + 1;
            queue.push_back(n);
        });
    }
    std::vector<std::pair<std::int64_t, int>> ranked(dist.begin(), dist.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        return a.second != b.second ? a.second > b.second : a.first < b.first;
    });
    std::vector<std::pair<Vec, double>> out;
    for (const auto& [k, dk] : ranked) {
        if (out.size() >= top_k) break;
        Vec c(cover.d);
        if (cover.d == 1) {
            c[0] = (k + 0.5) * cover.cell;
        } else {
            std::int64_t ix, iy;
            BoxCover::unpack(k, ix, iy);
            c[0] = (ix + 0.5) * cover.cell;
            c[1] = (iy + 0.5) * cover.cell;
        }
        out.emplace_back(c, (dk - 0.5) * cover.cell);
    }
    return out;
}

InteriorScanResult interior_scan(const OneParamFamily& fam, const std::vector<double>& t_grid,
                                 double cell, int max_n, std::size_t node_budget) {
    InteriorScanResult res;
    double tm = measure_zero_threshold(fam);
    Classification c = classify_auto(fam);
    res.tame_flagged = c.is_similarity && c.is_semi_linear;

    for (double t : t_grid) {
        InteriorScanRow row;
        row.t = t;
        if (t < tm) {
            row.st.status = Interior::EmptyCertified;
            row.st.measure_threshold = tm;
        } else {
            auto maps = instantiate(fam, t);
            try {
                Ball trap = trapping_ball(fam, t);
                BoxCover cover = word_cover(maps, trap, cell, node_budget);
                auto cands = interior_ball_candidates(cover, 3);
                bool done = false;
                for (const auto& [center, rad] : cands) {
                    if (done || rad <= 2 * cell) continue;
                    for (double shrink : {1.0, 0.5, 0.25}) {
                        if (done) break;
                        Ball b{center, rad * shrink};
                        for (int n = 1; n <= max_n && !done; ++n) {
                            try {
                                if (ball_certificate(maps, b, n)) {
                                    row.st.status = Interior::NonEmptyCertified;
                                    row.st.certificate = BallCertificate{b, n};
                                    done = true;
                                }
                            } catch (const BudgetExceeded&) {
                                break;
                            }
                        }
                    }
                }
            } catch (const Error&) {
                // unresolved probe stays Unknown
            }
        }
        res.rows.push_back(row);
    }

    if (res.tame_flagged) {
        double last_empty = 0, first_nonempty = 1e300;
        for (const auto& r : res.rows) {
            if (r.st.status == Interior::EmptyCertified) last_empty = std::max(last_empty, r.t);
            if (r.st.status == Interior::NonEmptyCertified)
                first_nonempty = std::min(first_nonempty, r.t);
        }
        if (last_empty > first_nonempty)
            throw Error("interior_scan: certificate inconsistency under the tame assumption");
        res.t2_lo = last_empty;
        res.t2_hi = (first_nonempty < 1e300) ? first_nonempty : 0;
    }
    return res;
}

} // namespace ifslab
