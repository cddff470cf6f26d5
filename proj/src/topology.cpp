#include "ifslab/topology.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "ifslab/jsr.hpp"

namespace ifslab {

namespace {

// Euclidean distance between two lattice cell boxes
double cell_box_distance(int d, double h, std::int64_t a, std::int64_t b) {
    if (d == 1) {
        double lo1 = a * h, hi1 = (a + 1) * h;
        double lo2 = b * h, hi2 = (b + 1) * h;
        return std::max({0.0, lo2 - hi1, lo1 - hi2});
    }
    std::int64_t ax, ay, bx, by;
    BoxCover::unpack(a, ax, ay);
    BoxCover::unpack(b, bx, by);
    auto axis = [h](std::int64_t i, std::int64_t j) {
        double lo1 = i * h, hi1 = (i + 1) * h;
        double lo2 = j * h, hi2 = (j + 1) * h;
        return std::max({0.0, lo2 - hi1, lo1 - hi2});
    };
    return std::hypot(axis(ax, bx), axis(ay, by));
}

} // namespace

ComponentSet components(const BoxCover& cover) {
    if (cover.empty()) throw EmptyInput("components of empty cover");
    ComponentSet out;
    std::unordered_map<std::int64_t, int> label;
    label.reserve(cover.cells.size());
    for (std::int64_t k : cover.cells) label[k] = -1;

    std::vector<std::int64_t> stack;
    for (std::int64_t seed : cover.cells) {
        if (label[seed] >= 0) continue;
        int id = static_cast<int>(out.components.size());
        out.components.emplace_back();
        stack.push_back(seed);
        label[seed] = id;
        while (!stack.empty()) {
            std::int64_t k = stack.back();
            stack.pop_back();
            out.components[static_cast<size_t>(id)].push_back(k);
            if (cover.d == 1) {
                for (std::int64_t n : {k - 1, k + 1}) {
                    auto it = label.find(n);
                    if (it != label.end() && it->second < 0) {
                        it->second = id;
                        stack.push_back(n);
                    }
                }
            } else {
                std::int64_t ix, iy;
                BoxCover::unpack(k, ix, iy);
                for (int dx = -1; dx <= 1; ++dx)
                    for (int dy = -1; dy <= 1; ++dy) {
                        if (!dx && !dy) continue;
                        auto it = label.find(BoxCover::key(ix + dx, iy + dy));
                        if (it != label.end() && it->second < 0) {
                            it->second = id;
                            stack.push_back(it->first);
                        }
                    }
            }
        }
    }
    for (auto& comp : out.components) std::sort(comp.begin(), comp.end());

    // min inter-component gap, window-limited: scan a lattice window of
    // radius W around every cell; if no foreign cell is that close, W*h is a
    // certified lower bound
    const int W = 8;
    double best = 1e300;
    bool saturated = false;
    for (std::int64_t k : cover.cells) {
        int kid = label[k];
        std::int64_t ix = k, iy = 0;
        if (cover.d == 2) BoxCover::unpack(k, ix, iy);
        for (int dx = -W; dx <= W; ++dx) {
            std::int64_t ey0 = (cover.d == 2) ? -W : 0, ey1 = (cover.d == 2) ? W : 0;
            for (std::int64_t dy = ey0; dy <= ey1; ++dy) {
                std::int64_t nk = (cover.d == 1) ? ix + dx : BoxCover::key(ix + dx, iy + dy);
                auto it = label.find(nk);
                if (it == label.end() || it->second == kid) continue;
                saturated = true;
                best = std::min(best, cell_box_distance(cover.d, cover.cell, k, nk));
            }
        }
    }
    if (out.components.size() <= 1) {
        out.gap = 0;
        out.gap_is_lower_bound = false;
    } else if (saturated) {
        out.gap = best;
        out.gap_is_lower_bound = false;
    } else {
        out.gap = (W - 1) * cover.cell;
        out.gap_is_lower_bound = true;
    }
    return out;
}

ConnectivityStatus connectivity_status(const OneParamFamily& fam, double t,
                                       double cell_start, int max_refinements,
                                       std::size_t node_budget) {
    ConnectivityStatus st;
    Ball trap;
    try {
        trap = trapping_ball(fam, t);
    } catch (const Error&) {
        return st; // Unresolved
    }
    auto maps = instantiate(fam, t);
    double cell = cell_start;
    for (int lev = 0; lev <= max_refinements; ++lev) {
        BoxCover cover;
        try {
            cover = word_cover(maps, trap, cell, node_budget);
        } catch (const BudgetExceeded&) {
            st.status = (lev >= 2) ? Connectivity::ConnectedEvidence : Connectivity::Unresolved;
            st.refinement_level = lev - 1;
            return st;
        }
        ComponentSet cs = components(cover);
        st.refinement_level = lev;
        st.n_components = static_cast<int>(cs.components.size());
        if (cs.components.size() >= 2 && cs.gap > 0) {
            st.status = Connectivity::DisconnectedCertified;
            st.gap = cs.gap;
            st.witness = strongly_disconnected(cover);
            return st;
        }
        cell /= 2.0;
    }
    st.status = Connectivity::ConnectedEvidence;
    return st;
}

double connectivity_lower_bound(const OneParamFamily& fam) {
    ScalingData sd = scaling_data(fam); // throws NotSimilarity
    double rmax = sd.ratios[static_cast<size_t>(sd.argmax)];
    double rmin = *std::min_element(sd.ratios.begin(), sd.ratios.end());
    double t0 = 1.0 / rmax;
    double rho = rmin / rmax;
    double d = static_cast<double>(fam.d);
    return t0 * std::pow(1.0 + std::pow(rho, d), -1.0 / d);
}

namespace {

struct Projection {
    double lo, hi;
};

// interior-gap search of projected cell boxes along a direction; returns the
// best (widest) gap as a witness candidate
std::optional<SeparationWitness> gap_along(const BoxCover& cover, double nx, double ny) {
    std::vector<Projection> ps;
    ps.reserve(cover.cells.size());
    double h = cover.cell;
    for (std::int64_t k : cover.cells) {
        double cx, cy = 0;
        if (cover.d == 1) {
            cx = (k + 0.5) * h;
        } else {
            std::int64_t ix, iy;
            BoxCover::unpack(k, ix, iy);
            cx = (ix + 0.5) * h;
            cy = (iy + 0.5) * h;
        }
        double c = cx * nx + cy * ny;
        double r = (std::abs(nx) + std::abs(ny)) * h / 2.0;
        ps.push_back(Projection{c - r, c + r});
    }
    std::sort(ps.begin(), ps.end(), [](const Projection& a, const Projection& b) {
        return a.lo < b.lo;
    });
    double reach = ps.front().hi;
    std::size_t left = 0;
    SeparationWitness best;
    bool found = false;
    for (std::size_t i = 1; i < ps.size(); ++i) {
        if (ps[i].lo > reach + 1e-13 * std::max(1.0, std::abs(reach))) {
            double margin = ps[i].lo - reach;
            if (!found || margin > best.margin) {
                best.nx = nx;
                best.ny = ny;
                best.offset = (reach + ps[i].lo) / 2.0;
                best.margin = margin;
                best.side_lo = i - left; // counts on the low side of this gap
                best.side_hi = ps.size() - i;
                found = true;
            }
            left = i;
        }
        reach = std::max(reach, ps[i].hi);
    }
    if (!found) return std::nullopt;
    // recount sides exactly
    best.side_lo = best.side_hi = 0;
    for (const auto& p : ps)
        (p.hi < best.offset ? best.side_lo : best.side_hi) += 1;
    return best;
}

std::vector<std::pair<double, double>> candidate_directions(const BoxCover& cover,
                                                            const ComponentSet& cs) {
    std::vector<std::pair<double, double>> dirs = {{1, 0}};
    if (cover.d == 1) return dirs;
    dirs.emplace_back(0, 1);
    // hull vertices per component
    std::vector<std::vector<Pt2>> hulls;
    for (const auto& comp : cs.components) {
        BoxCover sub;
        sub.d = cover.d;
        sub.cell = cover.cell;
        sub.cells.insert(comp.begin(), comp.end());
        hulls.push_back(cover_hull(sub).polygon);
    }
    auto add = [&dirs](double nx, double ny) {
        double len = std::hypot(nx, ny);
        if (len < 1e-300) return;
        nx /= len;
        ny /= len;
        if (ny < 0 || (ny == 0 && nx < 0)) {
            nx = -nx;
            ny = -ny;
        }
        for (auto& d : dirs)
            if (std::abs(d.first * ny - d.second * nx) < 1e-12 &&
                d.first * nx + d.second * ny > 0)
                return;
        if (dirs.size() < 20000) dirs.emplace_back(nx, ny);
    };
    for (std::size_t i = 0; i < hulls.size(); ++i)
        for (std::size_t j = i + 1; j < hulls.size(); ++j)
            for (const auto& p : hulls[i])
                for (const auto& q : hulls[j])
                    add(-(q.y - p.y), q.x - p.x); // normal of the segment pq
    return dirs;
}

} // namespace

std::optional<SeparationWitness> strongly_disconnected(const BoxCover& cover) {
    if (cover.empty()) throw EmptyInput("strongly_disconnected of empty cover");
    if (cover.d > 2) throw UnsupportedDimension("separation search supports d <= 2");
    ComponentSet cs = components(cover);
    auto dirs = candidate_directions(cover, cs);
    std::optional<SeparationWitness> best;
    for (auto [nx, ny] : dirs) {
        auto w = gap_along(cover, nx, ny);
        if (w && (!best || w->margin > best->margin)) best = w;
    }
    return best;
}

std::vector<std::vector<std::int64_t>> weak_components(const BoxCover& cover) {
    if (cover.empty()) throw EmptyInput("weak_components of empty cover");
    ComponentSet cs = components(cover);
    struct Group {
        std::vector<std::int64_t> cells;
        std::vector<Pt2> hull;
    };
    std::vector<Group> groups;
    for (auto& comp : cs.components) {
        Group g;
        g.cells = comp;
        if (cover.d == 2) {
            BoxCover sub;
            sub.d = 2;
            sub.cell = cover.cell;
            sub.cells.insert(comp.begin(), comp.end());
            g.hull = cover_hull(sub).polygon;
        }
        groups.push_back(std::move(g));
    }

    auto interval_of = [&](const Group& g, double& lo, double& hi) {
        lo = 1e300;
        hi = -1e300;
        for (std::int64_t k : g.cells) {
            lo = std::min(lo, k * cover.cell);
            hi = std::max(hi, (k + 1) * cover.cell);
        }
    };

    // a hyperplane separates two groups iff their convex hulls are disjoint
    auto separable = [&](const Group& a, const Group& b) {
        if (cover.d == 1) {
            double alo, ahi, blo, bhi;
            interval_of(a, alo, ahi);
            interval_of(b, blo, bhi);
            return ahi < blo || bhi < alo;
        }
        return !convex_overlap(a.hull, b.hull);
    };

    bool merged = true;
    while (merged) {
        merged = false;
        for (std::size_t i = 0; i < groups.size() && !merged; ++i)
            for (std::size_t j = i + 1; j < groups.size() && !merged; ++j) {
                if (separable(groups[i], groups[j])) continue;
                groups[i].cells.insert(groups[i].cells.end(), groups[j].cells.begin(),
                                       groups[j].cells.end());
                if (cover.d == 2) {
                    BoxCover sub;
                    sub.d = 2;
                    sub.cell = cover.cell;
                    sub.cells.insert(groups[i].cells.begin(), groups[i].cells.end());
                    groups[i].hull = cover_hull(sub).polygon;
                }
                groups.erase(groups.begin() + static_cast<std::ptrdiff_t>(j));
                merged = true;
            }
    }

    std::vector<std::vector<std::int64_t>> out;
    std::size_t total = 0;
    for (auto& g : groups) {
        std::sort(g.cells.begin(), g.cells.end());
        total += g.cells.size();
        out.push_back(std::move(g.cells));
    }
    if (total != cover.cells.size())
        throw Error("weak_components: partition check failed");
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return out;
}

WeakThresholdBracket weak_threshold(const OneParamFamily& fam, double resolution,
                                    double cell, std::size_t node_budget) {
    Classification c = classify_auto(fam);
    if (!c.is_semi_linear || c.is_linear)
        throw NotApplicable("weak_threshold needs a semi-linear, non-linear family");
    Threshold th = t0_threshold(fam);
    double t0 = th.lo; // certified side
    double lo = 1e-3 * t0, hi = t0 * (1.0 - 1e-3);
    WeakThresholdBracket out;

    auto probe_disconnected = [&](double t) {
        Ball trap = trapping_ball(fam, t);
        auto maps = instantiate(fam, t);
        BoxCover cover = word_cover(maps, trap, cell, node_budget);
        auto w = strongly_disconnected(cover);
        bool certified = w && w->margin > cover.cell;
        out.probes.emplace_back(t, certified);
        return certified;
    };

    if (!probe_disconnected(lo)) {
        // never strongly disconnected anywhere we can certify
        out.tau_lo = 0;
        out.tau_hi = lo;
        return out;
    }
    if (probe_disconnected(hi)) {
        out.tau_lo = hi;
        out.tau_hi = t0;
        return out;
    }
    while (hi - lo > resolution) {
        double mid = (lo + hi) / 2.0;
        if (probe_disconnected(mid))
            lo = mid;
        else
            hi = mid;
    }
    out.tau_lo = lo;
    out.tau_hi = hi;
    return out;
}

} // namespace ifslab
