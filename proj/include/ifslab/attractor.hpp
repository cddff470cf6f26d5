#pragma once

#include <cstdint>
#include <unordered_set>
#include <vector>

#include "ifslab/family.hpp"

namespace ifslab {

struct Ball {
    Vec center;
    double radius = 0;
};

// Finite union of grid cells on the absolute lattice {[i*cell, (i+1)*cell)};
// the computable outer approximation of an attractor.  d <= 2.
struct BoxCover {
    int d = 0;
    double cell = 0;
    int level = 0;
    std::unordered_set<std::int64_t> cells; // packed lattice coords

    static std::int64_t key(std::int64_t ix, std::int64_t iy) {
        return (static_cast<std::int64_t>(static_cast<std::uint32_t>(ix)) << 32) |
               static_cast<std::uint32_t>(iy);
    }
    static void unpack(std::int64_t k, std::int64_t& ix, std::int64_t& iy) {
        ix = static_cast<std::int32_t>(static_cast<std::uint64_t>(k) >> 32);
        iy = static_cast<std::int32_t>(static_cast<std::uint32_t>(k & 0xffffffff));
    }

    bool empty() const { return cells.empty(); }
    std::size_t size() const { return cells.size(); }

    // cell centers as SoA arrays (ys empty for d = 1)
    void centers(std::vector<double>& xs, std::vector<double>& ys) const;
    // corners of cells that touch the cover's boundary (for hulls)
    std::vector<Pt2> boundary_corners() const;
};

struct PointSample {
    int d = 0;
    std::vector<double> xs, ys; // ys empty for d = 1
    std::uint64_t seed = 0;
    std::vector<double> weights;

    std::size_t size() const { return xs.size(); }
};

// Ball B with F_t(B) ⊆ B.  Bounded families get a t-uniform ball centered at
// the special fixed point (valid for all t ≤ t0); otherwise the origin-
// centered norm bound, with a depth-m word fallback when one step does not
// contract.
Ball trapping_ball(const OneParamFamily& fam, double t);

// Cell-wise conservative Hutchinson fixpoint (multi-level refinement down to
// `cell`).  Outer cover; throws NotTrapping / BudgetExceeded.
BoxCover compute_attractor(const std::vector<AffineMap>& maps, const Ball& trap,
                           double cell, int max_iters = 0, int threads = 1);

// One-shot adaptive word rasterization: recurse on compositions until the
// image of the trapping ball fits in `leaf_frac` cells, then mark overlapped
// cells.  Also an outer cover; bounded work for any contracting instance.
// Larger leaf_frac trades cover tightness for speed (useful near ratio 1).
// Throws BudgetExceeded when the node budget is exhausted.
BoxCover word_cover(const std::vector<AffineMap>& maps, const Ball& trap,
                    double cell, std::size_t max_nodes = 50'000'000,
                    double leaf_frac = 0.5);

PointSample chaos_game(const std::vector<AffineMap>& maps, std::size_t n,
                       const std::vector<double>& weights, std::uint64_t seed,
                       const Ball& trap);

// Symmetric Hausdorff distance between discrete point sets (exact for the
// sets given); grid-bucketed nearest-neighbor sweep.
double hausdorff(const std::vector<double>& axs, const std::vector<double>& ays,
                 const std::vector<double>& bxs, const std::vector<double>& bys,
                 int threads = 1);
double hausdorff(const BoxCover& a, const BoxCover& b, int threads = 1);
double hausdorff(const PointSample& a, const PointSample& b, int threads = 1);

struct HullResult {
    int d = 0;
    double lo = 0, hi = 0;      // d = 1
    std::vector<Pt2> polygon;   // d = 2, CCW
};

// Convex hull of a cover (outer cell corners) or sample points.
HullResult cover_hull(const BoxCover& c);
HullResult sample_hull(const PointSample& s);

// Apply every map of an instance to a sample, returning the union
// (used for invariance residuals).
PointSample apply_instance(const std::vector<AffineMap>& maps, const PointSample& s);

} // namespace ifslab
