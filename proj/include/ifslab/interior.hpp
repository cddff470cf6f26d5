#pragma once

#include <optional>
#include <vector>

#include "ifslab/attractor.hpp"

namespace ifslab {

enum class Interior { EmptyCertified, NonEmptyCertified, Unknown };

struct BallCertificate {
    Ball ball;
    int depth = 0;
};

struct InteriorStatus {
    Interior status = Interior::Unknown;
    double measure_threshold = 0;             // populated for EmptyCertified
    std::optional<BallCertificate> certificate; // populated for NonEmptyCertified
};

struct ConeParams {
    double epsilon = 0;
    double theta = 0;
    int M = 0;
    double s = 0;   // ratio of the chosen non-maximal member (normalized)
    double tau = 0; // non-empty interior for t in (tau, t0)
    double phi = 0; // rotation angle of the maximal member
};

// t_m = (sum_i |det L_i|)^(-1/d): attractor has measure zero (hence empty
// interior) for t < t_m.
double measure_zero_threshold(const OneParamFamily& fam);

// True only when every sub-cell of `ball` (inflated by its own diameter)
// lies inside some depth-n word image of the ball; image balls are the
// inscribed balls of the exact affine images (conservative).  True implies
// ball ⊆ attractor.  subdivision <= 0 picks one automatically.
bool ball_certificate(const std::vector<AffineMap>& maps, const Ball& ball, int n,
                      int subdivision = 0, std::size_t word_budget = 10'000'000);

// Dense-rotation-orbit constructive bound (2-D, semi-linear non-linear,
// maximal member a genuine rotation with an irrationality-proxy angle).
ConeParams nonempty_threshold_bound_2d(const OneParamFamily& fam);

struct InteriorScanRow {
    double t = 0;
    InteriorStatus st;
};

struct InteriorScanResult {
    std::vector<InteriorScanRow> rows;
    bool tame_flagged = false; // similarity + semi-linear: t2 bracket applies
    double t2_lo = 0, t2_hi = 0;
};

// Per-t interior statuses + a t2 bracket under the tameness assumption.
// Throws Error on a monotonicity violation of the tame-flagged scan.
InteriorScanResult interior_scan(const OneParamFamily& fam, const std::vector<double>& t_grid,
                                 double cell, int max_n,
                                 std::size_t node_budget = 50'000'000);

// Chebyshev distance transform peak of a cover: the most interior cell and
// its depth (in cells).  Used to seed certificate balls.
std::vector<std::pair<Vec, double>> interior_ball_candidates(const BoxCover& cover,
                                                             std::size_t top_k = 3);

} // namespace ifslab
