#pragma once

#include <optional>
#include <vector>

#include "ifslab/attractor.hpp"

namespace ifslab {

struct ComponentSet {
    std::vector<std::vector<std::int64_t>> components; // packed cell keys
    // minimum inter-component Euclidean gap; when components are far apart
    // this is a certified lower bound (window-limited search)
    double gap = 0;
    bool gap_is_lower_bound = false;
};

struct SeparationWitness {
    double nx = 0, ny = 0; // unit normal
    double offset = 0;     // hyperplane <normal, x> = offset
    double margin = 0;     // width of the empty strip
    std::size_t side_lo = 0, side_hi = 0;
};

enum class Connectivity { DisconnectedCertified, ConnectedEvidence, Unresolved };

struct ConnectivityStatus {
    Connectivity status = Connectivity::Unresolved;
    int refinement_level = 0;
    int n_components = 1;
    double gap = 0;
    std::optional<SeparationWitness> witness;
};

// Connected components under 8-adjacency (2-D) / interval adjacency (1-D).
ComponentSet components(const BoxCover& cover);

// Refine outer covers until they split with a positive gap (certified) or
// stay one component at the finest level (evidence).
ConnectivityStatus connectivity_status(const OneParamFamily& fam, double t,
                                       double cell_start, int max_refinements,
                                       std::size_t node_budget = 50'000'000);

// Similarity families: attractor connected for every t in (tau_bar, t0).
double connectivity_lower_bound(const OneParamFamily& fam);

// Exact separating-hyperplane search for box unions in d <= 2; returns the
// maximal-margin witness, or nothing when no direction has an interior gap.
std::optional<SeparationWitness> strongly_disconnected(const BoxCover& cover);

// Maximal weakly-connected groups: start from connected components, merge
// pairs whose convex hulls cannot be separated, repeat to a fixpoint.
std::vector<std::vector<std::int64_t>> weak_components(const BoxCover& cover);

struct WeakThresholdBracket {
    double tau_lo = 0;
    double tau_hi = 0;
    // probe records: (t, certified strong disconnection?)
    std::vector<std::pair<double, bool>> probes;
};

// Bisection for the strong/weak transition of semi-linear non-linear
// families; certified-disconnection probes move the bracket up, weak
// evidence moves it down.
WeakThresholdBracket weak_threshold(const OneParamFamily& fam, double resolution,
                                    double cell, std::size_t node_budget = 50'000'000);

} // namespace ifslab
