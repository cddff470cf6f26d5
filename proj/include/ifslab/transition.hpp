#pragma once

#include <string>
#include <vector>

#include "ifslab/attractor.hpp"
#include "ifslab/topology.hpp"

namespace ifslab {

struct SpecialFunction {
    int index = -1; // unique member of maximal scaling ratio
    Vec q_star;     // its offset = its fixed point for every t
};

// Throws NotBounded unless the family is bounded.
SpecialFunction special_function(const OneParamFamily& fam);

// Breadth-first orbit closure of q_star under the t0 instance, points
// deduplicated on an (epsilon/8)-lattice.  Throws BudgetExceeded when
// max_points is hit before the frontier empties, unless allow_truncation is
// set (then the partial orbit is returned).
PointSample lower_transition_attractor(const OneParamFamily& fam, double epsilon,
                                       std::size_t max_points,
                                       bool allow_truncation = false);

struct TransitionHulls {
    std::vector<double> ts;
    std::vector<HullResult> hulls;   // per t, nested within 2*cell slack
    HullResult k_star;               // hull(outermost cover ∪ orbit points)
    double cell = 0;
};

// Throws NestingViolation when a hull vertex leaves the next hull by more
// than 2*cell.
TransitionHulls transition_hull(const OneParamFamily& fam, const std::vector<double>& t_grid,
                                double cell, std::size_t node_budget = 100'000'000);

// hausdorff(F_t0(S), S)
double invariance_residual(const PointSample& sample, const OneParamFamily& fam);

struct CauchyRow {
    double t_a = 0, t_b = 0;
    double dist = 0;
};

struct UpperTransitionEvidence {
    std::vector<CauchyRow> table;
    std::string verdict;   // "cauchy-evidence" or "inconclusive"
    double hull_gap = 0;   // distance of the last hull's vertices to K_star
};

UpperTransitionEvidence upper_transition_evidence(const OneParamFamily& fam,
                                                  const std::vector<double>& t_sequence,
                                                  double cell,
                                                  std::size_t node_budget = 100'000'000);

} // namespace ifslab
