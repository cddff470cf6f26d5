#pragma once

#include <vector>

#include "ifslab/family.hpp"

namespace ifslab {

struct Word {
    std::vector<int> indices; // 0-based member indices
};

struct JsrBounds {
    double lower = 0;
    double upper = 0;
    int depth = 0;
    Word witness_word; // attains the lower bound; lexicographically smallest
};

// Anytime bounds on the joint spectral radius of a set of linear parts.
// lower: max over words of length <= max_depth of rho(L_sigma)^(1/|sigma|).
// upper: min over levels l <= max_depth of (max_{|sigma|=l} ||L_sigma||_2)^(1/l).
// Branch-and-bound pruning is applied only to subtrees that can affect
// neither bound.
JsrBounds jsr_bounds(const std::vector<Mat>& linear_parts, int max_depth);

struct Threshold {
    double lo = 0; // certified lower end of t0
    double hi = 0;
    bool exact = false;
};

// Existence threshold t0 = 1/rho.  Exact (Corollary-style) for similarity
// families: t0 = 1/max r_i; otherwise [1/upper, 1/lower] from jsr_bounds.
Threshold t0_threshold(const OneParamFamily& fam, int max_depth = 10);

} // namespace ifslab
