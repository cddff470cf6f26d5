#include "ifslab/jsr.hpp"

#include <algorithm>
#include <cmath>

namespace ifslab {

namespace {

struct Enumerator {
    const std::vector<Mat>& mats;
    int max_depth;
    double gmax; // max member spectral norm
    double lower = 0;
    std::vector<int> word;
    Word witness;
    std::vector<double> level_max; // max spectral norm per level, 1-based

    explicit Enumerator(const std::vector<Mat>& m, int depth)
        : mats(m), max_depth(depth), level_max(static_cast<size_t>(depth) + 1, 0.0) {
        gmax = 0;
        for (const auto& M : mats) gmax = std::max(gmax, spectral_norm(M));
    }

    // A subtree rooted at a depth-m prefix with product norm pn is dead when
    // no completion at any level l <= max_depth can reach the current lower
    // bound: pn * gmax^(l-m) < lower^l for all l in (m, max_depth].  Norms
    // dominate spectral radii, so such words can improve neither bound (the
    // per-level norm maximum is then attained by an unpruned word).
    bool prunable(int m, double pn) const {
        if (lower <= 0) return false;
        double ext = pn;
        double low = 1;
        for (int l = 1; l <= m; ++l) low *= lower;
        for (int l = m + 1; l <= max_depth; ++l) {
            ext *= gmax;
            low *= lower;
            if (ext >= low) return false;
        }
        return true;
    }

    void visit(const Mat& prod, int depth) {
        double rho = spectral_radius(prod);
        double cand = std::pow(rho, 1.0 / depth);
        if (cand > lower) { // strict: keeps the lex-smallest witness
            lower = cand;
            witness.indices = word;
        }
        double nrm = spectral_norm(prod);
        level_max[static_cast<size_t>(depth)] = std::max(level_max[static_cast<size_t>(depth)], nrm);
        if (depth == max_depth) return;
        if (prunable(depth, nrm)) return;
        for (int i = 0; i < static_cast<int>(mats.size()); ++i) {
            word.push_back(i);
            visit(prod * mats[static_cast<size_t>(i)], depth + 1);
            word.pop_back();
        }
    }
};

} // namespace

JsrBounds jsr_bounds(const std::vector<Mat>& linear_parts, int max_depth) {
    if (max_depth < 1) throw DepthTooSmall("jsr_bounds requires max_depth >= 1");
    if (linear_parts.empty()) throw EmptyInput("jsr_bounds with no matrices");
    max_depth = std::min(max_depth, 20);

    Enumerator e(linear_parts, max_depth);
    for (int i = 0; i < static_cast<int>(linear_parts.size()); ++i) {
        e.word.push_back(i);
        e.visit(linear_parts[static_cast<size_t>(i)], 1);
        e.word.pop_back();
    }

    JsrBounds b;
    b.lower = e.lower;
    b.depth = max_depth;
    b.witness_word = e.witness;
    b.upper = 1e300;
    for (int l = 1; l <= max_depth; ++l) {
        double lm = e.level_max[static_cast<size_t>(l)];
        if (lm > 0) b.upper = std::min(b.upper, std::pow(lm, 1.0 / l));
    }
    b.upper = std::max(b.upper, b.lower); // guard rounding at the crossover
    return b;
}

Threshold t0_threshold(const OneParamFamily& fam, int max_depth) {
    Threshold th;
    bool sim = true;
    double rmax = 0;
    for (const auto& m : fam.members) {
        double r = similarity_ratio(m.L);
        if (r < 0) {
            sim = false;
            break;
        }
        rmax = std::max(rmax, r);
    }
    if (sim) {
        th.lo = th.hi = 1.0 / rmax;
        th.exact = true;
        return th;
    }
    std::vector<Mat> parts;
    for (const auto& m : fam.members) parts.push_back(m.L);
    JsrBounds b = jsr_bounds(parts, max_depth);
    th.lo = 1.0 / b.upper;
    th.hi = 1.0 / b.lower;
    th.exact = false;
    return th;
}

} // namespace ifslab
