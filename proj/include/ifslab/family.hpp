#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ifslab/geom.hpp"

namespace ifslab {

// One-parameter affine family F_t = { t*(L_i x + a_i) + q_i }.

struct AffineMap {
    Mat L;
    Vec a;

    Vec operator()(const Vec& x) const { return L * x + a; }
};

struct FamilyMember {
    Mat L;
    Vec a;
    Vec q;
};

struct OneParamFamily {
    std::string name;
    int d = 0;
    std::vector<FamilyMember> members;
};

enum class TriState { Yes, No, Unknown };

struct DegeneracyWitness {
    Vec point;               // p with W = p + V
    std::vector<Vec> basis;  // basis of V (may be empty: W a single point)
};

struct Classification {
    bool is_similarity = false;
    bool is_linear = false;
    bool is_quasi_linear = false;
    bool is_semi_linear = false;
    bool is_bounded = false;
    TriState is_degenerate = TriState::Unknown;
    std::optional<DegeneracyWitness> degeneracy_witness;
    std::vector<double> scaling_ratios; // empty unless is_similarity
};

// Maps at parameter t: linear part t*L_i, translation t*a_i + q_i.
// t = 0 gives constant maps (allowed as a limit object).
std::vector<AffineMap> instantiate(const OneParamFamily& fam, double t);

AffineMap instantiate_member(const FamilyMember& m, double t);

// Solve (I - t L) x = t a + q.  Throws SingularSystem when I - tL is
// singular within tolerance.  t = 0 returns q.
Vec fixed_point(const FamilyMember& m, double t, double tol = 1e-10);

Classification classify(const OneParamFamily& fam, const std::vector<double>& t_samples);

// Convenience: classify with 2d+3 samples spread over (0, 0.9*t_guess).
Classification classify_auto(const OneParamFamily& fam, double t_upper = 0.5);

struct ScalingData {
    std::vector<double> ratios;
    int argmax = -1;
};

// Similarity ratios r_i and the index of the maximum.  Throws NotSimilarity.
ScalingData scaling_data(const OneParamFamily& fam);

// Invariant proper affine subspace search (d <= 3).  d=1: No by convention.
// d=2: certified yes/no.  d=3: may return Unknown.
TriState detect_degenerate(const OneParamFamily& fam,
                           std::optional<DegeneracyWitness>* witness = nullptr);

// --- family file I/O -------------------------------------------------------
// JSON: {"name": str, "dim": int,
//        "members": [{"L": [[row-major]], "a": [...], "q": [...]}]}
OneParamFamily parse_family(const std::string& path);
OneParamFamily parse_family_text(const std::string& json_text);
std::string serialize_family(const OneParamFamily& fam);

} // namespace ifslab
