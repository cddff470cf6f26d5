#pragma once

#include <random>
#include <string>

#include "ifslab/family.hpp"

namespace ifslab::testing {

inline std::string fixture(const std::string& name) {
    return std::string(IFSLAB_FIXTURE_DIR) + "/" + name + ".json";
}

inline OneParamFamily load(const std::string& name) { return parse_family(fixture(name)); }

// Random 2-D similarity-or-general family with member ratios in
// [ratio_lo, ratio_hi]; offsets in [-1, 1]^2.
inline OneParamFamily random_family(std::mt19937_64& rng, int n_members,
                                    double ratio_lo = 0.2, double ratio_hi = 0.95,
                                    bool similarities = true) {
    std::uniform_real_distribution<double> ur(ratio_lo, ratio_hi);
    std::uniform_real_distribution<double> ua(0.0, 6.283185307179586);
    std::uniform_real_distribution<double> uq(-1.0, 1.0);
    OneParamFamily fam;
    fam.name = "random";
    fam.d = 2;
    for (int i = 0; i < n_members; ++i) {
        FamilyMember m;
        m.L = Mat(2);
        double r = ur(rng), phi = ua(rng);
        double c = std::cos(phi), s = std::sin(phi);
        m.L(0, 0) = r * c;
        m.L(0, 1) = -r * s;
        m.L(1, 0) = r * s;
        m.L(1, 1) = r * c;
        if (!similarities) {
            double shear = 0.3 * uq(rng);
            m.L(0, 1) += shear * r;
        }
        m.a = Vec(2);
        m.q = Vec{uq(rng), uq(rng)};
        // semi-linear: a = -L q
        Vec lq = m.L * m.q;
        m.a = Vec{-lq[0], -lq[1]};
        fam.members.push_back(m);
    }
    return fam;
}

} // namespace ifslab::testing
