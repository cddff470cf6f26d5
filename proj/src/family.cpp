#include "ifslab/family.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

namespace ifslab {

std::vector<AffineMap> instantiate(const OneParamFamily& fam, double t) {
    if (t < 0) throw Error("instantiate: t must be nonnegative");
    std::vector<AffineMap> out;
    out.reserve(fam.members.size());
    for (const auto& m : fam.members) out.push_back(instantiate_member(m, t));
    return out;
}

AffineMap instantiate_member(const FamilyMember& m, double t) {
    AffineMap g;
    g.L = t * m.L;
    g.a = t * m.a + m.q;
    return g;
}

Vec fixed_point(const FamilyMember& m, double t, double tol) {
    if (t == 0.0) return m.q;
    Mat A = Mat::identity(m.L.d) - t * m.L;
    return solve(A, t * m.a + m.q, tol);
}

static bool vecs_equal(const Vec& a, const Vec& b, double tol) {
    for (int i = 0; i < a.d; ++i)
        if (std::abs(a[i] - b[i]) > tol) return false;
    return true;
}

Classification classify(const OneParamFamily& fam, const std::vector<double>& t_samples) {
    Classification c;
    const int d = fam.d;

    c.is_semi_linear = true;
    for (const auto& m : fam.members) {
        Vec r = m.L * m.q + m.a;
        double scale = 1.0 + norm2(m.q);
        if (norm2(r) > 1e-12 * scale) {
            c.is_semi_linear = false;
            break;
        }
    }

    c.is_linear = c.is_semi_linear;
    if (c.is_linear)
        for (size_t i = 1; i < fam.members.size(); ++i)
            if (!vecs_equal(fam.members[i].q, fam.members[0].q, 1e-12)) {
                c.is_linear = false;
                break;
            }

    c.is_similarity = true;
    std::vector<double> ratios;
    for (const auto& m : fam.members) {
        double r = similarity_ratio(m.L);
        if (r < 0) {
            c.is_similarity = false;
            break;
        }
        ratios.push_back(r);
    }
    if (c.is_similarity) c.scaling_ratios = ratios;

    // quasi-linear: per-t common fixed point at every sample
    c.is_quasi_linear = true;
    for (double t : t_samples) {
        Vec fp0;
        try {
            fp0 = fixed_point(fam.members[0], t);
        } catch (const SingularSystem&) {
            c.is_quasi_linear = false;
            break;
        }
        double scale = 1.0 + norm2(fp0);
        bool all = true;
        for (size_t i = 1; i < fam.members.size(); ++i) {
            try {
                if (dist2(fixed_point(fam.members[i], t), fp0) > 1e-9 * scale) {
                    all = false;
                    break;
                }
            } catch (const SingularSystem&) {
                all = false;
                break;
            }
        }
        if (!all) {
            c.is_quasi_linear = false;
            break;
        }
    }

    c.is_bounded = false;
    if (c.is_semi_linear && c.is_similarity) {
        double rmax = *std::max_element(ratios.begin(), ratios.end());
        int hits = 0;
        for (double r : ratios)
            if (r > rmax - 1e-12) ++hits;
        c.is_bounded = (hits == 1);
    }

    std::optional<DegeneracyWitness> w;
    c.is_degenerate = detect_degenerate(fam, &w);
    c.degeneracy_witness = w;
    (void)d;
    return c;
}

Classification classify_auto(const OneParamFamily& fam, double t_upper) {
    int k = 2 * fam.d + 3;
    std::vector<double> ts;
    for (int i = 1; i <= k; ++i) ts.push_back(t_upper * i / (k + 1.0));
    return classify(fam, ts);
}

ScalingData scaling_data(const OneParamFamily& fam) {
    ScalingData s;
    for (const auto& m : fam.members) {
        double r = similarity_ratio(m.L);
        if (r < 0) throw NotSimilarity("linear part is not a similarity");
        s.ratios.push_back(r);
    }
    s.argmax = static_cast<int>(
        std::max_element(s.ratios.begin(), s.ratios.end()) - s.ratios.begin());
    return s;
}

// --- degeneracy ------------------------------------------------------------

namespace {

// normalize direction, or zero-length signal
bool unit(Vec& v) {
    double n = norm2(v);
    if (n < 1e-13) return false;
    v *= 1.0 / n;
    return true;
}

bool parallel(const Vec& u, const Vec& v) {
    // both unit vectors
    double d = std::abs(dot(u, v));
    return d > 1.0 - 1e-10;
}

// real eigendirections of a 2x2 or 3x3 matrix; "scalar" means every
// direction is eigen (L = c I)
struct EigDirs {
    bool scalar = false;
    std::vector<Vec> dirs;
};

EigDirs real_eigendirections(const Mat& L) {
    EigDirs e;
    int d = L.d;
    double off = 0, scale = 0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            scale = std::max(scale, std::abs(L(i, j)));
            if (i != j) off = std::max(off, std::abs(L(i, j)));
        }
    double diagspread = 0;
    for (int i = 1; i < d; ++i) diagspread = std::max(diagspread, std::abs(L(i, i) - L(0, 0)));
    if (off < 1e-12 * std::max(1.0, scale) && diagspread < 1e-12 * std::max(1.0, scale)) {
        e.scalar = true;
        return e;
    }
    if (d == 2) {
        double tr = L(0, 0) + L(1, 1);
        double dt = det(L);
        double disc = tr * tr / 4.0 - dt;
        if (disc < -1e-14 * std::max(1.0, scale * scale)) return e; // complex pair
        double s = std::sqrt(std::max(0.0, disc));
        for (double lam : {tr / 2.0 - s, tr / 2.0 + s}) {
            // kernel of L - lam I
            Mat A = L - lam * Mat::identity(2);
            Vec v(2);
            // pick the larger row, solve for its null direction
            double r0 = std::hypot(A(0, 0), A(0, 1));
            double r1 = std::hypot(A(1, 0), A(1, 1));
            if (r0 >= r1) {
                v[0] = -A(0, 1);
                v[1] = A(0, 0);
            } else {
                v[0] = -A(1, 1);
                v[1] = A(1, 0);
            }
            if (unit(v)) {
                bool dup = false;
                for (auto& u : e.dirs) dup = dup || parallel(u, v);
                if (!dup) e.dirs.push_back(v);
            }
        }
    } else if (d == 3) {
        // real eigenvalues from the closed-form moduli are not enough (signs),
        // so probe candidate eigenvalues lam among roots of the characteristic
        // polynomial found by eigen_moduli with both signs.
        for (double m : eigen_moduli(L)) {
            for (double lam : {m, -m}) {
                Mat A = L - lam * Mat::identity(3);
                // null direction via cross products of rows
                Vec r0{A(0, 0), A(0, 1), A(0, 2)};
                Vec r1{A(1, 0), A(1, 1), A(1, 2)};
                Vec r2{A(2, 0), A(2, 1), A(2, 2)};
                auto cross3 = [](const Vec& a, const Vec& b) {
                    Vec c(3);
                    c[0] = a[1] * b[2] - a[2] * b[1];
                    c[1] = a[2] * b[0] - a[0] * b[2];
                    c[2] = a[0] * b[1] - a[1] * b[0];
                    return c;
                };
                Vec c01 = cross3(r0, r1), c02 = cross3(r0, r2), c12 = cross3(r1, r2);
                Vec v = c01;
                if (norm2(c02) > norm2(v)) v = c02;
                if (norm2(c12) > norm2(v)) v = c12;
                if (!unit(v)) continue;
                Vec chk = L * v - lam * v;
                if (norm2(chk) > 1e-8 * std::max(1.0, scale)) continue;
                bool dup = false;
                for (auto& u : e.dirs) dup = dup || parallel(u, v);
                if (!dup) e.dirs.push_back(v);
            }
        }
    }
    return e;
}

bool in_span(const Vec& x, const Vec& v) { // v unit
    Vec r = x - dot(x, v) * v;
    return norm2(r) <= 1e-9 * (1.0 + norm2(x));
}

// does W = q1 + span(v) satisfy all degeneracy conditions?
bool line_works(const OneParamFamily& fam, const Vec& v) {
    const Vec& p = fam.members[0].q;
    for (const auto& m : fam.members) {
        if (!in_span(m.q - p, v)) return false;
        Vec Lv = m.L * v;
        if (!in_span(Lv, v)) return false;
        if (!in_span(m.L * p + m.a, v)) return false;
    }
    return true;
}

} // namespace

TriState detect_degenerate(const OneParamFamily& fam,
                           std::optional<DegeneracyWitness>* witness) {
    if (fam.d > 3) throw UnsupportedDimension("detect_degenerate supports d <= 3");
    if (witness) witness->reset();
    if (fam.d == 1) return TriState::No; // by convention: points don't count

    // Candidate directions for an invariant line W = q_1 + span(v):
    //  - if some q_i != q_1, v is forced parallel to q_i - q_1
    //  - else if some L_i q_1 + a_i != 0, v is forced parallel to it
    //  - else v must be a common eigendirection of the L_i
    const Vec& p = fam.members[0].q;
    std::vector<Vec> forced;
    for (const auto& m : fam.members) {
        Vec dq = m.q - p;
        if (unit(dq)) forced.push_back(dq);
        Vec img = m.L * p + m.a;
        if (unit(img)) forced.push_back(img);
    }

    auto try_candidates = [&](const std::vector<Vec>& cands) -> bool {
        for (const auto& v : cands)
            if (line_works(fam, v)) {
                if (witness) *witness = DegeneracyWitness{p, {v}};
                return true;
            }
        return false;
    };

    bool found = false;
    if (!forced.empty()) {
        found = try_candidates({forced[0]}); // all forced dirs must agree anyway
        if (!found)
            found = try_candidates(forced);
    } else {
        // free direction: common eigendirections
        bool all_scalar = true;
        std::vector<Vec> cands;
        for (const auto& m : fam.members) {
            EigDirs e = real_eigendirections(m.L);
            if (e.scalar) continue;
            all_scalar = false;
            if (cands.empty())
                cands = e.dirs;
        }
        if (all_scalar) {
            Vec v(fam.d);
            v[0] = 1.0;
            found = line_works(fam, v);
            if (found && witness) *witness = DegeneracyWitness{p, {v}};
        } else {
            found = try_candidates(cands);
        }
    }
    if (found) return TriState::Yes;
    if (fam.d == 2) return TriState::No; // line candidates are exhaustive in the plane

    // d = 3: also look for an invariant plane V with normal n, a common
    // eigendirection of the transposes.
    EigDirs e0 = real_eigendirections(transpose(fam.members[0].L));
    std::vector<Vec> normals = e0.scalar ? std::vector<Vec>{} : e0.dirs;
    // forced membership conditions also constrain n: n ⟂ (q_i - q_1), n ⟂ (L_i q_1 + a_i)
    for (const auto& n : normals) {
        bool ok = true;
        for (const auto& m : fam.members) {
            if (std::abs(dot(m.q - p, n)) > 1e-9) { ok = false; break; }
            if (std::abs(dot(m.L * p + m.a, n)) > 1e-9) { ok = false; break; }
            Vec Ltn = transpose(m.L) * n;
            if (!in_span(Ltn, n)) { ok = false; break; }
        }
        if (ok) {
            if (witness) {
                // basis of the plane: two unit vectors orthogonal to n
                Vec u{1, 0, 0};
                if (std::abs(n[0]) > 0.9) u = Vec{0, 1, 0};
                Vec b1 = u - dot(u, n) * n;
                unit(b1);
                Vec b2(3);
                b2[0] = n[1] * b1[2] - n[2] * b1[1];
                b2[1] = n[2] * b1[0] - n[0] * b1[2];
                b2[2] = n[0] * b1[1] - n[1] * b1[0];
                *witness = DegeneracyWitness{p, {b1, b2}};
            }
            return TriState::Yes;
        }
    }
    return TriState::Unknown; // lattice search inconclusive in 3-D
}

// --- serialization ---------------------------------------------------------

using nlohmann::json;

static OneParamFamily family_from_json(const json& j) {
    OneParamFamily fam;
    try {
        if (!j.is_object()) throw SchemaError("top level must be an object");
        if (!j.contains("dim")) throw SchemaError("missing field: dim");
        if (!j.contains("members")) throw SchemaError("missing field: members");
        fam.name = j.value("name", "unnamed");
        fam.d = j.at("dim").get<int>();
        if (fam.d < 1 || fam.d > 3) throw SchemaError("dim must be 1..3");
        const auto& ms = j.at("members");
        if (!ms.is_array() || ms.size() < 2)
            throw SchemaError("members must be an array with N >= 2");
        for (size_t idx = 0; idx < ms.size(); ++idx) {
            const auto& jm = ms[idx];
            std::string where = "members[" + std::to_string(idx) + "]";
            FamilyMember m;
            m.L = Mat(fam.d);
            m.a = Vec(fam.d);
            m.q = Vec(fam.d);
            const auto& L = jm.at("L");
            if (!L.is_array() || static_cast<int>(L.size()) != fam.d)
                throw SchemaError(where + ".L must be a " + std::to_string(fam.d) + "-row matrix");
            for (int r = 0; r < fam.d; ++r) {
                const auto& row = L[static_cast<size_t>(r)];
                if (!row.is_array() || static_cast<int>(row.size()) != fam.d)
                    throw SchemaError(where + ".L row length != dim");
                for (int c = 0; c < fam.d; ++c)
                    m.L(r, c) = row[static_cast<size_t>(c)].get<double>();
            }
            for (const char* fld : {"a", "q"}) {
                const auto& v = jm.at(fld);
                if (!v.is_array() || static_cast<int>(v.size()) != fam.d)
                    throw SchemaError(where + "." + fld + " length != dim");
                Vec& dst = (fld[0] == 'a') ? m.a : m.q;
                for (int i = 0; i < fam.d; ++i) dst[i] = v[static_cast<size_t>(i)].get<double>();
            }
            if (std::abs(det(m.L)) <= 1e-12)
                throw SingularLinearPart(where + ".L has |det| <= 1e-12");
            fam.members.push_back(m);
        }
    } catch (const json::exception& e) {
        throw SchemaError(std::string("malformed family json: ") + e.what());
    }
    return fam;
}

OneParamFamily parse_family(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open family file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw SchemaError(std::string("json parse error in ") + path + ": " + e.what());
    }
    return family_from_json(j);
}

OneParamFamily parse_family_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw SchemaError(std::string("json parse error: ") + e.what());
    }
    return family_from_json(j);
}

std::string serialize_family(const OneParamFamily& fam) {
    json j;
    j["name"] = fam.name;
    j["dim"] = fam.d;
    j["members"] = json::array();
    for (const auto& m : fam.members) {
        json jm;
        jm["L"] = json::array();
        for (int r = 0; r < fam.d; ++r) {
            json row = json::array();
            for (int c = 0; c < fam.d; ++c) row.push_back(m.L(r, c));
            jm["L"].push_back(row);
        }
        jm["a"] = json::array();
        jm["q"] = json::array();
        for (int i = 0; i < fam.d; ++i) {
            jm["a"].push_back(m.a[i]);
            jm["q"].push_back(m.q[i]);
        }
        j["members"].push_back(jm);
    }
    return j.dump(2);
}

} // namespace ifslab
