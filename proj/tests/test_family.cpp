#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "ifslab/family.hpp"

using namespace ifslab;
using ifslab::testing::load;

TEST_CASE("parse / serialize round trip and schema diagnostics") {
    OneParamFamily fam = load("ex1_1");
    CHECK(fam.d == 2);
    REQUIRE(fam.members.size() == 2);
    OneParamFamily again = parse_family_text(serialize_family(fam));
    CHECK(again.members[1].q[0] == fam.members[1].q[0]);
    CHECK(again.members[1].L(0, 1) == fam.members[1].L(0, 1));

    CHECK_THROWS_AS(parse_family_text("{}"), SchemaError);
    CHECK_THROWS_AS(parse_family_text(R"({"name":"x","dim":4,"members":[]})"), SchemaError);
    CHECK_THROWS_AS(
        parse_family_text(
            R"({"name":"x","dim":1,"members":[{"L":[[1]],"a":[0],"q":[0]}]})"),
        SchemaError); // fewer than 2 members
    CHECK_THROWS_AS(
        parse_family_text(
            R"({"name":"x","dim":1,"members":[{"L":[[0]],"a":[0],"q":[0]},{"L":[[1]],"a":[0],"q":[1]}]})"),
        SingularLinearPart);
}

TEST_CASE("fixed points against hand-solved linear systems") {
    OneParamFamily fam = load("ex5_8");
    // Both members were built to fix (2, 1) at t = 1/2.
    for (const auto& m : fam.members) {
        Vec p = fixed_point(m, 0.5);
        CHECK(p[0] == doctest::Approx(2).epsilon(1e-12));
        CHECK(p[1] == doctest::Approx(1).epsilon(1e-12));
        // oracle: actually a fixed point of the instantiated map
        Vec img = instantiate_member(m, 0.5)(p);
        CHECK(dist2(img, p) < 1e-12);
    }
    // t = 0: the map is constant q
    Vec p0 = fixed_point(fam.members[0], 0.0);
    CHECK(p0[0] == 1);
    CHECK(p0[1] == 0);
}

TEST_CASE("classification flags on the fixture corpus") {
    auto c1 = classify_auto(load("ex1_1"));
    CHECK(c1.is_similarity);
    CHECK(c1.is_semi_linear);
    CHECK(c1.is_bounded);
    CHECK_FALSE(c1.is_linear);
    REQUIRE(c1.scaling_ratios.size() == 2);
    CHECK(c1.scaling_ratios[0] == 1.0);
    CHECK(c1.scaling_ratios[1] == doctest::Approx(0.4));

    auto c2 = classify_auto(load("ex5_8"));
    CHECK(c2.is_quasi_linear);
    CHECK_FALSE(c2.is_linear);
    CHECK_FALSE(c2.is_similarity); // second member has eigenvalues {1,1}, shear-like

    auto c3 = classify_auto(load("eq4_real"));
    CHECK_FALSE(c3.is_semi_linear); // member with q = 1 has L q + a = 1
    CHECK_FALSE(c3.is_linear);
    CHECK(c3.is_similarity);

    auto c4 = classify_auto(load("ex6_3"));
    CHECK_FALSE(c4.is_similarity); // diag(1, 0.1) is not a similarity
}

TEST_CASE("semi-linearity is exactly the offset identity") {
    // Construct a family where member 1 violates L q + a = 0.
    OneParamFamily fam = load("ex1_1");
    CHECK(classify_auto(fam).is_semi_linear);
    fam.members[1].a[0] += 1e-6;
    CHECK_FALSE(classify_auto(fam).is_semi_linear);
}

TEST_CASE("degeneracy detection") {
    // 1-D: No by convention.
    CHECK(detect_degenerate(load("ex4_6")) == TriState::No);

    // 2-D collinear family: both maps fix the x-axis.
    OneParamFamily fam;
    fam.d = 2;
    fam.name = "line";
    FamilyMember m1;
    m1.L = Mat::identity(2);
    m1.L(0, 0) = 0.5;
    m1.L(1, 1) = 0.3;
    m1.a = Vec{0, 0};
    m1.q = Vec{0, 0};
    FamilyMember m2 = m1;
    m2.L(0, 0) = 0.25;
    m2.q = Vec{1, 0};
    m2.a = Vec{-0.25, 0}; // semi-linear on the line
    fam.members = {m1, m2};
    std::optional<DegeneracyWitness> w;
    CHECK(detect_degenerate(fam, &w) == TriState::Yes);
    REQUIRE(w.has_value());
    REQUIRE(w->basis.size() == 1);
    CHECK(std::abs(w->basis[0][1]) < 1e-12); // direction = x-axis

    // generic 2-D rotation family is non-degenerate
    CHECK(detect_degenerate(load("ex1_1")) == TriState::No);
}

TEST_CASE("scaling data identifies the unique maximal member") {
    auto sd = scaling_data(load("ex1_1"));
    CHECK(sd.argmax == 0);
    CHECK(sd.ratios[0] == 1.0);
    CHECK_THROWS_AS(scaling_data(load("ex6_3")), NotSimilarity);
}
