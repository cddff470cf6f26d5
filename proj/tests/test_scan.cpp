#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "ifslab/scan.hpp"

using namespace ifslab;
using ifslab::testing::load;

TEST_CASE("complex instance encodes rotation-scaling correctly") {
    ComplexFamilySpec spec; // {tau z, tau z + 1}
    double tr = 0.3, ti = 0.4;
    auto maps = complex_instance(spec, tr, ti);
    REQUIRE(maps.size() == 2);
    // tau * (1 + 2i) = (0.3 - 0.8) + (0.4 + 0.6) i = -0.5 + i
    Vec z = maps[0](Vec{1, 2});
    CHECK(z[0] == doctest::Approx(-0.5));
    CHECK(z[1] == doctest::Approx(1.0));
    Vec w = maps[1](Vec{0, 0});
    CHECK(w[0] == doctest::Approx(1.0));
    CHECK(w[1] == doctest::Approx(0.0));

    Ball trap = complex_trap(spec, tr, ti);
    for (const auto& m : maps) {
        // trap maps into itself: test boundary points
        for (int k = 0; k < 16; ++k) {
            double a = 2 * 3.14159265358979 * k / 16;
            Vec p{trap.center[0] + trap.radius * std::cos(a),
                  trap.center[1] + trap.radius * std::sin(a)};
            CHECK(dist2(m(p), trap.center) <= trap.radius * (1 + 1e-12));
        }
    }
    CHECK_THROWS_AS(complex_trap(spec, 0.8, 0.7), NotTrapping); // |tau| > 1
}

TEST_CASE("pixel status on the real axis of the two-map family") {
    ComplexFamilySpec spec;
    CHECK(pixel_status(spec, 0.6, 0.0, 4) == Connectivity::ConnectedEvidence);
    CHECK(pixel_status(spec, 0.3, 0.0, 4) == Connectivity::DisconnectedCertified);
    CHECK(pixel_status(spec, 0.49, 0.0, 5) == Connectivity::DisconnectedCertified);
}

TEST_CASE("mandelbrot scan: tiny image, deterministic, region validation") {
    ComplexFamilySpec spec;
    Region reg{0.25, 0.0, 0.65, 0.2};
    PlaneScan a = mandelbrot_scan(spec, reg, 8, 4, 3);
    PlaneScan b = mandelbrot_scan(spec, reg, 8, 4, 3, 4);
    CHECK(a.status == b.status); // thread-count independent
    REQUIRE(a.status.size() == 32);
    // left edge (tau ~ 0.25) disconnected, right edge (tau ~ 0.65) connected
    CHECK(a.status[0] == kPixelDisconnected);
    CHECK(a.status[7] == kPixelConnected);
    CHECK_THROWS_AS(mandelbrot_scan(spec, Region{0.5, 0.5, 1.2, 0.9}, 4, 4, 2),
                    RegionOutsideDisk);
}

TEST_CASE("family scan rows carry the requested analyses") {
    auto fam = load("eq4_real");
    FamilyScanRequest req;
    req.connectivity = true;
    req.hulls = true;
    req.cell = 1.0 / 128;
    req.max_refinements = 3;
    auto rows = family_scan(fam, {0.3, 0.7}, req);
    REQUIRE(rows.size() == 2);
    REQUIRE(rows[0].connectivity.has_value());
    CHECK(rows[0].connectivity->status == Connectivity::DisconnectedCertified);
    CHECK(rows[1].connectivity->status == Connectivity::ConnectedEvidence);
    REQUIRE(rows[1].hull.has_value());
    CHECK(rows[1].hull->lo <= 0.0 + 1e-9);
    CHECK(rows[1].hull->hi >= 0.7 / 0.3 - 0.1); // interval [0, t/(1-t)]

    auto rows2 = family_scan(fam, {0.3, 0.7}, req, 4);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].connectivity->status == rows2[i].connectivity->status);
        CHECK(rows[i].connectivity->gap == rows2[i].connectivity->gap);
    }
}
