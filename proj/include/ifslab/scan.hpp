#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ifslab/interior.hpp"
#include "ifslab/topology.hpp"

namespace ifslab {

// Two-map complex-affine family {tau*z + c1, tau*m*z + c2}, encoded per
// pixel as real 2x2 rotation-scalings.  Defaults to {tau z, tau z + 1}.
struct ComplexFamilySpec {
    double c1_re = 0, c1_im = 0;
    double c2_re = 1, c2_im = 0;
    double m_re = 1, m_im = 0;
};

struct Region {
    double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
};

enum : std::uint8_t {
    kPixelDisconnected = 0,
    kPixelUnresolved = 128,
    kPixelConnected = 255,
};

struct PlaneScan {
    Region region;
    int width = 0, height = 0;
    int budget = 0;
    std::vector<std::uint8_t> status; // row-major, row 0 = y0 edge
};

// Instantiated real maps + analytic trapping ball for a pixel parameter.
std::vector<AffineMap> complex_instance(const ComplexFamilySpec& spec, double tau_re,
                                        double tau_im);
Ball complex_trap(const ComplexFamilySpec& spec, double tau_re, double tau_im);

// Per-pixel connectivity classification by refined outer covers.
Connectivity pixel_status(const ComplexFamilySpec& spec, double tau_re, double tau_im,
                          int budget, std::size_t node_cap = 400'000);

// Throws RegionOutsideDisk unless |tau| < 1 at all region corners.
PlaneScan mandelbrot_scan(const ComplexFamilySpec& spec, const Region& region, int width,
                          int height, int budget, int threads = 1,
                          std::size_t node_cap = 400'000);

struct FamilyScanRow {
    double t = 0;
    std::optional<ConnectivityStatus> connectivity;
    std::optional<InteriorStatus> interior;
    std::optional<HullResult> hull;
};

struct FamilyScanRequest {
    bool connectivity = false;
    bool interior = false;
    bool hulls = false;
    double cell = 1.0 / 256;
    int max_refinements = 3;
    int interior_max_n = 6;
    std::size_t node_budget = 50'000'000;
};

std::vector<FamilyScanRow> family_scan(const OneParamFamily& fam,
                                       const std::vector<double>& t_grid,
                                       const FamilyScanRequest& req, int threads = 1);

} // namespace ifslab
