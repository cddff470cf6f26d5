#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ifslab/io.hpp"

using namespace ifslab;
namespace fs = std::filesystem;

namespace {
std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}
} // namespace

TEST_CASE("fmt_double round trips") {
    for (double v : {0.0, 1.0, 1.0 / 3.0, 1e-17, -2.5e300, 0.1}) {
        CHECK(std::stod(fmt_double(v)) == v);
    }
    CHECK(fmt_double(0.5) == "0.5");
}

TEST_CASE("fnv1a64 known vectors") {
    // standard FNV-1a test vectors
    CHECK(fnv1a64("", 0) == 0xcbf29ce484222325ull);
    CHECK(fnv1a64("a", 1) == 0xaf63dc4c8601ec8cull);
    CHECK(fnv1a64("foobar", 6) == 0x85944171f73967e8ull);
}

TEST_CASE("PGM writer: geometry, polarity, sidecar") {
    fs::path dir = fs::temp_directory_path() / "ifslab_io_test";
    fs::create_directories(dir);
    BoxCover c;
    c.d = 2;
    c.cell = 0.25;
    c.cells.insert(BoxCover::key(0, 0));  // lower-left
    c.cells.insert(BoxCover::key(2, 1));  // upper-right
    std::string p = (dir / "c.pgm").string();
    write_cover_pgm(p, c);

    std::string raw = slurp(p);
    // header P5, width 3, height 2
    CHECK(raw.substr(0, 2) == "P5");
    std::istringstream hs(raw);
    std::string magic;
    int w, h, maxval;
    hs >> magic >> w >> h >> maxval;
    REQUIRE(w == 3);
    REQUIRE(h == 2);
    REQUIRE(maxval == 255);
    std::string pix = raw.substr(raw.size() - 6);
    // row 0 = top = largest y: occupied (2,1) at column 2
    CHECK(static_cast<unsigned char>(pix[2]) == 0);
    CHECK(static_cast<unsigned char>(pix[0]) == 255);
    // row 1 = bottom: occupied (0,0) at column 0
    CHECK(static_cast<unsigned char>(pix[3]) == 0);
    CHECK(static_cast<unsigned char>(pix[5]) == 255);

    auto side = nlohmann::json::parse(slurp(p + ".json"));
    CHECK(side["cell"] == 0.25);
    CHECK(side["width"] == 3);
    CHECK(side["height"] == 2);
    CHECK(side["origin"][0] == 0.0);

    // manifest over the two files
    write_manifest(dir.string(), {"c.pgm", "c.pgm.json"});
    auto man = nlohmann::json::parse(slurp((dir / "manifest.json").string()));
    REQUIRE(man.size() == 2);
    char expect[17];
    std::snprintf(expect, sizeof expect, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(raw.data(), raw.size())));
    CHECK(man[0]["file"] == "c.pgm");
    CHECK(man[0]["fnv1a64"] == expect);
    fs::remove_all(dir);
}

TEST_CASE("CSV writers use point decimals and newline rows") {
    fs::path dir = fs::temp_directory_path() / "ifslab_csv_test";
    fs::create_directories(dir);
    PointSample s;
    s.d = 2;
    s.xs = {0.5, 1.5};
    s.ys = {-0.25, 3.0};
    std::string p = (dir / "s.csv").string();
    write_sample_csv(p, s);
    std::string raw = slurp(p);
    CHECK(raw == "x,y\n0.5,-0.25\n1.5,3\n");
    fs::remove_all(dir);
}
