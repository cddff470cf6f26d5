#include "ifslab/io.hpp"

#include <cstdio>
#include <fstream>
#include <limits>

#include <json.hpp>

namespace ifslab {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open for writing: " + path);
    out << content;
}

void write_cover_pgm(const std::string& path, const BoxCover& cover) {
    if (cover.empty()) throw EmptyInput("writing empty cover");
    std::int64_t x0 = std::numeric_limits<std::int64_t>::max(), x1 = std::numeric_limits<std::int64_t>::min();
    std::int64_t y0 = x0, y1 = x1;
    for (std::int64_t k : cover.cells) {
        std::int64_t ix = k, iy = 0;
        if (cover.d == 2) BoxCover::unpack(k, ix, iy);
        x0 = std::min(x0, ix);
        x1 = std::max(x1, ix);
        y0 = std::min(y0, iy);
        y1 = std::max(y1, iy);
    }
    int W = static_cast<int>(x1 - x0 + 1);
    int H = static_cast<int>(y1 - y0 + 1);
    std::vector<std::uint8_t> img(static_cast<size_t>(W) * static_cast<size_t>(H), 255);
    for (std::int64_t k : cover.cells) {
        std::int64_t ix = k, iy = 0;
        if (cover.d == 2) BoxCover::unpack(k, ix, iy);
        // image row 0 is the top = largest y
        std::size_t row = static_cast<size_t>(y1 - iy);
        img[row * static_cast<size_t>(W) + static_cast<size_t>(ix - x0)] = 0;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open for writing: " + path);
    out << "P5\n" << W << " " << H << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.data()), static_cast<std::streamsize>(img.size()));

    nlohmann::json side;
    side["origin"] = {x0 * cover.cell, y0 * cover.cell};
    side["cell"] = cover.cell;
    side["width"] = W;
    side["height"] = H;
    write_text(path + ".json", side.dump(2) + "\n");
}

void write_scan_pgm(const std::string& path, const PlaneScan& scan) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open for writing: " + path);
    out << "P5\n" << scan.width << " " << scan.height << "\n255\n";
    // row 0 of the file is the top = largest y
    for (int row = scan.height - 1; row >= 0; --row)
        out.write(reinterpret_cast<const char*>(scan.status.data() +
                                                static_cast<size_t>(row) *
                                                    static_cast<size_t>(scan.width)),
                  scan.width);

    nlohmann::json side;
    side["region"] = {scan.region.x0, scan.region.y0, scan.region.x1, scan.region.y1};
    side["resolution"] = {scan.width, scan.height};
    side["budget"] = scan.budget;
    write_text(path + ".json", side.dump(2) + "\n");
}

void write_sample_csv(const std::string& path, const PointSample& s) {
    std::string body = (s.d == 1) ? "x\n" : "x,y\n";
    for (std::size_t i = 0; i < s.xs.size(); ++i) {
        body += fmt_double(s.xs[i]);
        if (s.d == 2) {
            body += ',';
            body += fmt_double(s.ys[i]);
        }
        body += '\n';
    }
    write_text(path, body);
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::string body;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) body += ',';
        body += header[i];
    }
    body += '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) body += ',';
            body += row[i];
        }
        body += '\n';
    }
    write_text(path, body);
}

std::uint64_t fnv1a64(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 14695981039346656037ULL;
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 1099511628211ULL;
    }
    return h;
}

void write_manifest(const std::string& dir, const std::vector<std::string>& files) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& f : files) {
        std::ifstream in(dir + "/" + f, std::ios::binary);
        if (!in) throw Error("manifest: cannot read " + f);
        std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        char hex[17];
        std::snprintf(hex, sizeof hex, "%016llx",
                      static_cast<unsigned long long>(fnv1a64(bytes.data(), bytes.size())));
        j.push_back({{"file", f}, {"fnv1a64", hex}});
    }
    write_text(dir + "/manifest.json", j.dump(2) + "\n");
}

} // namespace ifslab
