#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ifslab/attractor.hpp"
#include "ifslab/scan.hpp"

namespace ifslab {

// 17-significant-digit float formatting ("%.17g"); all artifact writers use it.
std::string fmt_double(double v);

// Cover → PGM (P5, maxval 255, occupied 0 / empty 255) plus a sidecar JSON
// {origin: [x, y], cell, width, height} at path + ".json".
void write_cover_pgm(const std::string& path, const BoxCover& cover);

// Plane scan → PGM with the pixel-status convention (255/0/128) plus a
// sidecar JSON with region/resolution/budget.
void write_scan_pgm(const std::string& path, const PlaneScan& scan);

// Point sample → CSV with header "x" or "x,y".
void write_sample_csv(const std::string& path, const PointSample& s);

// Generic CSV ('.' decimal, ',' separator, '\n' newlines).
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

void write_text(const std::string& path, const std::string& content);

std::uint64_t fnv1a64(const void* data, std::size_t n);

// manifest.json in dir: [{"file": name, "fnv1a64": hex}] for the given
// relative file names (hashes of current file contents).
void write_manifest(const std::string& dir, const std::vector<std::string>& files);

} // namespace ifslab
