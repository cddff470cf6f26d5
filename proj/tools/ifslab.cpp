#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ifslab/family.hpp"
#include "ifslab/interior.hpp"
#include "ifslab/io.hpp"
#include "ifslab/jsr.hpp"
#include "ifslab/parallel.hpp"
#include "ifslab/scan.hpp"
#include "ifslab/topology.hpp"
#include "ifslab/transition.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace ifslab;

namespace {

constexpr const char* kVersion = "ifslab 1.0.0";

struct Ctx {
    std::string out_dir = "out";
    int threads = 0;
    std::uint64_t seed = 1;
    std::vector<std::string> artifacts;
    json report;

    int nthreads() const { return resolve_threads(threads); }

    std::string path(const std::string& name) { return out_dir + "/" + name; }

    void add_artifact(const std::string& name) { artifacts.push_back(name); }

    void finish(const json& results) {
        report["tool_version"] = kVersion;
        report["results"] = results;
        report["artifacts"] = artifacts;
        write_text(path("report.json"), report.dump(2) + "\n");
        std::vector<std::string> files = artifacts;
        files.push_back("report.json");
        write_manifest(out_dir, files);
        std::cout << report["results"].dump(2) << "\n";
    }
};

json tagged(double v, const std::string& kind) {
    return json{{"value", v}, {"kind", kind}};
}

std::vector<double> parse_grid(const std::string& s) {
    std::vector<double> out;
    auto c1 = s.find(':');
    if (c1 != std::string::npos) {
        auto c2 = s.find(':', c1 + 1);
        if (c2 == std::string::npos) throw CLI::ValidationError("grid must be lo:hi:n or a,b,c");
        double lo = std::stod(s.substr(0, c1));
        double hi = std::stod(s.substr(c1 + 1, c2 - c1 - 1));
        int n = std::stoi(s.substr(c2 + 1));
        if (n < 1) throw CLI::ValidationError("grid count must be >= 1");
        for (int i = 0; i < n; ++i)
            out.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1.0));
        return out;
    }
    std::size_t pos = 0;
    while (pos < s.size()) {
        auto next = s.find(',', pos);
        if (next == std::string::npos) next = s.size();
        out.push_back(std::stod(s.substr(pos, next - pos)));
        pos = next + 1;
    }
    if (out.empty()) throw CLI::ValidationError("empty grid");
    return out;
}

json classification_json(const Classification& c) {
    json j;
    j["similarity"] = c.is_similarity;
    j["linear"] = c.is_linear;
    j["quasi_linear"] = c.is_quasi_linear;
    j["semi_linear"] = c.is_semi_linear;
    j["bounded"] = c.is_bounded;
    j["degenerate"] = (c.is_degenerate == TriState::Yes      ? "yes"
                       : c.is_degenerate == TriState::No     ? "no"
                                                             : "unknown");
    if (c.is_similarity) j["scaling_ratios"] = c.scaling_ratios;
    return j;
}

const char* conn_name(Connectivity c) {
    switch (c) {
    case Connectivity::DisconnectedCertified: return "disconnected-certified";
    case Connectivity::ConnectedEvidence: return "connected-evidence";
    default: return "unresolved";
    }
}

const char* interior_name(Interior s) {
    switch (s) {
    case Interior::EmptyCertified: return "empty-certified";
    case Interior::NonEmptyCertified: return "nonempty-certified";
    default: return "unknown";
    }
}

json hull_json(const HullResult& h) {
    if (h.d == 1) return json{{"lo", h.lo}, {"hi", h.hi}};
    json poly = json::array();
    for (const auto& v : h.polygon) poly.push_back({v.x, v.y});
    return json{{"polygon", poly}};
}

void read_points_csv(const std::string& path, std::vector<double>& xs, std::vector<double>& ys) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (header) {
            header = false;
            continue;
        }
        auto comma = line.find(',');
        xs.push_back(std::stod(line.substr(0, comma)));
        if (comma != std::string::npos) ys.push_back(std::stod(line.substr(comma + 1)));
    }
    if (xs.empty()) throw EmptyInput("no points in " + path);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"affine iterated-function-system laboratory"};
    app.require_subcommand(1);

    Ctx ctx;
    app.add_option("--out-dir", ctx.out_dir, "artifact output directory");
    app.add_option("--threads", ctx.threads, "worker threads (default: IFSLAB_THREADS or hardware)");
    app.add_option("--seed", ctx.seed, "pseudo-random seed for sampling");

    std::string family_path, t_grid_str = "0.1:0.9:9", region_str = "0,0,0.7,0.7",
                res_str = "128x128", out_name = "scan.pgm", file_a, file_b;
    double t = 0.5, cell = 1.0 / 256, epsilon = 1e-6, resolution = 1e-3;
    int depth = 10, budget = 5, max_refinements = 4, max_n = 6, max_iters = 0;

    auto add_family = [&](CLI::App* cmd) {
        cmd->add_option("--family", family_path, "family JSON file")->required();
    };

    auto* c_classify = app.add_subcommand("classify", "classification flags of a family");
    add_family(c_classify);

    auto* c_t0 = app.add_subcommand("t0", "existence threshold");
    add_family(c_t0);
    c_t0->add_option("--depth", depth, "word depth for the bounds");

    auto* c_attr = app.add_subcommand("attractor", "outer cover of the attractor at t");
    add_family(c_attr);
    c_attr->add_option("--t", t, "parameter value")->required();
    c_attr->add_option("--cell", cell, "grid cell size");
    c_attr->add_option("--max-iters", max_iters, "sweep budget (0 = default)");

    auto* c_conn = app.add_subcommand("scan-connectivity", "per-t connectivity statuses");
    add_family(c_conn);
    c_conn->add_option("--t-grid", t_grid_str, "lo:hi:n or comma list");
    c_conn->add_option("--cell", cell, "starting cell size");
    c_conn->add_option("--max-refinements", max_refinements, "refinement levels");

    auto* c_int = app.add_subcommand("scan-interior", "per-t interior statuses");
    add_family(c_int);
    c_int->add_option("--t-grid", t_grid_str, "lo:hi:n or comma list");
    c_int->add_option("--cell", cell, "cover cell size");
    c_int->add_option("--max-n", max_n, "max certificate depth");

    auto* c_weak = app.add_subcommand("weak-threshold", "strong/weak transition bracket");
    add_family(c_weak);
    c_weak->add_option("--resolution", resolution, "bracket width target");
    c_weak->add_option("--cell", cell, "cover cell size");

    auto* c_cone = app.add_subcommand("cone-bound", "dense-rotation interior bound");
    add_family(c_cone);

    auto* c_trans = app.add_subcommand("transition", "threshold-limit analysis");
    add_family(c_trans);
    c_trans->add_option("--t-grid", t_grid_str, "increasing grid in (0, t0)");
    c_trans->add_option("--cell", cell, "cover cell size");
    c_trans->add_option("--epsilon", epsilon, "orbit matching tolerance");

    auto* c_mandel = app.add_subcommand("mandel", "parameter-plane connectivity image");
    c_mandel->add_option("--region", region_str, "x0,y0,x1,y1 inside the unit disk");
    c_mandel->add_option("--res", res_str, "WxH pixels");
    c_mandel->add_option("--budget", budget, "refinement levels per pixel");
    c_mandel->add_option("--out", out_name, "PGM file name (inside --out-dir)");

    auto* c_hd = app.add_subcommand("hausdorff", "distance between two point CSVs");
    c_hd->add_option("--a", file_a, "first CSV")->required();
    c_hd->add_option("--b", file_b, "second CSV")->required();

    for (auto* sc : {c_classify, c_t0, c_attr, c_conn, c_int, c_weak, c_cone, c_trans,
                     c_mandel, c_hd})
        sc->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        fs::create_directories(ctx.out_dir);
        ctx.report["config"] = json{{"out_dir", ctx.out_dir},
                                    {"threads", ctx.nthreads()},
                                    {"seed", ctx.seed}};
        json res;

        if (c_classify->parsed()) {
            OneParamFamily fam = parse_family(family_path);
            res = classification_json(classify_auto(fam));
            res["family"] = fam.name;
        } else if (c_t0->parsed()) {
            OneParamFamily fam = parse_family(family_path);
            Threshold th = t0_threshold(fam, depth);
            if (th.exact) {
                res["t0"] = th.lo;
                res["exact"] = true;
                res["threshold"] = tagged(th.lo, "exact");
            } else {
                res["t0_lo"] = th.lo;
                res["t0_hi"] = th.hi;
                res["exact"] = false;
                res["threshold_lo"] = tagged(th.lo, "bound");
                res["threshold_hi"] = tagged(th.hi, "bound");
                std::vector<Mat> parts;
                for (const auto& m : fam.members) parts.push_back(m.L);
                JsrBounds b = jsr_bounds(parts, depth);
                json w = json::array();
                for (int i : b.witness_word.indices) w.push_back(i + 1);
                res["witness_word"] = w;
            }
        } else if (c_attr->parsed()) {
            OneParamFamily fam = parse_family(family_path);
            Ball trap = trapping_ball(fam, t);
            BoxCover cover =
                compute_attractor(instantiate(fam, t), trap, cell, max_iters, ctx.nthreads());
            write_cover_pgm(ctx.path("attractor.pgm"), cover);
            ctx.add_artifact("attractor.pgm");
            ctx.add_artifact("attractor.pgm.json");
            PointSample centers;
            centers.d = cover.d;
            cover.centers(centers.xs, centers.ys);
            write_sample_csv(ctx.path("attractor_cells.csv"), centers);
            ctx.add_artifact("attractor_cells.csv");
            std::vector<double> weights(fam.members.size(),
                                        1.0 / static_cast<double>(fam.members.size()));
            PointSample sample = chaos_game(instantiate(fam, t), 100000, weights, ctx.seed, trap);
            write_sample_csv(ctx.path("chaos_sample.csv"), sample);
            ctx.add_artifact("chaos_sample.csv");
            res["t"] = t;
            res["cells"] = cover.size();
            res["cell"] = cover.cell;
            res["hull"] = hull_json(cover_hull(cover));
        } else if (c_conn->parsed()) {
            OneParamFamily fam = parse_family(family_path);
            auto grid = parse_grid(t_grid_str);
            std::vector<std::vector<std::string>> rows;
            json jrows = json::array();
            for (double tt : grid) {
                ConnectivityStatus st =
                    connectivity_status(fam, tt, cell, max_refinements);
                std::vector<std::string> row = {fmt_double(tt), conn_name(st.status),
                                                std::to_string(st.n_components),
                                                fmt_double(st.gap)};
                if (st.witness) {
                    row.push_back(fmt_double(st.witness->nx));
                    row.push_back(fmt_double(st.witness->ny));
                    row.push_back(fmt_double(st.witness->offset));
                } else {
                    row.insert(row.end(), {"", "", ""});
                }
                rows.push_back(row);
                jrows.push_back({{"t", tt}, {"status", conn_name(st.status)}, {"gap", st.gap}});
            }
            write_csv(ctx.path("connectivity.csv"),
                      {"t", "status", "components", "gap", "witness_normal_x",
                       "witness_normal_y", "witness_offset"},
                      rows);
            ctx.add_artifact("connectivity.csv");
            res["rows"] = jrows;
            try {
                res["connectivity_lower_bound"] =
                    tagged(connectivity_lower_bound(fam), "bound");
            } catch (const NotSimilarity&) {
            }
        } else if (c_int->parsed()) {
            OneParamFamily fam = parse_family(family_path);
            auto grid = parse_grid(t_grid_str);
            InteriorScanResult r = interior_scan(fam, grid, cell, max_n);
            std::vector<std::vector<std::string>> rows;
            json jrows = json::array();
            for (const auto& row : r.rows) {
                std::string kind =
                    row.st.status == Interior::EmptyCertified        ? "measure-bound"
                    : row.st.status == Interior::NonEmptyCertified ? "ball-certificate"
                                                                     : "";
                std::vector<std::string> cs = {fmt_double(row.t), interior_name(row.st.status),
                                               kind, "", "", "", ""};
                if (row.st.certificate) {
                    cs[3] = fmt_double(row.st.certificate->ball.center[0]);
                    cs[4] = fam.d > 1 ? fmt_double(row.st.certificate->ball.center[1]) : "";
                    cs[5] = fmt_double(row.st.certificate->ball.radius);
                    cs[6] = std::to_string(row.st.certificate->depth);
                }
                rows.push_back(cs);
                jrows.push_back({{"t", row.t}, {"status", interior_name(row.st.status)}});
            }
            write_csv(ctx.path("interior.csv"),
                      {"t", "status", "certificate_kind", "ball_cx", "ball_cy", "ball_r",
                       "depth_n"},
                      rows);
            ctx.add_artifact("interior.csv");
            res["rows"] = jrows;
            res["measure_threshold"] = tagged(measure_zero_threshold(fam), "exact");
            if (r.tame_flagged) {
                res["t2_lo"] = tagged(r.t2_lo, "evidence");
                res["t2_hi"] = tagged(r.t2_hi, "evidence");
                res["assumes_tame"] = true;
            }
        } else if (c_weak->parsed()) {
            OneParamFamily fam = parse_family(family_path);
            WeakThresholdBracket b = weak_threshold(fam, resolution, cell);
            res["tau_lo"] = tagged(b.tau_lo, "evidence");
            res["tau_hi"] = tagged(b.tau_hi, "evidence");
            json probes = json::array();
            for (auto [pt, dis] : b.probes)
                probes.push_back({{"t", pt}, {"strongly_disconnected", dis}});
            res["probes"] = probes;
        } else if (c_cone->parsed()) {
            OneParamFamily fam = parse_family(family_path);
            ConeParams cp = nonempty_threshold_bound_2d(fam);
            res["epsilon"] = cp.epsilon;
            res["theta"] = cp.theta;
            res["M"] = cp.M;
            res["s"] = cp.s;
            res["phi"] = cp.phi;
            res["tau"] = tagged(cp.tau, "bound");
            res["irrationality_proxy"] = "min |phi/pi - p/q| over q <= 64 exceeds 1e-6";
        } else if (c_trans->parsed()) {
            OneParamFamily fam = parse_family(family_path);
            auto grid = parse_grid(t_grid_str);
            PointSample lower = lower_transition_attractor(fam, epsilon, 2'000'000, true);
            res["lower_truncated"] = lower.size() >= 2'000'000;
            write_sample_csv(ctx.path("lower_attractor.csv"), lower);
            ctx.add_artifact("lower_attractor.csv");
            TransitionHulls th = transition_hull(fam, grid, cell);
            json hulls = json::array();
            for (std::size_t i = 0; i < th.hulls.size(); ++i)
                hulls.push_back({{"t", th.ts[i]}, {"hull", hull_json(th.hulls[i])}});
            write_text(ctx.path("hulls.json"),
                       json{{"hulls", hulls}, {"k_star", hull_json(th.k_star)}}.dump(2) + "\n");
            ctx.add_artifact("hulls.json");
            UpperTransitionEvidence ev = upper_transition_evidence(fam, grid, cell);
            std::vector<std::vector<std::string>> rows;
            for (const auto& r : ev.table)
                rows.push_back({fmt_double(r.t_a), fmt_double(r.t_b), fmt_double(r.dist)});
            write_csv(ctx.path("cauchy.csv"), {"t_a", "t_b", "hausdorff"}, rows);
            ctx.add_artifact("cauchy.csv");
            for (std::size_t i = 0; i < grid.size(); ++i) {
                Ball trap = trapping_ball(fam, grid[i]);
                BoxCover cover = word_cover(instantiate(fam, grid[i]), trap, cell);
                std::string name = "upper_" + std::to_string(i) + ".pgm";
                write_cover_pgm(ctx.path(name), cover);
                ctx.add_artifact(name);
                ctx.add_artifact(name + ".json");
            }
            res["verdict"] = ev.verdict;
            res["hull_gap"] = tagged(ev.hull_gap, "evidence");
            res["k_star"] = hull_json(th.k_star);
            res["lower_points"] = lower.size();
            res["invariance_residual"] = tagged(invariance_residual(lower, fam), "evidence");
        } else if (c_mandel->parsed()) {
            auto nums = parse_grid(region_str);
            if (nums.size() != 4) throw CLI::ValidationError("--region needs x0,y0,x1,y1");
            auto xi = res_str.find('x');
            if (xi == std::string::npos) throw CLI::ValidationError("--res needs WxH");
            int W = std::stoi(res_str.substr(0, xi));
            int H = std::stoi(res_str.substr(xi + 1));
            ComplexFamilySpec spec;
            PlaneScan scan = mandelbrot_scan(spec, Region{nums[0], nums[1], nums[2], nums[3]},
                                             W, H, budget, ctx.nthreads());
            write_scan_pgm(ctx.path(out_name), scan);
            ctx.add_artifact(out_name);
            ctx.add_artifact(out_name + ".json");
            std::size_t resolved = 0;
            for (auto v : scan.status)
                if (v != kPixelUnresolved) ++resolved;
            res["pixels"] = scan.status.size();
            res["resolved"] = resolved;
        } else if (c_hd->parsed()) {
            std::vector<double> ax, ay, bx, by;
            read_points_csv(file_a, ax, ay);
            read_points_csv(file_b, bx, by);
            if (ay.empty() != by.empty()) throw Error("dimension mismatch between CSVs");
            res["hausdorff"] = hausdorff(ax, ay, bx, by, ctx.nthreads());
        }

        ctx.finish(res);
        return 0;
    } catch (const NestingViolation& e) {
        std::cerr << "certificate inconsistency: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::string msg = e.what();
        std::cerr << "error: " << msg << "\n";
        return msg.find("inconsistency") != std::string::npos ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
