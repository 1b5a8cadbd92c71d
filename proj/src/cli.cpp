/*******************************************************************************
 * Copyright 2026 The juliashape authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *******************************************************************************/
#include "juliashape/cli.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "juliashape/dynamics.hpp"
#include "juliashape/equilibrium.hpp"
#include "juliashape/errors.hpp"
#include "juliashape/image.hpp"
#include "juliashape/metrics.hpp"
#include "juliashape/sampler.hpp"
#include "juliashape/shape_doc.hpp"

namespace juliashape::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct RunConfig {
    std::string shape_path;
    int n = 200;
    double delta = 0.05;
    int nodes = 128; // m per curve
    std::string grid_spec;     // "WxH", empty = square grid_pixels
    int grid_pixels = 512;
    std::vector<double> viewport; // x0,y0,x1,y1; empty = auto
    int max_iter = 60;
    std::string out_dir = ".";
    int threads = 0;
    bool dump_csv = false;
    bool write_ppm = false;
    bool write_timings = false;
    std::vector<double> delta_list;
    std::vector<int> n_list;
    std::optional<double> eps_target;
};

// Optional config file: the same keys as the flags; explicit flags override.
void apply_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot read config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    json doc;
    try {
        doc = json::parse(buf.str());
    } catch (const json::parse_error& e) {
        throw io_error(std::string("config parse error: ") + e.what());
    }
    if (!doc.is_object()) throw io_error("config file must be a JSON object");
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        const std::string& key = it.key();
        const json& v = it.value();
        if (key == "shape") cfg.shape_path = v.get<std::string>();
        else if (key == "n") cfg.n = v.get<int>();
        else if (key == "delta") cfg.delta = v.get<double>();
        else if (key == "nodes") cfg.nodes = v.get<int>();
        else if (key == "grid") cfg.grid_spec = v.get<std::string>();
        else if (key == "viewport") cfg.viewport = v.get<std::vector<double>>();
        else if (key == "max_iter") cfg.max_iter = v.get<int>();
        else if (key == "out") cfg.out_dir = v.get<std::string>();
        else if (key == "threads") cfg.threads = v.get<int>();
        else if (key == "delta_list") cfg.delta_list = v.get<std::vector<double>>();
        else if (key == "n_list") cfg.n_list = v.get<std::vector<int>>();
        else if (key == "eps_target") cfg.eps_target = v.get<double>();
        else throw io_error("unknown config key \"" + key + "\"");
    }
}

void parse_grid_spec(const RunConfig& cfg, int& w, int& h) {
    if (cfg.grid_spec.empty()) {
        w = h = cfg.grid_pixels;
        return;
    }
    const auto x = cfg.grid_spec.find('x');
    if (x == std::string::npos)
        throw validation_error("--grid expects WxH, got " + cfg.grid_spec);
    try {
        w = std::stoi(cfg.grid_spec.substr(0, x));
        h = std::stoi(cfg.grid_spec.substr(x + 1));
    } catch (const std::exception&) {
        throw validation_error("--grid expects WxH, got " + cfg.grid_spec);
    }
}

struct Pipeline {
    ShapeDocument doc;        // original coordinates
    ShapeSet normalized;      // origin inside E
    EquilibriumSolution sol;  // solved on the normalized shape
};

Pipeline prepare(const RunConfig& cfg, bool need_solution) {
    Pipeline p{load_shape_document(cfg.shape_path), {}, {}};
    const auto violations = validate(p.doc.shape);
    if (!violations.empty()) {
        std::ostringstream os;
        os << "shape \"" << p.doc.name << "\" is invalid:";
        for (const auto& v : violations) os << "\n  " << v.message;
        throw validation_error(os.str());
    }
    std::cout << "shape \"" << p.doc.name << "\" validated (" << p.doc.shape.curves.size()
              << " curve(s))\n";
    p.normalized = normalize_origin(p.doc.shape);
    if (need_solution) p.sol = solve_equilibrium(discretize(p.normalized, cfg.nodes));
    return p;
}

Grid make_grid(const RunConfig& cfg, const Pipeline& p, const ShapedPolynomial& poly) {
    int w = 0, h = 0;
    parse_grid_spec(cfg, w, h);
    const cplx escape_center = -poly.translation_offset();
    const double R = poly.escape_radius();
    if (cfg.viewport.empty()) return Grid::cover(p.doc.shape, escape_center, R, w);
    if (cfg.viewport.size() != 4)
        throw validation_error("--viewport expects x0,y0,x1,y1");
    Grid g = Grid::make(cfg.viewport[0], cfg.viewport[1], cfg.viewport[2], cfg.viewport[3], w,
                        h);
    double sx0, sy0, sx1, sy1;
    p.doc.shape.bounding_box(sx0, sy0, sx1, sy1);
    if (sx0 < g.x0 || sy0 < g.y0 || sx1 > g.x1 || sy1 > g.y1)
        throw validation_error("viewport does not contain the target shape");
    if (!g.contains_disk(escape_center, R))
        throw validation_error("viewport does not contain the escape disk (radius " +
                               std::to_string(R) + ")");
    return g;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot write " + path.string());
    out << text;
}

std::string gamma_txt(const EquilibriumSolution& sol) {
    std::ostringstream os;
    os.precision(17);
    os << "gamma = " << sol.robin_gamma() << "\n";
    os << "capacity = " << sol.capacity() << "\n";
    for (size_t j = 0; j < sol.masses().size(); ++j)
        os << "mass_" << j << " = " << sol.masses()[j] << "\n";
    return os.str();
}

json grid_json(const Grid& g) {
    return json{{"width", g.width},
                {"height", g.height},
                {"viewport", {g.x0, g.y0, g.x1, g.y1}},
                {"cell", g.cell}};
}

json report_json(const ShapeDocument& doc, const EquilibriumSolution& sol,
                 const ShapedPolynomial& poly, const HausdorffReport& rep) {
    json j;
    j["shape"] = doc.name;
    j["parameters"] = {{"n", rep.n},
                       {"delta", rep.delta},
                       {"nodes_per_curve", rep.m_per_curve},
                       {"max_iter", rep.max_iter},
                       {"escape_radius", rep.escape_radius},
                       {"translation_offset",
                        {poly.translation_offset().real(), poly.translation_offset().imag()}},
                       {"grid", grid_json(rep.grid)}};
    j["gamma"] = sol.robin_gamma();
    j["capacity"] = sol.capacity();
    j["distances"] = {{"d_filled", rep.degenerate ? json() : json(rep.d_filled)},
                      {"d_boundary", rep.degenerate ? json() : json(rep.d_boundary)},
                      {"d_complement_chordal",
                       rep.degenerate ? json() : json(rep.d_complement_chordal)}};
    j["pixels"] = {{"inside_target", rep.inside_target},
                   {"inside_computed", rep.inside_computed},
                   {"boundary_target", rep.boundary_target},
                   {"boundary_computed", rep.boundary_computed},
                   {"ambiguous_target", rep.ambiguous_target}};
    j["degenerate"] = rep.degenerate;
    return j;
}

// Shortest round-trip decimal form (what nlohmann uses for report.json too).
std::string num(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string study_csv(const StudyResult& res) {
    std::ostringstream os;
    os << "delta,n,d_filled,d_boundary,d_complement_chordal,inside_target,inside_computed,"
          "degenerate\n";
    for (const auto& r : res.rows) {
        os << num(r.delta) << "," << r.n << "," << num(r.d_filled) << ","
           << num(r.d_boundary) << "," << num(r.d_complement_chordal) << ","
           << r.inside_target << "," << r.inside_computed << ","
           << (r.degenerate ? 1 : 0) << "\n";
    }
    return os.str();
}

// --- subcommands -----------------------------------------------------------

int cmd_validate(const RunConfig& cfg) {
    const ShapeDocument doc = load_shape_document(cfg.shape_path);
    const auto violations = validate(doc.shape);
    if (violations.empty()) {
        std::cout << "shape \"" << doc.name << "\" is valid (" << doc.shape.curves.size()
                  << " curve(s))\n";
        for (const auto& c : doc.shape.curves) std::cout << "  " << c.describe() << "\n";
        return 0;
    }
    std::cout << "shape \"" << doc.name << "\" is invalid:\n";
    for (const auto& v : violations) std::cout << "  " << v.message << "\n";
    return 1;
}

int cmd_solve(const RunConfig& cfg) {
    const Pipeline p = prepare(cfg, true);
    std::cout.precision(12);
    std::cout << "gamma = " << p.sol.robin_gamma() << "\n";
    std::cout << "capacity = " << p.sol.capacity() << "\n";
    for (size_t j = 0; j < p.sol.masses().size(); ++j)
        std::cout << "mass[" << j << "] = " << p.sol.masses()[j] << "\n";
    std::cout << "max boundary residual = " << p.sol.max_boundary_residual() << "\n";
    std::cout << "condition estimate = " << p.sol.condition_estimate() << "\n";
    if (cfg.dump_csv) {
        fs::create_directories(cfg.out_dir);
        write_text(fs::path(cfg.out_dir) / "nodes.csv", p.sol.nodes_csv());
        std::cout << "wrote " << (fs::path(cfg.out_dir) / "nodes.csv").string() << "\n";
    }
    return 0;
}

int cmd_build(const RunConfig& cfg) {
    const Pipeline p = prepare(cfg, true);
    const RootSample sample = sample_roots(p.sol, cfg.n);
    const ShapedPolynomial poly = ShapedPolynomial::build(p.sol, sample, cfg.delta);
    fs::create_directories(cfg.out_dir);
    write_text(fs::path(cfg.out_dir) / "poly.csv", poly.export_csv());
    write_text(fs::path(cfg.out_dir) / "roots.csv", sample.csv());
    write_text(fs::path(cfg.out_dir) / "gamma.txt", gamma_txt(p.sol));
    std::cout << "n = " << poly.n() << ", delta = " << poly.delta()
              << ", log_scale = " << poly.log_scale()
              << ", escape_radius = " << poly.escape_radius() << "\n";
    std::cout << "max arc-mass deviation = " << sample.max_arc_mass_deviation << "\n";
    if (poly.translation_offset() != cplx(0.0, 0.0)) {
        write_text(fs::path(cfg.out_dir) / "conjugated.csv",
                   conjugated_csv(poly.conjugated_output(), poly.n(), poly.delta()));
        std::cout << "translation offset " << poly.translation_offset()
                  << " recorded; conjugated polynomial in conjugated.csv\n";
    }
    std::cout << "wrote poly.csv, roots.csv, gamma.txt in " << cfg.out_dir << "\n";
    return 0;
}

int cmd_render(const RunConfig& cfg) {
    const Pipeline p = prepare(cfg, true);
    const RootSample sample = sample_roots(p.sol, cfg.n);
    const ShapedPolynomial poly = ShapedPolynomial::build(p.sol, sample, cfg.delta);
    const Grid grid = make_grid(cfg, p, poly);

    Classification computed;
    HausdorffReport rep =
        measure(p.doc.shape, poly, grid, cfg.max_iter, cfg.threads, nullptr, &computed);
    rep.m_per_curve = cfg.nodes;

    fs::create_directories(cfg.out_dir);
    write_pgm_labels(computed, (fs::path(cfg.out_dir) / "filled.pgm").string());
    write_pgm_mask(extract_boundary(computed), (fs::path(cfg.out_dir) / "julia.pgm").string());
    if (cfg.write_ppm)
        write_ppm_iterations(computed, cfg.max_iter,
                             (fs::path(cfg.out_dir) / "iterations.ppm").string());
    write_text(fs::path(cfg.out_dir) / "gamma.txt", gamma_txt(p.sol));
    write_text(fs::path(cfg.out_dir) / "roots.csv", sample.csv());
    write_text(fs::path(cfg.out_dir) / "poly.csv", poly.export_csv());
    write_text(fs::path(cfg.out_dir) / "report.json",
               report_json(p.doc, p.sol, poly, rep).dump(2) + "\n");
    if (cfg.write_timings) {
        json t{{"classify_seconds", rep.classify_seconds},
               {"metrics_seconds", rep.metrics_seconds}};
        write_text(fs::path(cfg.out_dir) / "timings.json", t.dump(2) + "\n");
    }

    std::cout.precision(6);
    if (rep.degenerate) {
        std::cout << "degenerate classification (empty mask); no distances\n";
        return 2;
    }
    std::cout << "d_filled = " << rep.d_filled << "\n";
    std::cout << "d_boundary = " << rep.d_boundary << "\n";
    std::cout << "d_complement_chordal = " << rep.d_complement_chordal << "\n";
    std::cout << "classify " << rep.classify_seconds << " s, metrics " << rep.metrics_seconds
              << " s\n";
    std::cout << "wrote filled.pgm, julia.pgm, report.json in " << cfg.out_dir << "\n";
    return 0;
}

int cmd_study(const RunConfig& cfg) {
    RunConfig c = cfg;
    if (c.delta_list.empty()) c.delta_list = {c.delta};
    if (c.n_list.empty()) c.n_list = {c.n};
    const Pipeline p = prepare(c, true);

    // The grid must fit the largest escape radius in the scan (it shrinks
    // with n and grows with delta).
    double worst_r = 0.0;
    cplx escape_center;
    std::vector<RootSample> probes;
    for (double d : c.delta_list) {
        const int nmin = *std::min_element(c.n_list.begin(), c.n_list.end());
        const RootSample s = sample_roots(p.sol, nmin);
        const ShapedPolynomial poly = ShapedPolynomial::build(p.sol, s, d);
        worst_r = std::max(worst_r, poly.escape_radius());
        escape_center = -poly.translation_offset();
    }
    int w = 0, h = 0;
    parse_grid_spec(c, w, h);
    Grid grid = c.viewport.empty()
                    ? Grid::cover(p.doc.shape, escape_center, worst_r, w)
                    : Grid::make(c.viewport[0], c.viewport[1], c.viewport[2], c.viewport[3],
                                 w, h);

    StudyOptions opts;
    opts.deltas = c.delta_list;
    opts.ns = c.n_list;
    opts.max_iter = c.max_iter;
    opts.threads = c.threads;
    opts.eps_target = c.eps_target;
    const StudyResult res = convergence_study(p.doc.shape, p.sol, grid, opts);

    fs::create_directories(c.out_dir);
    write_text(fs::path(c.out_dir) / "study.csv", study_csv(res));
    json j;
    j["shape"] = p.doc.name;
    j["grid"] = grid_json(grid);
    j["max_iter"] = c.max_iter;
    j["rows"] = json::array();
    for (const auto& r : res.rows)
        j["rows"].push_back({{"delta", r.delta},
                             {"n", r.n},
                             {"d_filled", r.degenerate ? json() : json(r.d_filled)},
                             {"d_boundary", r.degenerate ? json() : json(r.d_boundary)},
                             {"d_complement_chordal",
                              r.degenerate ? json() : json(r.d_complement_chordal)},
                             {"degenerate", r.degenerate}});
    j["monotone_d_boundary"] = json::array();
    for (const auto& [delta, mono] : res.monotone_trend)
        j["monotone_d_boundary"].push_back({{"delta", delta}, {"non_increasing", mono}});
    if (res.eps_hit)
        j["eps_hit"] = {{"delta", res.eps_hit->first}, {"n", res.eps_hit->second}};
    if (res.exhausted_scan) j["exhausted_scan"] = true;
    write_text(fs::path(c.out_dir) / "study.json", j.dump(2) + "\n");

    std::cout << "study rows: " << res.rows.size() << "\n";
    for (const auto& r : res.rows) {
        std::cout << "  delta=" << r.delta << " n=" << r.n << " d_filled=" << r.d_filled
                  << " d_boundary=" << r.d_boundary << " d_chordal=" << r.d_complement_chordal
                  << " (" << r.classify_seconds + r.metrics_seconds << " s)\n";
    }
    if (c.eps_target && res.exhausted_scan) {
        std::cout << "eps target " << *c.eps_target << " not reached (exhausted scan)\n";
        return 2;
    }
    if (res.eps_hit)
        std::cout << "eps target met at delta=" << res.eps_hit->first
                  << ", n=" << res.eps_hit->second << "\n";
    std::cout << "wrote study.csv, study.json in " << c.out_dir << "\n";
    return 0;
}

} // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"Polynomials whose filled Julia sets approximate a target shape"};
    app.require_subcommand(1);
    RunConfig cfg;

    // A config file seeds RunConfig before flag parsing, so flags override it.
    for (size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            try {
                apply_config_file(cfg, args[i + 1]);
            } catch (const io_error& e) {
                std::cerr << "error: " << e.what() << "\n";
                return 3;
            }
        } else if (args[i].rfind("--config=", 0) == 0) {
            try {
                apply_config_file(cfg, args[i].substr(9));
            } catch (const io_error& e) {
                std::cerr << "error: " << e.what() << "\n";
                return 3;
            }
        }
    }

    std::string config_path_sink;
    auto add_common = [&](CLI::App* sub, bool with_dynamics, bool with_grid) {
        sub->add_option("--shape", cfg.shape_path, "shape document (JSON)");
        sub->add_option("--config", config_path_sink,
                        "JSON config with the same keys as the flags (flags override)");
        sub->add_option("--nodes", cfg.nodes, "quadrature nodes per curve (even, >= 16)");
        if (with_dynamics) {
            sub->add_option("--n", cfg.n, "number of roots");
            sub->add_option("--delta", cfg.delta, "potential level delta > 0");
        }
        if (with_grid) {
            sub->add_option("--grid", cfg.grid_spec, "grid size WxH (default 512x512)");
            sub->add_option("--viewport", cfg.viewport,
                            "viewport x0,y0,x1,y1 (default: auto square cover)")
                ->delimiter(',')
                ->expected(4);
            sub->add_option("--max-iter", cfg.max_iter, "iteration budget per pixel");
            sub->add_option("--threads", cfg.threads, "worker threads (0 = hardware)");
        }
        sub->add_option("--out", cfg.out_dir, "output directory");
    };

    CLI::App* validate_cmd = app.add_subcommand("validate", "check a shape document");
    validate_cmd->add_option("--shape", cfg.shape_path, "shape document (JSON)");
    validate_cmd->add_option("--config", config_path_sink, "JSON config (flags override)");

    CLI::App* solve_cmd = app.add_subcommand("solve", "equilibrium measure and gamma");
    add_common(solve_cmd, false, false);
    solve_cmd->add_flag("--dump", cfg.dump_csv, "write nodes.csv (curve,t,re,im,sigma)");

    CLI::App* build_cmd = app.add_subcommand("build", "construct the polynomial");
    add_common(build_cmd, true, false);

    CLI::App* render_cmd = app.add_subcommand("render", "rasterize and verify");
    add_common(render_cmd, true, true);
    render_cmd->add_flag("--ppm", cfg.write_ppm, "also write iteration-count PPM");
    render_cmd->add_flag("--timings", cfg.write_timings, "write timings.json side file");

    CLI::App* study_cmd = app.add_subcommand("study", "(delta, n) convergence study");
    add_common(study_cmd, true, true);
    study_cmd->add_option("--delta-list", cfg.delta_list, "deltas to scan")->delimiter(',');
    study_cmd->add_option("--n-list", cfg.n_list, "root counts to scan")->delimiter(',');
    double eps_opt = 0.0;
    CLI::Option* eps_flag =
        study_cmd->add_option("--eps-target", eps_opt, "stop at first row below this");

    try {
        try {
            std::vector<std::string> rev(args.rbegin(), args.rend());
            app.parse(rev);
        } catch (const CLI::ParseError& e) {
            if (e.get_exit_code() == 0) { // --help
                app.exit(e);
                return 0;
            }
            std::cerr << e.what() << "\n";
            return 3;
        }
        if (*eps_flag) cfg.eps_target = eps_opt;
        if (cfg.shape_path.empty())
            throw validation_error("--shape is required (flag or config file)");
        if (validate_cmd->parsed()) return cmd_validate(cfg);
        if (solve_cmd->parsed()) return cmd_solve(cfg);
        if (build_cmd->parsed()) return cmd_build(cfg);
        if (render_cmd->parsed()) return cmd_render(cfg);
        if (study_cmd->parsed()) return cmd_study(cfg);
        return 3;
    } catch (const io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const numerical_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace juliashape::cli
