// bskel: command-line front end for beta-skeleton experiments.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bskel/bskel.hpp"

using namespace bskel;

namespace {

bool g_quiet = false;

void log(const std::string& msg) {
    if (!g_quiet) std::cerr << msg << '\n';
}

SweepProgress progress_logger(const std::string& what) {
    if (g_quiet) return {};
    return [what](std::size_t done, std::size_t total) {
        const std::size_t every = std::max<std::size_t>(1, total / 10);
        if (done % every == 0 || done == total)
            std::cerr << what << ": " << done << '/' << total << " grid values\n";
    };
}

struct GridOpts {
    double beta_min = 1.0;
    double beta_max = 50.0;
    double step = 0.1;

    void add(CLI::App* cmd) {
        cmd->add_option("--beta-min", beta_min, "first grid value")->capture_default_str();
        cmd->add_option("--beta-max", beta_max, "last grid value")->capture_default_str();
        cmd->add_option("--step", step, "grid step")->capture_default_str();
    }
    std::vector<double> grid() const { return beta_grid(beta_min, beta_max, step); }
};

const std::map<std::string, BoundaryRule> kRules{{"closed", BoundaryRule::Closed}, {"open", BoundaryRule::Open}};

void add_rule(CLI::App* cmd, BoundaryRule& rule) {
    cmd->add_option("--rule", rule, "lune boundary rule: closed blocks on the boundary, open does not")
        ->transform(CLI::CheckedTransformer(kRules, CLI::ignore_case))
        ->capture_default_str();
}

// Writes to a file, or to stdout when the path is empty or "-".
template <class F>
void emit(const std::string& path, F&& write) {
    if (path.empty() || path == "-") {
        write(std::cout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    write(out);
    out.flush();
    if (!out) throw IoError("failed writing '" + path + "'");
    log("wrote " + path);
}

PointSet load_points(const std::string& path) {
    try {
        return io::read_points(path);
    } catch (const Error& e) {
        throw Error(path + ": " + e.what());
    }
}

struct GenerateCmd {
    std::string family = "random-disc";
    std::uint64_t seed = 1;
    std::string out;
    RandomDiscParams disc;
    std::optional<std::size_t> rows, cols;
    std::optional<double> spacing;
    DefectLatticeParams defect;
    SpiralWebParams spiral;
    NestedCirclesParams circles;
    bool no_center = false;

    void add(CLI::App& app) {
        auto* cmd = app.add_subcommand("generate", "write a generated point set as CSV");
        cmd->add_option("--family", family, "random-disc | rect | hex | defect | spiral | circles")
            ->check(CLI::IsMember({"random-disc", "rect", "hex", "defect", "spiral", "circles"}))
            ->capture_default_str();
        cmd->add_option("--seed", seed, "random seed")->capture_default_str();
        cmd->add_option("--out", out, "output CSV (default stdout)");
        cmd->add_option("--n", disc.n, "random-disc: number of points")->capture_default_str();
        cmd->add_option("--big-radius", disc.big_radius, "random-disc: enclosing radius")->capture_default_str();
        cmd->add_option("--point-radius", disc.point_radius, "random-disc: exclusion radius")->capture_default_str();
        cmd->add_option("--rows", rows, "lattices: rows (default 10, defect 9)");
        cmd->add_option("--cols", cols, "lattices: columns (default 10, defect 9)");
        cmd->add_option("--spacing", spacing, "lattices: node spacing (default 10)");
        cmd->add_option("--defect-row", defect.defect_row, "defect: row of the displaced node")->capture_default_str();
        cmd->add_option("--defect-col", defect.defect_col, "defect: column of the displaced node")
            ->capture_default_str();
        cmd->add_option("--jitter", defect.jitter, "defect: max displacement per axis")->capture_default_str();
        cmd->add_option("--turns", spiral.turns, "spiral: turns")->capture_default_str();
        cmd->add_option("--points-per-turn", spiral.points_per_turn, "spiral: samples per turn")->capture_default_str();
        cmd->add_option("--rays", spiral.rays, "spiral: radial arms")->capture_default_str();
        cmd->add_option("--points-per-ray", spiral.points_per_ray, "spiral: points per arm")->capture_default_str();
        cmd->add_option("--pitch", spiral.pitch, "spiral: radial gap per turn")->capture_default_str();
        cmd->add_option("--circles", circles.circles, "circles: number of circles")->capture_default_str();
        cmd->add_option("--per-circle", circles.per_circle, "circles: points per circle")->capture_default_str();
        cmd->add_option("--radius-step", circles.radius_step, "circles: radius increment")->capture_default_str();
        cmd->add_option("--center-jitter", circles.center_jitter, "circles: max centre offset per axis")
            ->capture_default_str();
        cmd->add_option("--point-jitter", circles.point_jitter, "circles: max point offset per axis")
            ->capture_default_str();
        cmd->add_flag("--no-center", no_center, "circles: leave out the common centre point");
        cmd->callback([this] { run(); });
    }

    void run() {
        GeneratorParams params;
        if (family == "random-disc") {
            params = disc;
        } else if (family == "rect") {
            const RectLatticeParams d;
            params = RectLatticeParams{rows.value_or(d.rows), cols.value_or(d.cols), spacing.value_or(d.spacing)};
        } else if (family == "hex") {
            const HexLatticeParams d;
            params = HexLatticeParams{rows.value_or(d.rows), cols.value_or(d.cols), spacing.value_or(d.spacing)};
        } else if (family == "defect") {
            defect.rows = rows.value_or(defect.rows);
            defect.cols = cols.value_or(defect.cols);
            defect.spacing = spacing.value_or(defect.spacing);
            params = defect;
        } else if (family == "spiral") {
            params = spiral;
        } else {
            circles.include_center_point = !no_center;
            params = circles;
        }
        const PointSet ps = generate({params, seed});
        log("generated " + std::to_string(ps.size()) + " points (" + ps.label() + ")");
        emit(out, [&](std::ostream& os) { io::write_points(os, ps); });
    }
};

struct SkeletonCmd {
    std::string in, out_edges, out_svg;
    double beta = 1.0;
    BoundaryRule rule = BoundaryRule::Closed;

    void add(CLI::App& app) {
        auto* cmd = app.add_subcommand("skeleton", "build one beta-skeleton");
        cmd->add_option("--in", in, "point CSV")->required()->check(CLI::ExistingFile);
        cmd->add_option("--beta", beta, "beta >= 1")->capture_default_str();
        add_rule(cmd, rule);
        cmd->add_option("--out-edges", out_edges, "edge CSV (default stdout)");
        cmd->add_option("--out-svg", out_svg, "SVG drawing");
        cmd->callback([this] { run(); });
    }

    void run() {
        const PointSet ps = load_points(in);
        const Skeleton sk = build_fast(ps, beta, rule);
        log("beta=" + io::format_double(beta) + ": " + std::to_string(sk.edges.size()) + " edges on " +
            std::to_string(ps.size()) + " points");
        emit(out_edges, [&](std::ostream& os) { io::write_edges(os, sk); });
        if (!out_svg.empty()) emit(out_svg, [&](std::ostream& os) { io::write_skeleton_svg(os, ps, sk); });
    }
};

struct CurveCmd {
    std::string in, out, out_svg;
    GridOpts grid;
    BoundaryRule rule = BoundaryRule::Closed;

    void add(CLI::App& app) {
        auto* cmd = app.add_subcommand("curve", "edge count e(beta) over a beta grid");
        cmd->add_option("--in", in, "point CSV")->required()->check(CLI::ExistingFile);
        grid.add(cmd);
        add_rule(cmd, rule);
        cmd->add_option("--out", out, "curve CSV (default stdout)");
        cmd->add_option("--out-svg", out_svg, "curve plot as SVG");
        cmd->callback([this] { run(); });
    }

    void run() {
        const PointSet ps = load_points(in);
        const Curve c = curve(ps, grid.grid(), rule, progress_logger("curve"));
        emit(out, [&](std::ostream& os) { io::write_curve(os, c); });
        if (!out_svg.empty()) emit(out_svg, [&](std::ostream& os) { io::write_curve_svg(os, c); });
    }
};

struct FitCmd {
    std::string in_curve, out;
    std::optional<double> c0, alpha0;

    void add(CLI::App& app) {
        auto* cmd = app.add_subcommand("fit", "power-law fit e ~ c * beta^alpha of a curve CSV");
        cmd->add_option("--in-curve", in_curve, "curve CSV")->required()->check(CLI::ExistingFile);
        cmd->add_option("--out", out, "JSON report (default stdout)");
        auto* c = cmd->add_option("--c0", c0, "initial c (default: log-log estimate)");
        auto* a = cmd->add_option("--alpha0", alpha0, "initial alpha");
        c->needs(a);
        a->needs(c);
        cmd->callback([this] { run(); });
    }

    void run() {
        Curve c;
        try {
            c = io::read_curve(in_curve);
        } catch (const Error& e) {
            throw Error(in_curve + ": " + e.what());
        }
        std::optional<PowerInit> init;
        if (c0) init = PowerInit{*c0, *alpha0};
        const PowerFit f = fit_power(c, init);
        log("alpha=" + io::format_double(f.alpha) + " c=" + io::format_double(f.c) +
            (f.converged ? "" : " (not converged)"));
        emit(out, [&](std::ostream& os) { io::write_fit_report(os, f); });
    }
};

struct StabilityCmd {
    std::string in, out;
    GridOpts grid;
    BoundaryRule rule = BoundaryRule::Closed;
    std::optional<std::size_t> rows, cols, defect_index;

    void add(CLI::App& app) {
        auto* cmd = app.add_subcommand("stability", "stability check and, for lattices, defect propagation");
        cmd->add_option("--in", in, "point CSV")->required()->check(CLI::ExistingFile);
        grid.add(cmd);
        add_rule(cmd, rule);
        auto* r = cmd->add_option("--rows", rows, "lattice rows (row-major input)");
        auto* c = cmd->add_option("--cols", cols, "lattice columns");
        auto* d = cmd->add_option("--defect-index", defect_index, "index of the displaced node");
        d->needs(r)->needs(c);
        cmd->add_option("--out", out, "defect report CSV (default stdout)");
        cmd->callback([this] { run(); });
    }

    void run() {
        PointSet ps = load_points(in);
        const LimitGraph limit = limit_graph(ps);
        const bool stable = is_stable(ps, rule);
        std::cout << "stable=" << (stable ? "true" : "false") << '\n';
        std::cout << "limit_graph_edges=" << limit.edges.size() << '\n';
        if (!defect_index) return;
        ps = ps.with_lattice({*rows, *cols});
        const DefectReport r = defect_trace(ps, grid.grid(), *defect_index, rule);
        log("beta_stabilized=" + io::format_double(r.beta_stabilized));
        emit(out, [&](std::ostream& os) { io::write_defect_report(os, r); });
    }
};

struct ClassifyCmd {
    std::string in, out;
    GridOpts grid;
    BoundaryRule rule = BoundaryRule::Closed;
    std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    Thresholds thresholds;

    void add(CLI::App& app) {
        auto* cmd = app.add_subcommand("classify", "random vs structured verdict against random-disc baselines");
        cmd->add_option("--in", in, "point CSV")->required()->check(CLI::ExistingFile);
        grid.add(cmd);
        add_rule(cmd, rule);
        cmd->add_option("--seeds", seeds, "baseline seeds (at least 5)")->delimiter(',')->capture_default_str();
        cmd->add_option("--structured-ratio", thresholds.structured_ratio, "min e(10) ratio for structured")
            ->capture_default_str();
        cmd->add_option("--random-ratio", thresholds.random_ratio, "max e(10) ratio for random")
            ->capture_default_str();
        cmd->add_option("--margin-sd", thresholds.margin_sd, "alpha margin in baseline standard deviations")
            ->capture_default_str();
        cmd->add_option("--out", out, "key=value verdict file");
        cmd->callback([this] { run(); });
    }

    void run() {
        const auto g = grid.grid();
        std::vector<Sample> planned;
        for (double b : g) planned.push_back({b, 0});
        require_discrimination_coverage(Curve(0, planned));
        const PointSet ps = load_points(in);
        const Curve c = curve(ps, g, rule, progress_logger("curve"));
        log("baseline: " + std::to_string(seeds.size()) + " random sets of " + std::to_string(ps.size()) + " points");
        const CurveFeatures f = extract_features(c, seeds, rule);
        const Verdict v = classify(f, thresholds);
        io::write_verdict_report(std::cout, f, v);
        if (!out.empty()) emit(out, [&](std::ostream& os) { io::write_verdict_kv(os, f, v); });
    }
};

struct ScanCmd {
    std::string out;
    std::vector<std::size_t> n_list{50, 100, 200, 300, 400, 500, 600, 700};
    std::uint64_t seed = 1;
    GridOpts grid;
    BoundaryRule rule = BoundaryRule::Closed;

    void add(CLI::App& app) {
        auto* cmd = app.add_subcommand("scan", "fit coefficients of random-disc sets over a list of n");
        cmd->add_option("--n-list", n_list, "point counts")->delimiter(',')->capture_default_str();
        cmd->add_option("--seed", seed, "random seed")->capture_default_str();
        grid.add(cmd);
        add_rule(cmd, rule);
        cmd->add_option("--out", out, "CSV table (default stdout)");
        cmd->callback([this] { run(); });
    }

    void run() {
        const auto g = grid.grid();
        std::vector<ScanRow> rows;
        for (std::size_t n : n_list) {
            log("scan: n=" + std::to_string(n));
            const std::vector<std::size_t> one{n};
            const auto row = coefficient_scan(one, g, seed, rule);
            rows.insert(rows.end(), row.begin(), row.end());
        }
        emit(out, [&](std::ostream& os) { io::write_scan(os, rows); });
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"beta-skeleton point-pattern analysis"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "read options from a key=value file ([subcommand] sections)");
    app.add_flag("-q,--quiet", g_quiet, "no progress output on stderr");

    GenerateCmd generate_cmd;
    SkeletonCmd skeleton_cmd;
    CurveCmd curve_cmd;
    FitCmd fit_cmd;
    StabilityCmd stability_cmd;
    ClassifyCmd classify_cmd;
    ScanCmd scan_cmd;
    generate_cmd.add(app);
    skeleton_cmd.add(app);
    curve_cmd.add(app);
    fit_cmd.add(app);
    stability_cmd.add(app);
    classify_cmd.add(app);
    scan_cmd.add(app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const bskel::InsufficientCoverage& e) {
        std::cerr << "error: " << e.what() << "\n  hint: use --beta-min 1 --beta-max 10 (or more) with --step 0.1\n";
        return 1;
    } catch (const bskel::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
