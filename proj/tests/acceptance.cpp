// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "bskel/bskel.hpp"
#include "oracles.hpp"

using namespace bskel;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::vector<double> full_grid() { return beta_grid(1.0, 50.0, 0.1); }

Outcome oracle_equivalence() {
    const auto t0 = Clock::now();
    const std::vector<std::size_t> sizes{10, 50, 100, 200};
    const std::vector<double> betas{1.0, 1.5, 2.0, 5.0, 20.0};
    int sets = 0, mismatches = 0;
    for (std::size_t n : sizes) {
        for (std::uint64_t s = 1; s <= 25; ++s) {
            const PointSet ps = gen_random_disc(n, 1000 * n + s);
            ++sets;
            const SkeletonBuilder builder(ps);
            for (double b : betas)
                for (BoundaryRule rule : {BoundaryRule::Closed, BoundaryRule::Open})
                    if (builder.build(b, rule).edges != build_oracle(ps, b, rule).edges) ++mismatches;
        }
    }
    const double t = seconds_since(t0);
    return {mismatches == 0 && t < 120.0,
            fmt("%d sets x 5 beta x 2 rules, %d mismatches, %.1f s (limit 120 s)", sets, mismatches, t)};
}

Outcome special_cases() {
    int gabriel_bad = 0, rng_bad = 0;
    for (std::uint64_t s = 1; s <= 50; ++s) {
        const PointSet ps = (s % 2) ? gen_random_disc(40 + 4 * s, s) : oracle::uniform_square(40 + 4 * s, s);
        if (build_fast(ps, 1.0).edges != oracle::gabriel(ps)) ++gabriel_bad;
        if (build_fast(ps, 2.0).edges != oracle::relative_neighbourhood(ps)) ++rng_bad;
    }
    return {gabriel_bad == 0 && rng_bad == 0,
            fmt("50 sets: Gabriel mismatches %d, RNG mismatches %d", gabriel_bad, rng_bad)};
}

Outcome monotonicity() {
    const auto grid = full_grid();
    long violations = 0;
    for (std::uint64_t s = 1; s <= 20; ++s) {
        const PointSet ps = gen_random_disc(150, 500 + s);
        const SkeletonBuilder builder(ps);
        Skeleton prev = builder.build(grid[0]);
        for (std::size_t k = 1; k < grid.size(); ++k) {
            Skeleton cur = builder.build(grid[k]);
            if (!std::includes(prev.edges.begin(), prev.edges.end(), cur.edges.begin(), cur.edges.end())) ++violations;
            prev = std::move(cur);
        }
    }
    return {violations == 0, fmt("20 sets x 491 grid steps, independent builds, %ld violations", violations)};
}

Outcome lattices() {
    const auto grid = full_grid();
    const PointSet rect = gen_rect_lattice(10, 10, 10);
    const auto rect_curve = curve(rect, grid);
    const bool all_180 = std::all_of(rect_curve.samples().begin(), rect_curve.samples().end(),
                                     [](const Sample& s) { return s.edges == 180; });
    const bool stable = is_stable(rect);

    const PointSet hex = gen_hex_lattice(10, 10, 10);
    const auto sk = sweep(hex, grid);
    double diagonal_gone = -1, all_gone = -1;
    for (const Skeleton& s : sk) {
        const bool any_diagonal = std::any_of(s.edges.begin(), s.edges.end(), [&](Edge e) { return hex[e.i].y != hex[e.j].y; });
        if (diagonal_gone < 0 && !any_diagonal) diagonal_gone = s.beta;
        if (all_gone < 0 && s.edges.empty()) all_gone = s.beta;
    }
    const bool hex_ok = diagonal_gone > 0 && diagonal_gone <= 2.0 + 0.1 + 1e-9 && all_gone > 0 && all_gone <= 3.0 + 0.1 + 1e-9;
    return {all_180 && stable && hex_ok,
            fmt("rect: 180 edges at every beta %s, stable %s; hex: diagonals gone at %.1f, all gone at %.1f",
                all_180 ? "yes" : "no", stable ? "yes" : "no", diagonal_gone, all_gone)};
}

Outcome power_law() {
    const auto grid = full_grid();
    struct Row {
        std::size_t n;
        double target;
        double mean = 0;
        double seconds = 0;
    };
    std::vector<Row> rows{{823, -0.73}, {351, -0.5344}};
    const int seeds = 10;
    for (Row& r : rows) {
        const auto t0 = Clock::now();
        for (int s = 1; s <= seeds; ++s)
            r.mean += fit_power(curve(gen_random_disc(r.n, static_cast<std::uint64_t>(s)), grid)).alpha / seeds;
        r.seconds = seconds_since(t0);
    }
    bool ok = std::abs(rows[0].mean) > std::abs(rows[1].mean);
    for (const Row& r : rows) ok = ok && std::abs(r.mean - r.target) <= 0.15 && r.seconds < 600;
    return {ok, fmt("%d seeds: alpha(823) = %.4f (target -0.73 +- 0.15, %.1f s), alpha(351) = %.4f "
                    "(target -0.5344 +- 0.15, %.1f s)",
                    seeds, rows[0].mean, rows[0].seconds, rows[1].mean, rows[1].seconds)};
}

Outcome fit_correctness() {
    const auto grid = full_grid();
    double worst = 0;
    bool converged = true;
    for (auto [c, a] : std::vector<std::pair<double, double>>{{100, -0.5}, {1500, -0.73}, {40, -0.3}}) {
        std::vector<double> y;
        for (double b : grid) y.push_back(c * std::pow(b, a));
        for (double fc : {0.1, 1.0, 10.0})
            for (double fa : {0.1, 1.0, 10.0}) {
                const PowerFit f = fit_power(grid, y, PowerInit{c * fc, a * fa});
                converged = converged && f.converged;
                worst = std::max({worst, std::abs(f.c - c) / c, std::abs(f.alpha - a) / std::abs(a)});
            }
    }

    // local minimum on real curves
    int minimum_failures = 0;
    for (std::uint64_t s = 1; s <= 5; ++s) {
        const Curve cv = curve(gen_random_disc(300, s), grid);
        const PowerFit f = fit_power(cv);
        auto sse = [&](double c, double a) {
            double total = 0;
            for (const Sample& smp : cv.samples()) {
                if (smp.edges == 0) continue;
                const double r = static_cast<double>(smp.edges) - c * std::pow(smp.beta, a);
                total += r * r;
            }
            return total;
        };
        const double best = sse(f.c, f.alpha);
        for (double dc : {-0.01, 0.0, 0.01})
            for (double da : {-0.01, 0.0, 0.01})
                if (sse(f.c * (1 + dc), f.alpha * (1 + da)) < best * (1 - 1e-12)) ++minimum_failures;
    }
    return {worst <= 1e-6 && converged && minimum_failures == 0,
            fmt("27 recoveries from guesses within a factor 10, worst relative error %.2e (limit 1e-6); "
                "local-minimum failures %d",
                worst, minimum_failures)};
}

Outcome discrimination_direction() {
    const auto grid = full_grid();
    const Curve circles = curve(gen_nested_circles(), grid);
    int fewer_at_1 = 0, crossing = 0, ratio_ok = 0, all_three = 0;
    std::ostringstream per_seed;
    for (std::uint64_t s = 1; s <= 10; ++s) {
        const Curve random = curve(gen_random_disc(241, s), grid);
        const bool fewer = circles[0].edges < random[0].edges;
        const auto x = crossover(circles, random);
        const bool cross = x && *x >= 1.5 - 1e-9 && *x <= 4.0 + 1e-9;
        const double ratio = edge_ratio(circles, random, 10.0).value;
        const bool high = ratio >= 1.5;
        fewer_at_1 += fewer;
        crossing += cross;
        ratio_ok += high;
        all_three += fewer && cross && high;
        per_seed << "\n      seed " << s << ": e(1) " << circles[0].edges << " vs " << random[0].edges << ", crossover "
                 << (x ? fmt("%.1f", *x) : std::string("none")) << ", ratio(10) " << fmt("%.2f", ratio);
    }
    return {all_three >= 8,
            fmt("%d/10 seeds meet all three (need 8): fewer edges at beta=1 %d/10, crossover in [1.5, 4] %d/10, "
                "ratio(10) >= 1.5 %d/10",
                all_three, fewer_at_1, crossing, ratio_ok) +
                per_seed.str()};
}

Outcome staircase_shape() {
    const Curve plain = curve(gen_nested_circles(), 1.0, 5.0, 0.1);
    NestedCirclesParams jittered;
    jittered.point_jitter = 2.0;
    const Curve noisy = curve(gen_nested_circles(jittered, 1), 1.0, 5.0, 0.1);
    const auto stairs = staircase(plain, 0.4);
    const std::size_t plain_levels = distinct_levels(plain), noisy_levels = distinct_levels(noisy);
    std::string list;
    for (const Plateau& p : stairs.plateaus)
        list += fmt(" [%.1f, %.1f]=%zu", p.beta_start, p.beta_end, p.edges);
    return {stairs.plateaus.size() >= 2 && noisy_levels > plain_levels,
            fmt("%zu plateaus of width >= 0.4 on [1, 5]:", stairs.plateaus.size()) + list +
                fmt("; distinct levels %zu plain vs %zu jittered", plain_levels, noisy_levels)};
}

struct DefectCheck {
    bool local;
    bool settled;
    double stabilized;
};

DefectCheck check_defect(std::uint64_t seed, const std::vector<double>& grid) {
    const DefectLatticeParams prm;
    const PointSet ps = generate({prm, seed});
    const std::size_t defect = prm.defect_row * prm.cols + prm.defect_col;
    const DefectReport r = defect_trace(ps, grid, defect);
    bool local = true;
    for (const Removal& rm : r.removed_edges_by_beta)
        for (const Edge& e : rm.edges) {
            bool near = false;
            for (std::size_t v : {e.i, e.j}) {
                const long row = static_cast<long>(v / prm.cols), col = static_cast<long>(v % prm.cols);
                near = near || std::abs(row - static_cast<long>(prm.defect_row)) <= 1 ||
                       std::abs(col - static_cast<long>(prm.defect_col)) <= 1;
            }
            local = local && near;
        }
    // the final 20% of grid values must show no change
    const std::size_t tail = grid.size() / 5;
    const double tail_start = grid[grid.size() - tail];
    return {local, r.beta_stabilized < tail_start - 1e-9, r.beta_stabilized};
}

Outcome defect_locality() {
    const auto grid = full_grid();
    const std::size_t tail = grid.size() / 5;
    const DefectCheck declared = check_defect(1, grid);
    std::string others;
    int settled = 0;
    for (std::uint64_t s = 1; s <= 10; ++s) {
        const DefectCheck c = check_defect(s, grid);
        settled += c.settled;
        others += fmt(" %.1f", c.stabilized);
    }
    return {declared.local && declared.settled,
            fmt("seed 1: removals local %s, last removal at beta=%.1f, final %zu grid values start at %.1f; "
                "last removal by seed 1..10:",
                declared.local ? "yes" : "no", declared.stabilized, tail, grid[grid.size() - tail]) +
                others + fmt(" (%d/10 settle in time)", settled)};
}

Outcome determinism() {
    const std::vector<GeneratorSpec> specs{{RandomDiscParams{300}, 4},   {RectLatticeParams{}, 1},
                                           {HexLatticeParams{}, 1},      {DefectLatticeParams{}, 6},
                                           {SpiralWebParams{}, 1},       {NestedCirclesParams{}, 3}};
    const auto grid = beta_grid(1.0, 12.0, 0.1);
    int differing = 0;
    double worst = 0;
    for (const GeneratorSpec& spec : specs) {
        std::string first;
        for (int run = 0; run < 2; ++run) {
            const PointSet ps = generate(spec);
            std::ostringstream out;
            io::write_points(out, ps);
            io::write_edges(out, build_fast(ps, 1.7));
            io::write_curve(out, curve(ps, grid));
            io::write_skeleton_svg(out, ps, build_fast(ps, 2.3));
            if (run == 0)
                first = out.str();
            else if (out.str() != first)
                ++differing;

            std::stringstream file;
            io::write_points(file, ps);
            const PointSet back = io::parse_points(file);
            if (back.size() != ps.size()) {
                worst = INFINITY;
                continue;
            }
            for (std::size_t k = 0; k < ps.size(); ++k)
                worst = std::max({worst, std::abs(back[k].x - ps[k].x), std::abs(back[k].y - ps[k].y)});
        }
    }
    return {differing == 0 && worst <= 1e-12,
            fmt("%zu generator configs: %d differing outputs on rerun; worst round-trip error %.1e", specs.size(),
                differing, worst)};
}

} // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"oracle equivalence", oracle_equivalence},
        {"Gabriel and RNG special cases", special_cases},
        {"monotonicity over the full grid", monotonicity},
        {"rectangular stability, hexagonal collapse", lattices},
        {"power-law exponent bands", power_law},
        {"Gauss-Newton fit correctness", fit_correctness},
        {"discrimination direction", discrimination_direction},
        {"staircase structure", staircase_shape},
        {"defect locality and settling", defect_locality},
        {"determinism and round-trip", determinism},
    };
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << k + 1 << ". " << criteria[k].first << ": " << o.detail
                  << std::endl;
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed"
              << std::endl;
    return failed == 0 ? 0 : 1;
}
