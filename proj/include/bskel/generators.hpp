#ifndef BSKEL_GENERATORS_HPP
#define BSKEL_GENERATORS_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "bskel/error.hpp"
#include "bskel/geometry.hpp"
#include "bskel/point_set.hpp"

namespace bskel {

/// Seeded source of uniform doubles. Built directly on the 64-bit Mersenne
/// Twister bit stream so output is identical across standard libraries.
class Random {
public:
    explicit Random(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    std::mt19937_64 engine_;
};

struct RandomDiscParams {
    std::size_t n = 500;
    double big_radius = 250.0;
    double point_radius = 2.5;
};

struct RectLatticeParams {
    std::size_t rows = 10;
    std::size_t cols = 10;
    double spacing = 10.0;
};

struct HexLatticeParams {
    std::size_t rows = 10;
    std::size_t cols = 10;
    double spacing = 10.0;
};

struct DefectLatticeParams {
    std::size_t rows = 9;
    std::size_t cols = 9;
    double spacing = 10.0;
    std::size_t defect_row = 3;
    std::size_t defect_col = 4;
    double jitter = 3.0;
};

struct SpiralWebParams {
    std::size_t turns = 2;
    std::size_t points_per_turn = 24;
    std::size_t rays = 8;
    std::size_t points_per_ray = 6;
    double pitch = 10.0;
};

struct NestedCirclesParams {
    std::size_t circles = 6;
    std::size_t per_circle = 40;
    double radius_step = 40.0;
    Point center{0.0, 0.0};
    double center_jitter = 0.0;
    double point_jitter = 0.0;
    bool include_center_point = true;
};

using GeneratorParams = std::variant<RandomDiscParams, RectLatticeParams, HexLatticeParams, DefectLatticeParams,
                                     SpiralWebParams, NestedCirclesParams>;

/// A point-set family plus its parameters; a pure function of itself.
struct GeneratorSpec {
    GeneratorParams params;
    std::uint64_t seed = 1;
};

/// Rejection attempts allowed in a row before giving up on a packing.
inline constexpr std::size_t kMaxConsecutiveRejections = 1'000'000;

/// n centres uniform in a disc, no two closer than 2 * point_radius.
inline PointSet gen_random_disc(std::size_t n, double big_radius, double point_radius, std::uint64_t seed) {
    if (n < 2) throw DomainError("random disc: n must be >= 2");
    if (!(big_radius > 0.0) || !(point_radius >= 0.0)) throw DomainError("random disc: invalid radii");

    const double min_dist = 2.0 * point_radius;
    const double min_dist2 = min_dist * min_dist;
    const double cell = min_dist > 0.0 ? min_dist : big_radius;
    auto cell_of = [&](double v) { return static_cast<std::int64_t>(std::floor(v / cell)); };
    auto key = [](std::int64_t cx, std::int64_t cy) {
        return (static_cast<std::uint64_t>(cx) << 32) ^ static_cast<std::uint64_t>(cy & 0xffffffff);
    };
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets;

    Random rng(seed);
    std::vector<Point> pts;
    pts.reserve(n);
    std::size_t rejections = 0;
    while (pts.size() < n) {
        const double r = big_radius * std::sqrt(rng.uniform());
        const double theta = 2.0 * std::numbers::pi * rng.uniform();
        const Point p{r * std::cos(theta), r * std::sin(theta)};
        const std::int64_t cx = cell_of(p.x), cy = cell_of(p.y);
        bool clash = false;
        for (std::int64_t dx = -1; dx <= 1 && !clash; ++dx) {
            for (std::int64_t dy = -1; dy <= 1 && !clash; ++dy) {
                const auto it = buckets.find(key(cx + dx, cy + dy));
                if (it == buckets.end()) continue;
                for (std::size_t k : it->second) {
                    const double d2 = norm2(pts[k] - p);
                    if (d2 < min_dist2 || d2 == 0.0) {
                        clash = true;
                        break;
                    }
                }
            }
        }
        if (clash) {
            if (++rejections >= kMaxConsecutiveRejections)
                throw PackingFailure("random disc: could not place point " + std::to_string(pts.size() + 1) +
                                     " of " + std::to_string(n));
            continue;
        }
        rejections = 0;
        buckets[key(cx, cy)].push_back(pts.size());
        pts.push_back(p);
    }
    return PointSet(std::move(pts), "random-disc n=" + std::to_string(n), seed);
}

inline PointSet gen_random_disc(std::size_t n, std::uint64_t seed) {
    const RandomDiscParams d;
    return gen_random_disc(n, d.big_radius, d.point_radius, seed);
}

inline PointSet gen_rect_lattice(std::size_t rows, std::size_t cols, double spacing) {
    if (rows < 2 || cols < 2) throw DomainError("rect lattice: rows and cols must be >= 2");
    if (!(spacing > 0.0)) throw DomainError("rect lattice: spacing must be positive");
    std::vector<Point> pts;
    pts.reserve(rows * cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            pts.push_back({static_cast<double>(c) * spacing, static_cast<double>(r) * spacing});
    return PointSet(std::move(pts), "rect-lattice " + std::to_string(rows) + "x" + std::to_string(cols))
        .with_lattice({rows, cols});
}

/// Triangular packing: odd rows shifted by spacing/2, rows spacing*sqrt(3)/2 apart.
inline PointSet gen_hex_lattice(std::size_t rows, std::size_t cols, double spacing) {
    if (rows < 2 || cols < 2) throw DomainError("hex lattice: rows and cols must be >= 2");
    if (!(spacing > 0.0)) throw DomainError("hex lattice: spacing must be positive");
    const double row_height = spacing * std::sqrt(3.0) / 2.0;
    std::vector<Point> pts;
    pts.reserve(rows * cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const double shift = (r % 2 == 1) ? spacing / 2.0 : 0.0;
        for (std::size_t c = 0; c < cols; ++c)
            pts.push_back({static_cast<double>(c) * spacing + shift, static_cast<double>(r) * row_height});
    }
    return PointSet(std::move(pts), "hex-lattice " + std::to_string(rows) + "x" + std::to_string(cols))
        .with_lattice({rows, cols});
}

/// Rectangular lattice with one node moved off its row and off its column.
inline PointSet gen_defect_lattice(std::size_t rows, std::size_t cols, double spacing, std::size_t defect_row,
                                   std::size_t defect_col, double jitter, std::uint64_t seed) {
    if (rows < 2 || cols < 2) throw DomainError("defect lattice: rows and cols must be >= 2");
    if (!(spacing > 0.0)) throw DomainError("defect lattice: spacing must be positive");
    if (defect_row >= rows || defect_col >= cols) throw DomainError("defect lattice: defect index out of range");
    if (!(jitter > 0.0 && jitter < spacing / 2.0))
        throw DomainError("defect lattice: jitter must lie in (0, spacing/2)");

    Random rng(seed);
    auto offset = [&] {
        double v = 0.0;
        while (v == 0.0) v = rng.uniform(-jitter, jitter);
        return v;
    };
    const double dx = offset();
    const double dy = offset();

    std::vector<Point> pts;
    pts.reserve(rows * cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            Point p{static_cast<double>(c) * spacing, static_cast<double>(r) * spacing};
            if (r == defect_row && c == defect_col) p = p + Point{dx, dy};
            pts.push_back(p);
        }
    }
    return PointSet(std::move(pts), "defect-lattice " + std::to_string(rows) + "x" + std::to_string(cols), seed)
        .with_lattice({rows, cols});
}

/// Archimedean spiral r = pitch * theta / (2 pi) sampled uniformly over
/// `turns` turns from the centre, plus straight rays continuing outward.
inline PointSet gen_spiral_web(std::size_t turns, std::size_t points_per_turn, std::size_t rays,
                               std::size_t points_per_ray, double pitch) {
    if (turns < 1) throw DomainError("spiral web: turns must be >= 1");
    if (rays < 3) throw DomainError("spiral web: rays must be >= 3");
    if (points_per_turn < 3) throw DomainError("spiral web: points_per_turn must be >= 3");
    if (!(pitch > 0.0)) throw DomainError("spiral web: pitch must be positive");

    std::vector<Point> pts;
    const std::size_t spiral_points = turns * points_per_turn;
    for (std::size_t k = 0; k <= spiral_points; ++k) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(points_per_turn);
        const double r = pitch * theta / (2.0 * std::numbers::pi);
        pts.push_back({r * std::cos(theta), r * std::sin(theta)});
    }
    const double outer = pitch * static_cast<double>(turns);
    for (std::size_t j = 0; j < rays; ++j) {
        const double phi = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(rays);
        for (std::size_t i = 1; i <= points_per_ray; ++i) {
            const double r = outer + pitch * static_cast<double>(i);
            pts.push_back({r * std::cos(phi), r * std::sin(phi)});
        }
    }
    return PointSet(std::move(pts), "spiral-web");
}

/// Concentric circles k = 1..circles of radius k * radius_step with
/// per_circle equally spaced points each, optionally plus the centre.
inline PointSet gen_nested_circles(const NestedCirclesParams& prm, std::uint64_t seed) {
    if (prm.circles < 1) throw DomainError("nested circles: circles must be >= 1");
    if (prm.per_circle < 3) throw DomainError("nested circles: per_circle must be >= 3");
    if (!(prm.radius_step > 0.0)) throw DomainError("nested circles: radius_step must be positive");
    if (!(prm.center_jitter >= 0.0) || !(prm.point_jitter >= 0.0))
        throw DomainError("nested circles: jitter must be non-negative");

    Random rng(seed);
    auto jitter = [&](double amount) {
        if (amount == 0.0) return Point{};
        const double jx = rng.uniform(-amount, amount);
        const double jy = rng.uniform(-amount, amount);
        return Point{jx, jy};
    };

    constexpr int kMaxAttempts = 1000;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        std::vector<Point> pts;
        if (prm.include_center_point) pts.push_back(prm.center + jitter(prm.point_jitter));
        for (std::size_t k = 1; k <= prm.circles; ++k) {
            const Point c = prm.center + jitter(prm.center_jitter);
            const double radius = static_cast<double>(k) * prm.radius_step;
            for (std::size_t a = 0; a < prm.per_circle; ++a) {
                const double theta = 2.0 * std::numbers::pi * static_cast<double>(a) / static_cast<double>(prm.per_circle);
                pts.push_back(c + Point{radius * std::cos(theta), radius * std::sin(theta)} + jitter(prm.point_jitter));
            }
        }
        try {
            return PointSet(std::move(pts), "nested-circles", seed);
        } catch (const DuplicatePoints&) {
            // redraw with the continuing stream
        }
    }
    throw DomainError("nested circles: could not draw distinct points");
}

inline PointSet gen_nested_circles(std::uint64_t seed = 1) { return gen_nested_circles(NestedCirclesParams{}, seed); }

inline PointSet generate(const GeneratorSpec& spec) {
    struct Visitor {
        std::uint64_t seed;
        PointSet operator()(const RandomDiscParams& p) const {
            return gen_random_disc(p.n, p.big_radius, p.point_radius, seed);
        }
        PointSet operator()(const RectLatticeParams& p) const { return gen_rect_lattice(p.rows, p.cols, p.spacing); }
        PointSet operator()(const HexLatticeParams& p) const { return gen_hex_lattice(p.rows, p.cols, p.spacing); }
        PointSet operator()(const DefectLatticeParams& p) const {
            return gen_defect_lattice(p.rows, p.cols, p.spacing, p.defect_row, p.defect_col, p.jitter, seed);
        }
        PointSet operator()(const SpiralWebParams& p) const {
            return gen_spiral_web(p.turns, p.points_per_turn, p.rays, p.points_per_ray, p.pitch);
        }
        PointSet operator()(const NestedCirclesParams& p) const { return gen_nested_circles(p, seed); }
    };
    return std::visit(Visitor{spec.seed}, spec.params);
}

} // namespace bskel

#endif
