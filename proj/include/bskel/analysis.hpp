#ifndef BSKEL_ANALYSIS_HPP
#define BSKEL_ANALYSIS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bskel/error.hpp"
#include "bskel/generators.hpp"
#include "bskel/point_set.hpp"
#include "bskel/skeleton.hpp"

namespace bskel {

/// Two grid values closer than this are the same sample.
inline constexpr double kGridTolerance = 1e-9;

/// beta_min, beta_min + step, ... up to beta_max inclusive. Values are
/// computed from the index (no accumulated drift) and snapped to 1e-9.
inline std::vector<double> beta_grid(double beta_min, double beta_max, double step) {
    if (!(beta_min >= 1.0)) throw DomainError("beta grid must start at >= 1");
    if (!(step > 0.0)) throw DomainError("beta grid step must be positive");
    if (!(beta_max >= beta_min)) throw EmptyGrid();
    const auto count = static_cast<std::size_t>(std::floor((beta_max - beta_min) / step + 1e-9)) + 1;
    std::vector<double> grid(count);
    for (std::size_t k = 0; k < count; ++k)
        grid[k] = std::round((beta_min + static_cast<double>(k) * step) * 1e9) / 1e9;
    return grid;
}

struct Sample {
    double beta = 1.0;
    std::size_t edges = 0;

    friend bool operator==(const Sample&, const Sample&) = default;
};

/// Edge-disappearance curve e(n, beta): betas strictly ascending, edge
/// counts non-increasing.
class Curve {
public:
    Curve() = default;

    Curve(std::size_t n, std::vector<Sample> samples, std::string label = {})
        : n_(n), samples_(std::move(samples)), label_(std::move(label)) {
        for (std::size_t k = 1; k < samples_.size(); ++k) {
            if (!(samples_[k].beta > samples_[k - 1].beta))
                throw DomainError("curve betas must be strictly ascending");
            if (samples_[k].edges > samples_[k - 1].edges)
                throw DomainError("curve edge counts must be non-increasing (at beta=" +
                                  std::to_string(samples_[k].beta) + ")");
        }
    }

    std::size_t n() const noexcept { return n_; }
    const std::vector<Sample>& samples() const noexcept { return samples_; }
    const std::string& label() const noexcept { return label_; }
    std::size_t size() const noexcept { return samples_.size(); }
    bool empty() const noexcept { return samples_.empty(); }
    const Sample& operator[](std::size_t k) const { return samples_[k]; }
    double beta_min() const { return samples_.front().beta; }
    double beta_max() const { return samples_.back().beta; }

    std::optional<std::size_t> edges_at(double beta) const {
        auto it = std::lower_bound(samples_.begin(), samples_.end(), beta - kGridTolerance,
                                   [](const Sample& s, double b) { return s.beta < b; });
        if (it != samples_.end() && std::abs(it->beta - beta) <= kGridTolerance) return it->edges;
        return std::nullopt;
    }

    /// Samples with lo <= beta <= hi.
    Curve restrict(double lo, double hi) const {
        std::vector<Sample> out;
        for (const Sample& s : samples_)
            if (s.beta >= lo - kGridTolerance && s.beta <= hi + kGridTolerance) out.push_back(s);
        return Curve(n_, std::move(out), label_);
    }

    /// Largest spacing between consecutive betas (0 for fewer than two samples).
    double max_step() const {
        double step = 0.0;
        for (std::size_t k = 1; k < samples_.size(); ++k) step = std::max(step, samples_[k].beta - samples_[k - 1].beta);
        return step;
    }

private:
    std::size_t n_ = 0;
    std::vector<Sample> samples_;
    std::string label_;
};

inline Curve curve_from_skeletons(std::size_t n, std::span<const Skeleton> skeletons, std::string label = {}) {
    std::vector<Sample> samples;
    samples.reserve(skeletons.size());
    for (const Skeleton& sk : skeletons) samples.push_back({sk.beta, sk.edges.size()});
    return Curve(n, std::move(samples), std::move(label));
}

inline Curve curve(const PointSet& ps, std::span<const double> grid, BoundaryRule rule = BoundaryRule::Closed,
                   const SweepProgress& progress = {}) {
    const auto skeletons = sweep(ps, grid, rule, progress);
    return curve_from_skeletons(ps.size(), skeletons, ps.label());
}

inline Curve curve(const PointSet& ps, double beta_min = 1.0, double beta_max = 50.0, double step = 0.1,
                   BoundaryRule rule = BoundaryRule::Closed, const SweepProgress& progress = {}) {
    const auto grid = beta_grid(beta_min, beta_max, step);
    return curve(ps, grid, rule, progress);
}

// ---------------------------------------------------------------------------
// Power-law fit e ~ c * beta^alpha

struct PowerFit {
    double c = 0.0;
    double alpha = 0.0;
    double r = 0.0;  ///< Pearson correlation of observed vs fitted values
    std::size_t iterations = 0;
    bool converged = false;
    bool singular = false;  ///< normal equations became singular; best iterate returned
    std::size_t used = 0;
    std::size_t excluded = 0;  ///< zero-edge samples left out of the fit
    std::optional<std::pair<double, double>> excluded_range;

    double model(double beta) const { return c * std::pow(beta, alpha); }
};

struct PowerInit {
    double c;
    double alpha;
};

inline constexpr std::size_t kFitMaxIterations = 100;
inline constexpr std::size_t kFitMaxHalvings = 30;
inline constexpr double kFitRelativeStep = 1e-9;

namespace detail {

inline double sse(std::span<const double> x, std::span<const double> y, double c, double alpha) {
    double total = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double res = y[k] - c * std::pow(x[k], alpha);
        total += res * res;
    }
    return total;
}

inline double pearson(std::span<const double> a, std::span<const double> b) {
    const double n = static_cast<double>(a.size());
    double ma = 0.0, mb = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        ma += a[k];
        mb += b[k];
    }
    ma /= n;
    mb /= n;
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        sab += (a[k] - ma) * (b[k] - mb);
        saa += (a[k] - ma) * (a[k] - ma);
        sbb += (b[k] - mb) * (b[k] - mb);
    }
    if (saa == 0.0 || sbb == 0.0) return saa == sbb ? 1.0 : 0.0;
    return sab / std::sqrt(saa * sbb);
}

// Least squares of log y on log x.
inline std::optional<PowerInit> loglog_init(std::span<const double> x, std::span<const double> y) {
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double lx = std::log(x[k]), ly = std::log(y[k]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double den = n * sxx - sx * sx;
    if (!(std::abs(den) > 1e-300)) return std::nullopt;
    const double alpha = (n * sxy - sx * sy) / den;
    return PowerInit{std::exp((sy - alpha * sx) / n), alpha};
}

} // namespace detail

/// Damped Gauss-Newton least squares of sum (v_k - c beta_k^alpha)^2 over
/// real-valued observations. Zero values are excluded. Invariant to sample order.
inline PowerFit fit_power(std::span<const double> betas, std::span<const double> values,
                          std::optional<PowerInit> init = std::nullopt) {
    if (betas.size() != values.size()) throw DomainError("fit: betas and values differ in length");
    std::vector<std::size_t> order(betas.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return betas[a] != betas[b] ? betas[a] < betas[b] : values[a] < values[b];
    });

    PowerFit fit;
    std::vector<double> x, y;
    for (std::size_t k : order) {
        const double beta = betas[k], value = values[k];
        if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("fit: beta must be positive");
        if (!(value >= 0.0) || !std::isfinite(value)) throw DomainError("fit: values must be non-negative");
        if (value == 0.0) {
            ++fit.excluded;
            if (!fit.excluded_range) fit.excluded_range = {beta, beta};
            fit.excluded_range->first = std::min(fit.excluded_range->first, beta);
            fit.excluded_range->second = std::max(fit.excluded_range->second, beta);
            continue;
        }
        x.push_back(beta);
        y.push_back(value);
    }
    fit.used = x.size();
    if (x.size() < 3) throw InsufficientData("fit needs at least 3 samples with positive edge counts");

    if (!init) init = detail::loglog_init(x, y);
    if (!init) throw InsufficientData("fit needs at least two distinct beta values");
    if (!(init->c > 0.0)) throw DomainError("fit: initial c must be positive");

    double c = init->c;
    double alpha = init->alpha;
    double current = detail::sse(x, y, c, alpha);

    for (std::size_t it = 1; it <= kFitMaxIterations; ++it) {
        fit.iterations = it;
        // normal equations (J^T J) delta = J^T r
        double a11 = 0.0, a12 = 0.0, a22 = 0.0, g1 = 0.0, g2 = 0.0;
        for (std::size_t k = 0; k < x.size(); ++k) {
            const double power = std::pow(x[k], alpha);
            const double j1 = power;
            const double j2 = c * power * std::log(x[k]);
            const double res = y[k] - c * power;
            a11 += j1 * j1;
            a12 += j1 * j2;
            a22 += j2 * j2;
            g1 += j1 * res;
            g2 += j2 * res;
        }
        const double det = a11 * a22 - a12 * a12;
        if (!(std::abs(det) > 1e-14 * a11 * a22)) {
            fit.singular = true;
            break;
        }
        const double dc = (a22 * g1 - a12 * g2) / det;
        const double dalpha = (a11 * g2 - a12 * g1) / det;
        const double rel = std::max(std::abs(dc) / std::abs(c), std::abs(dalpha) / std::max(1.0, std::abs(alpha)));

        double lambda = 1.0;
        bool improved = false;
        for (std::size_t h = 0; h <= kFitMaxHalvings; ++h, lambda *= 0.5) {
            const double nc = c + lambda * dc;
            const double na = alpha + lambda * dalpha;
            if (!(nc > 0.0)) continue;
            const double trial = detail::sse(x, y, nc, na);
            if (trial <= current) {
                c = nc;
                alpha = na;
                current = trial;
                improved = true;
                break;
            }
        }
        if (rel < kFitRelativeStep) {
            fit.converged = true;
            break;
        }
        if (!improved) {
            // no descent left along the Gauss-Newton direction
            fit.converged = rel < 1e-6;
            break;
        }
    }

    fit.c = c;
    fit.alpha = alpha;
    std::vector<double> model(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) model[k] = c * std::pow(x[k], alpha);
    fit.r = detail::pearson(y, model);
    return fit;
}

inline PowerFit fit_power(std::span<const Sample> samples, std::optional<PowerInit> init = std::nullopt) {
    std::vector<double> betas, values;
    for (const Sample& s : samples) {
        betas.push_back(s.beta);
        values.push_back(static_cast<double>(s.edges));
    }
    return fit_power(betas, values, init);
}

inline PowerFit fit_power(const Curve& curve, std::optional<PowerInit> init = std::nullopt) {
    return fit_power(std::span<const Sample>(curve.samples()), init);
}

// ---------------------------------------------------------------------------
// Staircase structure

struct Plateau {
    double beta_start;
    double beta_end;
    std::size_t edges;

    double width() const { return beta_end - beta_start; }
};

struct StaircaseReport {
    std::vector<Plateau> plateaus;
    /// drop_sizes[k] = plateaus[k].edges - plateaus[k + 1].edges
    std::vector<std::size_t> drop_sizes;
};

/// Maximal constant runs spanning at least `min_width` in beta.
inline StaircaseReport staircase(const Curve& curve, double min_width = 0.4) {
    StaircaseReport report;
    const auto& s = curve.samples();
    std::size_t start = 0;
    for (std::size_t k = 1; k <= s.size(); ++k) {
        if (k < s.size() && s[k].edges == s[start].edges) continue;
        const Plateau run{s[start].beta, s[k - 1].beta, s[start].edges};
        if (run.width() >= min_width - kGridTolerance) report.plateaus.push_back(run);
        start = k;
    }
    for (std::size_t k = 1; k < report.plateaus.size(); ++k)
        report.drop_sizes.push_back(report.plateaus[k - 1].edges - report.plateaus[k].edges);
    return report;
}

/// Number of distinct edge counts taken by the curve.
inline std::size_t distinct_levels(const Curve& curve) {
    std::set<std::size_t> levels;
    for (const Sample& s : curve.samples()) levels.insert(s.edges);
    return levels.size();
}

// ---------------------------------------------------------------------------
// Curve comparison

namespace detail {

inline void check_same_grid(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw GridMismatch("curves have different grid sizes");
    for (std::size_t k = 0; k < a.size(); ++k)
        if (std::abs(a[k] - b[k]) > kGridTolerance) throw GridMismatch("curves differ at grid index " + std::to_string(k));
}

inline std::vector<double> betas_of(const Curve& c) {
    std::vector<double> out;
    for (const Sample& s : c.samples()) out.push_back(s.beta);
    return out;
}

inline std::vector<double> values_of(const Curve& c) {
    std::vector<double> out;
    for (const Sample& s : c.samples()) out.push_back(static_cast<double>(s.edges));
    return out;
}

inline int sign(double v) { return (v > 0.0) - (v < 0.0); }

// First grid beta where sign(a - b) differs from its sign at the first sample.
inline std::optional<double> crossover(std::span<const double> betas, std::span<const double> a,
                                       std::span<const double> b) {
    if (betas.empty()) return std::nullopt;
    const int initial = sign(a[0] - b[0]);
    for (std::size_t k = 1; k < betas.size(); ++k)
        if (sign(a[k] - b[k]) != initial) return betas[k];
    return std::nullopt;
}

} // namespace detail

/// Smallest grid beta where sign(e_a - e_b) differs from its sign at the
/// first grid value; nullopt when it never changes.
inline std::optional<double> crossover(const Curve& a, const Curve& b) {
    const auto ba = detail::betas_of(a);
    detail::check_same_grid(ba, detail::betas_of(b));
    return detail::crossover(ba, detail::values_of(a), detail::values_of(b));
}

struct EdgeRatio {
    double value = 0.0;
    bool zero_denominator = false;  ///< value is +infinity (or NaN for 0/0)
};

inline EdgeRatio edge_ratio(const Curve& a, const Curve& b, double at_beta) {
    const auto ea = a.edges_at(at_beta);
    const auto eb = b.edges_at(at_beta);
    if (!ea || !eb) throw GridMismatch("both curves must be sampled at beta=" + std::to_string(at_beta));
    if (*eb == 0)
        return {*ea == 0 ? std::numeric_limits<double>::quiet_NaN() : std::numeric_limits<double>::infinity(), true};
    return {static_cast<double>(*ea) / static_cast<double>(*eb), false};
}

// ---------------------------------------------------------------------------
// Coefficient scan over n

struct ScanRow {
    std::size_t n;
    double c;
    double alpha;
    double r;
};

/// For each n: random-disc set (default radii, given seed), curve, fit.
inline std::vector<ScanRow> coefficient_scan(std::span<const std::size_t> n_values, std::span<const double> grid,
                                             std::uint64_t seed, BoundaryRule rule = BoundaryRule::Closed) {
    std::vector<ScanRow> rows;
    for (std::size_t n : n_values) {
        const PointSet ps = gen_random_disc(n, seed);
        const PowerFit fit = fit_power(curve(ps, grid, rule));
        rows.push_back({n, fit.c, fit.alpha, fit.r});
    }
    return rows;
}

} // namespace bskel

#endif
