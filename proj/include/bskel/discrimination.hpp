#ifndef BSKEL_DISCRIMINATION_HPP
#define BSKEL_DISCRIMINATION_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "bskel/analysis.hpp"
#include "bskel/error.hpp"
#include "bskel/generators.hpp"

namespace bskel {

/// Beta at which structured and random curves are compared.
inline constexpr double kComparisonBeta = 10.0;
inline constexpr std::size_t kMinBaselineSeeds = 5;

/// Matched-n random-disc ensemble sampled on a given grid.
struct Baseline {
    std::vector<double> betas;
    std::vector<double> mean_edges;
    std::vector<Curve> curves;
    std::vector<PowerFit> fits;
    double alpha_mean = 0.0;
    double alpha_sd = 0.0;
};

inline Baseline random_baseline(std::size_t n, std::span<const double> grid, std::span<const std::uint64_t> seeds,
                                BoundaryRule rule = BoundaryRule::Closed) {
    if (seeds.size() < kMinBaselineSeeds)
        throw InsufficientBaseline("baseline needs at least " + std::to_string(kMinBaselineSeeds) + " seeds, got " +
                                   std::to_string(seeds.size()));
    Baseline b;
    b.betas.assign(grid.begin(), grid.end());
    b.mean_edges.assign(grid.size(), 0.0);
    for (std::uint64_t seed : seeds) {
        b.curves.push_back(curve(gen_random_disc(n, seed), grid, rule));
        b.fits.push_back(fit_power(b.curves.back()));
        for (std::size_t k = 0; k < grid.size(); ++k)
            b.mean_edges[k] += static_cast<double>(b.curves.back()[k].edges);
    }
    const double count = static_cast<double>(seeds.size());
    for (double& v : b.mean_edges) v /= count;
    for (const PowerFit& f : b.fits) b.alpha_mean += f.alpha;
    b.alpha_mean /= count;
    double ss = 0.0;
    for (const PowerFit& f : b.fits) ss += (f.alpha - b.alpha_mean) * (f.alpha - b.alpha_mean);
    b.alpha_sd = std::sqrt(ss / (count - 1.0));
    return b;
}

struct CurveFeatures {
    std::size_t n = 0;
    double alpha = 0.0;
    double c = 0.0;
    double r = 0.0;
    double ratio_at_10 = 0.0;  ///< e_set(10) / mean random e(10)
    std::optional<double> crossover_beta;
    double baseline_alpha_mean = 0.0;
    double baseline_alpha_sd = 0.0;
    std::size_t baseline_size = 0;
};

/// Throws InsufficientCoverage unless the curve samples [1, 10] at step <= 0.1.
inline void require_discrimination_coverage(const Curve& curve) {
    const double tol = kGridTolerance;
    const bool covered = !curve.empty() && curve.beta_min() <= 1.0 + tol && curve.beta_max() >= kComparisonBeta - tol;
    if (!covered) {
        std::ostringstream msg;
        msg << "classification needs the curve to cover beta in [1, 10]";
        if (curve.empty())
            msg << "; the curve is empty";
        else
            msg << "; it covers [" << curve.beta_min() << ", " << curve.beta_max() << "]";
        throw InsufficientCoverage(msg.str());
    }
    const Curve core = curve.restrict(1.0, kComparisonBeta);
    if (core.max_step() > 0.1 + tol)
        throw InsufficientCoverage("classification needs beta step <= 0.1 over [1, 10]; largest step is " +
                                   std::to_string(core.max_step()));
}

inline CurveFeatures extract_features(const Curve& curve, const Baseline& baseline) {
    require_discrimination_coverage(curve);
    std::vector<double> betas, values;
    for (const Sample& s : curve.samples()) {
        betas.push_back(s.beta);
        values.push_back(static_cast<double>(s.edges));
    }
    detail::check_same_grid(betas, baseline.betas);

    CurveFeatures f;
    f.n = curve.n();
    const PowerFit fit = fit_power(curve);
    f.alpha = fit.alpha;
    f.c = fit.c;
    f.r = fit.r;
    f.baseline_alpha_mean = baseline.alpha_mean;
    f.baseline_alpha_sd = baseline.alpha_sd;
    f.baseline_size = baseline.curves.size();
    f.crossover_beta = detail::crossover(betas, values, baseline.mean_edges);

    std::size_t at = 0;
    while (at < betas.size() && std::abs(betas[at] - kComparisonBeta) > kGridTolerance) ++at;
    if (at == betas.size()) throw InsufficientCoverage("curve has no sample at beta=10");
    f.ratio_at_10 = values[at] / baseline.mean_edges[at];
    return f;
}

/// Fits the curve and compares it against gen_random_disc sets of the same n,
/// one per baseline seed, sampled on the curve's own grid.
inline CurveFeatures extract_features(const Curve& curve, std::span<const std::uint64_t> baseline_seeds,
                                      BoundaryRule rule = BoundaryRule::Closed) {
    require_discrimination_coverage(curve);
    if (baseline_seeds.size() < kMinBaselineSeeds)
        throw InsufficientBaseline("baseline needs at least " + std::to_string(kMinBaselineSeeds) + " seeds, got " +
                                   std::to_string(baseline_seeds.size()));
    if (curve.n() < 2) throw DomainError("curve has no point count; cannot build a matched baseline");
    std::vector<double> grid;
    for (const Sample& s : curve.samples()) grid.push_back(s.beta);
    return extract_features(curve, random_baseline(curve.n(), grid, baseline_seeds, rule));
}

enum class Classification { Random, Structured, Inconclusive };

inline const char* to_string(Classification c) {
    switch (c) {
    case Classification::Random: return "random";
    case Classification::Structured: return "structured";
    case Classification::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

struct Thresholds {
    double structured_ratio = 1.5;
    double random_ratio = 1.15;
    double margin_sd = 2.0;  ///< alpha margin, in baseline standard deviations
};

struct Evidence {
    std::string criterion;
    double value;
    double threshold;
    bool passed;
};

struct Verdict {
    Classification classification = Classification::Inconclusive;
    std::vector<Evidence> evidence;
};

/// Structured: many more edges than random at beta = 10 and a flatter decay.
/// Random: close to the baseline on both. Anything else is inconclusive.
inline Verdict classify(const CurveFeatures& f, const Thresholds& t = {}) {
    const double margin = t.margin_sd * f.baseline_alpha_sd;
    const double alpha_floor = f.baseline_alpha_mean + margin;
    const double alpha_offset = std::abs(f.alpha - f.baseline_alpha_mean);

    Verdict v;
    v.evidence = {
        {"ratio_at_10 >= structured_ratio", f.ratio_at_10, t.structured_ratio, f.ratio_at_10 >= t.structured_ratio},
        {"alpha > baseline_mean + margin", f.alpha, alpha_floor, f.alpha > alpha_floor},
        {"ratio_at_10 <= random_ratio", f.ratio_at_10, t.random_ratio, f.ratio_at_10 <= t.random_ratio},
        {"|alpha - baseline_mean| <= margin", alpha_offset, margin, alpha_offset <= margin},
    };
    if (v.evidence[0].passed && v.evidence[1].passed)
        v.classification = Classification::Structured;
    else if (v.evidence[2].passed && v.evidence[3].passed)
        v.classification = Classification::Random;
    else
        v.classification = Classification::Inconclusive;
    return v;
}

} // namespace bskel

#endif
