#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "bskel/analysis.hpp"
#include "bskel/generators.hpp"

using namespace bskel;

namespace {

template <class F>
Curve synthetic(const std::vector<double>& grid, F&& edges_of) {
    std::vector<Sample> s;
    for (double b : grid) s.push_back({b, edges_of(b)});
    return Curve(0, std::move(s));
}

double sum_squares(const std::vector<double>& x, const std::vector<double>& y, double c, double alpha) {
    double total = 0;
    for (std::size_t k = 0; k < x.size(); ++k) total += std::pow(y[k] - c * std::pow(x[k], alpha), 2);
    return total;
}

std::vector<double> full_grid() { return beta_grid(1.0, 50.0, 0.1); }

} // namespace

TEST(BetaGrid, DefaultHas491Values) {
    const auto g = full_grid();
    ASSERT_EQ(g.size(), 491u);
    EXPECT_EQ(g.front(), 1.0);
    EXPECT_EQ(g.back(), 50.0);
    EXPECT_EQ(g[14], 2.4);
    EXPECT_THROW(beta_grid(0.5, 2, 0.1), DomainError);
    EXPECT_THROW(beta_grid(1, 2, 0), DomainError);
    EXPECT_THROW(beta_grid(3, 2, 0.1), EmptyGrid);
}

TEST(CurveOp, RectLatticeIsConstant) {
    const Curve c = curve(gen_rect_lattice(10, 10, 10));
    ASSERT_EQ(c.size(), 491u);
    for (const Sample& s : c.samples()) EXPECT_EQ(s.edges, 180u);
    EXPECT_EQ(c.n(), 100u);
}

TEST(CurveOp, TwoPointsIsConstantOne) {
    const PointSet ps({{0, 0}, {3, 4}});
    for (const Sample& s : curve(ps).samples()) EXPECT_EQ(s.edges, 1u);
}

TEST(CurveOp, HexLatticeEmptyAtThree) {
    const Curve c = curve(gen_hex_lattice(10, 10, 10));
    EXPECT_EQ(c.edges_at(3.0), std::optional<std::size_t>(0));
    EXPECT_GT(*c.edges_at(1.0), 0u);
}

TEST(CurveOp, ConstructionRejectsBadSamples) {
    EXPECT_THROW(Curve(3, {{1.0, 3}, {1.0, 2}}), DomainError);
    EXPECT_THROW(Curve(3, {{1.0, 3}, {1.1, 4}}), DomainError);
    const Curve c(3, {{1.0, 3}, {1.1, 3}, {1.2, 1}});
    EXPECT_EQ(c.restrict(1.05, 1.2).size(), 2u);
    EXPECT_NEAR(c.max_step(), 0.1, 1e-12);
    EXPECT_FALSE(c.edges_at(1.05).has_value());
}

TEST(FitPower, RecoversExactModel) {
    const auto x = full_grid();
    std::vector<double> y;
    for (double b : x) y.push_back(100.0 * std::pow(b, -0.5));
    const PowerFit f = fit_power(x, y);
    EXPECT_TRUE(f.converged);
    EXPECT_NEAR(f.c, 100.0, 1e-6 * 100.0);
    EXPECT_NEAR(f.alpha, -0.5, 1e-6 * 0.5);
    EXPECT_NEAR(f.r, 1.0, 1e-12);
    EXPECT_EQ(f.used, 491u);
    EXPECT_EQ(f.excluded, 0u);
}

TEST(FitPower, RecoversFromDistantInitialGuesses) {
    const auto x = full_grid();
    std::vector<double> y;
    for (double b : x) y.push_back(100.0 * std::pow(b, -0.5));
    for (double fc : {0.1, 1.0, 10.0})
        for (double fa : {0.1, 1.0, 10.0}) {
            const PowerFit f = fit_power(x, y, PowerInit{100.0 * fc, -0.5 * fa});
            EXPECT_NEAR(f.c, 100.0, 1e-4) << fc << " " << fa;
            EXPECT_NEAR(f.alpha, -0.5, 5e-7) << fc << " " << fa;
        }
}

TEST(FitPower, ExcludesZeroSamples) {
    const Curve c(10, {{1.0, 9}, {1.1, 8}, {1.2, 6}, {1.3, 5}, {1.4, 0}, {1.5, 0}});
    const PowerFit f = fit_power(c);
    EXPECT_EQ(f.used, 4u);
    EXPECT_EQ(f.excluded, 2u);
    ASSERT_TRUE(f.excluded_range.has_value());
    EXPECT_EQ(f.excluded_range->first, 1.4);
    EXPECT_EQ(f.excluded_range->second, 1.5);
    EXPECT_LT(f.alpha, 0.0);
}

TEST(FitPower, InsufficientData) {
    EXPECT_THROW(fit_power(Curve(2, {{1.0, 1}, {2.0, 1}})), InsufficientData);
    EXPECT_THROW(fit_power(Curve(2, {{1.0, 3}, {2.0, 2}, {3.0, 0}})), InsufficientData);
}

TEST(FitPower, ConvergedFitIsLocalMinimum) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const Curve c = curve(gen_random_disc(200, seed));
        const PowerFit f = fit_power(c);
        ASSERT_TRUE(f.converged);
        std::vector<double> x, y;
        for (const Sample& s : c.samples())
            if (s.edges > 0) {
                x.push_back(s.beta);
                y.push_back(static_cast<double>(s.edges));
            }
        const double best = sum_squares(x, y, f.c, f.alpha);
        for (double dc : {-0.01, 0.0, 0.01})
            for (double da : {-0.01, 0.0, 0.01})
                EXPECT_GE(sum_squares(x, y, f.c * (1 + dc), f.alpha * (1 + da)), best * (1 - 1e-12));
        EXPECT_GT(f.c, 0.0);
        EXPECT_GE(f.r, -1.0);
        EXPECT_LE(f.r, 1.0);
    }
}

TEST(FitPower, OrderInvariant) {
    const Curve c = curve(gen_random_disc(150, 4));
    std::vector<Sample> shuffled = c.samples();
    std::mt19937_64 gen(11);
    std::shuffle(shuffled.begin(), shuffled.end(), gen);
    const PowerFit a = fit_power(c), b = fit_power(shuffled);
    EXPECT_EQ(a.c, b.c);
    EXPECT_EQ(a.alpha, b.alpha);
    EXPECT_EQ(a.r, b.r);
}

TEST(Staircase, ConstantCurveIsOnePlateau) {
    const Curve c = synthetic(full_grid(), [](double) { return std::size_t{7}; });
    const StaircaseReport r = staircase(c);
    ASSERT_EQ(r.plateaus.size(), 1u);
    EXPECT_EQ(r.plateaus[0].beta_start, 1.0);
    EXPECT_EQ(r.plateaus[0].beta_end, 50.0);
    EXPECT_EQ(r.plateaus[0].edges, 7u);
    EXPECT_TRUE(r.drop_sizes.empty());
}

TEST(Staircase, StrictlyDecreasingHasNoPlateaus) {
    const auto g = full_grid();
    std::size_t k = 0;
    const Curve c = synthetic(g, [&](double) { return std::size_t{1000} - k++; });
    EXPECT_TRUE(staircase(c).plateaus.empty());
    EXPECT_EQ(distinct_levels(c), 491u);
}

TEST(Staircase, NestedCirclesHaveStairsBelowFive) {
    const Curve c = curve(gen_nested_circles()).restrict(1.0, 5.0);
    const StaircaseReport r = staircase(c);
    EXPECT_GE(r.plateaus.size(), 2u);
    for (std::size_t k = 1; k < r.plateaus.size(); ++k) {
        EXPECT_GT(r.plateaus[k].beta_start, r.plateaus[k - 1].beta_end);
        EXPECT_EQ(r.drop_sizes[k - 1], r.plateaus[k - 1].edges - r.plateaus[k].edges);
    }
}

TEST(Staircase, PlateausAreConsistentWithCurve) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const Curve c = curve(gen_random_disc(120, seed));
        const StaircaseReport r = staircase(c, 0.3);
        std::size_t covered = 0;
        for (const Plateau& p : r.plateaus) {
            EXPECT_GE(p.width(), 0.3 - 1e-9);
            for (const Sample& s : c.samples())
                if (s.beta >= p.beta_start && s.beta <= p.beta_end) {
                    EXPECT_EQ(s.edges, p.edges);
                    ++covered;
                }
        }
        EXPECT_LE(covered, c.size());
        for (std::size_t k = 1; k < r.plateaus.size(); ++k) EXPECT_GT(r.plateaus[k - 1].edges, r.plateaus[k].edges);
    }
}

TEST(Crossover, IdenticalCurvesNeverCross) {
    const Curve c = curve(gen_random_disc(60, 2));
    EXPECT_FALSE(crossover(c, c).has_value());
}

TEST(Crossover, ConstantAgainstDescending) {
    const std::vector<double> g = beta_grid(1.0, 3.0, 0.1);
    const Curve a = synthetic(g, [](double) { return std::size_t{10}; });
    const Curve b = synthetic(g, [](double beta) { return static_cast<std::size_t>(std::lround(30 - 10 * beta)); });
    // b: 20, 19, ..., 10 at beta 2.0
    ASSERT_TRUE(crossover(a, b).has_value());
    EXPECT_NEAR(*crossover(a, b), 2.0, 1e-12);
}

TEST(Crossover, GridMismatch) {
    const Curve a = synthetic(beta_grid(1, 2, 0.1), [](double) { return std::size_t{1}; });
    const Curve b = synthetic(beta_grid(1, 2.1, 0.1), [](double) { return std::size_t{1}; });
    const Curve c = synthetic(beta_grid(1, 2.05, 0.05), [](double) { return std::size_t{1}; });
    EXPECT_THROW(crossover(a, b), GridMismatch);
    EXPECT_THROW(crossover(a, c), GridMismatch);
}

TEST(EdgeRatio, Examples) {
    const auto g = beta_grid(1, 12, 0.1);
    const Curve a = synthetic(g, [](double) { return std::size_t{180}; });
    const Curve b = synthetic(g, [](double) { return std::size_t{90}; });
    const Curve z = synthetic(g, [](double) { return std::size_t{0}; });
    EXPECT_EQ(edge_ratio(a, a, 10).value, 1.0);
    EXPECT_EQ(edge_ratio(a, b, 10).value, 2.0);
    const EdgeRatio inf = edge_ratio(a, z, 10);
    EXPECT_TRUE(inf.zero_denominator);
    EXPECT_TRUE(std::isinf(inf.value));
    EXPECT_THROW(edge_ratio(a, b, 20), GridMismatch);
}

TEST(CoefficientScan, SmallTable) {
    const std::vector<std::size_t> ns{50, 100};
    const auto rows = coefficient_scan(ns, beta_grid(1, 5, 0.5), 1);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].n, 50u);
    EXPECT_EQ(rows[1].n, 100u);
    for (const ScanRow& r : rows) EXPECT_LT(r.alpha, 0.0);
}

TEST(CoefficientScan, TrendsInN) {
    const std::vector<std::size_t> ns{350, 550, 750};
    const auto grid = full_grid();
    std::vector<double> mean_alpha(3, 0.0), mean_c(3, 0.0);
    const int seeds = 5;
    for (int s = 1; s <= seeds; ++s) {
        const auto rows = coefficient_scan(ns, grid, static_cast<std::uint64_t>(s));
        for (std::size_t k = 0; k < 3; ++k) {
            EXPECT_GT(rows[k].c, 0.0);
            mean_alpha[k] += std::abs(rows[k].alpha) / seeds;
            mean_c[k] += rows[k].c / seeds;
        }
    }
    EXPECT_LT(mean_alpha[0], mean_alpha[1]);
    EXPECT_LT(mean_alpha[1], mean_alpha[2]);
    EXPECT_LT(mean_c[0], mean_c[1]);
    EXPECT_LT(mean_c[1], mean_c[2]);
}
