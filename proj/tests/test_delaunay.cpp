#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "bskel/delaunay.hpp"
#include "bskel/generators.hpp"
#include "bskel/kd_tree.hpp"
#include "bskel/predicates.hpp"
#include "oracles.hpp"

using namespace bskel;

TEST(Predicates, OrientSigns) {
    EXPECT_EQ(predicates::orient({0, 0}, {1, 0}, {0, 1}), 1);
    EXPECT_EQ(predicates::orient({0, 0}, {0, 1}, {1, 0}), -1);
    EXPECT_EQ(predicates::orient({0, 0}, {1, 1}, {3, 3}), 0);
}

TEST(Predicates, OrientNearlyCollinearIsExact) {
    // 0.1 and 0.3 are not representable; the exact answer is decided by the
    // stored doubles, which the rational fallback evaluates exactly.
    const Point a{0.1, 0.1}, b{0.2, 0.2}, c{0.3, 0.3};
    const int s = predicates::orient(a, b, c);
    EXPECT_EQ(s, -predicates::orient(b, a, c));
    EXPECT_EQ(s, predicates::orient(b, c, a));
    EXPECT_EQ(predicates::orient({0.5, 0.5}, {12, 12}, {24, 24}), 0);
}

TEST(Predicates, InCircle) {
    EXPECT_EQ(predicates::incircle({0, 0}, {1, 0}, {0, 1}, {0.5, 0.5}), 1);
    EXPECT_EQ(predicates::incircle({0, 0}, {1, 0}, {0, 1}, {2, 2}), -1);
    EXPECT_EQ(predicates::incircle({0, 0}, {1, 0}, {1, 1}, {0, 1}), 0);
    EXPECT_EQ(predicates::incircle({0, 0}, {10, 0}, {10, 10}, {0, 10}), 0);
}

TEST(Delaunay, MatchesEmptyCircleEnumeration) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const PointSet ps = oracle::uniform_square(30, seed);
        EXPECT_EQ(Delaunay(ps.points()).edges(), oracle::delaunay_brute(ps)) << "seed " << seed;
    }
}

TEST(Delaunay, EulerCountOnRandomSets) {
    // planar triangulation: E = 3n - 3 - h, T = 2n - 2 - h
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const PointSet ps = gen_random_disc(400, seed);
        const Delaunay dt(ps.points());
        const auto e = dt.edges().size();
        const auto t = dt.triangles().size();
        EXPECT_EQ(3 * ps.size() - e, 3 + (2 * ps.size() - 2 - t));
    }
}

TEST(Delaunay, CollinearInputGivesChain) {
    const PointSet ps({{0, 0}, {2, 0}, {1, 0}, {4, 0}, {3, 0}});
    const std::vector<Edge> expected{{0, 2}, {1, 2}, {1, 4}, {3, 4}};
    EXPECT_EQ(Delaunay(ps.points()).edges(), expected);
}

TEST(Delaunay, LatticeTriangulationIsValid) {
    // a 6x6 grid has 25 cocircular squares; each must be split by exactly one diagonal
    const PointSet ps = gen_rect_lattice(6, 6, 1.0);
    const Delaunay dt(ps.points());
    EXPECT_EQ(dt.edges().size(), 2 * 6 * 5 + 25u);
    EXPECT_EQ(dt.triangles().size(), 50u);
    const auto groups = dt.cocircular_groups();
    EXPECT_EQ(groups.size(), 25u);
    for (const auto& g : groups) EXPECT_EQ(g.size(), 4u);
}

TEST(Delaunay, CocircularPolygonIsOneGroup) {
    std::vector<Point> pts;
    for (int k = 0; k < 12; ++k) {
        const double t = 2 * std::numbers::pi * k / 12;
        pts.push_back({std::cos(t), std::sin(t)});
    }
    const Delaunay dt(pts);
    EXPECT_EQ(dt.edges().size(), 12u + 9u);
    const auto groups = dt.cocircular_groups();
    ASSERT_EQ(groups.size(), 1u);
    EXPECT_EQ(groups[0].size(), 12u);
}

TEST(KdTree, BoxQueryMatchesScan) {
    const PointSet ps = oracle::uniform_square(500, 7);
    const KdTree tree(ps.points());
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(-10, 110);
    for (int k = 0; k < 200; ++k) {
        double x0 = u(gen), x1 = u(gen), y0 = u(gen), y1 = u(gen);
        if (x0 > x1) std::swap(x0, x1);
        if (y0 > y1) std::swap(y0, y1);
        const Box box{x0, y0, x1, y1};
        std::vector<std::size_t> expected;
        for (std::size_t i = 0; i < ps.size(); ++i)
            if (ps[i].x >= x0 && ps[i].x <= x1 && ps[i].y >= y0 && ps[i].y <= y1) expected.push_back(i);
        EXPECT_EQ(tree.query(box), expected);
    }
}

TEST(KdTree, EarlyExitStopsVisiting) {
    const PointSet ps = oracle::uniform_square(100, 2);
    const KdTree tree(ps.points());
    int visits = 0;
    const bool stopped = tree.visit_box({-1, -1, 101, 101}, [&](std::size_t) { return ++visits == 3; });
    EXPECT_TRUE(stopped);
    EXPECT_EQ(visits, 3);
}

TEST(LuneBounds, EnclosesLune) {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> u(-20, 20), b(1, 40);
    for (int k = 0; k < 300; ++k) {
        const Lune l = make_lune({u(gen), u(gen)}, {u(gen), u(gen)}, b(gen));
        const Box box = lune_bounds(l);
        for (int s = 0; s < 200; ++s) {
            const Point r{u(gen) * 10, u(gen) * 10};
            if (lune_contains(l, r)) {
                EXPECT_TRUE(r.x >= box.min_x && r.x <= box.max_x && r.y >= box.min_y && r.y <= box.max_y);
            }
        }
    }
}
