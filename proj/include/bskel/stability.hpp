#ifndef BSKEL_STABILITY_HPP
#define BSKEL_STABILITY_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <iterator>
#include <set>
#include <span>
#include <vector>

#include "bskel/error.hpp"
#include "bskel/geometry.hpp"
#include "bskel/point_set.hpp"
#include "bskel/skeleton.hpp"

namespace bskel {

/// The beta -> infinity graph: pairs whose open slab holds no third point.
struct LimitGraph {
    std::vector<Edge> edges;

    bool contains(Edge e) const { return std::binary_search(edges.begin(), edges.end(), e); }
};

inline bool slab_empty(const PointSet& ps, Edge e) {
    const Slab slab{ps[e.i], ps[e.j]};
    for (std::size_t k = 0; k < ps.size(); ++k)
        if (k != e.i && k != e.j && slab_contains(slab, ps[k])) return false;
    return true;
}

inline LimitGraph limit_graph(const PointSet& ps) {
    if (ps.size() < 2) throw DomainError("limit graph needs at least two points");
    LimitGraph g;
    for (std::size_t i = 0; i < ps.size(); ++i)
        for (std::size_t j = i + 1; j < ps.size(); ++j)
            if (slab_empty(ps, {i, j})) g.edges.push_back({i, j});
    return g;
}

/// A set is stable when every edge of its beta = 1 skeleton survives in the
/// limit graph, i.e. its skeleton keeps those edges for every beta.
inline bool is_stable(const PointSet& ps, BoundaryRule rule = BoundaryRule::Closed) {
    if (ps.size() < 2) throw DomainError("stability needs at least two points");
    const Skeleton base = build_fast(ps, 1.0, rule);
    return std::all_of(base.edges.begin(), base.edges.end(), [&](Edge e) { return slab_empty(ps, e); });
}

/// Edges that vanished at one grid value.
struct Removal {
    double beta;
    std::vector<Edge> edges;
};

/// Removal events along a grid: for each grid value after the first, the
/// edges present at the previous value and absent at this one. Grid values
/// with no removals are omitted.
inline std::vector<Removal> removal_trace(std::span<const Skeleton> skeletons) {
    std::vector<Removal> out;
    for (std::size_t k = 1; k < skeletons.size(); ++k) {
        Removal r{skeletons[k].beta, {}};
        std::set_difference(skeletons[k - 1].edges.begin(), skeletons[k - 1].edges.end(), skeletons[k].edges.begin(),
                            skeletons[k].edges.end(), std::back_inserter(r.edges));
        if (!r.edges.empty()) out.push_back(std::move(r));
    }
    return out;
}

struct DefectReport {
    double grid_step = 0.0;
    /// First grid beta after which nothing more is removed through the grid end.
    double beta_stabilized = 0.0;
    std::size_t defect_row = 0;
    std::size_t defect_col = 0;
    std::vector<Removal> removed_edges_by_beta;
    std::set<std::size_t> affected_rows;
    std::set<std::size_t> affected_cols;
    std::size_t edges_at_start = 0;
    std::size_t edges_at_end = 0;
};

/// Tracks how edge removal spreads from a displaced node through a lattice.
/// `ps` must carry its lattice shape (as produced by the lattice generators).
inline DefectReport defect_trace(const PointSet& ps, std::span<const double> grid, std::size_t defect_index,
                                 BoundaryRule rule = BoundaryRule::Closed) {
    if (!ps.lattice()) throw DomainError("defect trace needs a lattice-shaped point set");
    if (defect_index >= ps.size()) throw DomainError("defect index out of range");
    const LatticeShape shape = *ps.lattice();

    const auto skeletons = sweep(ps, grid, rule);
    DefectReport report;
    report.grid_step = grid.size() > 1 ? std::round((grid[1] - grid[0]) * 1e9) / 1e9 : 0.0;
    report.defect_row = defect_index / shape.cols;
    report.defect_col = defect_index % shape.cols;
    report.removed_edges_by_beta = removal_trace(skeletons);
    report.beta_stabilized = report.removed_edges_by_beta.empty() ? grid.front()
                                                                  : report.removed_edges_by_beta.back().beta;
    for (const Removal& r : report.removed_edges_by_beta) {
        for (const Edge& e : r.edges) {
            for (std::size_t v : {e.i, e.j}) {
                report.affected_rows.insert(v / shape.cols);
                report.affected_cols.insert(v % shape.cols);
            }
        }
    }
    report.edges_at_start = skeletons.front().edges.size();
    report.edges_at_end = skeletons.back().edges.size();
    return report;
}

} // namespace bskel

#endif
