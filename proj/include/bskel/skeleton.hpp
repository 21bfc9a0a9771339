#ifndef BSKEL_SKELETON_HPP
#define BSKEL_SKELETON_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "bskel/delaunay.hpp"
#include "bskel/error.hpp"
#include "bskel/geometry.hpp"
#include "bskel/kd_tree.hpp"
#include "bskel/point_set.hpp"
#include "bskel/predicates.hpp"

namespace bskel {

namespace detail {

inline void check_build_args(const PointSet& ps, double beta) {
    if (ps.size() < 2) throw DomainError("skeleton needs at least two points");
    if (!(beta >= 1.0)) throw DomainError("skeleton needs beta >= 1");
}

inline bool all_collinear(std::span<const Point> pts) {
    for (std::size_t k = 2; k < pts.size(); ++k)
        if (predicates::orient(pts[0], pts[1], pts[k]) != 0) return false;
    return true;
}

} // namespace detail

/// Reference construction: every pair against every other point, O(n^3).
inline Skeleton build_oracle(const PointSet& ps, double beta, BoundaryRule rule = BoundaryRule::Closed) {
    detail::check_build_args(ps, beta);
    Skeleton sk{beta, rule, {}};
    const std::size_t n = ps.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const Lune lune = make_lune(ps[i], ps[j], beta);
            bool empty = true;
            for (std::size_t k = 0; k < n && empty; ++k)
                if (k != i && k != j && lune_contains(lune, ps[k], rule)) empty = false;
            if (empty) sk.edges.push_back({i, j});
        }
    }
    return sk;
}

/// Accelerated construction. Candidate pairs come from the Delaunay
/// triangulation (G_beta is a subgraph of the Gabriel graph, which is a
/// subgraph of every Delaunay triangulation); emptiness is answered with a
/// k-d tree. Reuse one builder for many beta values on the same set.
class SkeletonBuilder {
public:
    explicit SkeletonBuilder(const PointSet& ps) : ps_(ps), tree_(ps.points()) {
        if (ps.size() < 2) throw DomainError("skeleton needs at least two points");
        if (detail::all_collinear(ps.points())) {
            for (std::size_t i = 0; i < ps.size(); ++i)
                for (std::size_t j = i + 1; j < ps.size(); ++j) closed_candidates_.push_back({i, j});
            open_candidates_ = closed_candidates_;
            return;
        }
        const Delaunay dt(ps.points());
        closed_candidates_ = dt.edges();
        // Under the open rule a pair whose diametral circle carries other
        // points on its boundary may survive without being a Delaunay edge;
        // every chord of a cocircular cell is a candidate.
        open_candidates_ = closed_candidates_;
        for (const auto& group : dt.cocircular_groups())
            for (std::size_t a = 0; a < group.size(); ++a)
                for (std::size_t b = a + 1; b < group.size(); ++b) open_candidates_.push_back({group[a], group[b]});
        std::sort(open_candidates_.begin(), open_candidates_.end());
        open_candidates_.erase(std::unique(open_candidates_.begin(), open_candidates_.end()), open_candidates_.end());
    }

    const PointSet& points() const noexcept { return ps_; }

    const std::vector<Edge>& candidates(BoundaryRule rule) const {
        return rule == BoundaryRule::Open ? open_candidates_ : closed_candidates_;
    }

    /// True iff no third point lies in the (i, j) lune under `rule`.
    bool is_edge(Edge e, double beta, BoundaryRule rule) const {
        const Lune lune = make_lune(ps_[e.i], ps_[e.j], beta);
        const bool blocked = tree_.visit_box(lune_bounds(lune), [&](std::size_t k) {
            return k != e.i && k != e.j && lune_contains(lune, ps_[k], rule);
        });
        return !blocked;
    }

    /// Keeps the members of `pool` that are edges at `beta`.
    std::vector<Edge> filter(std::span<const Edge> pool, double beta, BoundaryRule rule) const {
        std::vector<Edge> out;
        for (const Edge& e : pool)
            if (is_edge(e, beta, rule)) out.push_back(e);
        return out;
    }

    Skeleton build(double beta, BoundaryRule rule = BoundaryRule::Closed) const {
        detail::check_build_args(ps_, beta);
        return {beta, rule, filter(candidates(rule), beta, rule)};
    }

private:
    PointSet ps_;
    KdTree tree_;
    std::vector<Edge> closed_candidates_;
    std::vector<Edge> open_candidates_;
};

inline Skeleton build_fast(const PointSet& ps, double beta, BoundaryRule rule = BoundaryRule::Closed) {
    detail::check_build_args(ps, beta);
    return SkeletonBuilder(ps).build(beta, rule);
}

/// Progress callback: (grid values done, grid size).
using SweepProgress = std::function<void(std::size_t, std::size_t)>;

/// One skeleton per grid value. Because G_b1 is a subgraph of G_b2 for
/// b1 > b2, each step re-tests only the survivors of the previous one.
inline std::vector<Skeleton> sweep(const PointSet& ps, std::span<const double> betas,
                                   BoundaryRule rule = BoundaryRule::Closed,
                                   const SweepProgress& progress = {}) {
    if (betas.empty()) throw EmptyGrid();
    for (std::size_t k = 0; k < betas.size(); ++k) {
        if (!(betas[k] >= 1.0)) throw DomainError("sweep grid values must be >= 1");
        if (k > 0 && !(betas[k] > betas[k - 1])) throw DomainError("sweep grid must be strictly ascending");
    }
    const SkeletonBuilder builder(ps);
    std::vector<Skeleton> out;
    out.reserve(betas.size());
    std::span<const Edge> pool = builder.candidates(rule);
    for (std::size_t k = 0; k < betas.size(); ++k) {
        out.push_back({betas[k], rule, builder.filter(pool, betas[k], rule)});
        pool = out.back().edges;  // stable: capacity reserved above
        if (progress) progress(k + 1, betas.size());
    }
    return out;
}

} // namespace bskel

#endif
