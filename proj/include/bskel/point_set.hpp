#ifndef BSKEL_POINT_SET_HPP
#define BSKEL_POINT_SET_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bskel/error.hpp"
#include "bskel/geometry.hpp"

namespace bskel {

/// Row-major layout of a lattice-generated set: index = row * cols + col.
struct LatticeShape {
    std::size_t rows = 0;
    std::size_t cols = 0;

    friend bool operator==(const LatticeShape&, const LatticeShape&) = default;
};

/// Immutable ordered set of pairwise-distinct finite points. Indices are
/// stable identifiers for the lifetime of the set.
class PointSet {
public:
    PointSet() = default;

    explicit PointSet(std::vector<Point> points, std::string label = {},
                      std::optional<std::uint64_t> seed = std::nullopt)
        : points_(std::move(points)), label_(std::move(label)), seed_(seed) {
        validate();
    }

    std::size_t size() const noexcept { return points_.size(); }
    bool empty() const noexcept { return points_.empty(); }
    const Point& operator[](std::size_t i) const { return points_[i]; }
    std::span<const Point> points() const noexcept { return points_; }
    auto begin() const noexcept { return points_.begin(); }
    auto end() const noexcept { return points_.end(); }

    const std::string& label() const noexcept { return label_; }
    std::optional<std::uint64_t> seed() const noexcept { return seed_; }
    const std::optional<LatticeShape>& lattice() const noexcept { return lattice_; }

    PointSet with_lattice(LatticeShape shape) const {
        if (shape.rows * shape.cols != points_.size())
            throw DomainError("lattice shape does not match point count");
        PointSet copy = *this;
        copy.lattice_ = shape;
        return copy;
    }

    PointSet with_label(std::string label) const {
        PointSet copy = *this;
        copy.label_ = std::move(label);
        return copy;
    }

private:
    void validate() const {
        for (const Point& p : points_)
            if (!is_finite(p)) throw DomainError("point set contains a non-finite coordinate");
        std::vector<std::size_t> order(points_.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        auto less = [&](std::size_t a, std::size_t b) {
            const Point& pa = points_[a];
            const Point& pb = points_[b];
            return pa.x != pb.x ? pa.x < pb.x : (pa.y != pb.y ? pa.y < pb.y : a < b);
        };
        std::sort(order.begin(), order.end(), less);
        for (std::size_t k = 1; k < order.size(); ++k)
            if (points_[order[k - 1]] == points_[order[k]]) throw DuplicatePoints(order[k - 1], order[k]);
    }

    std::vector<Point> points_;
    std::string label_;
    std::optional<std::uint64_t> seed_;
    std::optional<LatticeShape> lattice_;
};

/// Undirected edge stored with i < j.
struct Edge {
    std::size_t i = 0;
    std::size_t j = 0;

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(std::size_t a, std::size_t b) { return a < b ? Edge{a, b} : Edge{b, a}; }

/// The beta-skeleton G_beta: sorted, duplicate-free edge list.
struct Skeleton {
    double beta = 1.0;
    BoundaryRule rule = BoundaryRule::Closed;
    std::vector<Edge> edges;

    bool contains(Edge e) const { return std::binary_search(edges.begin(), edges.end(), e); }
};

} // namespace bskel

#endif
