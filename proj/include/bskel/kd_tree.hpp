#ifndef BSKEL_KD_TREE_HPP
#define BSKEL_KD_TREE_HPP

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

#include "bskel/geometry.hpp"

namespace bskel {

/// Static 2-d tree over a fixed point array, answering box queries.
class KdTree {
public:
    explicit KdTree(std::span<const Point> points) : points_(points.begin(), points.end()) {
        order_.resize(points_.size());
        std::iota(order_.begin(), order_.end(), std::size_t{0});
        if (!order_.empty()) build(0, order_.size(), 0);
    }

    std::size_t size() const noexcept { return points_.size(); }

    /// Calls visit(index) for every point inside the closed box until visit
    /// returns true. Returns whether the visit stopped early.
    template <class Visitor>
    bool visit_box(const Box& box, Visitor&& visit) const {
        if (nodes_.empty()) return false;
        return visit_node(0, box, visit);
    }

    std::vector<std::size_t> query(const Box& box) const {
        std::vector<std::size_t> out;
        visit_box(box, [&](std::size_t i) {
            out.push_back(i);
            return false;
        });
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    static constexpr std::size_t kLeafSize = 8;
    static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

    struct Node {
        Box bounds;
        std::size_t begin;
        std::size_t end;
        std::size_t left = kNone;
        std::size_t right = kNone;
    };

    std::size_t build(std::size_t begin, std::size_t end, int axis) {
        Box bounds{points_[order_[begin]].x, points_[order_[begin]].y, points_[order_[begin]].x,
                   points_[order_[begin]].y};
        for (std::size_t k = begin; k < end; ++k) {
            const Point& p = points_[order_[k]];
            bounds.min_x = std::min(bounds.min_x, p.x);
            bounds.min_y = std::min(bounds.min_y, p.y);
            bounds.max_x = std::max(bounds.max_x, p.x);
            bounds.max_y = std::max(bounds.max_y, p.y);
        }
        const std::size_t id = nodes_.size();
        nodes_.push_back({bounds, begin, end});
        if (end - begin <= kLeafSize) return id;

        const std::size_t mid = begin + (end - begin) / 2;
        auto key = [&](std::size_t i) { return axis == 0 ? points_[i].x : points_[i].y; };
        std::nth_element(order_.begin() + static_cast<std::ptrdiff_t>(begin),
                         order_.begin() + static_cast<std::ptrdiff_t>(mid),
                         order_.begin() + static_cast<std::ptrdiff_t>(end),
                         [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
        const std::size_t left = build(begin, mid, 1 - axis);
        const std::size_t right = build(mid, end, 1 - axis);
        nodes_[id].left = left;
        nodes_[id].right = right;
        return id;
    }

    static bool overlaps(const Box& a, const Box& b) {
        return a.min_x <= b.max_x && b.min_x <= a.max_x && a.min_y <= b.max_y && b.min_y <= a.max_y;
    }

    template <class Visitor>
    bool visit_node(std::size_t id, const Box& box, Visitor& visit) const {
        const Node& node = nodes_[id];
        if (!overlaps(node.bounds, box)) return false;
        if (node.left == kNone) {
            for (std::size_t k = node.begin; k < node.end; ++k) {
                const std::size_t i = order_[k];
                const Point& p = points_[i];
                if (p.x >= box.min_x && p.x <= box.max_x && p.y >= box.min_y && p.y <= box.max_y && visit(i))
                    return true;
            }
            return false;
        }
        return visit_node(node.left, box, visit) || visit_node(node.right, box, visit);
    }

    std::vector<Point> points_;
    std::vector<std::size_t> order_;
    std::vector<Node> nodes_;
};

} // namespace bskel

#endif
