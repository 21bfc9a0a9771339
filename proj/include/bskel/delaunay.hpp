#ifndef BSKEL_DELAUNAY_HPP
#define BSKEL_DELAUNAY_HPP

// Divide-and-conquer Delaunay triangulation on a quad-edge structure
// (Guibas & Stolfi), driven by the sign-exact predicates.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "bskel/geometry.hpp"
#include "bskel/point_set.hpp"
#include "bskel/predicates.hpp"

namespace bskel {

class Delaunay {
public:
    /// Points must be pairwise distinct.
    explicit Delaunay(std::span<const Point> points) : points_(points.begin(), points.end()) {
        if (points_.size() < 2) return;
        sorted_.resize(points_.size());
        std::iota(sorted_.begin(), sorted_.end(), std::size_t{0});
        std::sort(sorted_.begin(), sorted_.end(), [&](std::size_t a, std::size_t b) {
            const Point& pa = points_[a];
            const Point& pb = points_[b];
            return pa.x != pb.x ? pa.x < pb.x : pa.y < pb.y;
        });
        divide(0, sorted_.size());
    }

    /// Every triangulation edge, sorted.
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        for (std::size_t q = 0; q < alive_.size(); ++q)
            if (alive_[q]) out.push_back(make_edge(org(4 * q), dest(4 * q)));
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    /// Counter-clockwise triangles as vertex triples.
    std::vector<std::array<std::size_t, 3>> triangles() const {
        std::vector<std::array<std::size_t, 3>> out;
        for (std::size_t q = 0; q < alive_.size(); ++q) {
            if (!alive_[q]) continue;
            for (std::size_t e : {4 * q, 4 * q + 2}) {
                const std::size_t a = org(e), b = dest(e), c = dest(lnext(e));
                if (lnext(lnext(lnext(e))) != e) continue;
                if (predicates::orient(points_[a], points_[b], points_[c]) <= 0) continue;
                // report each face once, from its smallest vertex
                if (a < b && a < c) out.push_back({a, b, c});
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    /// Groups of vertices lying on a common empty circle: the cells obtained
    /// by merging adjacent triangles whose circumcircles coincide to within
    /// `relative_tolerance`. Groups of three (plain triangles) are omitted.
    std::vector<std::vector<std::size_t>> cocircular_groups(double relative_tolerance = 1e-8) const {
        const auto tris = triangles();
        std::vector<std::size_t> parent(tris.size());
        std::iota(parent.begin(), parent.end(), std::size_t{0});
        auto find = [&](std::size_t x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        // directed edge -> triangle index
        std::vector<std::pair<Edge, std::size_t>> sides;
        for (std::size_t t = 0; t < tris.size(); ++t)
            for (int k = 0; k < 3; ++k) sides.push_back({make_edge(tris[t][k], tris[t][(k + 1) % 3]), t});
        std::sort(sides.begin(), sides.end());
        for (std::size_t k = 1; k < sides.size(); ++k) {
            if (sides[k].first != sides[k - 1].first) continue;
            const auto& t1 = tris[sides[k - 1].second];
            const auto& t2 = tris[sides[k].second];
            std::size_t apex = t2[0];
            for (std::size_t v : t2)
                if (v != sides[k].first.i && v != sides[k].first.j) apex = v;
            if (near_circumcircle(t1, apex, relative_tolerance))
                parent[find(sides[k].second)] = find(sides[k - 1].second);
        }
        std::vector<std::vector<std::size_t>> groups(tris.size());
        for (std::size_t t = 0; t < tris.size(); ++t)
            for (std::size_t v : tris[t]) groups[find(t)].push_back(v);
        std::vector<std::vector<std::size_t>> out;
        for (auto& g : groups) {
            std::sort(g.begin(), g.end());
            g.erase(std::unique(g.begin(), g.end()), g.end());
            if (g.size() > 3) out.push_back(std::move(g));
        }
        return out;
    }

private:
    static constexpr std::size_t kNoVertex = static_cast<std::size_t>(-1);

    // Edge record e belongs to quad e/4; records 0 and 2 are primal.
    static std::size_t rot(std::size_t e) { return (e & ~std::size_t{3}) | ((e + 1) & 3); }
    static std::size_t sym(std::size_t e) { return (e & ~std::size_t{3}) | ((e + 2) & 3); }
    static std::size_t rot_inv(std::size_t e) { return (e & ~std::size_t{3}) | ((e + 3) & 3); }

    std::size_t onext(std::size_t e) const { return next_[e]; }
    std::size_t oprev(std::size_t e) const { return rot(onext(rot(e))); }
    std::size_t lnext(std::size_t e) const { return rot(onext(rot_inv(e))); }
    std::size_t rprev(std::size_t e) const { return onext(sym(e)); }
    std::size_t org(std::size_t e) const { return origin_[e]; }
    std::size_t dest(std::size_t e) const { return origin_[sym(e)]; }
    const Point& at(std::size_t v) const { return points_[v]; }

    std::size_t make_quad(std::size_t a, std::size_t b) {
        const std::size_t e = next_.size();
        next_.insert(next_.end(), {e, e + 3, e + 2, e + 1});
        origin_.insert(origin_.end(), {a, kNoVertex, b, kNoVertex});
        alive_.push_back(true);
        return e;
    }

    void splice(std::size_t a, std::size_t b) {
        const std::size_t alpha = rot(onext(a));
        const std::size_t beta = rot(onext(b));
        std::swap(next_[a], next_[b]);
        std::swap(next_[alpha], next_[beta]);
    }

    std::size_t connect(std::size_t a, std::size_t b) {
        const std::size_t e = make_quad(dest(a), org(b));
        splice(e, lnext(a));
        splice(sym(e), b);
        return e;
    }

    void remove(std::size_t e) {
        splice(e, oprev(e));
        splice(sym(e), oprev(sym(e)));
        alive_[e / 4] = false;
    }

    bool ccw(std::size_t a, std::size_t b, std::size_t c) const {
        return predicates::orient(at(a), at(b), at(c)) > 0;
    }
    bool right_of(std::size_t v, std::size_t e) const { return ccw(v, dest(e), org(e)); }
    bool left_of(std::size_t v, std::size_t e) const { return ccw(v, org(e), dest(e)); }
    bool in_circle(std::size_t a, std::size_t b, std::size_t c, std::size_t d) const {
        return predicates::incircle(at(a), at(b), at(c), at(d)) > 0;
    }

    bool near_circumcircle(const std::array<std::size_t, 3>& t, std::size_t v, double tol) const {
        const Point a = at(t[0]), b = at(t[1]) - a, c = at(t[2]) - a;
        const double den = 2.0 * cross(b, c);
        const Point center{(c.y * norm2(b) - b.y * norm2(c)) / den, (b.x * norm2(c) - c.x * norm2(b)) / den};
        const double radius = norm(center);
        return std::abs(norm(at(v) - a - center) - radius) <= tol * radius;
    }

    // Triangulates sorted_[begin, end); returns (ccw hull edge out of the
    // leftmost vertex, cw hull edge out of the rightmost vertex).
    std::pair<std::size_t, std::size_t> divide(std::size_t begin, std::size_t end) {
        const std::size_t count = end - begin;
        if (count == 2) {
            const std::size_t a = make_quad(sorted_[begin], sorted_[begin + 1]);
            return {a, sym(a)};
        }
        if (count == 3) {
            const std::size_t s1 = sorted_[begin], s2 = sorted_[begin + 1], s3 = sorted_[begin + 2];
            const std::size_t a = make_quad(s1, s2);
            const std::size_t b = make_quad(s2, s3);
            splice(sym(a), b);
            if (ccw(s1, s2, s3)) {
                connect(b, a);
                return {a, sym(b)};
            }
            if (ccw(s1, s3, s2)) {
                const std::size_t c = connect(b, a);
                return {sym(c), c};
            }
            return {a, sym(b)};
        }

        const std::size_t mid = begin + count / 2;
        auto [ldo, ldi] = divide(begin, mid);
        auto [rdi, rdo] = divide(mid, end);

        // lower common tangent
        for (;;) {
            if (left_of(org(rdi), ldi)) {
                ldi = lnext(ldi);
            } else if (right_of(org(ldi), rdi)) {
                rdi = rprev(rdi);
            } else {
                break;
            }
        }
        std::size_t basel = connect(sym(rdi), ldi);
        if (org(ldi) == org(ldo)) ldo = sym(basel);
        if (org(rdi) == org(rdo)) rdo = basel;

        // zip the halves together
        for (;;) {
            auto valid = [&](std::size_t e) { return right_of(dest(e), basel); };
            std::size_t lcand = onext(sym(basel));
            if (valid(lcand)) {
                while (in_circle(dest(basel), org(basel), dest(lcand), dest(onext(lcand)))) {
                    const std::size_t t = onext(lcand);
                    remove(lcand);
                    lcand = t;
                }
            }
            std::size_t rcand = oprev(basel);
            if (valid(rcand)) {
                while (in_circle(dest(basel), org(basel), dest(rcand), dest(oprev(rcand)))) {
                    const std::size_t t = oprev(rcand);
                    remove(rcand);
                    rcand = t;
                }
            }
            const bool lvalid = valid(lcand);
            const bool rvalid = valid(rcand);
            if (!lvalid && !rvalid) break;
            if (!lvalid || (rvalid && in_circle(dest(lcand), org(lcand), org(rcand), dest(rcand))))
                basel = connect(rcand, sym(basel));
            else
                basel = connect(sym(basel), sym(lcand));
        }
        return {ldo, rdo};
    }

    std::vector<Point> points_;
    std::vector<std::size_t> sorted_;
    std::vector<std::size_t> next_;
    std::vector<std::size_t> origin_;
    std::vector<bool> alive_;
};

} // namespace bskel

#endif
