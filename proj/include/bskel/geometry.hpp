#ifndef BSKEL_GEOMETRY_HPP
#define BSKEL_GEOMETRY_HPP

#include <algorithm>
#include <cmath>

#include "bskel/error.hpp"

namespace bskel {

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend constexpr bool operator==(const Point&, const Point&) = default;
};

constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
constexpr Point operator*(double k, Point a) { return {k * a.x, k * a.y}; }

constexpr double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
constexpr double norm2(Point a) { return dot(a, a); }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline bool is_finite(Point a) { return std::isfinite(a.x) && std::isfinite(a.y); }

/// Whether a point sitting on a region's boundary counts as inside it.
enum class BoundaryRule { Closed, Open };

/// Where a point sits relative to a region, after the tolerance band is applied.
enum class Location { Inside, Boundary, Outside };

/// Membership comparisons treat anything within this fraction of |p - q| of a
/// boundary as lying on it.
inline constexpr double kRelativeTolerance = 1e-9;

/// Intersection of two discs of radius beta*|p-q|/2 centred on affine
/// combinations of the generating pair (p, q).
struct Lune {
    Point p;
    Point q;
    Point center1;
    Point center2;
    double radius = 0.0;
    double beta = 1.0;
};

/// Open strip between the two lines through a and b perpendicular to (a, b).
struct Slab {
    Point a;
    Point b;
};

inline Lune make_lune(Point p, Point q, double beta) {
    if (!is_finite(p) || !is_finite(q) || !std::isfinite(beta))
        throw DomainError("lune: non-finite input");
    if (p == q) throw DegeneratePair();
    if (beta < 1.0) throw DomainError("lune: beta must be >= 1");
    const double h = beta / 2.0;
    Lune lune;
    lune.p = p;
    lune.q = q;
    lune.center1 = (1.0 - h) * p + h * q;
    lune.center2 = h * p + (1.0 - h) * q;
    lune.radius = beta * norm(q - p) / 2.0;
    lune.beta = beta;
    return lune;
}

namespace detail {

// Coordinates of r in the frame of segment (p, q), in units of half its
// length: sigma = |along-axis offset from the midpoint|, tau = |perpendicular
// offset|. Both are invariant under swapping p and q.
struct LocalCoords {
    double sigma;
    double tau;
};

inline LocalCoords local_coords(Point p, Point q, Point r) {
    const Point d = q - p;
    const Point m = 0.5 * (p + q);
    const Point w = r - m;
    const double d2 = norm2(d);
    return {2.0 * std::abs(dot(w, d)) / d2, 2.0 * std::abs(cross(d, w)) / d2};
}

// Signed excess of r beyond the binding disc, in units of half of |p - q|.
// Uses d^2 - R^2 = L^2 * ((1-sigma)^2 + tau^2 - 2 beta (1-sigma)), which stays
// accurate for very large beta where the disc centres are far away.
inline double lune_excess(const LocalCoords& c, double beta) {
    const double one_minus = 1.0 - c.sigma;
    const double f = one_minus * one_minus + c.tau * c.tau - 2.0 * beta * one_minus;
    const double far_distance = std::hypot(c.sigma + beta - 1.0, c.tau);
    return f / (far_distance + beta);
}

} // namespace detail

inline Location lune_locate(const Lune& lune, Point r) {
    const auto c = detail::local_coords(lune.p, lune.q, r);
    const double excess = detail::lune_excess(c, lune.beta);
    // tolerance of kRelativeTolerance * |p - q| is 2 * kRelativeTolerance half-lengths
    const double band = 2.0 * kRelativeTolerance;
    if (excess < -band) return Location::Inside;
    if (excess > band) return Location::Outside;
    return Location::Boundary;
}

inline bool lune_contains(const Lune& lune, Point r, BoundaryRule rule = BoundaryRule::Closed) {
    switch (lune_locate(lune, r)) {
    case Location::Inside: return true;
    case Location::Boundary: return rule == BoundaryRule::Closed;
    case Location::Outside: return false;
    }
    return false;
}

inline Location slab_locate(const Slab& slab, Point r) {
    if (slab.a == slab.b) throw DegeneratePair();
    const Point d = slab.b - slab.a;
    const double d2 = norm2(d);
    const double offset = std::abs(dot(r - 0.5 * (slab.a + slab.b), d));
    const double half = 0.5 * d2;
    const double band = kRelativeTolerance * d2;
    if (offset < half - band) return Location::Inside;
    if (offset > half + band) return Location::Outside;
    return Location::Boundary;
}

/// Strict membership: points on the two bounding lines are outside.
inline bool slab_contains(const Slab& slab, Point r) {
    return slab_locate(slab, r) == Location::Inside;
}

/// Axis-aligned bounding box.
struct Box {
    double min_x, min_y, max_x, max_y;
};

/// Box enclosing the lune plus its tolerance band.
inline Box lune_bounds(const Lune& lune) {
    const Point d = lune.q - lune.p;
    const Point m = 0.5 * (lune.p + lune.q);
    const double half = norm(d) / 2.0;
    const double extent = half * std::sqrt(2.0 * lune.beta - 1.0);
    const Point u = (1.0 / (2.0 * half)) * d;
    const Point v{-u.y, u.x};
    // corners m +- half*u +- extent*v
    const double ex = std::abs(u.x) * half + std::abs(v.x) * extent;
    const double ey = std::abs(u.y) * half + std::abs(v.y) * extent;
    const double pad = 4.0 * kRelativeTolerance * half * lune.beta + 1e-12 * (std::abs(m.x) + std::abs(m.y));
    return {m.x - ex - pad, m.y - ey - pad, m.x + ex + pad, m.y + ey + pad};
}

} // namespace bskel

#endif
