#ifndef BSKEL_PREDICATES_HPP
#define BSKEL_PREDICATES_HPP

// Sign-exact orientation and in-circle tests. A floating-point filter with a
// static error bound answers almost every query; the rest are settled in exact
// rational arithmetic (every double is a dyadic rational).

#include <cmath>
#include <limits>

#include <boost/multiprecision/cpp_int.hpp>

#include "bskel/geometry.hpp"

namespace bskel::predicates {

namespace detail {

using Rational = boost::multiprecision::cpp_rational;

inline constexpr double kEpsilon = std::numeric_limits<double>::epsilon() / 2.0;
inline constexpr double kOrientBound = (3.0 + 16.0 * kEpsilon) * kEpsilon;
inline constexpr double kInCircleBound = (10.0 + 96.0 * kEpsilon) * kEpsilon;

inline int sign_of(const Rational& v) { return v.sign(); }

inline int orient_exact(Point a, Point b, Point c) {
    const Rational ax(a.x), ay(a.y), bx(b.x), by(b.y), cx(c.x), cy(c.y);
    const Rational det = (ax - cx) * (by - cy) - (ay - cy) * (bx - cx);
    return sign_of(det);
}

inline int incircle_exact(Point a, Point b, Point c, Point d) {
    const Rational dx(d.x), dy(d.y);
    const Rational adx = Rational(a.x) - dx, ady = Rational(a.y) - dy;
    const Rational bdx = Rational(b.x) - dx, bdy = Rational(b.y) - dy;
    const Rational cdx = Rational(c.x) - dx, cdy = Rational(c.y) - dy;
    const Rational alift = adx * adx + ady * ady;
    const Rational blift = bdx * bdx + bdy * bdy;
    const Rational clift = cdx * cdx + cdy * cdy;
    const Rational det = alift * (bdx * cdy - cdx * bdy) + blift * (cdx * ady - adx * cdy) +
                         clift * (adx * bdy - bdx * ady);
    return sign_of(det);
}

} // namespace detail

/// +1 if a, b, c turn counter-clockwise, -1 if clockwise, 0 if collinear.
inline int orient(Point a, Point b, Point c) {
    const double left = (a.x - c.x) * (b.y - c.y);
    const double right = (a.y - c.y) * (b.x - c.x);
    const double det = left - right;
    const double bound = detail::kOrientBound * (std::abs(left) + std::abs(right));
    if (det > bound) return 1;
    if (-det > bound) return -1;
    return detail::orient_exact(a, b, c);
}

/// +1 if d is strictly inside the circle through counter-clockwise a, b, c;
/// -1 if strictly outside; 0 if cocircular.
inline int incircle(Point a, Point b, Point c, Point d) {
    const double adx = a.x - d.x, ady = a.y - d.y;
    const double bdx = b.x - d.x, bdy = b.y - d.y;
    const double cdx = c.x - d.x, cdy = c.y - d.y;

    const double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
    const double cdxady = cdx * ady, adxcdy = adx * cdy;
    const double adxbdy = adx * bdy, bdxady = bdx * ady;
    const double alift = adx * adx + ady * ady;
    const double blift = bdx * bdx + bdy * bdy;
    const double clift = cdx * cdx + cdy * cdy;

    const double det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) + clift * (adxbdy - bdxady);
    const double permanent = (std::abs(bdxcdy) + std::abs(cdxbdy)) * alift +
                             (std::abs(cdxady) + std::abs(adxcdy)) * blift +
                             (std::abs(adxbdy) + std::abs(bdxady)) * clift;
    const double bound = detail::kInCircleBound * permanent;
    if (det > bound) return 1;
    if (-det > bound) return -1;
    return detail::incircle_exact(a, b, c, d);
}

} // namespace bskel::predicates

#endif
