#pragma once

// Homogeneous integer points and lines. A point (x, y, w) with w > 0 stands
// for (x/w, y/w); the line through two points is their cross product and
// orientation(p, q, r) is the sign of r . (p x q). Batch predicates over many
// points against few lines (or the reverse) then cost three GMP integer
// products each and no gcd.

#include "overlap/plane_geometry.hpp"

namespace overlap::detail {

struct HomPoint {
    Integer x, y, w;
};

struct HomLine {
    Integer a, b, c;
};

inline HomPoint to_hom(const RationalPoint& p)
{
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    const Integer dx = denominator(p.x);
    const Integer dy = denominator(p.y);
    const Integer w = boost::multiprecision::lcm(dx, dy);
    return {numerator(p.x) * (w / dx), numerator(p.y) * (w / dy), w};
}

inline HomLine line_through(const HomPoint& p, const HomPoint& q)
{
    return {p.y * q.w - p.w * q.y, p.w * q.x - p.x * q.w, p.x * q.y - p.y * q.x};
}

/// orientation(p, q, r) for the line through p and q.
inline int side(const HomLine& l, const HomPoint& r)
{
    const Integer v = l.a * r.x + l.b * r.y + l.c * r.w;
    return v.sign();
}

}  // namespace overlap::detail
