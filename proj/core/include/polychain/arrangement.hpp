#pragma once

#include "polychain/rational.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace polychain {

using Point2 = std::pair<Rat, Rat>;

struct Seg2 {
    Point2 a, b;
};

struct SegIntersection {
    bool intersects = false;
    bool overlap = false;               // positive-length common subsegment
    std::optional<Point2> point;        // set for single-point intersections
};

// Exact closed-segment intersection classification.
SegIntersection seg_intersect(const Seg2& s, const Seg2& t);

// One interior sample point per bounded face of the line arrangement induced
// by the segments (faces that lie inside any input polygon are guaranteed to
// receive a sample; unbounded faces receive none).
std::vector<Point2> face_samples(const std::vector<Seg2>& segs);

enum class Loc2 { Outside, Boundary, Inside };
// Exact location of a point relative to a (possibly clockwise) triangle.
Loc2 locate_in_triangle(const Point2& p, const Point2& a, const Point2& b, const Point2& c);

// Signed doubled area of triangle abc.
Rat cross2(const Point2& a, const Point2& b, const Point2& c);

// Clips convex polygon (ccw or cw input, returned ccw) against the closed
// half-plane on the left of the directed line a->b.
std::vector<Point2> clip_polygon_halfplane(const std::vector<Point2>& poly, const Point2& a,
                                           const Point2& b);
// Doubled absolute area of a simple polygon.
Rat polygon_doubled_area(const std::vector<Point2>& poly);

} // namespace polychain
