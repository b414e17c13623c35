#include "polychain/arrangement.hpp"

#include <algorithm>
#include <set>

namespace polychain {

Rat cross2(const Point2& a, const Point2& b, const Point2& c) {
    return (b.first - a.first) * (c.second - a.second) -
           (b.second - a.second) * (c.first - a.first);
}

SegIntersection seg_intersect(const Seg2& s, const Seg2& t) {
    SegIntersection out;
    Rat rx = s.b.first - s.a.first, ry = s.b.second - s.a.second;
    Rat qx = t.b.first - t.a.first, qy = t.b.second - t.a.second;
    Rat denom = rx * qy - ry * qx;
    Rat dx = t.a.first - s.a.first, dy = t.a.second - s.a.second;
    if (denom != 0) {
        Rat u = (dx * qy - dy * qx) / denom;
        Rat v = (dx * ry - dy * rx) / denom;
        if (sgn(u) >= 0 && u <= 1 && sgn(v) >= 0 && v <= 1) {
            out.intersects = true;
            out.point = Point2{s.a.first + u * rx, s.a.second + u * ry};
        }
        return out;
    }
    // parallel; collinear iff d x r == 0
    if (dx * ry - dy * rx != 0)
        return out;
    // collinear: compare parameters along r (or q when s degenerates)
    Rat rr = rx * rx + ry * ry;
    if (rr == 0) {
        // s is a point
        Rat qq = qx * qx + qy * qy;
        if (qq == 0) {
            if (s.a == t.a) {
                out.intersects = true;
                out.point = s.a;
            }
            return out;
        }
        Rat w = ((s.a.first - t.a.first) * qx + (s.a.second - t.a.second) * qy) / qq;
        if (sgn(w) >= 0 && w <= 1) {
            out.intersects = true;
            out.point = s.a;
        }
        return out;
    }
    Rat t0 = (dx * rx + dy * ry) / rr;
    Rat t1 = t0 + (qx * rx + qy * ry) / rr;
    Rat lo = std::min(t0, t1), hi = std::max(t0, t1);
    Rat il = std::max(lo, Rat(0)), ih = std::min(hi, Rat(1));
    int c = cmp(il, ih);
    if (c > 0)
        return out;
    out.intersects = true;
    if (c == 0) {
        out.point = Point2{s.a.first + il * rx, s.a.second + il * ry};
    } else {
        out.overlap = true;
    }
    return out;
}

std::vector<Point2> face_samples(const std::vector<Seg2>& segs) {
    std::set<Rat> xs;
    for (const auto& s : segs) {
        xs.insert(s.a.first);
        xs.insert(s.b.first);
    }
    for (size_t i = 0; i < segs.size(); ++i)
        for (size_t j = i + 1; j < segs.size(); ++j) {
            auto r = seg_intersect(segs[i], segs[j]);
            if (r.intersects && r.point)
                xs.insert(r.point->first);
        }
    std::vector<Point2> out;
    std::vector<Rat> xv(xs.begin(), xs.end());
    for (size_t i = 0; i + 1 < xv.size(); ++i) {
        Rat xm = (xv[i] + xv[i + 1]) / 2;
        std::set<Rat> ys;
        for (const auto& s : segs) {
            Rat x0 = s.a.first, x1 = s.b.first;
            if (x0 == x1)
                continue; // vertical segments sit at slab boundaries
            Rat lo = std::min(x0, x1), hi = std::max(x0, x1);
            if (!(lo < xm && xm < hi))
                continue;
            Rat t = (xm - x0) / (x1 - x0);
            ys.insert(s.a.second + t * (s.b.second - s.a.second));
        }
        std::vector<Rat> yv(ys.begin(), ys.end());
        for (size_t k = 0; k + 1 < yv.size(); ++k)
            out.emplace_back(xm, (yv[k] + yv[k + 1]) / 2);
    }
    return out;
}

Loc2 locate_in_triangle(const Point2& p, const Point2& a, const Point2& b, const Point2& c) {
    int s1 = sgn(cross2(a, b, p));
    int s2 = sgn(cross2(b, c, p));
    int s3 = sgn(cross2(c, a, p));
    if ((s1 > 0 && s2 > 0 && s3 > 0) || (s1 < 0 && s2 < 0 && s3 < 0))
        return Loc2::Inside;
    bool has_pos = s1 > 0 || s2 > 0 || s3 > 0;
    bool has_neg = s1 < 0 || s2 < 0 || s3 < 0;
    if (has_pos && has_neg)
        return Loc2::Outside;
    // at least one zero and no sign conflict: on an edge or vertex, but only
    // if inside the segment spans
    if (s1 == 0 && s2 == 0 && s3 == 0)
        return Loc2::Outside; // degenerate triangle, treat as empty
    return Loc2::Boundary;
}

std::vector<Point2> clip_polygon_halfplane(const std::vector<Point2>& poly, const Point2& a,
                                           const Point2& b) {
    std::vector<Point2> out;
    size_t n = poly.size();
    for (size_t i = 0; i < n; ++i) {
        const Point2& p = poly[i];
        const Point2& q = poly[(i + 1) % n];
        int sp = sgn(cross2(a, b, p));
        int sq = sgn(cross2(a, b, q));
        if (sp >= 0)
            out.push_back(p);
        if ((sp > 0 && sq < 0) || (sp < 0 && sq > 0)) {
            Rat num = cross2(a, b, p);
            Rat den = num - cross2(a, b, q);
            Rat t = num / den;
            out.emplace_back(p.first + t * (q.first - p.first),
                             p.second + t * (q.second - p.second));
        }
    }
    return out;
}

Rat polygon_doubled_area(const std::vector<Point2>& poly) {
    Rat acc = 0;
    size_t n = poly.size();
    for (size_t i = 0; i < n; ++i) {
        const Point2& p = poly[i];
        const Point2& q = poly[(i + 1) % n];
        acc += p.first * q.second - q.first * p.second;
    }
    return abs(acc);
}

} // namespace polychain
