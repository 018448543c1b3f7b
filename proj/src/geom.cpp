#include "curvekit/geom.hpp"

#include <algorithm>
#include <stdexcept>

namespace curvekit {

int orient(const Pt& a, const Pt& b, const Pt& c) {
    Rational cr = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    return cr.sign();
}

bool point_on_closed_segment(const Pt& p, const Pt& a, const Pt& b) {
    if (orient(a, b, p) != 0) return false;
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

bool point_on_open_segment(const Pt& p, const Pt& a, const Pt& b) {
    return point_on_closed_segment(p, a, b) && p != a && p != b;
}

SegHit intersect_segments(const Pt& a, const Pt& b, const Pt& c, const Pt& d) {
    SegHit hit;
    int o1 = orient(a, b, c);
    int o2 = orient(a, b, d);
    int o3 = orient(c, d, a);
    int o4 = orient(c, d, b);

    if (o1 * o2 < 0 && o3 * o4 < 0) {
        // Proper interior crossing. Solve a + s (b-a) = c + t (d-c).
        Pt r = b - a, e = d - c;
        Rational denom = r.x * e.y - r.y * e.x;  // nonzero here
        Pt ca = c - a;
        hit.s = (ca.x * e.y - ca.y * e.x) / denom;
        hit.t = (ca.x * r.y - ca.y * r.x) / denom;
        hit.point = a + hit.s * r;
        hit.rel = SegRel::ProperCross;
        return hit;
    }
    if (o1 == 0 && o2 == 0 && o3 == 0 && o4 == 0) {
        // Collinear: degenerate iff the closed 1D spans overlap.
        auto overlap1d = [](const Rational& a0, const Rational& a1, const Rational& b0,
                            const Rational& b1) {
            return std::max(std::min(a0, a1), std::min(b0, b1)) <=
                   std::min(std::max(a0, a1), std::max(b0, b1));
        };
        bool meets = (a.x == b.x && a.y == b.y)
                         ? point_on_closed_segment(a, c, d)
                         : (overlap1d(a.x, b.x, c.x, d.x) && overlap1d(a.y, b.y, c.y, d.y));
        hit.rel = meets ? SegRel::Degenerate : SegRel::Disjoint;
        return hit;
    }
    // Some orientation is zero or signs do not strictly alternate: they meet only if
    // an endpoint lies on the other closed segment, and then the contact is degenerate.
    if (point_on_closed_segment(c, a, b) || point_on_closed_segment(d, a, b) ||
        point_on_closed_segment(a, c, d) || point_on_closed_segment(b, c, d)) {
        hit.rel = SegRel::Degenerate;
        return hit;
    }
    hit.rel = SegRel::Disjoint;
    return hit;
}

Affine affine_from_triangles(const Pt& p0, const Pt& p1, const Pt& p2,
                             const Pt& q0, const Pt& q1, const Pt& q2) {
    Pt u = p1 - p0, v = p2 - p0;
    Pt U = q1 - q0, V = q2 - q0;
    Rational det = u.x * v.y - u.y * v.x;
    if (det == 0) throw std::runtime_error("affine_from_triangles: degenerate source triangle");
    // M = [U V] [u v]^{-1}
    Affine f;
    f.m00 = (U.x * v.y - V.x * u.y) / det;
    f.m01 = (V.x * u.x - U.x * v.x) / det;
    f.m10 = (U.y * v.y - V.y * u.y) / det;
    f.m11 = (V.y * u.x - U.y * v.x) / det;
    f.tx = q0.x - (f.m00 * p0.x + f.m01 * p0.y);
    f.ty = q0.y - (f.m10 * p0.x + f.m11 * p0.y);
    return f;
}

bool point_in_triangle_interior(const Pt& p, const Pt& a, const Pt& b, const Pt& c) {
    int o = orient(a, b, c);
    if (o == 0) return false;
    return orient(a, b, p) == o && orient(b, c, p) == o && orient(c, a, p) == o;
}

}  // namespace curvekit
