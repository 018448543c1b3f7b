#pragma once

#include <optional>
#include <vector>

#include "curvekit/rational.hpp"

namespace curvekit {

struct Pt {
    Rational x, y;
};

inline bool operator==(const Pt& a, const Pt& b) { return a.x == b.x && a.y == b.y; }
inline bool operator!=(const Pt& a, const Pt& b) { return !(a == b); }
inline Pt operator+(const Pt& a, const Pt& b) { return {a.x + b.x, a.y + b.y}; }
inline Pt operator-(const Pt& a, const Pt& b) { return {a.x - b.x, a.y - b.y}; }
inline Pt operator*(const Rational& s, const Pt& p) { return {s * p.x, s * p.y}; }

/// Sign of the cross product (b-a) x (c-a): +1 left turn, -1 right turn, 0 collinear.
int orient(const Pt& a, const Pt& b, const Pt& c);

bool point_on_closed_segment(const Pt& p, const Pt& a, const Pt& b);
bool point_on_open_segment(const Pt& p, const Pt& a, const Pt& b);

enum class SegRel {
    Disjoint,     // closed segments do not meet
    ProperCross,  // interiors cross transversally in a single point
    Degenerate,   // touch at an endpoint, or collinear overlap
};

struct SegHit {
    SegRel rel = SegRel::Disjoint;
    Pt point{};    // valid when rel == ProperCross
    Rational s{};  // parameter along (a,b), in (0,1)
    Rational t{};  // parameter along (c,d), in (0,1)
};

SegHit intersect_segments(const Pt& a, const Pt& b, const Pt& c, const Pt& d);

/// Exact affine map p -> M p + t.
struct Affine {
    Rational m00, m01, m10, m11, tx, ty;
    Pt operator()(const Pt& p) const {
        return {m00 * p.x + m01 * p.y + tx, m10 * p.x + m11 * p.y + ty};
    }
    Rational det() const { return m00 * m11 - m01 * m10; }
};

/// Unique affine map sending (p0,p1,p2) to (q0,q1,q2). Requires p* non-collinear.
Affine affine_from_triangles(const Pt& p0, const Pt& p1, const Pt& p2,
                             const Pt& q0, const Pt& q1, const Pt& q2);

/// Point reflection through m: p -> 2m - p.
inline Pt reflect_through(const Pt& m, const Pt& p) {
    return {2 * m.x - p.x, 2 * m.y - p.y};
}

/// Strictly inside the closed triangle's interior.
bool point_in_triangle_interior(const Pt& p, const Pt& a, const Pt& b, const Pt& c);

}  // namespace curvekit
