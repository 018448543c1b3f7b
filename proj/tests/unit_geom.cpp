#include "doctest.h"

#include "curvekit/geom.hpp"
#include "curvekit/rational.hpp"

using namespace curvekit;

namespace {
Pt pt(long x, long y) { return Pt{Rational(x), Rational(y)}; }
}  // namespace

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3/4") == Rational(3) / 4);
  CHECK(parse_rational("-7") == Rational(-7));
  CHECK(to_string(Rational(22) / 7) == "22/7");
  CHECK(to_string(Rational(-4) / 2) == "-2");
  CHECK_THROWS(parse_rational(""));
  CHECK_THROWS(parse_rational("x/y"));
}

TEST_CASE("orientation predicate") {
  CHECK(orient(pt(0, 0), pt(1, 0), pt(0, 1)) == 1);
  CHECK(orient(pt(0, 0), pt(0, 1), pt(1, 0)) == -1);
  CHECK(orient(pt(0, 0), pt(2, 2), pt(5, 5)) == 0);
}

TEST_CASE("segment intersection: proper crossings") {
  auto hit = intersect_segments(pt(0, 0), pt(2, 2), pt(0, 2), pt(2, 0));
  REQUIRE(hit.rel == SegRel::ProperCross);
  CHECK(hit.point == pt(1, 1));
  CHECK(hit.s == Rational(1) / 2);
  CHECK(hit.t == Rational(1) / 2);

  // crossing with asymmetric parameters
  hit = intersect_segments(pt(0, 0), pt(4, 0), pt(1, -1), pt(1, 3));
  REQUIRE(hit.rel == SegRel::ProperCross);
  CHECK(hit.point == pt(1, 0));
  CHECK(hit.s == Rational(1) / 4);
  CHECK(hit.t == Rational(1) / 4);
}

TEST_CASE("segment intersection: disjoint and touching") {
  CHECK(intersect_segments(pt(0, 0), pt(1, 0), pt(0, 1), pt(1, 1)).rel == SegRel::Disjoint);
  // endpoint touching is degenerate, not a proper crossing
  CHECK(intersect_segments(pt(0, 0), pt(1, 1), pt(1, 1), pt(2, 0)).rel == SegRel::Degenerate);
  // T-contact: endpoint in the interior of the other segment
  CHECK(intersect_segments(pt(0, 0), pt(2, 0), pt(1, 0), pt(1, 1)).rel == SegRel::Degenerate);
  // collinear overlap
  CHECK(intersect_segments(pt(0, 0), pt(3, 0), pt(1, 0), pt(5, 0)).rel == SegRel::Degenerate);
  // collinear but separated
  CHECK(intersect_segments(pt(0, 0), pt(1, 0), pt(2, 0), pt(3, 0)).rel == SegRel::Disjoint);
}

TEST_CASE("point-on-segment predicates") {
  CHECK(point_on_closed_segment(pt(1, 1), pt(0, 0), pt(2, 2)));
  CHECK(point_on_closed_segment(pt(0, 0), pt(0, 0), pt(2, 2)));
  CHECK(!point_on_open_segment(pt(0, 0), pt(0, 0), pt(2, 2)));
  CHECK(point_on_open_segment(pt(1, 1), pt(0, 0), pt(2, 2)));
  CHECK(!point_on_closed_segment(pt(3, 3), pt(0, 0), pt(2, 2)));
  CHECK(!point_on_closed_segment(pt(1, 2), pt(0, 0), pt(2, 2)));
}

TEST_CASE("affine map from triangle correspondence") {
  Affine f = affine_from_triangles(pt(0, 0), pt(1, 0), pt(0, 1), pt(2, 3), pt(4, 3), pt(2, 7));
  CHECK(f(pt(0, 0)) == pt(2, 3));
  CHECK(f(pt(1, 0)) == pt(4, 3));
  CHECK(f(pt(0, 1)) == pt(2, 7));
  CHECK(f(Pt{Rational(1) / 2, Rational(1) / 2}) == Pt{Rational(3), Rational(5)});
  CHECK(f.det() == Rational(8));
  CHECK_THROWS(affine_from_triangles(pt(0, 0), pt(1, 1), pt(2, 2), pt(0, 0), pt(1, 0), pt(0, 1)));
}

TEST_CASE("point reflection") {
  CHECK(reflect_through(pt(2, 0), pt(3, 4)) == pt(1, -4));
  CHECK(reflect_through(pt(0, 0), pt(0, 0)) == pt(0, 0));
}

TEST_CASE("triangle interior") {
  CHECK(point_in_triangle_interior(pt(1, 1), pt(0, 0), pt(3, 0), pt(0, 3)));
  CHECK(!point_in_triangle_interior(pt(0, 0), pt(0, 0), pt(3, 0), pt(0, 3)));
  CHECK(!point_in_triangle_interior(pt(2, 1), pt(0, 0), pt(3, 0), pt(0, 3)));  // on edge
  CHECK(!point_in_triangle_interior(pt(5, 5), pt(0, 0), pt(3, 0), pt(0, 3)));
}
