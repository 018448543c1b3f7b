#include "doctest.h"

#include <functional>
#include <numeric>
#include <stdexcept>

#include "curvekit/extract.hpp"
#include "curvekit/realize.hpp"

using namespace curvekit;

namespace {

// Independent prediction for a curve around a set of punctures: a minimal
// representative crosses exactly the edges whose endpoints the set separates,
// once each.
std::vector<std::int64_t> separation_indicator(const Surface& S, int lo, int hi) {
  std::vector<std::int64_t> w(S.edges().size(), 0);
  auto inside = [&](int p) { return lo <= p && p <= hi; };
  for (size_t e = 0; e < w.size(); ++e) {
    const EdgeGeom& eg = S.edge(static_cast<int>(e));
    w[e] = inside(eg.tail) != inside(eg.head) ? 1 : 0;
  }
  return w;
}

bool within_rectangle(const Surface& S, const PLCurve& c) {
  for (const auto& p : c.v) {
    if (p.x < 0 || p.x > S.q_width()) return false;
    if (p.y < -S.q_height() || p.y > S.q_height()) return false;
  }
  return true;
}

// All admissible single-curve keys with every weight <= cap.
std::vector<CurveKey> enumerate_small_keys(int b, std::int64_t cap) {
  auto S = Surface::get(b);
  const size_t E = S->edges().size();
  std::vector<CurveKey> out;
  std::vector<std::int64_t> w(E, 0);
  std::function<void(size_t)> rec = [&](size_t e) {
    if (e == E) {
      if (!admissible(*S, w)) return;
      std::int64_t total = std::accumulate(w.begin(), w.end(), std::int64_t{0});
      if (total == 0) return;
      if (is_vertex_link(*S, w)) return;
      if (trace_components(*S, w).size() != 1) return;
      out.push_back(CurveKey{b, w});
      return;
    }
    for (std::int64_t v = 0; v <= cap; ++v) {
      w[e] = v;
      rec(e + 1);
    }
    w[e] = 0;
  };
  rec(0);
  return out;
}

PLCurve front_loop(std::vector<Pt> pts) {
  PLCurve c;
  c.v = std::move(pts);
  c.sheet.assign(c.v.size(), Sheet::Front);
  return c;
}

}  // namespace

TEST_CASE("edge subdivision skips multiples of three") {
  CHECK(edge_subdivision(0) == 1);
  CHECK(edge_subdivision(1) == 5);
  CHECK(edge_subdivision(2) == 5);
  CHECK(edge_subdivision(3) == 7);
  CHECK(edge_subdivision(4) == 11);
  CHECK(edge_subdivision(7) == 17);
  for (std::int64_t w = 0; w <= 40; ++w) {
    std::int64_t n = edge_subdivision(w);
    CHECK(n % 2 == 1);
    CHECK(n % 3 != 0);
    CHECK(n >= 2 * w + 1);
  }
}

TEST_CASE("edge points are interior, ordered and on the polyline") {
  auto S = Surface::get(6);
  for (int e = 0; e < S->edge_count(); ++e) {
    const EdgeGeom& eg = S->edge(e);
    const std::int64_t w = 5;
    for (std::int64_t k = 0; k < w; ++k) {
      SPt p = edge_point(*S, e, k, w);
      bool on = false;
      for (int s = 0; s < eg.segments(); ++s) {
        // the wrap edge's planar segments overlap, so accumulate
        if (point_on_open_segment(p.p, eg.pts[static_cast<size_t>(s)],
                                  eg.pts[static_cast<size_t>(s) + 1]) &&
            eg.seg_sheet[static_cast<size_t>(s)] == p.sheet)
          on = true;
      }
      CHECK(on);
      for (const auto& q : S->punctures()) CHECK(p.p != q);
    }
    // endpoints of the parameterization are the edge endpoints
    CHECK(edge_param_point(*S, e, Rational(0)).p == eg.pts.front());
    CHECK(edge_param_point(*S, e, Rational(1)).p == eg.pts.back());
  }
}

TEST_CASE("block curves match the separation indicator") {
  for (int b = 4; b <= 8; ++b) {
    auto S = Surface::get(b);
    for (int i = 1; i < b; ++i) {
      for (int j = i + 1; j <= b - 1; ++j) {
        if (j - i + 1 > b - 2) continue;
        CurveKey k = block_curve(b, i, j);
        CHECK(k.b == b);
        CHECK(k.w == separation_indicator(*S, i, j));
      }
    }
  }
}

TEST_CASE("frozen block coordinates for b=5") {
  // edge order: A1..A4, wrap, U3, U4, L3, L4
  CHECK(block_curve(5, 1, 2).w == std::vector<std::int64_t>{0, 1, 0, 0, 1, 1, 1, 1, 1});
  CHECK(block_curve(5, 2, 3).w == std::vector<std::int64_t>{1, 0, 1, 0, 0, 1, 0, 1, 0});
  CHECK(block_curve(5, 3, 4).w == std::vector<std::int64_t>{0, 1, 0, 1, 0, 1, 1, 1, 1});
  CHECK(block_curve(5, 2, 4).w == std::vector<std::int64_t>{1, 0, 0, 1, 0, 1, 1, 1, 1});
}

TEST_CASE("block curve argument validation") {
  CHECK_THROWS_AS(block_curve(5, 2, 2), std::invalid_argument);
  CHECK_THROWS_AS(block_curve(5, 0, 2), std::invalid_argument);
  CHECK_THROWS_AS(block_curve(5, 1, 5), std::invalid_argument);
  CHECK_THROWS_AS(block_curve(5, 1, 4), std::invalid_argument);  // leaves one puncture
  CHECK_THROWS_AS(block_curve(3, 1, 2), std::invalid_argument);
}

TEST_CASE("realized blocks are embedded and extract back") {
  for (int b = 4; b <= 7; ++b) {
    auto S = Surface::get(b);
    for (int i = 1; i < b; ++i) {
      for (int j = i + 1; j <= b - 1; ++j) {
        if (j - i + 1 > b - 2) continue;
        CurveKey k = block_curve(b, i, j);
        PLCurve c = realize_curve(k);
        CHECK(within_rectangle(*S, c));
        CHECK(curve_is_embedded(*S, c));
        CurveKey back = extract_key(*S, c);
        CHECK(back == k);
      }
    }
  }
}

TEST_CASE("realize/extract roundtrip over all small keys") {
  struct Range {
    int b;
    std::int64_t cap;
    size_t floor;  // enumeration must not be vacuous
  };
  for (Range r : {Range{4, 3, 5}, Range{5, 2, 5}}) {
    auto S = Surface::get(r.b);
    auto keys = enumerate_small_keys(r.b, r.cap);
    CHECK(keys.size() >= r.floor);
    for (const auto& k : keys) {
      PLCurve c = realize_curve(k);
      CHECK(within_rectangle(*S, c));
      CHECK(curve_is_embedded(*S, c));
      CurveKey back = extract_key(*S, c);
      CHECK(back == k);
    }
  }
}

TEST_CASE("joint realization keeps disjoint curves disjoint") {
  auto S = Surface::get(6);
  CurveKey inner = block_curve(6, 2, 3);
  CurveKey outer = block_curve(6, 1, 4);
  auto config = realize_config({inner, outer});
  REQUIRE(config.curves.size() == 2);
  CHECK(curve_is_embedded(*S, config.curves[0]));
  CHECK(curve_is_embedded(*S, config.curves[1]));
  CHECK(curves_disjoint(*S, config.curves[0], config.curves[1]));
  CHECK(extract_key(*S, config.curves[0]) == inner);
  CHECK(extract_key(*S, config.curves[1]) == outer);

  // parallel copies of one curve
  auto twins = realize_config({inner, inner});
  CHECK(curves_disjoint(*S, twins.curves[0], twins.curves[1]));

  // three nested levels on a larger surface
  auto S8 = Surface::get(8);
  auto nest = realize_config({block_curve(8, 3, 4), block_curve(8, 2, 5), block_curve(8, 1, 6)});
  for (size_t i = 0; i < nest.curves.size(); ++i) {
    CHECK(curve_is_embedded(*S8, nest.curves[i]));
    for (size_t j = i + 1; j < nest.curves.size(); ++j)
      CHECK(curves_disjoint(*S8, nest.curves[i], nest.curves[j]));
  }
}

TEST_CASE("joint realization rejects crossing curves") {
  CurveKey a = block_curve(6, 1, 3);
  CurveKey c = block_curve(6, 2, 4);
  CHECK_THROWS_WITH_AS(realize_config({a, c}), doctest::Contains("disjoint"),
                       std::invalid_argument);
}

TEST_CASE("extraction flags inessential curves") {
  auto S = Surface::get(5);

  // entirely inside one face: no crossings
  PLCurve tiny = front_loop({Pt{Rational(9), Rational(5)}, Pt{Rational(10), Rational(5)},
                             Pt{Rational(19, 2), Rational(6)}});
  CHECK_THROWS_WITH_AS(extract_key(*S, tiny), doctest::Contains("inessential-curve"),
                       std::runtime_error);

  // small rectangle around p2: parallel to a puncture
  PLCurve around = front_loop({Pt{Rational(15, 2), Rational(-1, 2)},
                               Pt{Rational(17, 2), Rational(-1, 2)},
                               Pt{Rational(17, 2), Rational(1, 2)},
                               Pt{Rational(15, 2), Rational(1, 2)}});
  CHECK_THROWS_WITH_AS(extract_key(*S, around), doctest::Contains("parallel to puncture 2"),
                       std::runtime_error);
}

TEST_CASE("extraction flags degenerate position") {
  auto S = Surface::get(5);

  // vertex at a puncture
  PLCurve at_p = front_loop(
      {Pt{Rational(8), Rational(0)}, Pt{Rational(10), Rational(1)}, Pt{Rational(10), Rational(-1)}});
  CHECK_THROWS_WITH_AS(extract_key(*S, at_p), doctest::Contains("degeneracy"), std::runtime_error);

  // vertex touching an edge from one side
  PLCurve graze = front_loop(
      {Pt{Rational(6), Rational(0)}, Pt{Rational(10), Rational(1)}, Pt{Rational(2), Rational(1)}});
  CHECK_THROWS_WITH_AS(extract_key(*S, graze), doctest::Contains("tangential"),
                       std::runtime_error);

  // segment running along an edge (reported as a collinearity degeneracy)
  PLCurve along = front_loop({Pt{Rational(5), Rational(0)}, Pt{Rational(7), Rational(0)},
                              Pt{Rational(6), Rational(1)}});
  CHECK_THROWS_WITH_AS(extract_key(*S, along), doctest::Contains("degeneracy"),
                       std::runtime_error);

  // vertex at an edge breakpoint (corner of the wrap edge)
  PLCurve at_break = front_loop(
      {Pt{Rational(0), Rational(0)}, Pt{Rational(2), Rational(2)}, Pt{Rational(1), Rational(3)}});
  CHECK_THROWS_WITH_AS(extract_key(*S, at_break), doctest::Contains("breakpoint"),
                       std::runtime_error);
}

TEST_CASE("transverse vertex crossings count once") {
  auto S = Surface::get(5);
  // quadrilateral around p2 with two vertices lying on edges: (6,0) crosses
  // A1 transversally at a curve vertex, (10,0) does the same on A2. If either
  // were double-counted the word would not reduce to the link of p2.
  PLCurve quad = front_loop({Pt{Rational(6), Rational(0)}, Pt{Rational(17, 2), Rational(-1, 2)},
                             Pt{Rational(10), Rational(0)}, Pt{Rational(17, 2), Rational(1, 2)}});
  CHECK_THROWS_WITH_AS(extract_key(*S, quad), doctest::Contains("parallel to puncture 2"),
                       std::runtime_error);
}

TEST_CASE("realization rejects invalid keys") {
  auto S = Surface::get(5);
  CHECK_THROWS_AS(realize_curve(CurveKey{5, vertex_link_weights(*S, 1)}), std::invalid_argument);
  CHECK_THROWS_AS(realize_curve(CurveKey{5, std::vector<std::int64_t>(9, 0)}),
                  std::invalid_argument);
}
