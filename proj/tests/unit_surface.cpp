#include "doctest.h"

#include <set>

#include "curvekit/surface.hpp"

using namespace curvekit;

TEST_CASE("reference triangulation builds and self-checks for small b") {
  // The constructor throws if any structural or embedding check fails.
  for (int b = 4; b <= 12; ++b) {
    auto s = Surface::get(b);
    CHECK(s->edge_count() == 3 * b - 6);
    CHECK(s->triangle_count() == 2 * (b - 2));
    CHECK(static_cast<int>(s->punctures().size()) == b);
  }
  CHECK_THROWS(Surface(3));
}

TEST_CASE("edge naming and layout") {
  auto s = Surface::get(7);
  CHECK(s->edge_index("A1") == s->a_edge(1));
  CHECK(s->edge_index("wrap") == s->wrap_edge());
  CHECK(s->edge_index("U3") == s->upper_arch(3));
  CHECK(s->edge_index("L6") == s->lower_arch(6));
  CHECK_THROWS(s->edge_index("Z9"));
  CHECK_THROWS(s->upper_arch(2));
  CHECK_THROWS(s->upper_arch(7));

  const auto& a3 = s->edge(s->a_edge(3));
  CHECK(a3.tail == 3);
  CHECK(a3.head == 4);
  CHECK(a3.segments() == 1);
  const auto& w = s->edge(s->wrap_edge());
  CHECK(w.tail == 7);
  CHECK(w.head == 1);
  CHECK(w.segments() == 3);
  CHECK(w.seg_sheet[1] == Sheet::Back);
}

TEST_CASE("triangles form a closed surface of Euler characteristic 2") {
  for (int b : {4, 5, 6, 7, 10}) {
    auto s = Surface::get(b);
    int V = b, E = s->edge_count(), F = s->triangle_count();
    CHECK(V - E + F == 2);

    // each edge once forward, once reversed
    for (int e = 0; e < E; ++e) {
      auto [tf, cf] = s->coside(e, true);
      auto [tr, cr] = s->coside(e, false);
      CHECK(tf >= 0);
      CHECK(tr >= 0);
      CHECK(s->triangles()[static_cast<size_t>(tf)].side[static_cast<size_t>(cf)] == e);
      CHECK(s->triangles()[static_cast<size_t>(tr)].side[static_cast<size_t>(cr)] == e);
      CHECK(s->triangles()[static_cast<size_t>(tf)].fwd[static_cast<size_t>(cf)]);
      CHECK(!s->triangles()[static_cast<size_t>(tr)].fwd[static_cast<size_t>(cr)]);
    }
  }
}

TEST_CASE("vertex degrees count edge ends") {
  auto s = Surface::get(6);
  std::vector<int> deg(static_cast<size_t>(s->b()) + 1, 0);
  for (const auto& e : s->edges()) {
    deg[static_cast<size_t>(e.tail)]++;
    deg[static_cast<size_t>(e.head)]++;
  }
  int total = 0;
  for (int v = 1; v <= s->b(); ++v) {
    CHECK(deg[static_cast<size_t>(v)] >= 2);
    total += deg[static_cast<size_t>(v)];
  }
  CHECK(total == 2 * s->edge_count());
  // p_1 meets A_1, the wrap edge, and one end of each of the 2(b-3) arches
  CHECK(deg[1] == 2 * (s->b() - 3) + 2);
}

TEST_CASE("gluing boundary classification") {
  auto s = Surface::get(5);
  CHECK(s->on_gluing_boundary(Pt{Rational(0), Rational(3)}));
  CHECK(s->on_gluing_boundary(Pt{Rational(24), Rational(0)}));
  CHECK(s->on_gluing_boundary(Pt{Rational(5), Rational(7)}));
  CHECK(!s->on_gluing_boundary(Pt{Rational(5), Rational(0)}));

  SPt front{Sheet::Front, Pt{Rational(0), Rational(0)}};
  SPt back{Sheet::Back, Pt{Rational(0), Rational(0)}};
  SPt inner_f{Sheet::Front, Pt{Rational(4), Rational(0)}};
  SPt inner_b{Sheet::Back, Pt{Rational(4), Rational(0)}};
  CHECK(surface_points_equal(*s, front, back));
  CHECK(!surface_points_equal(*s, inner_f, inner_b));
  CHECK(surface_points_equal(*s, inner_f, inner_f));
}

TEST_CASE("shared instances are cached") {
  auto a = Surface::get(8);
  auto b = Surface::get(8);
  CHECK(a.get() == b.get());
}
