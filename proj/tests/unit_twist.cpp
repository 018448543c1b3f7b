#include "doctest.h"

#include <functional>
#include <numeric>
#include <stdexcept>

#include "curvekit/twist.hpp"

using namespace curvekit;

namespace {

PLCurve front_loop(std::vector<Pt> pts) {
  PLCurve c;
  c.v = std::move(pts);
  c.sheet.assign(c.v.size(), Sheet::Front);
  return c;
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

// The reflection y -> -y is an automorphism of the triangulation exchanging
// the upper and lower arches; it conjugates each generator to its inverse.
CurveKey mirrored(const CurveKey& k) {
  auto S = Surface::get(k.b);
  CurveKey m = k;
  for (int j = 3; j <= k.b - 1; ++j)
    std::swap(m.w[S->upper_arch(j)], m.w[S->lower_arch(j)]);
  return m;
}

}  // namespace

TEST_CASE("halftwist lens encloses exactly its two punctures") {
  for (int b = 4; b <= 8; ++b) {
    auto S = Surface::get(b);
    for (int i = 1; i < b; ++i) {
      LensBox L = halftwist_lens(b, i);
      CHECK(L.x_lo > 0);
      CHECK(L.x_hi < S->q_width());
      CHECK(L.y_hi < S->q_height());
      for (int p = 1; p <= b; ++p) {
        Pt pp = S->puncture(p);
        const bool inside =
            pp.x > L.x_lo && pp.x < L.x_hi && pp.y > L.y_lo && pp.y < L.y_hi;
        CHECK(inside == (p == i || p == i + 1));
      }
    }
  }
  CHECK_THROWS_AS(halftwist_lens(5, 0), std::invalid_argument);
  CHECK_THROWS_AS(halftwist_lens(5, 5), std::invalid_argument);
  CHECK_THROWS_AS(halftwist_lens(3, 1), std::invalid_argument);
}

TEST_CASE("halftwist model is the identity off its lens") {
  // Builds every generator's cell complex, which self-checks orientation,
  // tiling area, and the pointwise-fixed rim.
  for (int b = 4; b <= 8; ++b) {
    auto S = Surface::get(b);
    PLCurve away = front_loop({{Rational(1), Rational(b)},
                               {Rational(2), Rational(b)},
                               {Rational(3, 2), Rational(b) + 1}});
    for (int i = 1; i < b; ++i)
      for (int s : {+1, -1}) {
        PLCurve m = map_through_halftwist(*S, away, MappingLetter{i, s});
        CHECK(m.v == away.v);
      }
  }

  auto S5 = Surface::get(5);
  PLCurve rect = front_loop({{Rational(2), Rational(-1, 2)},
                             {Rational(10), Rational(-1, 2)},
                             {Rational(10), Rational(1, 2)},
                             {Rational(2), Rational(1, 2)}});
  for (int s : {+1, -1}) {
    PLCurve m = map_through_halftwist(*S5, rect, MappingLetter{4, s});
    CHECK(m.v == rect.v);
  }

  // Back-sheet points under a lens never move.
  PLCurve back = front_loop({{Rational(15), Rational(-1, 2)},
                             {Rational(21), Rational(-1, 2)},
                             {Rational(18), Rational(1, 2)}});
  back.sheet.assign(3, Sheet::Back);
  PLCurve m = map_through_halftwist(*S5, back, MappingLetter{4, +1});
  CHECK(m.v == back.v);
}

TEST_CASE("a hand-built enclosing rectangle keeps its class through the lens") {
  auto S5 = Surface::get(5);
  CurveKey b23 = block_curve(5, 2, 3);
  PLCurve rect = front_loop({{Rational(5), Rational(-5, 8)},
                             {Rational(15), Rational(-5, 8)},
                             {Rational(15), Rational(5, 8)},
                             {Rational(5), Rational(5, 8)}});
  REQUIRE(extract_key(*S5, rect) == b23);
  for (int s : {+1, -1}) {
    PLCurve img = map_through_halftwist(*S5, rect, MappingLetter{2, s});
    CHECK(img.v.size() > rect.v.size());
    CHECK(extract_key(*S5, img) == b23);
  }
}

TEST_CASE("blocks containing or avoiding both swapped punctures are fixed") {
  for (int b : {5, 6, 7})
    for (int i = 1; i + 1 <= b - 1; ++i) {
      CurveKey blk = block_curve(b, i, i + 1);
      CHECK(apply_letter(blk, {i, +1}) == blk);
      CHECK(apply_letter(blk, {i, -1}) == blk);
    }

  CHECK(apply_letter(block_curve(5, 1, 3), {2, +1}) == block_curve(5, 1, 3));
  CHECK(apply_letter(block_curve(5, 1, 3), {2, -1}) == block_curve(5, 1, 3));
  CHECK(apply_letter(block_curve(5, 2, 4), {3, +1}) == block_curve(5, 2, 4));

  CHECK(apply_letter(block_curve(5, 1, 2), {4, +1}) == block_curve(5, 1, 2));
  CHECK(apply_letter(block_curve(5, 3, 4), {1, -1}) == block_curve(5, 3, 4));
  CHECK(apply_letter(block_curve(6, 2, 3), {5, +1}) == block_curve(6, 2, 3));
  CHECK(apply_letter(block_curve(6, 4, 5), {1, +1}) == block_curve(6, 4, 5));
}

TEST_CASE("letters invert") {
  for (const CurveKey& g :
       {block_curve(5, 1, 2), block_curve(5, 2, 3), block_curve(5, 3, 4),
        block_curve(5, 1, 3), block_curve(5, 2, 4)})
    for (int i = 1; i <= 4; ++i) {
      CHECK(apply_letter(apply_letter(g, {i, +1}), {i, -1}) == g);
      CHECK(apply_letter(apply_letter(g, {i, -1}), {i, +1}) == g);
    }

  for (const CurveKey& g : enumerate_small_keys(4, 2))
    for (int i = 1; i <= 3; ++i)
      CHECK(apply_letter(apply_letter(g, {i, +1}), {i, -1}) == g);
}

TEST_CASE("adjacent generators satisfy the braid relation") {
  for (const CurveKey& g : {block_curve(5, 1, 2), block_curve(5, 2, 3),
                            block_curve(5, 3, 4), block_curve(5, 1, 3)})
    for (int i = 1; i <= 3; ++i) {
      MappingWord lhs{{i, +1}, {i + 1, +1}, {i, +1}};
      MappingWord rhs{{i + 1, +1}, {i, +1}, {i + 1, +1}};
      CHECK(apply_word(g, lhs) == apply_word(g, rhs));
    }
  CurveKey g6 = block_curve(6, 2, 3);
  CHECK(apply_word(g6, {{3, +1}, {4, +1}, {3, +1}}) ==
        apply_word(g6, {{4, +1}, {3, +1}, {4, +1}}));
}

TEST_CASE("generators with separated lenses commute") {
  for (const CurveKey& g :
       {block_curve(5, 1, 2), block_curve(5, 2, 3), block_curve(5, 2, 4)}) {
    CHECK(apply_word(g, {{1, +1}, {3, +1}}) == apply_word(g, {{3, +1}, {1, +1}}));
    CHECK(apply_word(g, {{1, -1}, {3, +1}}) == apply_word(g, {{3, +1}, {1, -1}}));
  }
  CurveKey g6 = block_curve(6, 3, 4);
  CHECK(apply_word(g6, {{1, +1}, {5, +1}}) == apply_word(g6, {{5, +1}, {1, +1}}));
  CHECK(apply_word(g6, {{2, +1}, {4, +1}}) == apply_word(g6, {{4, +1}, {2, +1}}));
}

TEST_CASE("the reflection symmetry exchanges the two twist directions") {
  for (int b : {5, 6})
    for (int i = 1; i + 2 <= b - 1; ++i) {
      CurveKey blk = block_curve(b, i + 1, i + 2);
      REQUIRE(mirrored(blk) == blk);
      CHECK(apply_letter(blk, {i, -1}) == mirrored(apply_letter(blk, {i, +1})));
    }
  CurveKey wide = block_curve(5, 1, 3);
  REQUIRE(mirrored(wide) == wide);
  for (int i = 1; i <= 4; ++i)
    CHECK(apply_letter(wide, {i, -1}) == mirrored(apply_letter(wide, {i, +1})));
}

TEST_CASE("twisted keys match their first computed values") {
  CurveKey b12 = block_curve(5, 1, 2);
  REQUIRE(b12 == CurveKey{5, {0, 1, 0, 0, 1, 1, 1, 1, 1}});
  CHECK(apply_letter(b12, {2, +1}) == CurveKey{5, {1, 1, 1, 0, 1, 2, 1, 0, 1}});
  CHECK(apply_letter(b12, {2, -1}) == CurveKey{5, {1, 1, 1, 0, 1, 0, 1, 2, 1}});

  CurveKey b23 = block_curve(4, 2, 3);
  REQUIRE(b23 == CurveKey{4, {1, 0, 1, 0, 1, 1}});
  CurveKey full = apply_word(b23, {{1, +1}, {1, +1}});
  CHECK(full == CurveKey{4, {1, 2, 1, 2, 1, 3}});
  CHECK(apply_word(full, {{1, -1}, {1, -1}}) == b23);

  CHECK(apply_letter(block_curve(6, 2, 3), {3, +1}) ==
        CurveKey{6, {1, 1, 1, 1, 0, 0, 0, 1, 0, 2, 1, 0}});
}

TEST_CASE("word plumbing") {
  CurveKey g = block_curve(5, 1, 3);
  CHECK(apply_word(g, {}) == g);

  MappingWord w{{1, +1}, {2, -1}};
  MappingWord inv = inverse_word(w);
  REQUIRE(inv.size() == 2);
  CHECK(inv[0] == MappingLetter{2, +1});
  CHECK(inv[1] == MappingLetter{1, -1});

  // Rightmost letter acts first.
  CHECK(apply_word(g, w) == apply_letter(apply_letter(g, {2, -1}), {1, +1}));

  MappingWord u{{1, +1}, {2, +1}, {3, -1}};
  CHECK(apply_word(apply_word(g, u), inverse_word(u)) == g);

  // Memoized results are stable across repeated calls.
  CHECK(apply_letter(g, {2, +1}) == apply_letter(g, {2, +1}));
}

TEST_CASE("twist argument guards") {
  CurveKey g = block_curve(5, 1, 2);
  CHECK_THROWS_AS(apply_letter(g, {0, +1}), std::invalid_argument);
  CHECK_THROWS_AS(apply_letter(g, {5, +1}), std::invalid_argument);
  CHECK_THROWS_AS(apply_letter(g, {2, 0}), std::invalid_argument);
  CHECK_THROWS_AS(apply_letter(g, {2, 2}), std::invalid_argument);

  // The weight cap trips before any tracing can start.
  CurveKey huge{5, std::vector<std::int64_t>(9, std::int64_t{1} << 38)};
  CHECK_THROWS_AS(apply_letter(huge, {1, +1}), std::overflow_error);
}
