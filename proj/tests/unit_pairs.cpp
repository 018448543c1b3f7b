#include "doctest.h"

#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "curvekit/extract.hpp"
#include "curvekit/normal.hpp"
#include "curvekit/pairpos.hpp"
#include "curvekit/realize.hpp"
#include "curvekit/twist.hpp"

using namespace curvekit;

namespace {

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

}  // namespace

TEST_CASE("a curve never crosses itself") {
  // Equal keys deliberately start the reduction from a crossed position (the
  // merge tie-break is not corner-consistent), so this exercises the full
  // corridor removal, not a shortcut.
  for (int b : {4, 5}) {
    auto keys = enumerate_small_keys(b, 2);
    REQUIRE(keys.size() > 3);
    for (const auto& k : keys) CHECK(intersection_number(k, k) == 0);
  }
  // A heavy curve: four full twists pile up weight 36.
  auto cur = block_curve(5, 1, 2);
  for (int n = 0; n < 4; ++n) cur = apply_word(cur, MappingWord{{2, +1}, {2, +1}});
  REQUIRE(total_weight(cur) == 36);
  CHECK(intersection_number(cur, cur) == 0);
}

TEST_CASE("blocks cross exactly when their puncture intervals properly overlap") {
  for (int b : {5, 6, 7}) {
    for (int i1 = 1; i1 < b; ++i1)
      for (int j1 = i1 + 1; j1 < b && j1 - i1 <= b - 3; ++j1)
        for (int i2 = 1; i2 < b; ++i2)
          for (int j2 = i2 + 1; j2 < b && j2 - i2 <= b - 3; ++j2) {
            auto k1 = block_curve(b, i1, j1);
            auto k2 = block_curve(b, i2, j2);
            bool nested = (i1 <= i2 && j2 <= j1) || (i2 <= i1 && j1 <= j2);
            bool disjoint = (j1 < i2) || (j2 < i1);
            std::int64_t want = (nested || disjoint) ? 0 : 2;
            CAPTURE(b);
            CAPTURE(i1);
            CAPTURE(j1);
            CAPTURE(i2);
            CAPTURE(j2);
            CHECK(intersection_number(k1, k2) == want);
            CHECK(intersection_number(k2, k1) == want);
          }
  }
}

TEST_CASE("crossing numbers are twist invariant") {
  std::vector<CurveKey> ks = {block_curve(5, 1, 2), block_curve(5, 2, 3),
                              block_curve(5, 3, 4), block_curve(5, 1, 3),
                              block_curve(5, 2, 4)};
  for (int idx = 1; idx <= 4; ++idx)
    for (int sg : {+1, -1}) {
      MappingLetter L{idx, sg};
      for (size_t x = 0; x < ks.size(); ++x)
        for (size_t y = x; y < ks.size(); ++y) {
          auto base = intersection_number(ks[x], ks[y]);
          CHECK(intersection_number(apply_letter(ks[x], L), apply_letter(ks[y], L)) ==
                base);
        }
    }
}

TEST_CASE("twisting about a disjoint curve adds four crossings per turn") {
  // The full twist about block{i,i+1} is the square of the letter swapping
  // p_i and p_{i+1}. Twisting alpha about beta and pairing with a curve
  // gamma disjoint from alpha gives exactly n * i(beta,alpha) * i(beta,gamma)
  // crossings; both factors are 2 here.
  {
    auto alpha = block_curve(4, 1, 2);
    auto cur = alpha;
    for (int n = 1; n <= 3; ++n) {
      cur = apply_word(cur, MappingWord{{2, +1}, {2, +1}});
      CHECK(intersection_number(cur, alpha) == 4 * n);
    }
  }
  {
    auto alpha = block_curve(5, 1, 2);
    auto gamma = block_curve(5, 3, 4);
    auto cur = alpha;
    for (int n = 1; n <= 4; ++n) {
      cur = apply_word(cur, MappingWord{{2, +1}, {2, +1}});
      CHECK(intersection_number(cur, gamma) == 4 * n);
    }
  }
  // Twisting a block about itself leaves it untouched. The curve about
  // punctures {4,5} is the block around {1,2,3} seen from the other side.
  for (int sg : {+1, -1}) {
    for (int i = 1; i <= 3; ++i)
      CHECK(apply_word(block_curve(5, i, i + 1), MappingWord{{i, sg}, {i, sg}}) ==
            block_curve(5, i, i + 1));
    CHECK(apply_word(block_curve(5, 1, 3), MappingWord{{4, sg}, {4, sg}}) ==
          block_curve(5, 1, 3));
  }
}

TEST_CASE("zero crossing number is exactly realizable disjointness") {
  // Two independent implementations of "can these be drawn apart": the
  // corridor reduction and the geometric realization of configurations.
  auto run = [](int b, std::int64_t cap) {
    auto keys = enumerate_small_keys(b, cap);
    int crossing = 0;
    for (size_t x = 0; x < keys.size(); ++x)
      for (size_t y = x + 1; y < keys.size(); ++y) {
        auto n = intersection_number(keys[x], keys[y]);
        CHECK(n % 2 == 0);
        CHECK(intersection_number(keys[y], keys[x]) == n);
        bool drawn_apart = true;
        try {
          realize_config({keys[x], keys[y]});
        } catch (const std::exception&) {
          drawn_apart = false;
        }
        CAPTURE(to_string(keys[x]));
        CAPTURE(to_string(keys[y]));
        CHECK((n == 0) == drawn_apart);
        if (n > 0) ++crossing;
      }
    return crossing;
  };
  CHECK(run(4, 3) > 0);
  CHECK(run(5, 2) > 50);
}

TEST_CASE("crossing numbers match their first computed values") {
  {
    auto a = apply_letter(block_curve(5, 1, 3), MappingLetter{2, +1});
    CHECK(a == CurveKey{5, {0, 0, 1, 0, 1, 0, 1, 0, 1}});
    CHECK(intersection_number(a, block_curve(5, 2, 4)) == 2);
  }
  {
    auto a = apply_letter(block_curve(6, 2, 4), MappingLetter{3, +1});
    auto c = apply_letter(block_curve(6, 3, 5), MappingLetter{4, -1});
    CHECK(intersection_number(a, c) == 2);
  }
  {
    // Two roads to the same curve: pushing block{2,3} through H_1 H_4 H_2
    // lands on the clockwise image of block{1,2} under H_2.
    auto d = apply_word(block_curve(5, 2, 3), MappingWord{{1, +1}, {4, +1}, {2, +1}});
    CHECK(d == CurveKey{5, {1, 1, 1, 0, 1, 0, 1, 2, 1}});
    auto a = apply_word(block_curve(5, 1, 2), MappingWord{{2, +1}, {2, +1}});
    CHECK(intersection_number(a, d) == 6);
  }
  {
    auto cur = block_curve(5, 1, 2);
    for (int n = 0; n < 5; ++n) cur = apply_word(cur, MappingWord{{2, +1}, {2, +1}});
    CHECK(cur == CurveKey{5, {10, 1, 10, 0, 1, 11, 1, 9, 1}});
    CHECK(intersection_number(cur, block_curve(5, 3, 4)) == 20);
  }
}

TEST_CASE("pairing argument guards") {
  CHECK_THROWS_WITH_AS(intersection_number(block_curve(5, 1, 2), block_curve(6, 1, 2)),
                       "curves live on different surfaces", std::invalid_argument);
  CHECK_THROWS_AS(
      intersection_number(CurveKey{5, std::vector<std::int64_t>(9, 1)},
                          block_curve(5, 1, 2)),
      std::invalid_argument);
  std::vector<std::int64_t> big(9, std::int64_t{1} << 31);
  CHECK_THROWS_AS(intersection_number(CurveKey{5, big}, block_curve(5, 1, 2)),
                  std::overflow_error);
}
