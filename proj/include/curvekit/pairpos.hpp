#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "curvekit/curve_key.hpp"
#include "curvekit/normal.hpp"

namespace curvekit {

// A pair of curves in joint minimal position. Crossing points of both curves
// are merged into a linear order along every edge, and arcs run as chords
// inside each triangle, so two arcs cross exactly when their endpoint slots
// interleave around the triangle boundary.
struct PairPosition {
  int b = 0;
  // Traced transits of each curve (index 0 and 1), in curve order.
  std::array<std::vector<Transit>, 2> transits;
  // Merged token order along each edge: (curve, point index) from tail to
  // head. Every point of both curves appears exactly once.
  std::vector<std::vector<std::pair<int, std::int64_t>>> order;
  // Crossings that remain after all bigons are gone, as (transit of curve 0,
  // transit of curve 1) pairs sharing a triangle.
  std::vector<std::pair<int, int>> crossings;
};

// Puts two curves into joint minimal position. Innermost bigons show up as
// corridors: two strands adjacent along every edge they share between two
// interleaved triangles. Swapping the strand pair along such a corridor
// removes exactly its two end crossings, and once no corridor is left the
// configuration has no bigon at all, so the crossing set is minimal.
PairPosition minimal_pair_position(const CurveKey& a, const CurveKey& c);

// Geometric intersection number of two curve classes on the same surface.
std::int64_t intersection_number(const CurveKey& a, const CurveKey& c);

}  // namespace curvekit
