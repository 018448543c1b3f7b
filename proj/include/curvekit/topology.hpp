#pragma once

#include <optional>
#include <vector>

#include "curvekit/curve_key.hpp"

namespace curvekit {

// Partition of the punctures {1..b} into the two sides of a separating
// curve. sideA is the side containing puncture 1; both sides are sorted
// ascending.
struct PunctureSeparation {
  int b = 0;
  std::vector<int> sideA;
  std::vector<int> sideB;

  friend bool operator==(const PunctureSeparation&, const PunctureSeparation&) = default;
  friend auto operator<=>(const PunctureSeparation&, const PunctureSeparation&) = default;
};

PunctureSeparation separation(const CurveKey& c);

// Side sizes of a curve's separation (s1 <= s2) with the standard flags.
struct CurveClass {
  int s1 = 0;
  int s2 = 0;
  bool minimal = false;              // s1 == 2
  bool one_separating = false;       // s1 == 3
  bool strongly_separating = false;  // s1 >= 3
};

CurveClass classify(const CurveKey& c);

// True iff the two keys name the same isotopy class. Computed from the
// topological criterion (zero intersection number and equal separations),
// which agrees with plain key equality; tests check the two against each
// other.
bool curves_equal(const CurveKey& a, const CurveKey& c);

// True iff some side of s1 is contained in some side of s2. Separations of
// disjoint curves are always nested in this sense.
bool nested_separations(const PunctureSeparation& s1, const PunctureSeparation& s2);

// True iff alpha and beta lie in different complementary components of
// delta. Both must be disjoint from delta and not isotopic to it, else a
// not-in-link error is thrown.
bool separates(const CurveKey& delta, const CurveKey& alpha, const CurveKey& beta);

// One piece obtained by cutting the sphere along a multicurve: a sphere with
// punctures.size() punctures and boundary_count boundary circles.
struct ComplementComponent {
  std::vector<int> punctures;
  int boundary_count = 0;

  int complexity() const { return static_cast<int>(punctures.size()) + boundary_count - 3; }

  friend bool operator==(const ComplementComponent&, const ComplementComponent&) = default;
  friend auto operator<=>(const ComplementComponent&, const ComplementComponent&) = default;
};

// Pieces of the complement of a system of pairwise disjoint curves, in a
// deterministic order. The empty system yields the uncut sphere. Crossing
// input raises a not-a-multicurve error.
std::vector<ComplementComponent> complement_components(int b, const std::vector<CurveKey>& curves);

// One face of the complement of two crossing curves drawn with minimal
// crossings. Such faces are disks; sides counts the bounding arcs between
// crossing points. boundary is the face's bounding circle when that circle
// is an essential curve (at least two punctures on each side of it), and
// empty for faces with fewer than two punctures.
struct PairFace {
  std::vector<int> punctures;
  int sides = 0;
  std::optional<CurveKey> boundary;
};

// All complementary faces of the pair, deterministically ordered. Requires
// i(a,c) > 0 (not-filling error otherwise).
std::vector<PairFace> pair_faces(const CurveKey& a, const CurveKey& c);

// Regular neighborhood of the union of two crossing curves together with
// every complementary face that is a disk holding at most two punctures.
// boundary lists the bounding circles of the result, one per remaining face.
struct FilledSubsurface {
  ComplementComponent piece;
  std::vector<CurveKey> boundary;
};

FilledSubsurface filled_subsurface(const CurveKey& a, const CurveKey& c);

}  // namespace curvekit
