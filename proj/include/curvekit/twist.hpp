#pragma once

#include <vector>

#include "curvekit/extract.hpp"

namespace curvekit {

// Generator H_i swaps punctures p_i and p_{i+1} by a half twist supported in
// a lens around them; sign +1 is the counterclockwise half turn. Valid
// indices are 1..b-1.
struct MappingLetter {
  int index = 0;
  int sign = +1;

  friend bool operator==(const MappingLetter&, const MappingLetter&) = default;
};

// Words act on curves by composition, rightmost letter first.
using MappingWord = std::vector<MappingLetter>;

MappingWord inverse_word(const MappingWord& w);

// Image of a curve under one generator. Exact: the curve is realized, pushed
// through a piecewise-affine model of the half twist, and re-extracted.
// Results are memoized per (b, index, sign, key).
CurveKey apply_letter(const CurveKey& k, const MappingLetter& l);

CurveKey apply_word(const CurveKey& k, const MappingWord& w);

// The supporting lens of H_i: an axis-aligned rectangle on the front sheet
// containing exactly the punctures p_i and p_{i+1}.
struct LensBox {
  Rational x_lo, x_hi, y_lo, y_hi;
};
LensBox halftwist_lens(int b, int index);

// Applies the piecewise-affine half-twist model to a PL curve, subdividing
// segments at cell boundaries. Exposed for geometric tests; apply_letter is
// the normal entry point.
PLCurve map_through_halftwist(const Surface& S, const PLCurve& c, const MappingLetter& l);

}  // namespace curvekit
