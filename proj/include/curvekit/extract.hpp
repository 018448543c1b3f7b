#pragma once

#include "curvekit/realize.hpp"

namespace curvekit {

// Normal coordinates of an embedded closed curve: the exact crossing word
// against the triangulation edges, cyclically reduced, counted per edge.
//
// Throws std::runtime_error whose message starts with
//   "degeneracy:"         when the curve is not transverse to the edges
//                         (runs along an edge, grazes one, hits a breakpoint
//                         or a puncture), and
//   "inessential-curve:"  when the curve is null-homotopic or parallel to a
//                         puncture.
CurveKey extract_key(const Surface& S, const PLCurve& c);

// Configuration form; accepts exactly one curve. Throws
// std::invalid_argument "single-curve-expected: ..." otherwise.
CurveKey extract_key(const PLConfiguration& cfg);

// Curve around the contiguous puncture block {i, ..., j} on the axis;
// requires 1 <= i < j <= b-1 and at least two punctures outside the block.
CurveKey block_curve(int b, int i, int j);

}  // namespace curvekit
