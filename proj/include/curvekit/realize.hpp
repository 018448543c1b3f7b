#pragma once

#include <cstdint>
#include <vector>

#include "curvekit/curve_key.hpp"
#include "curvekit/normal.hpp"
#include "curvekit/surface.hpp"

namespace curvekit {

// Closed polygonal curve on the two-sheet surface. Segment i runs from v[i]
// to v[(i+1) % n] inside sheet[i]; vertices on the gluing boundary belong to
// both sheets.
struct PLCurve {
  std::vector<Pt> v;
  std::vector<Sheet> sheet;
  int size() const { return static_cast<int>(v.size()); }
};

struct PLConfiguration {
  int b = 0;
  std::vector<PLCurve> curves;
};

// Subdivision used to spread w crossing points along an edge: the smallest
// odd N >= 2w+1 that is not a multiple of 3. Point k sits at parameter
// (2k+1)/N of the edge polyline, which never hits a breakpoint (edges have
// at most 3 segments).
std::int64_t edge_subdivision(std::int64_t w);

SPt edge_param_point(const Surface& S, int e, const Rational& t);
SPt edge_point(const Surface& S, int e, std::int64_t k, std::int64_t w);

// Canonical embedded representative of a key: each normal arc follows its
// triangle's boundary through the corner, pushed inward by a depth
// proportional to its arc index. The scaled variant shrinks all depths by
// depth_scale in (0, 1]; any scale yields an embedded representative, which
// gives a one-parameter family for nudging curves off degenerate positions.
PLCurve realize_curve(const CurveKey& k);
PLCurve realize_curve_at(const CurveKey& k, const Rational& depth_scale);

// Joint realization of several keys as one configuration of pairwise
// disjoint curves (depths come from the summed coordinates, so components
// never touch). Throws std::invalid_argument when the keys cross each other
// or live on different surfaces; repeated keys give parallel copies.
PLConfiguration realize_config(const std::vector<CurveKey>& keys);

// Depth scale used by the router; arcs in a corner with n arcs sit at depths
// (a+1)/(n+2) * realize_depth_limit(b).
Rational realize_depth_limit(int b);

// Exact simplicity / disjointness checks on the two-sheet surface. Segments
// on different sheets meet only where both touch the gluing boundary.
bool curve_is_embedded(const Surface& S, const PLCurve& c);
bool curves_disjoint(const Surface& S, const PLCurve& a, const PLCurve& b);

// Number of transverse crossing points between two closed curves. Throws
// std::runtime_error "degeneracy: ..." when any contact is not a proper
// interior crossing (touching, overlapping, meeting at a vertex or on the
// gluing boundary); re-realize at a different depth scale in that case.
std::int64_t crossing_count(const Surface& S, const PLCurve& a, const PLCurve& b);

// Isotope a transverse configuration of individually embedded essential
// curves into minimal position. Repeatedly finds a face bounded by exactly
// two arcs that contains no puncture and no other strand, and pushes the
// higher-indexed curve across it; curves are scanned in index order and
// arcs in traversal order, first empty face wins. Each step removes two
// crossing points, so the loop terminates; the fixed point has no empty
// two-sided face, hence pairwise crossing counts equal the geometric
// intersection numbers of the underlying keys (re-checked internally
// against the combinatorial reduction when the curves extract cleanly).
//
// Errors: std::invalid_argument for an empty configuration or a curve that
// crosses itself (only embedded curves are supported); std::runtime_error
// "degeneracy: ..." for non-transverse input, including curves that meet on
// the gluing boundary or pass through a puncture.
PLConfiguration tauten(const PLConfiguration& cfg);

}  // namespace curvekit
