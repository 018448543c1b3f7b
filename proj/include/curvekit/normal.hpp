#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "curvekit/curve_key.hpp"
#include "curvekit/surface.hpp"

namespace curvekit {

// Normal multicurve coordinates: per-triangle even side sums and triangle
// inequalities. Writes a reason into *why on failure when provided.
bool admissible(const Surface& S, const std::vector<std::int64_t>& w, std::string* why = nullptr);

// Number of normal arcs cutting off each corner: n_c = (w_c + w_{c+1} - w_{c+2}) / 2
// where w_c is the weight of side c of the triangle.
std::array<std::int64_t, 3> corner_counts(const Surface& S, const TriangleRef& t,
                                          const std::vector<std::int64_t>& w);

// Weights of the small loop around one puncture: 1 on each incident edge.
std::vector<std::int64_t> vertex_link_weights(const Surface& S, int puncture);

// One normal arc: enters a triangle through one side, turns around a corner,
// leaves through the adjacent side. Edge points are indexed from the edge's
// tail; arc index 0 is the innermost arc at its corner.
struct Transit {
  int tri = 0;
  int corner = 0;
  std::int64_t arc = 0;
  int edge_in = 0;
  std::int64_t k_in = 0;
  int edge_out = 0;
  std::int64_t k_out = 0;
};

struct TracedComponent {
  std::vector<std::int64_t> weights;
  std::vector<Transit> transits;  // cyclic order along the component
};

// Decompose an admissible weight vector into connected normal components.
std::vector<TracedComponent> trace_components(const Surface& S,
                                              const std::vector<std::int64_t>& w);

bool is_vertex_link(const Surface& S, const std::vector<std::int64_t>& w, int* puncture = nullptr);

// Throws std::invalid_argument("malformed-key: ...") unless the key is an
// admissible, connected, essential (non-peripheral) normal curve.
void validate_key(const CurveKey& k);

}  // namespace curvekit
