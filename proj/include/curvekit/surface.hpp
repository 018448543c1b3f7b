#pragma once

#include <array>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "curvekit/geom.hpp"

namespace curvekit {

enum class Sheet : int { Front = 0, Back = 1 };

// A point of the two-sheet model. Points on the gluing boundary belong to
// both sheets; surface_points_equal treats them accordingly.
struct SPt {
  Sheet sheet = Sheet::Front;
  Pt p;
};

// Piecewise-linear edge of the reference triangulation, oriented tail->head.
// Segment k runs from pts[k] to pts[k+1] inside sheet seg_sheet[k]; where two
// consecutive segments lie in different sheets the shared breakpoint is on the
// gluing boundary.
struct EdgeGeom {
  std::string name;
  int tail = 0;
  int head = 0;  // puncture ids, 1-based
  std::vector<Pt> pts;
  std::vector<Sheet> seg_sheet;

  int segments() const { return static_cast<int>(seg_sheet.size()); }
};

// Triangle of the reference triangulation. The boundary walk traverses
// side[0], side[1], side[2] in order; fwd[c] tells whether edge side[c] is
// oriented along the walk. corner[c] is the puncture at the head of side c,
// which is also the tail of side c+1.
struct TriangleRef {
  std::array<int, 3> side = {0, 0, 0};
  std::array<bool, 3> fwd = {false, false, false};
  std::array<int, 3> corner = {0, 0, 0};
};

// Fixed triangulated model of the b-punctured sphere: two copies (front and
// back) of the rectangle Q = [0, 4b+4] x [-(b+2), b+2] glued by the identity
// along their boundary, with all punctures on the front sheet's horizontal
// axis. The triangulation is an ideal one: vertices are exactly the
// punctures, 3b-6 edges, 2(b-2) triangles.
//
// Edge inventory:
//   A_i   front segment from p_i to p_{i+1}, i = 1..b-1
//   wrap  p_b -> p_1, leaving Q on the right, crossing the back sheet,
//         re-entering on the left (three segments, all on the axis)
//   U_j   front arch from p_1 over p_2..p_{j-1} to p_j, j = 3..b-1
//   L_j   mirror arch below the axis
class Surface {
 public:
  explicit Surface(int b);

  int b() const { return b_; }
  const std::vector<Pt>& punctures() const { return punctures_; }
  const Pt& puncture(int id) const { return punctures_.at(static_cast<size_t>(id - 1)); }
  const std::vector<EdgeGeom>& edges() const { return edges_; }
  const EdgeGeom& edge(int e) const { return edges_.at(static_cast<size_t>(e)); }
  const std::vector<TriangleRef>& triangles() const { return triangles_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int triangle_count() const { return static_cast<int>(triangles_.size()); }

  int edge_index(const std::string& name) const;
  int a_edge(int i) const;      // i = 1..b-1
  int wrap_edge() const;
  int upper_arch(int j) const;  // j = 3..b-1
  int lower_arch(int j) const;

  Rational q_width() const;   // Q = [0, q_width] x [-q_height, q_height]
  Rational q_height() const;
  bool on_gluing_boundary(const Pt& p) const;

  // Triangles adjacent to edge e: exactly one with the edge forward and one
  // with it reversed. Returns {triangle index, side index within it}.
  std::pair<int, int> coside(int e, bool fwd) const;

  static std::shared_ptr<const Surface> get(int b);

 private:
  void build();
  void self_check() const;

  int b_;
  std::vector<Pt> punctures_;
  std::vector<EdgeGeom> edges_;
  std::vector<TriangleRef> triangles_;
  std::map<std::string, int> by_name_;
  // [edge][0]=forward occurrence, [1]=reversed; each is (triangle, side).
  std::vector<std::array<std::pair<int, int>, 2>> coside_;
};

bool surface_points_equal(const Surface& S, const SPt& a, const SPt& b);

}  // namespace curvekit
