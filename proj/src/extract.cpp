#include "curvekit/extract.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <string>

namespace curvekit {

namespace {

[[noreturn]] void degeneracy(const std::string& what) {
  throw std::runtime_error("degeneracy: " + what);
}

struct Letter {
  size_t seg;
  Rational s;  // position within the segment, 0 for a crossing at its start
  int edge;
};

}  // namespace

CurveKey extract_key(const Surface& S, const PLCurve& c) {
  const size_t n = c.v.size();
  if (n < 3 || c.sheet.size() != n) throw std::invalid_argument("malformed curve");
  // A curve vertex occupies the sheets of its two incident segments; a point
  // with the same planar coordinates on the other sheet is a different point
  // of the surface (the wrap edge's back segment passes planar-through every
  // puncture, for instance).
  auto vertex_occupies = [&](size_t i, Sheet s) {
    return c.sheet[(i + n - 1) % n] == s || c.sheet[i] == s || S.on_gluing_boundary(c.v[i]);
  };
  for (size_t i = 0; i < n; ++i) {
    if (c.v[i] == c.v[(i + 1) % n]) degeneracy("zero-length curve segment");
    for (const auto& p : S.punctures())
      if (c.v[i] == p && vertex_occupies(i, Sheet::Front))
        degeneracy("curve vertex at a puncture");
  }

  std::vector<Letter> word;

  // Crossings at curve vertices that sit on an edge.
  for (size_t i = 0; i < n; ++i) {
    const Pt& P = c.v[i];
    const Pt& prev = c.v[(i + n - 1) % n];
    const Pt& next = c.v[(i + 1) % n];
    Sheet s_in = c.sheet[(i + n - 1) % n];
    Sheet s_out = c.sheet[i];
    int hits = 0;
    for (int e = 0; e < static_cast<int>(S.edges().size()); ++e) {
      const EdgeGeom& eg = S.edge(e);
      for (int k = 0; k < eg.segments(); ++k) {
        const Pt& p = eg.pts[static_cast<size_t>(k)];
        const Pt& q = eg.pts[static_cast<size_t>(k) + 1];
        Sheet se = eg.seg_sheet[static_cast<size_t>(k)];
        if ((P == p || P == q) && vertex_occupies(i, se))
          degeneracy("curve vertex at an edge breakpoint");
        if (!point_on_open_segment(P, p, q)) continue;
        if (s_in != se && s_out != se) continue;  // same plane, different sheet
        if (s_in != s_out) degeneracy("sheet-transition vertex on an edge");
        int c0 = orient(p, q, prev);
        int c1 = orient(p, q, next);
        if (c0 == 0 || c1 == 0) degeneracy("curve segment collinear with an edge");
        if (c0 == c1) degeneracy("tangential touch at an edge");
        word.push_back(Letter{i, Rational(0), e});
        ++hits;
      }
    }
    if (hits > 1) throw std::logic_error("vertex incident to two edges away from punctures");
  }

  // Crossings interior to curve segments.
  for (size_t i = 0; i < n; ++i) {
    const Pt& a = c.v[i];
    const Pt& b = c.v[(i + 1) % n];
    Sheet sh = c.sheet[i];
    for (int e = 0; e < static_cast<int>(S.edges().size()); ++e) {
      const EdgeGeom& eg = S.edge(e);
      for (int k = 0; k < eg.segments(); ++k) {
        const Pt& p = eg.pts[static_cast<size_t>(k)];
        const Pt& q = eg.pts[static_cast<size_t>(k) + 1];
        Sheet se = eg.seg_sheet[static_cast<size_t>(k)];
        SegHit h = intersect_segments(a, b, p, q);
        if (h.rel == SegRel::Disjoint) continue;
        if (sh != se) {
          // Same plane, different sheets: the only shared surface points lie
          // on the gluing boundary, and the only edge points there are wrap
          // breakpoints. Any such contact is non-transverse.
          if (h.rel == SegRel::ProperCross) {
            if (S.on_gluing_boundary(h.point)) degeneracy("crossing at the gluing boundary");
            continue;
          }
          bool touch = (point_on_closed_segment(a, p, q) && S.on_gluing_boundary(a)) ||
                       (point_on_closed_segment(b, p, q) && S.on_gluing_boundary(b)) ||
                       (point_on_closed_segment(p, a, b) && S.on_gluing_boundary(p)) ||
                       (point_on_closed_segment(q, a, b) && S.on_gluing_boundary(q));
          if (touch) degeneracy("contact with an edge at the gluing boundary");
          continue;
        }
        if (h.rel == SegRel::ProperCross) {
          word.push_back(Letter{i, h.s, e});
          continue;
        }
        // Degenerate same-sheet contact.
        if (orient(a, b, p) == 0 && orient(a, b, q) == 0)
          degeneracy("curve segment running along an edge");
        if (point_on_open_segment(p, a, b) || point_on_open_segment(q, a, b))
          degeneracy("edge breakpoint interior to a curve segment");
        // Remaining case: a curve endpoint touches the edge segment. Either
        // it crosses there (recorded by the vertex pass) or it merely grazes
        // (rejected there); nothing to record here.
      }
    }
  }

  std::sort(word.begin(), word.end(), [](const Letter& x, const Letter& y) {
    if (x.seg != y.seg) return x.seg < y.seg;
    return x.s < y.s;
  });

  // Cyclic reduction: adjacent equal letters are a back-and-forth across one
  // edge inside a single triangle and cancel.
  std::deque<int> red;
  for (const auto& L : word) {
    if (!red.empty() && red.back() == L.edge)
      red.pop_back();
    else
      red.push_back(L.edge);
  }
  while (red.size() >= 2 && red.front() == red.back()) {
    red.pop_front();
    red.pop_back();
  }

  if (red.empty()) throw std::runtime_error("inessential-curve: no essential edge crossings");

  std::vector<std::int64_t> w(S.edges().size(), 0);
  for (int e : red) ++w[static_cast<size_t>(e)];

  int puncture = 0;
  if (is_vertex_link(S, w, &puncture))
    throw std::runtime_error("inessential-curve: parallel to puncture " + std::to_string(puncture));

  std::string why;
  if (!admissible(S, w, &why)) throw std::logic_error("reduced word not admissible: " + why);
  if (trace_components(S, w).size() != 1)
    throw std::logic_error("reduced word traces to a multicurve");

  return CurveKey{S.b(), std::move(w)};
}

CurveKey extract_key(const PLConfiguration& cfg) {
  if (cfg.curves.size() != 1)
    throw std::invalid_argument("single-curve-expected: configuration has " +
                                std::to_string(cfg.curves.size()) + " curves");
  auto Sp = Surface::get(cfg.b);
  return extract_key(*Sp, cfg.curves.front());
}

CurveKey block_curve(int b, int i, int j) {
  if (b < 4) throw std::invalid_argument("block curve needs b >= 4");
  if (!(1 <= i && i < j && j <= b - 1) || (j - i + 1) > b - 2)
    throw std::invalid_argument("block out of range");
  auto Sp = Surface::get(b);
  Rational x1(4 * i - 2), x2(4 * j + 2);
  Rational h(1, 2);
  PLCurve r;
  r.v = {Pt{x1, -h}, Pt{x2, -h}, Pt{x2, h}, Pt{x1, h}};
  r.sheet = {Sheet::Front, Sheet::Front, Sheet::Front, Sheet::Front};
  return extract_key(*Sp, r);
}

}  // namespace curvekit
