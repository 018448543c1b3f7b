#include "curvekit/realize.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <cstdio>
#include <cstdlib>

#include "curvekit/extract.hpp"
#include "curvekit/pairpos.hpp"

namespace curvekit {

std::int64_t edge_subdivision(std::int64_t w) {
  std::int64_t n = 2 * w + 1;
  if (n % 3 == 0) n += 2;
  return n;
}

SPt edge_param_point(const Surface& S, int e, const Rational& t) {
  const EdgeGeom& eg = S.edge(e);
  const int m = eg.segments();
  if (t < 0 || t > 1) throw std::invalid_argument("edge parameter out of range");
  Rational tm = t * m;
  BigInt fl = numerator(tm) / denominator(tm);
  int i = fl.convert_to<int>();
  if (i >= m) i = m - 1;  // t == 1 uses the last segment with s == 1
  Rational s = tm - Rational(i);
  const Pt& a = eg.pts[static_cast<size_t>(i)];
  const Pt& b = eg.pts[static_cast<size_t>(i) + 1];
  return SPt{eg.seg_sheet[static_cast<size_t>(i)],
             Pt{a.x + s * (b.x - a.x), a.y + s * (b.y - a.y)}};
}

SPt edge_point(const Surface& S, int e, std::int64_t k, std::int64_t w) {
  if (k < 0 || k >= w) throw std::invalid_argument("edge point index out of range");
  return edge_param_point(S, e, Rational(2 * k + 1) / Rational(edge_subdivision(w)));
}

Rational realize_depth_limit(int b) { return Rational(1) / Rational(8 * b); }

namespace {

Rational cheb(const Pt& d) {
  Rational ax = d.x < 0 ? -d.x : d.x;
  Rational ay = d.y < 0 ? -d.y : d.y;
  return ax > ay ? ax : ay;
}

Rational cross2(const Pt& a, const Pt& b) { return a.x * b.y - a.y * b.x; }
Rational dot2(const Pt& a, const Pt& b) { return a.x * b.x + a.y * b.y; }

// Interior of a triangle lies left of its boundary walk on the front sheet
// and right of it on the back sheet (the back copy carries the opposite
// planar orientation).
int interior_sign(Sheet s) { return s == Sheet::Front ? 1 : -1; }

Pt interior_normal(Sheet s, const Pt& d) {
  return s == Sheet::Front ? Pt{-d.y, d.x} : Pt{d.y, -d.x};
}

struct GluingLine {
  bool vertical;
  Rational c;
};

GluingLine gluing_line_through(const Surface& S, const Pt& q) {
  int hits = 0;
  GluingLine out{true, Rational(0)};
  auto take = [&](bool vert, const Rational& c) {
    ++hits;
    out = GluingLine{vert, c};
  };
  if (q.x == 0) take(true, Rational(0));
  if (q.x == S.q_width()) take(true, S.q_width());
  if (q.y == S.q_height()) take(false, S.q_height());
  if (q.y == -S.q_height()) take(false, -S.q_height());
  if (hits != 1) throw std::logic_error("gluing line lookup off the boundary or at a rectangle corner");
  return out;
}

Pt reflect_across(const GluingLine& l, const Pt& p) {
  return l.vertical ? Pt{2 * l.c - p.x, p.y} : Pt{p.x, 2 * l.c - p.y};
}

Pt reflect_dir(const GluingLine& l, const Pt& d) {
  return l.vertical ? Pt{-d.x, d.y} : Pt{d.x, -d.y};
}

// Corner of the level-t inward offset of the base path at vertex q, where the
// previous base vertex is A (segment sheet su) and the next is B (sheet sv).
// side = -1 offsets to the opposite side of the path.
Pt miter_point(const Surface& S, const Pt& q, const Pt& A, Sheet su, const Pt& B, Sheet sv,
               const Rational& t, int side = 1) {
  Pt u{q.x - A.x, q.y - A.y};
  Pt v{B.x - q.x, B.y - q.y};
  int sigma = side * interior_sign(sv);
  if (su != sv) {
    // Splice across the gluing boundary: unfold the incoming segment into the
    // outgoing sheet's plane (reflection flips its interior side to match).
    GluingLine l = gluing_line_through(S, q);
    u = reflect_dir(l, u);
  }
  Rational K1 = Rational(sigma) * t * dot2(u, u) / cheb(u);
  Rational K2 = Rational(sigma) * t * dot2(v, v) / cheb(v);
  Rational det = cross2(u, v);
  if (det == 0) {
    if (dot2(u, v) <= 0) throw std::logic_error("u-turn in arc base path");
    Pt n = interior_normal(sv, v);
    Rational s = Rational(side) * t / cheb(v);
    return Pt{q.x + s * n.x, q.y + s * n.y};
  }
  // Solve cross(u, X) = K1, cross(v, X) = K2 for X = m - q.
  Rational Xx = (K1 * v.x - K2 * u.x) / det;
  Rational Xy = (K1 * v.y - K2 * u.y) / det;
  Pt m{q.x + Xx, q.y + Xy};
  if (su != sv) {
    GluingLine l = gluing_line_through(S, q);
    bool on_line = l.vertical ? (m.x == l.c) : (m.y == l.c);
    if (!on_line) throw std::logic_error("off-line miter at a gluing splice");
  }
  return m;
}

struct BasePath {
  std::vector<Pt> v;
  std::vector<Sheet> sheets;  // per span, sheets.size() == v.size() - 1
};

// Checkpoints along side s of triangle tri from edge parameter tau to the
// walk head (the side's corner), or from the walk tail to tau.
void append_side_portion(const Surface& S, const TriangleRef& tri, int s, const Rational& tau,
                         bool from_tau_to_head, BasePath& out) {
  int e = tri.side[static_cast<size_t>(s)];
  bool fwd = tri.fwd[static_cast<size_t>(s)];
  const EdgeGeom& eg = S.edge(e);
  const int m = eg.segments();

  // Edge-parameter checkpoints in traversal order.
  std::vector<Rational> params;
  auto emit_span_to = [&](const Rational& a, const Rational& b) {
    // span from parameter a to b (a != b); record endpoint b and span sheet
    Rational mid = (a + b) / 2;
    Rational im = mid * m;
    BigInt fl = numerator(im) / denominator(im);
    int idx = fl.convert_to<int>();
    if (idx >= m) idx = m - 1;
    SPt p = edge_param_point(S, e, b);
    out.v.push_back(p.p);
    out.sheets.push_back(eg.seg_sheet[static_cast<size_t>(idx)]);
  };

  // The walk head sits at edge parameter 1 iff the side uses the edge forward.
  const bool ascending = fwd;
  Rational start, stop;
  if (from_tau_to_head) {
    start = tau;
    stop = fwd ? Rational(1) : Rational(0);
  } else {
    start = fwd ? Rational(0) : Rational(1);
    stop = tau;
  }
  params.push_back(start);
  std::vector<Rational> brk;
  for (int i = 1; i < m; ++i) {
    Rational p = Rational(i) / m;
    if (ascending ? (p > start && p < stop) : (p < start && p > stop)) brk.push_back(p);
  }
  std::sort(brk.begin(), brk.end());
  if (!ascending) std::reverse(brk.begin(), brk.end());
  for (const auto& p : brk) params.push_back(p);
  params.push_back(stop);

  if (out.v.empty()) {
    out.v.push_back(edge_param_point(S, e, params.front()).p);
  }
  for (size_t i = 0; i + 1 < params.size(); ++i) emit_span_to(params[i], params[i + 1]);
}

struct ArcGeom {
  std::vector<Pt> v;
  std::vector<Sheet> sheets;
};

ArcGeom build_arc(const Surface& S, const std::vector<std::int64_t>& w, const Transit& tr,
                  const Rational& depth_limit) {
  const TriangleRef& tri = S.triangles()[static_cast<size_t>(tr.tri)];
  auto n = corner_counts(S, tri, w);
  int c = tr.corner;
  int c1 = (c + 1) % 3;
  int ec = tri.side[static_cast<size_t>(c)];
  int ec1 = tri.side[static_cast<size_t>(c1)];

  // Canonical orientation: from the point on side c to the point on side c+1.
  std::int64_t wc = w[static_cast<size_t>(ec)];
  std::int64_t wc1 = w[static_cast<size_t>(ec1)];
  std::int64_t dc = wc - 1 - tr.arc;  // local index on side c
  std::int64_t kc = tri.fwd[static_cast<size_t>(c)] ? dc : wc - 1 - dc;
  std::int64_t kc1 = tri.fwd[static_cast<size_t>(c1)] ? tr.arc : wc1 - 1 - tr.arc;

  bool entry_on_c;
  if (tr.edge_in == ec && tr.k_in == kc && tr.edge_out == ec1 && tr.k_out == kc1) {
    entry_on_c = true;
  } else if (tr.edge_in == ec1 && tr.k_in == kc1 && tr.edge_out == ec && tr.k_out == kc) {
    entry_on_c = false;
  } else {
    throw std::logic_error("transit endpoints disagree with corner data");
  }

  Rational tau_c = Rational(2 * kc + 1) / Rational(edge_subdivision(wc));
  Rational tau_c1 = Rational(2 * kc1 + 1) / Rational(edge_subdivision(wc1));

  BasePath base;
  append_side_portion(S, tri, c, tau_c, true, base);
  append_side_portion(S, tri, c1, tau_c1, false, base);

  // The two portions share the corner vertex; append_side_portion pushed it
  // twice (end of first portion, start of second is implicit as the first
  // emitted span start). Verify the weld.
  // (The second call began emitting spans from the walk tail, whose point
  // equals the corner; it did not push a duplicate vertex because out.v was
  // non-empty. Nothing to fix, just sanity-check continuity.)
  for (size_t i = 0; i + 1 < base.v.size(); ++i)
    if (base.v[i] == base.v[i + 1]) throw std::logic_error("degenerate base span");

  Rational t = Rational(tr.arc + 1) / Rational(n[static_cast<size_t>(c)] + 2) * depth_limit;

  ArcGeom arc;
  arc.v.push_back(base.v.front());
  for (size_t i = 1; i + 1 < base.v.size(); ++i) {
    arc.v.push_back(miter_point(S, base.v[i], base.v[i - 1], base.sheets[i - 1], base.v[i + 1],
                                base.sheets[i], t));
  }
  arc.v.push_back(base.v.back());
  arc.sheets = base.sheets;

  if (!entry_on_c) {
    std::reverse(arc.v.begin(), arc.v.end());
    std::reverse(arc.sheets.begin(), arc.sheets.end());
  }
  return arc;
}

}  // namespace

namespace {

// Routes one traced component of the (possibly multi-component) coordinate
// vector w; arc depths are taken from w, so components of the same vector
// stay disjoint.
PLCurve realize_component(const Surface& S, const std::vector<std::int64_t>& w,
                          const TracedComponent& comp, const Rational& depth) {
  PLCurve out;
  for (size_t i = 0; i < comp.transits.size(); ++i) {
    const Transit& tr = comp.transits[i];
    ArcGeom arc = build_arc(S, w, tr, depth);
    size_t first = 0;
    if (!out.v.empty()) {
      if (arc.v.front() != out.v.back()) throw std::logic_error("arc chain discontinuity");
      first = 1;  // shared edge point already present
    }
    for (size_t j = first; j < arc.v.size(); ++j) out.v.push_back(arc.v[j]);
    for (size_t j = 0; j < arc.sheets.size(); ++j) out.sheet.push_back(arc.sheets[j]);
  }
  // Close up: last vertex equals the first.
  if (out.v.empty() || out.v.front() != out.v.back())
    throw std::logic_error("realized curve failed to close");
  out.v.pop_back();
  if (out.v.size() != out.sheet.size()) throw std::logic_error("sheet bookkeeping mismatch");
  return out;
}

}  // namespace

PLCurve realize_curve(const CurveKey& key) { return realize_curve_at(key, 1); }

PLCurve realize_curve_at(const CurveKey& key, const Rational& depth_scale) {
  validate_key(key);
  if (depth_scale <= 0 || depth_scale > 1)
    throw std::invalid_argument("depth_scale must lie in (0, 1]");
  auto Sp = Surface::get(key.b);
  const Surface& S = *Sp;
  auto comps = trace_components(S, key.w);
  return realize_component(S, key.w, comps.front(), depth_scale * realize_depth_limit(key.b));
}

PLConfiguration realize_config(const std::vector<CurveKey>& keys) {
  if (keys.empty()) throw std::invalid_argument("empty configuration");
  const int b = keys.front().b;
  for (const auto& k : keys) {
    validate_key(k);
    if (k.b != b) throw std::invalid_argument("keys live on different surfaces");
  }
  auto Sp = Surface::get(b);
  const Surface& S = *Sp;

  std::vector<std::int64_t> total(S.edges().size(), 0);
  for (const auto& k : keys)
    for (size_t e = 0; e < total.size(); ++e) total[e] += k.w[e];

  auto comps = trace_components(S, total);
  if (comps.size() != keys.size())
    throw std::invalid_argument("curves must be pairwise disjoint");
  // The joint trace of disjoint curves reproduces the input keys; crossing
  // inputs re-trace to a different component multiset.
  std::vector<bool> used(keys.size(), false);
  std::vector<size_t> order;  // comp index -> input index
  for (const auto& comp : comps) {
    bool matched = false;
    for (size_t i = 0; i < keys.size() && !matched; ++i) {
      if (!used[i] && keys[i].w == comp.weights) {
        used[i] = true;
        order.push_back(i);
        matched = true;
      }
    }
    if (!matched) throw std::invalid_argument("curves must be pairwise disjoint");
  }

  PLConfiguration out;
  out.b = b;
  out.curves.resize(keys.size());
  const Rational depth = realize_depth_limit(b);
  for (size_t ci = 0; ci < comps.size(); ++ci)
    out.curves[order[ci]] = realize_component(S, total, comps[ci], depth);
  return out;
}

namespace {

struct PlanarContact {
  bool overlap = false;  // 1D overlap; u,w are its endpoints (u != w)
  Pt u{}, w{};
  std::vector<Pt> pts;  // isolated contact points otherwise
};

PlanarContact planar_contacts(const Pt& a, const Pt& b, const Pt& p, const Pt& q) {
  PlanarContact out;
  SegHit h = intersect_segments(a, b, p, q);
  if (h.rel == SegRel::Disjoint) return out;
  if (h.rel == SegRel::ProperCross) {
    out.pts.push_back(h.point);
    return out;
  }
  if (orient(a, b, p) == 0 && orient(a, b, q) == 0 && a != b) {
    // Collinear: project onto the dominant axis of (a,b).
    Pt d = b - a;
    Rational adx = d.x < 0 ? -d.x : d.x;
    Rational ady = d.y < 0 ? -d.y : d.y;
    bool use_x = adx >= ady;
    auto coord = [&](const Pt& x) { return use_x ? x.x : x.y; };
    Rational lo1 = coord(a), hi1 = coord(b);
    if (lo1 > hi1) std::swap(lo1, hi1);
    Rational lo2 = coord(p), hi2 = coord(q);
    if (lo2 > hi2) std::swap(lo2, hi2);
    Rational lo = lo1 > lo2 ? lo1 : lo2;
    Rational hi = hi1 < hi2 ? hi1 : hi2;
    auto point_at = [&](const Rational& c) {
      // point on segment (a,b) with dominant coordinate c
      Rational den = coord(b) - coord(a);
      Rational s = (c - coord(a)) / den;
      return Pt{a.x + s * d.x, a.y + s * d.y};
    };
    if (lo < hi) {
      out.overlap = true;
      out.u = point_at(lo);
      out.w = point_at(hi);
    } else if (lo == hi) {
      out.pts.push_back(point_at(lo));
    }
    return out;
  }
  // Endpoint touching a closed segment (not collinear overlap).
  auto add = [&](const Pt& x) {
    for (const auto& y : out.pts)
      if (y == x) return;
    out.pts.push_back(x);
  };
  if (point_on_closed_segment(a, p, q)) add(a);
  if (point_on_closed_segment(b, p, q)) add(b);
  if (point_on_closed_segment(p, a, b)) add(p);
  if (point_on_closed_segment(q, a, b)) add(q);
  return out;
}

// Intersection of the closed sub-segment [u,w] with a gluing line.
void boundary_points_of_span(const Surface& S, const Pt& u, const Pt& w, std::vector<Pt>& out) {
  struct Line {
    bool vertical;
    Rational c;
  };
  const Line lines[4] = {{true, Rational(0)},
                         {true, S.q_width()},
                         {false, S.q_height()},
                         {false, -S.q_height()}};
  for (const auto& l : lines) {
    Rational fu = l.vertical ? u.x - l.c : u.y - l.c;
    Rational fw = l.vertical ? w.x - l.c : w.y - l.c;
    if (fu == 0 && fw == 0) {
      // whole span lies on the line; report endpoints as witnesses
      out.push_back(u);
      out.push_back(w);
      continue;
    }
    if (fu == 0) out.push_back(u);
    if (fw == 0) out.push_back(w);
    if ((fu < 0 && fw > 0) || (fu > 0 && fw < 0)) {
      Rational s = fu / (fu - fw);
      out.push_back(Pt{u.x + s * (w.x - u.x), u.y + s * (w.y - u.y)});
    }
  }
}

// Points where two segments meet as subsets of the surface. `full_overlap`
// reports a shared 1D portion (always a genuine intersection).
struct SurfaceContact {
  bool full_overlap = false;
  std::vector<Pt> pts;
};

SurfaceContact surface_contacts(const Surface& S, const Pt& a, const Pt& b, Sheet sa, const Pt& p,
                                const Pt& q, Sheet sb) {
  SurfaceContact out;
  PlanarContact pc = planar_contacts(a, b, p, q);
  if (sa == sb) {
    if (pc.overlap) {
      out.full_overlap = true;
      return out;
    }
    out.pts = pc.pts;
    return out;
  }
  // Different sheets: only points on the gluing boundary are shared.
  if (pc.overlap) {
    std::vector<Pt> cand;
    boundary_points_of_span(S, pc.u, pc.w, cand);
    bool whole_on_line = cand.size() >= 2 && S.on_gluing_boundary(pc.u) &&
                         S.on_gluing_boundary(pc.w) &&
                         ((pc.u.x == pc.w.x && (pc.u.x == 0 || pc.u.x == S.q_width())) ||
                          (pc.u.y == pc.w.y && (pc.u.y == S.q_height() || pc.u.y == -S.q_height())));
    if (whole_on_line) {
      out.full_overlap = true;
      return out;
    }
    for (const auto& x : cand) {
      bool dup = false;
      for (const auto& y : out.pts) dup = dup || y == x;
      if (!dup) out.pts.push_back(x);
    }
    return out;
  }
  for (const auto& x : pc.pts)
    if (S.on_gluing_boundary(x)) out.pts.push_back(x);
  return out;
}

}  // namespace

bool curve_is_embedded(const Surface& S, const PLCurve& c) {
  const size_t n = c.v.size();
  if (n < 2 || c.sheet.size() != n) return false;
  for (size_t i = 0; i < n; ++i)
    if (c.v[i] == c.v[(i + 1) % n]) return false;  // zero-length segment
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      const Pt &a = c.v[i], &b = c.v[(i + 1) % n];
      const Pt &p = c.v[j], &q = c.v[(j + 1) % n];
      SurfaceContact sc = surface_contacts(S, a, b, c.sheet[i], p, q, c.sheet[j]);
      if (sc.full_overlap) return false;
      const Pt* shared = nullptr;
      if (j == i + 1) shared = &c.v[j];
      if (i == 0 && j == n - 1) shared = &c.v[0];
      for (const auto& x : sc.pts) {
        if (shared == nullptr || x != *shared) return false;
      }
      if (shared != nullptr && sc.pts.size() > 1) return false;
    }
  }
  return true;
}

bool curves_disjoint(const Surface& S, const PLCurve& a, const PLCurve& b) {
  const size_t n = a.v.size(), m = b.v.size();
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < m; ++j) {
      SurfaceContact sc = surface_contacts(S, a.v[i], a.v[(i + 1) % n], a.sheet[i], b.v[j],
                                           b.v[(j + 1) % m], b.sheet[j]);
      if (sc.full_overlap || !sc.pts.empty()) return false;
    }
  }
  return true;
}

// --- tautening --------------------------------------------------------------

namespace {

struct Crossing {
  int c[2];        // curve indices, c[0] < c[1]
  int seg[2];      // segment index on each curve
  Rational t[2];   // parameter along the segment, strictly inside (0, 1)
  Pt p;
  Sheet sheet;
};

[[noreturn]] void degeneracy(const std::string& what) {
  throw std::runtime_error("degeneracy: " + what);
}

void validate_curve(const Surface& S, const PLCurve& c) {
  const size_t n = c.v.size();
  if (n < 2 || c.sheet.size() != n) degeneracy("malformed curve");
  for (size_t i = 0; i < n; ++i) {
    const Pt &a = c.v[i], &b = c.v[(i + 1) % n];
    if (a == b) degeneracy("zero-length segment");
    // A span along a gluing line would be shared between the sheets.
    if ((a.x == b.x && (a.x == 0 || a.x == S.q_width())) ||
        (a.y == b.y && (a.y == S.q_height() || a.y == -S.q_height())))
      degeneracy("segment along the gluing boundary");
    if (c.sheet[i] == Sheet::Front)
      for (const Pt& q : S.punctures())
        if (point_on_closed_segment(q, a, b)) degeneracy("curve through a puncture");
  }
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      const Pt &a = c.v[i], &b = c.v[(i + 1) % n];
      const Pt &p = c.v[j], &q = c.v[(j + 1) % n];
      SurfaceContact sc = surface_contacts(S, a, b, c.sheet[i], p, q, c.sheet[j]);
      if (sc.full_overlap) degeneracy("overlapping segments");
      const Pt* shared = nullptr;
      if (j == i + 1) shared = &c.v[j];
      if (i == 0 && j == n - 1) shared = &c.v[0];
      for (const Pt& x : sc.pts) {
        if (shared != nullptr && x == *shared) continue;
        if (c.sheet[i] == c.sheet[j] && !S.on_gluing_boundary(x)) {
          SegHit h = intersect_segments(a, b, p, q);
          if (h.rel == SegRel::ProperCross) {
            if (std::getenv("TAUTEN_DEBUG"))
              std::fprintf(stderr, "self-cross segs %zu %zu of %zu at (%s,%s)\n", i, j, n,
                           x.x.str().c_str(), x.y.str().c_str());
            throw std::invalid_argument(
                "tauten: a curve crosses itself; embedded curves required");
          }
        }
        degeneracy("curve touches itself");
      }
      if (shared != nullptr && sc.pts.size() > 1) degeneracy("curve touches itself");
    }
  }
}

void scan_pair(const Surface& S, const PLCurve& A, int ia, const PLCurve& B, int ib,
               std::vector<Crossing>& out) {
  const size_t n = A.v.size(), m = B.v.size();
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < m; ++j) {
      const Pt &a = A.v[i], &b = A.v[(i + 1) % n];
      const Pt &p = B.v[j], &q = B.v[(j + 1) % m];
      SurfaceContact sc = surface_contacts(S, a, b, A.sheet[i], p, q, B.sheet[j]);
      if (sc.full_overlap) degeneracy("overlapping segments");
      if (sc.pts.empty()) continue;
      if (A.sheet[i] != B.sheet[j]) degeneracy("curves meet on the gluing boundary");
      SegHit h = intersect_segments(a, b, p, q);
      if (h.rel != SegRel::ProperCross || sc.pts.size() != 1)
        degeneracy("curves touch without crossing");
      if (S.on_gluing_boundary(h.point)) degeneracy("curves meet on the gluing boundary");
      Crossing cr;
      cr.c[0] = ia;
      cr.c[1] = ib;
      cr.seg[0] = static_cast<int>(i);
      cr.seg[1] = static_cast<int>(j);
      cr.t[0] = h.s;
      cr.t[1] = h.t;
      cr.p = h.point;
      cr.sheet = A.sheet[i];
      out.push_back(cr);
    }
  }
}

struct Incidence {
  int cross;  // crossing id
  int side;   // which slot of Crossing::c refers to this curve
};

struct Arrangement {
  std::vector<Crossing> crossings;
  std::vector<std::vector<Incidence>> along;  // per curve, sorted along the walk
};

Arrangement scan_configuration(const Surface& S, const PLConfiguration& cfg) {
  for (const PLCurve& c : cfg.curves) validate_curve(S, c);
  Arrangement arr;
  const int nc = static_cast<int>(cfg.curves.size());
  for (int i = 0; i < nc; ++i)
    for (int j = i + 1; j < nc; ++j)
      scan_pair(S, cfg.curves[static_cast<size_t>(i)], i, cfg.curves[static_cast<size_t>(j)], j,
                arr.crossings);
  std::sort(arr.crossings.begin(), arr.crossings.end(), [](const Crossing& a, const Crossing& b) {
    if (a.c[0] != b.c[0]) return a.c[0] < b.c[0];
    if (a.c[1] != b.c[1]) return a.c[1] < b.c[1];
    if (a.seg[0] != b.seg[0]) return a.seg[0] < b.seg[0];
    if (a.t[0] != b.t[0]) return a.t[0] < b.t[0];
    if (a.seg[1] != b.seg[1]) return a.seg[1] < b.seg[1];
    return a.t[1] < b.t[1];
  });
  arr.along.resize(static_cast<size_t>(nc));
  for (size_t k = 0; k < arr.crossings.size(); ++k)
    for (int s = 0; s < 2; ++s)
      arr.along[static_cast<size_t>(arr.crossings[k].c[s])].push_back({static_cast<int>(k), s});
  for (auto& lst : arr.along) {
    std::sort(lst.begin(), lst.end(), [&](const Incidence& a, const Incidence& b) {
      const Crossing &ca = arr.crossings[static_cast<size_t>(a.cross)],
                     &cb = arr.crossings[static_cast<size_t>(b.cross)];
      if (ca.seg[a.side] != cb.seg[b.side]) return ca.seg[a.side] < cb.seg[b.side];
      return ca.t[a.side] < cb.t[b.side];
    });
    for (size_t r = 0; r + 1 < lst.size(); ++r) {
      const Crossing &ca = arr.crossings[static_cast<size_t>(lst[r].cross)],
                     &cb = arr.crossings[static_cast<size_t>(lst[r + 1].cross)];
      if (ca.seg[lst[r].side] == cb.seg[lst[r + 1].side] &&
          ca.t[lst[r].side] == cb.t[lst[r + 1].side])
        degeneracy("curves meet at a triple point");
    }
  }
  return arr;
}

// Open polyline on the surface; sh[i] is the sheet of the span v[i] -> v[i+1].
struct PathPL {
  std::vector<Pt> v;
  std::vector<Sheet> sh;
};

// Piece of c from (seg_a, ta) forward along the walk to (seg_b, tb).
PathPL arc_forward(const PLCurve& c, int seg_a, const Rational& ta, const Pt& pa, int seg_b,
                   const Rational& tb, const Pt& pb) {
  PathPL out;
  out.v.push_back(pa);
  const int n = c.size();
  if (seg_a == seg_b && ta < tb) {
    out.sh.push_back(c.sheet[static_cast<size_t>(seg_a)]);
    out.v.push_back(pb);
    return out;
  }
  int s = seg_a;
  while (true) {
    out.sh.push_back(c.sheet[static_cast<size_t>(s)]);
    s = (s + 1) % n;
    out.v.push_back(c.v[static_cast<size_t>(s)]);
    if (s == seg_b) break;
  }
  out.sh.push_back(c.sheet[static_cast<size_t>(seg_b)]);
  out.v.push_back(pb);
  return out;
}

// Count proper crossings of the straight span (p,q) on sheet sh with g.
// nullopt when the span is not in general position with respect to g.
std::optional<int> span_crossings(const Surface& S, const Pt& p, const Pt& q, Sheet sh,
                                  const PathPL& g) {
  int cnt = 0;
  for (size_t i = 0; i + 1 < g.v.size(); ++i) {
    SurfaceContact sc = surface_contacts(S, p, q, sh, g.v[i], g.v[i + 1], g.sh[i]);
    if (sc.full_overlap) return std::nullopt;
    if (sc.pts.empty()) continue;
    if (sh != g.sh[i]) return std::nullopt;
    SegHit h = intersect_segments(p, q, g.v[i], g.v[i + 1]);
    if (h.rel != SegRel::ProperCross || sc.pts.size() != 1) return std::nullopt;
    ++cnt;
  }
  return cnt;
}

// Crossing parity of some path from q to ref; the surface is a sphere, so
// the parity is independent of the chosen path. attempt selects a route.
std::optional<int> parity_attempt(const Surface& S, const SPt& q, const SPt& ref, const PathPL& g,
                                  int attempt) {
  if (attempt == 0 && q.sheet == ref.sheet) {
    if (q.p == ref.p) return 0;
    auto c = span_crossings(S, q.p, ref.p, q.sheet, g);
    if (!c) return std::nullopt;
    return *c % 2;
  }
  // Route through a waypoint on a gluing line; works across sheets too.
  const int k = attempt;
  Rational yw = (q.p.y * Rational(2 * k + 1) + ref.p.y * Rational(2 * k + 3)) /
                Rational(4 * k + 4);
  Pt w = (k % 2 == 0) ? Pt{Rational(0), yw} : Pt{S.q_width(), yw};
  if (w == q.p || w == ref.p) return std::nullopt;
  auto c1 = span_crossings(S, q.p, w, q.sheet, g);
  auto c2 = span_crossings(S, w, ref.p, ref.sheet, g);
  if (!c1 || !c2) return std::nullopt;
  return (*c1 + *c2) % 2;
}

bool same_side(const Surface& S, const SPt& q, const SPt& ref, const PathPL& g) {
  for (int attempt = 0; attempt < 40; ++attempt) {
    auto par = parity_attempt(S, q, ref, g, attempt);
    if (par) return *par == 0;
  }
  throw std::logic_error("tauten: no probe path in general position");
}

// A point certified to lie in the face of g whose corner at x sits between
// the rays du and dv (directions of the two boundary arcs leaving x).
Pt sector_point(const Surface& S, const Pt& x, Sheet shx, const Pt& du, const Pt& dv,
                const PathPL& g) {
  Pt d{du.x / cheb(du) + dv.x / cheb(dv), du.y / cheb(du) + dv.y / cheb(dv)};
  if (d.x == 0 && d.y == 0) throw std::logic_error("tauten: collapsed face corner");
  Rational delta = Rational(1, 16);
  for (int k = 0; k < 120; ++k, delta /= 4) {
    Pt q{x.x + delta * d.x, x.y + delta * d.y};
    if (!(q.x > 0 && q.x < S.q_width() && q.y > -S.q_height() && q.y < S.q_height())) continue;
    bool clean = true;
    for (size_t i = 0; i + 1 < g.v.size() && clean; ++i) {
      SurfaceContact sc = surface_contacts(S, x, q, shx, g.v[i], g.v[i + 1], g.sh[i]);
      for (const Pt& c : sc.pts)
        if (c != x) clean = false;
      if (sc.full_overlap) clean = false;
    }
    if (clean) return q;
  }
  throw std::logic_error("tauten: no clear pocket at a face corner");
}

struct Candidate {
  int xa, xb;  // crossing ids: the face corners
  int u, ru;   // lower-indexed curve and its arc position (along[u][ru] -> +1)
  int w, rw;   // higher-indexed curve and its arc position
};

std::vector<Candidate> find_candidates(const Arrangement& arr) {
  std::vector<Candidate> out;
  const int nc = static_cast<int>(arr.along.size());
  for (int u = 0; u < nc; ++u) {
    const auto& L = arr.along[static_cast<size_t>(u)];
    for (size_t r = 0; r < L.size(); ++r) {
      const int x = L[r].cross;
      const int y = L[(r + 1) % L.size()].cross;
      if (x == y) continue;
      const Crossing &X = arr.crossings[static_cast<size_t>(x)],
                     &Y = arr.crossings[static_cast<size_t>(y)];
      const int w = X.c[1 - L[r].side];
      if (w <= u) continue;  // the scan from the lower curve lists each face once
      if (Y.c[0] != (u < w ? u : w) || Y.c[1] != (u < w ? w : u)) continue;
      const auto& Lw = arr.along[static_cast<size_t>(w)];
      size_t rx = Lw.size();
      for (size_t i = 0; i < Lw.size(); ++i)
        if (Lw[i].cross == x) rx = i;
      if (rx == Lw.size()) throw std::logic_error("tauten: missing incidence");
      const size_t nxt = (rx + 1) % Lw.size();
      const size_t prv = (rx + Lw.size() - 1) % Lw.size();
      int rw = -1;
      if (Lw[nxt].cross == y)
        rw = static_cast<int>(rx);
      else if (Lw[prv].cross == y)
        rw = static_cast<int>(prv);
      else
        continue;
      out.push_back({x, y, u, static_cast<int>(r), w, rw});
    }
  }
  return out;
}

PathPL curve_arc(const PLCurve& c, const Arrangement& arr, int curve, int pos) {
  const auto& L = arr.along[static_cast<size_t>(curve)];
  const Incidence &ia = L[static_cast<size_t>(pos)],
                  &ib = L[(static_cast<size_t>(pos) + 1) % L.size()];
  const Crossing &A = arr.crossings[static_cast<size_t>(ia.cross)],
                 &B = arr.crossings[static_cast<size_t>(ib.cross)];
  return arc_forward(c, A.seg[ia.side], A.t[ia.side], A.p, B.seg[ib.side], B.t[ib.side], B.p);
}

int arc_start(const Arrangement& arr, int curve, int pos) {
  return arr.along[static_cast<size_t>(curve)][static_cast<size_t>(pos)].cross;
}

// Representative interior point of the strand along[curve][pos] -> pos+1,
// guaranteed off the gluing boundary (strict interior of a segment).
SPt strand_rep(const PLCurve& c, const Arrangement& arr, int curve, int pos) {
  const auto& L = arr.along[static_cast<size_t>(curve)];
  const Incidence &ia = L[static_cast<size_t>(pos)],
                  &ib = L[(static_cast<size_t>(pos) + 1) % L.size()];
  const Crossing &A = arr.crossings[static_cast<size_t>(ia.cross)],
                 &B = arr.crossings[static_cast<size_t>(ib.cross)];
  const int sa = A.seg[ia.side], sb = B.seg[ib.side];
  const Rational ta = A.t[ia.side], tb = B.t[ib.side];
  const size_t n = c.v.size();
  Rational t = (sa == sb && ta < tb) ? Rational((ta + tb) / 2) : Rational((ta + 1) / 2);
  const Pt &p0 = c.v[static_cast<size_t>(sa)], &p1 = c.v[(static_cast<size_t>(sa) + 1) % n];
  return SPt{c.sheet[static_cast<size_t>(sa)],
             Pt{p0.x + t * (p1.x - p0.x), p0.y + t * (p1.y - p0.y)}};
}

SPt loose_curve_rep(const PLCurve& c) {
  const Pt &p0 = c.v[0], &p1 = c.v[1 % c.v.size()];
  return SPt{c.sheet[0], Pt{(p0.x + p1.x) / 2, (p0.y + p1.y) / 2}};
}

Pt ray_into(const PathPL& p, bool at_front) {
  if (at_front) return Pt{p.v[1].x - p.v[0].x, p.v[1].y - p.v[0].y};
  const size_t m = p.v.size();
  return Pt{p.v[m - 2].x - p.v[m - 1].x, p.v[m - 2].y - p.v[m - 1].y};
}

bool face_is_empty(const Surface& S, const PLConfiguration& cfg, const Arrangement& arr,
                   const Candidate& cd) {
  const PLCurve& cu = cfg.curves[static_cast<size_t>(cd.u)];
  const PLCurve& cw = cfg.curves[static_cast<size_t>(cd.w)];
  PathPL au = curve_arc(cu, arr, cd.u, cd.ru);
  PathPL aw = curve_arc(cw, arr, cd.w, cd.rw);
  const Crossing& XA = arr.crossings[static_cast<size_t>(cd.xa)];

  // Closed boundary: au runs xa -> xb; append aw so the loop closes at xa.
  PathPL g = au;
  const bool aw_from_xa = arc_start(arr, cd.w, cd.rw) == cd.xa;
  if (aw_from_xa) {
    for (size_t i = aw.v.size() - 1; i-- > 0;) {
      g.sh.push_back(aw.sh[i]);
      g.v.push_back(aw.v[i]);
    }
  } else {
    for (size_t i = 1; i < aw.v.size(); ++i) {
      g.sh.push_back(aw.sh[i - 1]);
      g.v.push_back(aw.v[i]);
    }
  }

  const Pt du = ray_into(au, true);
  const Pt dw = ray_into(aw, aw_from_xa);
  const SPt ref{XA.sheet, sector_point(S, XA.p, XA.sheet, du, dw, g)};

  for (int pi = 1; pi <= S.b(); ++pi)
    if (same_side(S, SPt{Sheet::Front, S.puncture(pi)}, ref, g)) return false;
  for (int k = 0; k < static_cast<int>(cfg.curves.size()); ++k) {
    const auto& L = arr.along[static_cast<size_t>(k)];
    if (L.empty()) {
      if (same_side(S, loose_curve_rep(cfg.curves[static_cast<size_t>(k)]), ref, g)) return false;
      continue;
    }
    for (int r = 0; r < static_cast<int>(L.size()); ++r) {
      if ((k == cd.u && r == cd.ru) || (k == cd.w && r == cd.rw)) continue;
      if (same_side(S, strand_rep(cfg.curves[static_cast<size_t>(k)], arr, k, r), ref, g))
        return false;
    }
  }
  return true;
}

// One attempt at pushing curve cd.w across the face, with tube depth t and
// cut fraction eta. Throws runtime_error when the clearances do not work out.
PLCurve rerouted_curve(const Surface& S, const PLConfiguration& cfg, const Arrangement& arr,
                       const Candidate& cd, const Rational& t, const Rational& eta) {
  const PLCurve& cu = cfg.curves[static_cast<size_t>(cd.u)];
  const PLCurve& cw = cfg.curves[static_cast<size_t>(cd.w)];
  PathPL base = curve_arc(cu, arr, cd.u, cd.ru);  // runs xa -> xb

  const auto& Lw = arr.along[static_cast<size_t>(cd.w)];
  const Incidence &iC = Lw[static_cast<size_t>(cd.rw)],
                  &iD = Lw[(static_cast<size_t>(cd.rw) + 1) % Lw.size()];
  const Crossing &C = arr.crossings[static_cast<size_t>(iC.cross)],
                 &D = arr.crossings[static_cast<size_t>(iD.cross)];
  const bool from_xa = iC.cross == cd.xa;

  // Direction pair at corner xa decides which side of the base arc the face
  // is on; the tube goes to the other side.
  const Crossing& XA = arr.crossings[static_cast<size_t>(cd.xa)];
  const Pt dirF = ray_into(base, true);
  Pt dirM;
  {
    const int sm = from_xa ? C.seg[iC.side] : D.seg[iD.side];
    const size_t n = cw.v.size();
    const Pt &m0 = cw.v[static_cast<size_t>(sm)], &m1 = cw.v[(static_cast<size_t>(sm) + 1) % n];
    dirM = from_xa ? Pt{m1.x - m0.x, m1.y - m0.y} : Pt{m0.x - m1.x, m0.y - m1.y};
  }
  const Rational fc = cross2(dirF, dirM);
  if (fc == 0) throw std::logic_error("tauten: collapsed crossing");
  const int side = (fc > 0 ? -1 : 1) * interior_sign(XA.sheet);

  // Offset copy of the base arc.
  std::vector<Pt> tube;
  {
    const Pt d0 = ray_into(base, true);
    const Pt n0 = interior_normal(base.sh.front(), d0);
    const Rational s0 = Rational(side) * t / cheb(d0);
    tube.push_back(Pt{base.v.front().x + s0 * n0.x, base.v.front().y + s0 * n0.y});
    for (size_t i = 1; i + 1 < base.v.size(); ++i)
      tube.push_back(miter_point(S, base.v[i], base.v[i - 1], base.sh[i - 1], base.v[i + 1],
                                 base.sh[i], t, side));
    const size_t m = base.v.size();
    const Pt dm{base.v[m - 1].x - base.v[m - 2].x, base.v[m - 1].y - base.v[m - 2].y};
    const Pt nm = interior_normal(base.sh.back(), dm);
    const Rational sm = Rational(side) * t / cheb(dm);
    tube.push_back(Pt{base.v.back().x + sm * nm.x, base.v.back().y + sm * nm.y});
  }
  std::vector<Sheet> tubesh = base.sh;
  if (!from_xa) {
    std::reverse(tube.begin(), tube.end());
    std::reverse(tubesh.begin(), tubesh.end());
  }

  // Cut points on the pushed curve, just outside the doomed arc.
  const int segC = C.seg[iC.side], segD = D.seg[iD.side];
  const Rational tC = C.t[iC.side], tD = D.t[iD.side];
  const Rational tCm = tC * (1 - eta);
  const Rational tDp = tD + eta * (1 - tD);
  auto occupied = [&](int seg, const Rational& lo, const Rational& hi) {
    for (const Incidence& inc : Lw) {
      const Crossing& cr = arr.crossings[static_cast<size_t>(inc.cross)];
      if (cr.seg[inc.side] == seg && cr.t[inc.side] > lo && cr.t[inc.side] < hi) return true;
    }
    return false;
  };
  if (occupied(segC, tCm, tC)) throw std::runtime_error("clearance: cut before the face");
  if (occupied(segD, tD, tDp)) throw std::runtime_error("clearance: cut after the face");
  if (segC == segD && tD < tC && tDp >= tCm)
    throw std::runtime_error("clearance: cuts collide");
  const size_t n = cw.v.size();
  auto at = [&](int seg, const Rational& tt) {
    const Pt &p0 = cw.v[static_cast<size_t>(seg)], &p1 = cw.v[(static_cast<size_t>(seg) + 1) % n];
    return Pt{p0.x + tt * (p1.x - p0.x), p0.y + tt * (p1.y - p0.y)};
  };
  const Pt xm = at(segC, tCm);
  const Pt yp = at(segD, tDp);
  if (S.on_gluing_boundary(xm) || S.on_gluing_boundary(yp))
    throw std::runtime_error("clearance: cut on the gluing boundary");

  if (std::getenv("TAUTEN_DEBUG"))
    std::fprintf(stderr,
                 "reroute u=%d w=%d from_xa=%d segC=%d tC=%s segD=%d tD=%s side=%d tube=%zu "
                 "xa=(%s,%s) xb-ish base %zu verts\n",
                 cd.u, cd.w, from_xa ? 1 : 0, segC, tC.str().c_str(), segD, tD.str().c_str(),
                 side, tube.size(), XA.p.x.str().c_str(), XA.p.y.str().c_str(), base.v.size());
  PLCurve out;
  out.v.push_back(xm);
  out.sheet.push_back(cw.sheet[static_cast<size_t>(segC)]);
  for (size_t i = 0; i < tube.size(); ++i) {
    out.v.push_back(tube[i]);
    out.sheet.push_back(i + 1 < tube.size() ? tubesh[i] : cw.sheet[static_cast<size_t>(segD)]);
  }
  out.v.push_back(yp);
  // Kept portion: from yp forward around the curve back to xm.
  if (segC == segD && tDp < tCm) {
    out.sheet.push_back(cw.sheet[static_cast<size_t>(segD)]);
  } else {
    int s = (segD + 1) % static_cast<int>(n);
    while (true) {
      out.sheet.push_back(cw.sheet[static_cast<size_t>((s + static_cast<int>(n) - 1) %
                                                       static_cast<int>(n))]);
      out.v.push_back(cw.v[static_cast<size_t>(s)]);
      if (s == segC) break;
      s = (s + 1) % static_cast<int>(n);
    }
    out.sheet.push_back(cw.sheet[static_cast<size_t>(segC)]);
  }
  return out;
}

using PairCounts = std::map<std::pair<int, int>, std::int64_t>;

PairCounts pair_counts(const Arrangement& arr) {
  PairCounts out;
  for (const Crossing& cr : arr.crossings) ++out[{cr.c[0], cr.c[1]}];
  return out;
}

PairCounts nonzero(PairCounts m) {
  for (auto it = m.begin(); it != m.end();)
    it = it->second == 0 ? m.erase(it) : std::next(it);
  return m;
}

}  // namespace

std::int64_t crossing_count(const Surface& S, const PLCurve& a, const PLCurve& b) {
  std::vector<Crossing> cr;
  scan_pair(S, a, 0, b, 1, cr);
  return static_cast<std::int64_t>(cr.size());
}

PLConfiguration tauten(const PLConfiguration& cfg) {
  if (cfg.curves.empty()) throw std::invalid_argument("empty configuration");
  auto Sp = Surface::get(cfg.b);
  const Surface& S = *Sp;

  PLConfiguration cur = cfg;
  Arrangement arr = scan_configuration(S, cur);

  while (true) {
    bool removed = false;
    for (const Candidate& cd : find_candidates(arr)) {
      if (!face_is_empty(S, cur, arr, cd)) continue;
      PairCounts want = pair_counts(arr);
      want[{cd.u, cd.w}] -= 2;
      Rational t = realize_depth_limit(cfg.b) / 8;
      Rational eta(1, 8);
      bool ok = false;
      for (int attempt = 0; attempt < 14 && !ok; ++attempt, t /= 4, eta /= 4) {
        try {
          PLConfiguration next = cur;
          next.curves[static_cast<size_t>(cd.w)] = rerouted_curve(S, cur, arr, cd, t, eta);
          Arrangement na = scan_configuration(S, next);
          if (nonzero(pair_counts(na)) != nonzero(want)) {
            if (std::getenv("TAUTEN_DEBUG")) {
              std::fprintf(stderr, "attempt %d: mismatch", attempt);
              for (auto& [pr, n] : nonzero(pair_counts(na)))
                std::fprintf(stderr, " (%d,%d)=%lld", pr.first, pr.second, (long long)n);
              std::fprintf(stderr, " want");
              for (auto& [pr, n] : nonzero(want))
                std::fprintf(stderr, " (%d,%d)=%lld", pr.first, pr.second, (long long)n);
              std::fprintf(stderr, "\n");
            }
            continue;
          }
          cur = std::move(next);
          arr = std::move(na);
          ok = true;
        } catch (const std::runtime_error& e) {
          // Clearance or transversality failure: shrink and retry.
          if (std::getenv("TAUTEN_DEBUG")) std::fprintf(stderr, "attempt %d: rt %s\n", attempt, e.what());
        } catch (const std::invalid_argument& e) {
          // A too-wide tube can clip the pushed curve itself; shrink likewise.
          if (std::getenv("TAUTEN_DEBUG")) std::fprintf(stderr, "attempt %d: ia %s\n", attempt, e.what());
        }
      }
      if (!ok) throw std::logic_error("tauten: failed to isotope across an empty face");
      removed = true;
      break;
    }
    if (!removed) break;
  }

  // Cross-check against the combinatorial reduction where extraction works.
  std::vector<std::optional<CurveKey>> keys(cur.curves.size());
  for (size_t i = 0; i < cur.curves.size(); ++i) {
    try {
      keys[i] = extract_key(S, cur.curves[i]);
    } catch (const std::runtime_error&) {
    }
  }
  PairCounts got = pair_counts(arr);
  for (size_t i = 0; i < cur.curves.size(); ++i)
    for (size_t j = i + 1; j < cur.curves.size(); ++j) {
      if (!keys[i] || !keys[j]) continue;
      const std::int64_t want = intersection_number(*keys[i], *keys[j]);
      const auto it = got.find({static_cast<int>(i), static_cast<int>(j)});
      const std::int64_t have = it == got.end() ? 0 : it->second;
      if (have != want)
        throw std::logic_error("tauten: crossing count disagrees with the reduction");
    }
  return cur;
}

}  // namespace curvekit
