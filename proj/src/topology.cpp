#include "curvekit/topology.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "curvekit/geom.hpp"
#include "curvekit/normal.hpp"
#include "curvekit/pairpos.hpp"
#include "curvekit/surface.hpp"

namespace curvekit {

namespace {

// Two-color the punctures: an edge crossed an odd number of times joins
// punctures on opposite sides of the curve.
std::vector<int> side_coloring(const Surface& S, const std::vector<std::int64_t>& w) {
  const int b = S.b();
  std::vector<int> color(static_cast<size_t>(b) + 1, -1);
  color[1] = 0;
  std::vector<int> stack{1};
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int e = 0; e < S.edge_count(); ++e) {
      const EdgeGeom& g = S.edge(e);
      if (g.tail != u && g.head != u) continue;
      const int v = g.tail == u ? g.head : g.tail;
      const int want = color[static_cast<size_t>(u)] ^ static_cast<int>(w[static_cast<size_t>(e)] & 1);
      if (color[static_cast<size_t>(v)] < 0) {
        color[static_cast<size_t>(v)] = want;
        stack.push_back(v);
      } else if (color[static_cast<size_t>(v)] != want) {
        throw std::logic_error("separation: edge crossing parities are inconsistent");
      }
    }
  }
  for (int p = 1; p <= b; ++p)
    if (color[static_cast<size_t>(p)] < 0)
      throw std::logic_error("separation: puncture graph is disconnected");
  return color;
}

bool subset_of(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool disjoint_sets(const std::vector<int>& a, const std::vector<int>& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j)
      ++i;
    else if (*j < *i)
      ++j;
    else
      return false;
  }
  return true;
}

// Which side of d the curve with separation x lies in: 0 for the sideA
// region, 1 for sideB. The far side's punctures all sit inside a single side
// of x; this holds for exactly one of the two candidates unless x is
// parallel to d.
int side_of(const PunctureSeparation& d, const PunctureSeparation& x) {
  const bool in_a = subset_of(d.sideB, x.sideA) || subset_of(d.sideB, x.sideB);
  const bool in_b = subset_of(d.sideA, x.sideA) || subset_of(d.sideA, x.sideB);
  if (in_a == in_b) throw std::logic_error("separation: side membership is ambiguous");
  return in_a ? 0 : 1;
}

}  // namespace

PunctureSeparation separation(const CurveKey& c) {
  validate_key(c);
  auto S = Surface::get(c.b);
  const auto color = side_coloring(*S, c.w);
  PunctureSeparation out;
  out.b = c.b;
  for (int p = 1; p <= c.b; ++p)
    (color[static_cast<size_t>(p)] == color[1] ? out.sideA : out.sideB).push_back(p);
  if (out.sideA.size() < 2 || out.sideB.size() < 2)
    throw std::logic_error("separation: a side has fewer than two punctures");
  return out;
}

CurveClass classify(const CurveKey& c) {
  const PunctureSeparation s = separation(c);
  CurveClass out;
  out.s1 = static_cast<int>(std::min(s.sideA.size(), s.sideB.size()));
  out.s2 = c.b - out.s1;
  out.minimal = out.s1 == 2;
  out.one_separating = out.s1 == 3;
  out.strongly_separating = out.s1 >= 3;
  return out;
}

bool curves_equal(const CurveKey& a, const CurveKey& c) {
  if (intersection_number(a, c) != 0) return false;
  return separation(a) == separation(c);
}

bool nested_separations(const PunctureSeparation& s1, const PunctureSeparation& s2) {
  if (s1.b != s2.b) throw std::invalid_argument("separations live on different surfaces");
  // Containment of some side in some side, reduced to the A sides: they are
  // disjoint, nested one way or the other, or jointly cover the punctures.
  std::vector<int> inter;
  std::set_intersection(s1.sideA.begin(), s1.sideA.end(), s2.sideA.begin(), s2.sideA.end(),
                        std::back_inserter(inter));
  const size_t k = inter.size();
  return k == 0 || k == s1.sideA.size() || k == s2.sideA.size() ||
         s1.sideA.size() + s2.sideA.size() - k == static_cast<size_t>(s1.b);
}

bool separates(const CurveKey& delta, const CurveKey& alpha, const CurveKey& beta) {
  const PunctureSeparation d = separation(delta);
  for (const CurveKey* x : {&alpha, &beta}) {
    if (intersection_number(delta, *x) != 0)
      throw std::invalid_argument("not-in-link: curve crosses the separating curve");
    if (separation(*x) == d)
      throw std::invalid_argument("not-in-link: curve is isotopic to the separating curve");
  }
  return side_of(d, separation(alpha)) != side_of(d, separation(beta));
}

std::vector<ComplementComponent> complement_components(int b, const std::vector<CurveKey>& curves) {
  if (b < 4) throw std::invalid_argument("malformed-key: puncture count below 4");
  for (const CurveKey& c : curves) {
    if (c.b != b) throw std::invalid_argument("curves live on different surfaces");
    validate_key(c);
  }
  const int n = static_cast<int>(curves.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (intersection_number(curves[static_cast<size_t>(i)], curves[static_cast<size_t>(j)]) != 0)
        throw std::invalid_argument("not-a-multicurve: two of the curves cross");

  // The side of each curve away from puncture b. Disjointness makes this a
  // laminar family: the pieces of the complement are read off its forest.
  std::vector<std::vector<int>> B(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    PunctureSeparation s = separation(curves[static_cast<size_t>(i)]);
    const bool a_has_b = std::binary_search(s.sideA.begin(), s.sideA.end(), b);
    B[static_cast<size_t>(i)] = a_has_b ? std::move(s.sideB) : std::move(s.sideA);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const auto& x = B[static_cast<size_t>(i)];
      const auto& y = B[static_cast<size_t>(j)];
      if (!subset_of(x, y) && !subset_of(y, x) && !disjoint_sets(x, y))
        throw std::logic_error("complement components: sides are not laminar");
    }

  // Sort by side size, largest first; each node's parent is its smallest
  // strict-or-equal superset among earlier nodes (the nearest one for chains
  // of parallel copies).
  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    const size_t sx = B[static_cast<size_t>(x)].size();
    const size_t sy = B[static_cast<size_t>(y)].size();
    return sx != sy ? sx > sy : x < y;
  });
  std::vector<int> parent(static_cast<size_t>(n), -1);
  for (size_t p = 0; p < order.size(); ++p)
    for (size_t q = 0; q < p; ++q)
      if (subset_of(B[static_cast<size_t>(order[p])], B[static_cast<size_t>(order[q])]))
        parent[static_cast<size_t>(order[p])] = order[q];

  // Node i: the piece between curve i and its children. Node n: the piece
  // containing puncture b.
  std::vector<ComplementComponent> comps(static_cast<size_t>(n) + 1);
  std::vector<std::vector<int>> inner(static_cast<size_t>(n) + 1);
  for (int i = 0; i < n; ++i) {
    const size_t up = parent[static_cast<size_t>(i)] < 0
                          ? static_cast<size_t>(n)
                          : static_cast<size_t>(parent[static_cast<size_t>(i)]);
    auto& acc = inner[up];
    acc.insert(acc.end(), B[static_cast<size_t>(i)].begin(), B[static_cast<size_t>(i)].end());
    comps[up].boundary_count += 1;
  }
  for (int i = 0; i <= n; ++i) {
    auto& acc = inner[static_cast<size_t>(i)];
    std::sort(acc.begin(), acc.end());
    std::vector<int> whole;
    if (i < n) {
      whole = B[static_cast<size_t>(i)];
      comps[static_cast<size_t>(i)].boundary_count += 1;
    } else {
      whole.resize(static_cast<size_t>(b));
      std::iota(whole.begin(), whole.end(), 1);
    }
    std::set_difference(whole.begin(), whole.end(), acc.begin(), acc.end(),
                        std::back_inserter(comps[static_cast<size_t>(i)].punctures));
  }

  std::vector<int> all;
  std::int64_t euler = 0;
  for (const ComplementComponent& c : comps) {
    all.insert(all.end(), c.punctures.begin(), c.punctures.end());
    euler += 2 - static_cast<std::int64_t>(c.punctures.size()) - c.boundary_count;
  }
  std::sort(all.begin(), all.end());
  std::vector<int> want(static_cast<size_t>(b));
  std::iota(want.begin(), want.end(), 1);
  if (all != want)
    throw std::logic_error("complement components: punctures do not partition");
  if (euler != 2 - b)
    throw std::logic_error("complement components: Euler bookkeeping failed");

  std::sort(comps.begin(), comps.end());
  return comps;
}

namespace {

struct PtLess {
  bool operator()(const Pt& p, const Pt& q) const {
    if (p.x != q.x) return p.x < q.x;
    return p.y < q.y;
  }
};

struct UnionFind {
  std::vector<int> up;
  int find(int x) {
    while (up[static_cast<size_t>(x)] != x) {
      up[static_cast<size_t>(x)] = up[static_cast<size_t>(up[static_cast<size_t>(x)])];
      x = up[static_cast<size_t>(x)];
    }
    return x;
  }
  void unite(int x, int y) { up[static_cast<size_t>(find(x))] = find(y); }
};

// The two curves of a reduced pair position drawn jointly inside the
// triangulation: each triangle becomes a convex polygon (its boundary points
// placed on a parabola in boundary-walk order) and every transit a straight
// chord. Chords of one curve never meet; chords of different curves cross
// exactly at the surviving crossings. Gluing the polygon faces across the
// edge gaps rebuilds the complementary regions of the pair on the surface,
// with each region's punctures read off the corner wedges and its boundary
// circle read off as a cyclic word of crossed edges.
class FaceComplex {
 public:
  struct Region {
    std::vector<int> punctures;
    int sides = 0;                      // bounding arcs between crossings
    std::vector<std::int64_t> weights;  // reduced boundary word, as edge multiplicities
  };

  FaceComplex(const Surface& S, const PairPosition& pos) : S_(S), pos_(pos) {
    gaps_.resize(static_cast<size_t>(S.edge_count()));
    for (int e = 0; e < S.edge_count(); ++e)
      gaps_[static_cast<size_t>(e)].assign(pos.order[static_cast<size_t>(e)].size() + 1, {-1, -1});
    for (int t = 0; t < S.triangle_count(); ++t) build_triangle(t);
    sort_and_link();
    mark_outer();
    label_faces();
    glue();
    assign_punctures();
    walk_boundaries();
  }

  const std::vector<Region>& regions() const { return regions_; }

 private:
  struct HalfEdge {
    int head = -1;
    int twin = -1;
    int next = -1;
    int tri = -1;
    bool hull = false;
    bool outer = false;
    int gap_edge = -1;   // triangulation edge beneath a hull half-edge
    int gap_index = -1;  // gap along it, counted from the edge tail
    int face = -1;
  };
  struct Vertex {
    Pt pos;
    int tri = -1;
    bool crossing = false;
    std::vector<int> out;
  };

  const Surface& S_;
  const PairPosition& pos_;
  std::vector<HalfEdge> he_;
  std::vector<Vertex> vx_;
  std::vector<std::vector<std::pair<int, int>>> gaps_;  // [edge][gap] -> two hull half-edges
  std::vector<std::pair<int, int>> wedges_;             // (puncture, hull half-edge leaving the corner)
  UnionFind uf_;
  std::map<int, int> region_of_;  // face id -> region index
  std::vector<Region> regions_;

  int new_vertex(int tri, const Pt& p, bool crossing) {
    vx_.push_back(Vertex{p, tri, crossing, {}});
    return static_cast<int>(vx_.size()) - 1;
  }

  // Creates the twin pair v1 -> v2 and v2 -> v1, returns the id of v1 -> v2.
  int new_edge(int tri, int v1, int v2) {
    const int a = static_cast<int>(he_.size());
    he_.push_back(HalfEdge{});
    he_.push_back(HalfEdge{});
    he_[static_cast<size_t>(a)].head = v2;
    he_[static_cast<size_t>(a)].twin = a + 1;
    he_[static_cast<size_t>(a)].tri = tri;
    he_[static_cast<size_t>(a + 1)].head = v1;
    he_[static_cast<size_t>(a + 1)].twin = a;
    he_[static_cast<size_t>(a + 1)].tri = tri;
    vx_[static_cast<size_t>(v1)].out.push_back(a);
    vx_[static_cast<size_t>(v2)].out.push_back(a + 1);
    return a;
  }

  void build_triangle(int t) {
    const TriangleRef& tr = S_.triangles()[static_cast<size_t>(t)];

    // Hull points in boundary-walk order: each side's tail corner, then its
    // edge points. Coordinates on a parabola keep them convex and make the
    // walk the positive orientation of the polygon.
    std::vector<int> hull;
    std::vector<std::pair<int, int>> seg;  // per hull edge: (edge, gap index)
    std::vector<int> corner_marks;
    std::map<std::tuple<int, int, std::int64_t>, int> rank_of;
    for (int s = 0; s < 3; ++s) {
      const int e = tr.side[static_cast<size_t>(s)];
      const bool fwd = tr.fwd[static_cast<size_t>(s)];
      const auto& ord = pos_.order[static_cast<size_t>(e)];
      const int L = static_cast<int>(ord.size());
      const int rank = static_cast<int>(hull.size());
      hull.push_back(new_vertex(t, Pt{Rational(rank), Rational(rank) * Rational(rank)}, false));
      corner_marks.push_back(hull.back());
      for (int j = 0; j < L; ++j) {
        const int r = fwd ? j : L - 1 - j;
        const auto& tok = ord[static_cast<size_t>(r)];
        const int rk = static_cast<int>(hull.size());
        hull.push_back(new_vertex(t, Pt{Rational(rk), Rational(rk) * Rational(rk)}, false));
        rank_of[{e, tok.first, tok.second}] = rk;
        seg.push_back({e, fwd ? j : L - j});
      }
      seg.push_back({e, fwd ? L : 0});
    }
    const int H = static_cast<int>(hull.size());

    std::vector<int> hull_edge(static_cast<size_t>(H), -1);
    for (int i = 0; i < H; ++i) {
      const int h = new_edge(t, hull[static_cast<size_t>(i)], hull[static_cast<size_t>((i + 1) % H)]);
      hull_edge[static_cast<size_t>(i)] = h;
      for (int d = 0; d < 2; ++d) {
        he_[static_cast<size_t>(h + d)].hull = true;
        he_[static_cast<size_t>(h + d)].gap_edge = seg[static_cast<size_t>(i)].first;
        he_[static_cast<size_t>(h + d)].gap_index = seg[static_cast<size_t>(i)].second;
      }
      auto& slot = gaps_[static_cast<size_t>(seg[static_cast<size_t>(i)].first)]
                        [static_cast<size_t>(seg[static_cast<size_t>(i)].second)];
      if (slot.first < 0)
        slot.first = h;
      else if (slot.second < 0)
        slot.second = h;
      else
        throw std::logic_error("face complex: gap bordered by three triangles");
    }

    // The hull edge leaving each corner marker spans the wedge face at that
    // corner; the marker before side s sits at the tail of that side.
    for (int s = 0; s < 3; ++s) {
      const int p = tr.corner[static_cast<size_t>((s + 2) % 3)];
      int rank = -1;
      for (int i = 0; i < H; ++i)
        if (hull[static_cast<size_t>(i)] == corner_marks[static_cast<size_t>(s)]) rank = i;
      wedges_.push_back({p, hull_edge[static_cast<size_t>(rank)]});
    }

    // Chords: all transits of either curve through this triangle.
    struct Chord {
      Pt a, b;
      int va = -1, vb = -1;
      int curve = -1, idx = -1;
      std::vector<std::pair<Rational, int>> cuts;  // (parameter, crossing vertex)
    };
    std::vector<Chord> chords;
    for (int cu = 0; cu < 2; ++cu) {
      const auto& ts = pos_.transits[static_cast<size_t>(cu)];
      for (int i = 0; i < static_cast<int>(ts.size()); ++i) {
        const Transit& tv = ts[static_cast<size_t>(i)];
        if (tv.tri != t) continue;
        Chord c;
        c.curve = cu;
        c.idx = i;
        c.va = hull[static_cast<size_t>(rank_of.at({tv.edge_in, cu, tv.k_in}))];
        c.vb = hull[static_cast<size_t>(rank_of.at({tv.edge_out, cu, tv.k_out}))];
        c.a = vx_[static_cast<size_t>(c.va)].pos;
        c.b = vx_[static_cast<size_t>(c.vb)].pos;
        chords.push_back(std::move(c));
      }
    }

    // Crossings: chords of one curve never meet (their endpoint ranks never
    // interleave), and cross-curve chords must reproduce exactly the
    // surviving crossings of the reduced position.
    std::set<std::pair<int, int>> expected;
    for (const auto& [ia, jc] : pos_.crossings)
      if (pos_.transits[0][static_cast<size_t>(ia)].tri == t) expected.insert({ia, jc});
    std::set<std::pair<int, int>> found;
    std::map<Pt, int, PtLess> cross_vertex;
    for (auto& ca : chords) {
      if (ca.curve != 0) continue;
      for (auto& cc : chords) {
        if (cc.curve != 1) continue;
        const SegHit hit = intersect_segments(ca.a, ca.b, cc.a, cc.b);
        if (hit.rel == SegRel::Disjoint) continue;
        if (hit.rel != SegRel::ProperCross)
          throw std::logic_error("face complex: degenerate chord pair");
        auto it = cross_vertex.find(hit.point);
        if (it == cross_vertex.end())
          it = cross_vertex.emplace(hit.point, new_vertex(t, hit.point, true)).first;
        ca.cuts.push_back({hit.s, it->second});
        cc.cuts.push_back({hit.t, it->second});
        found.insert({ca.idx, cc.idx});
      }
    }
    if (found != expected)
      throw std::logic_error("face complex: chord crossings disagree with the reduction");

    for (auto& c : chords) {
      std::sort(c.cuts.begin(), c.cuts.end(),
                [](const auto& x, const auto& y) { return x.first < y.first; });
      for (size_t i = 1; i < c.cuts.size(); ++i)
        if (c.cuts[i - 1].first == c.cuts[i].first)
          throw std::logic_error("face complex: coincident crossings on a chord");
      int prev = c.va;
      for (const auto& cut : c.cuts) {
        new_edge(t, prev, cut.second);
        prev = cut.second;
      }
      new_edge(t, prev, c.vb);
    }
  }

  // Outgoing half-edges sorted counterclockwise around each vertex; the next
  // pointer walks each face with its interior on the left.
  void sort_and_link() {
    for (int v = 0; v < static_cast<int>(vx_.size()); ++v) {
      auto& out = vx_[static_cast<size_t>(v)].out;
      const Pt base = vx_[static_cast<size_t>(v)].pos;
      auto dir = [&](int h) {
        return vx_[static_cast<size_t>(he_[static_cast<size_t>(h)].head)].pos - base;
      };
      std::sort(out.begin(), out.end(), [&](int x, int y) {
        const Pt dx = dir(x);
        const Pt dy = dir(y);
        const int hx = (dx.y < 0 || (dx.y == 0 && dx.x < 0)) ? 1 : 0;
        const int hy = (dy.y < 0 || (dy.y == 0 && dy.x < 0)) ? 1 : 0;
        if (hx != hy) return hx < hy;
        const Rational cr = dx.x * dy.y - dx.y * dy.x;
        if (cr == 0) throw std::logic_error("face complex: coincident directions");
        return cr > 0;
      });
      const int d = static_cast<int>(out.size());
      for (int i = 0; i < d; ++i) {
        const int incoming = he_[static_cast<size_t>(out[static_cast<size_t>(i)])].twin;
        he_[static_cast<size_t>(incoming)].next = out[static_cast<size_t>((i + d - 1) % d)];
      }
    }
  }

  // Within each triangle the clockwise hull circuit bounds the polygon's
  // outside; those orbits take no part in the gluing. The first half-edge of
  // every hull pair runs along the walk direction, so its twin starts the
  // clockwise circuit.
  void mark_outer() {
    for (int t = 0; t < S_.triangle_count(); ++t) {
      int start = -1;
      for (int h = 0; h < static_cast<int>(he_.size()) && start < 0; h += 2)
        if (he_[static_cast<size_t>(h)].tri == t && he_[static_cast<size_t>(h)].hull)
          start = he_[static_cast<size_t>(h)].twin;
      if (start < 0) throw std::logic_error("face complex: triangle without hull");
      int h = start;
      size_t guard = 0;
      do {
        if (!he_[static_cast<size_t>(h)].hull || (h % 2) == 0)
          throw std::logic_error("face complex: outer circuit left the hull");
        he_[static_cast<size_t>(h)].outer = true;
        h = he_[static_cast<size_t>(h)].next;
        if (++guard > he_.size()) throw std::logic_error("face complex: outer circuit never closed");
      } while (h != start);
    }
  }

  void label_faces() {
    int nf = 0;
    for (int h0 = 0; h0 < static_cast<int>(he_.size()); ++h0) {
      if (he_[static_cast<size_t>(h0)].outer || he_[static_cast<size_t>(h0)].face >= 0) continue;
      const int f = nf++;
      int h = h0;
      size_t guard = 0;
      do {
        he_[static_cast<size_t>(h)].face = f;
        h = he_[static_cast<size_t>(h)].next;
        if (++guard > he_.size()) throw std::logic_error("face complex: face orbit never closed");
      } while (h != h0);
    }
    uf_.up.resize(static_cast<size_t>(nf));
    std::iota(uf_.up.begin(), uf_.up.end(), 0);
  }

  void glue() {
    for (const auto& per_edge : gaps_)
      for (const auto& [h1, h2] : per_edge) {
        if (h1 < 0 || h2 < 0) throw std::logic_error("face complex: unmatched gap");
        uf_.unite(he_[static_cast<size_t>(h1)].face, he_[static_cast<size_t>(h2)].face);
      }
  }

  int region_index(int face) {
    const int root = uf_.find(face);
    auto it = region_of_.find(root);
    if (it == region_of_.end()) {
      it = region_of_.emplace(root, static_cast<int>(regions_.size())).first;
      regions_.push_back(Region{});
    }
    return it->second;
  }

  void assign_punctures() {
    std::map<int, int> seen;  // puncture -> region
    for (const auto& [p, h] : wedges_) {
      const int r = region_index(he_[static_cast<size_t>(h)].face);
      auto it = seen.find(p);
      if (it == seen.end()) {
        seen.emplace(p, r);
        regions_[static_cast<size_t>(r)].punctures.push_back(p);
      } else if (it->second != r) {
        throw std::logic_error("face complex: puncture wedges land in different regions");
      }
    }
    if (static_cast<int>(seen.size()) != S_.b())
      throw std::logic_error("face complex: a puncture has no wedge");
    for (Region& r : regions_) std::sort(r.punctures.begin(), r.punctures.end());
  }

  int jump(int h) const {
    const auto& slot = gaps_[static_cast<size_t>(he_[static_cast<size_t>(h)].gap_edge)]
                            [static_cast<size_t>(he_[static_cast<size_t>(h)].gap_index)];
    if (slot.first == h) return slot.second;
    if (slot.second == h) return slot.first;
    throw std::logic_error("face complex: hull half-edge missing from its gap");
  }

  void walk_boundaries() {
    // Materialize every region first so the counters below have a fixed size.
    for (int h = 0; h < static_cast<int>(he_.size()); ++h)
      if (!he_[static_cast<size_t>(h)].outer) region_index(he_[static_cast<size_t>(h)].face);

    std::vector<char> visited(he_.size(), 0);
    std::vector<int> orbits_per_region(regions_.size(), 0);
    for (int h0 = 0; h0 < static_cast<int>(he_.size()); ++h0) {
      if (he_[static_cast<size_t>(h0)].hull || visited[static_cast<size_t>(h0)]) continue;
      const int region = region_index(he_[static_cast<size_t>(h0)].face);
      std::vector<int> word;
      int sides = 0;
      int h = h0;
      size_t guard = 0;
      do {
        visited[static_cast<size_t>(h)] = 1;
        if (region_index(he_[static_cast<size_t>(h)].face) != region)
          throw std::logic_error("face complex: boundary walk changed region");
        if (vx_[static_cast<size_t>(he_[static_cast<size_t>(h)].head)].crossing) ++sides;
        int g = he_[static_cast<size_t>(h)].next;
        while (he_[static_cast<size_t>(g)].hull) {
          if (he_[static_cast<size_t>(g)].outer)
            throw std::logic_error("face complex: boundary walk reached the outside");
          word.push_back(he_[static_cast<size_t>(g)].gap_edge);
          g = he_[static_cast<size_t>(jump(g))].next;
          if (++guard > 4 * he_.size() + 16)
            throw std::logic_error("face complex: boundary walk never closed");
        }
        h = g;
        if (++guard > 4 * he_.size() + 16)
          throw std::logic_error("face complex: boundary walk never closed");
      } while (h != h0);
      orbits_per_region[static_cast<size_t>(region)] += 1;
      regions_[static_cast<size_t>(region)].sides = sides;
      regions_[static_cast<size_t>(region)].weights = reduce_word(word);
    }
    for (size_t r = 0; r < regions_.size(); ++r)
      if (orbits_per_region[r] != 1)
        throw std::logic_error("face complex: region is not a disk");

    // Global sanity: face count and Euler characteristic of the arrangement.
    const std::int64_t X = static_cast<std::int64_t>(pos_.crossings.size());
    if (static_cast<std::int64_t>(regions_.size()) != X + 2)
      throw std::logic_error("face complex: face count disagrees with crossings");
    std::int64_t euler = 0;
    for (const Region& r : regions_) euler += 1 - static_cast<std::int64_t>(r.punctures.size());
    if (euler != 2 - S_.b() + X)
      throw std::logic_error("face complex: Euler bookkeeping failed");
  }

  // Cyclic cancellation of adjacent equal letters: each removal pushes the
  // boundary circle across one returning arc, and the fixed point is its
  // normal position against the triangulation.
  std::vector<std::int64_t> reduce_word(const std::vector<int>& word) const {
    std::vector<int> red;
    for (int e : word) {
      if (!red.empty() && red.back() == e)
        red.pop_back();
      else
        red.push_back(e);
    }
    while (red.size() >= 2 && red.front() == red.back()) {
      red.pop_back();
      red.erase(red.begin());
    }
    std::vector<std::int64_t> w(static_cast<size_t>(S_.edge_count()), 0);
    for (int e : red) w[static_cast<size_t>(e)] += 1;
    return w;
  }
};

std::vector<PairFace> faces_of(const CurveKey& a, const CurveKey& c) {
  const PairPosition pos = minimal_pair_position(a, c);
  if (pos.crossings.empty()) throw std::invalid_argument("not-filling: the curves are disjoint");
  auto S = Surface::get(pos.b);
  const FaceComplex fc(*S, pos);

  std::vector<PairFace> out;
  for (const FaceComplex::Region& r : fc.regions()) {
    PairFace f;
    f.punctures = r.punctures;
    f.sides = r.sides;
    const std::int64_t total = std::accumulate(r.weights.begin(), r.weights.end(), std::int64_t{0});
    if (r.punctures.empty()) {
      if (total != 0) throw std::logic_error("face complex: unpunctured face with boundary weight");
    } else if (r.punctures.size() == 1) {
      if (r.weights != vertex_link_weights(*S, r.punctures.front()))
        throw std::logic_error("face complex: once-punctured face boundary is not the link");
    } else {
      CurveKey key{pos.b, r.weights};
      try {
        validate_key(key);
      } catch (const std::invalid_argument& ex) {
        throw std::logic_error(std::string("face complex: boundary key failed validation: ") +
                               ex.what());
      }
      f.boundary = std::move(key);
    }
    out.push_back(std::move(f));
  }
  std::sort(out.begin(), out.end(), [](const PairFace& x, const PairFace& y) {
    if (x.punctures != y.punctures) return x.punctures < y.punctures;
    if (x.sides != y.sides) return x.sides < y.sides;
    const auto& wx = x.boundary ? x.boundary->w : std::vector<std::int64_t>{};
    const auto& wy = y.boundary ? y.boundary->w : std::vector<std::int64_t>{};
    return wx < wy;
  });
  return out;
}

}  // namespace

std::vector<PairFace> pair_faces(const CurveKey& a, const CurveKey& c) { return faces_of(a, c); }

FilledSubsurface filled_subsurface(const CurveKey& a, const CurveKey& c) {
  FilledSubsurface out;
  for (PairFace& f : faces_of(a, c)) {
    if (f.punctures.size() <= 2) {
      out.piece.punctures.insert(out.piece.punctures.end(), f.punctures.begin(),
                                 f.punctures.end());
    } else {
      if (!f.boundary) throw std::logic_error("filled subsurface: boundary face has no key");
      out.piece.boundary_count += 1;
      out.boundary.push_back(std::move(*f.boundary));
    }
  }
  std::sort(out.piece.punctures.begin(), out.piece.punctures.end());
  std::sort(out.boundary.begin(), out.boundary.end(),
            [](const CurveKey& x, const CurveKey& y) { return x.w < y.w; });
  return out;
}

}  // namespace curvekit
