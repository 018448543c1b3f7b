#include "curvekit/surface.hpp"

#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>

namespace curvekit {

namespace {

Rational frac(long num, long den) { return Rational(num) / Rational(den); }

}  // namespace

Surface::Surface(int b) : b_(b) {
  if (b < 4) throw std::invalid_argument("Surface requires at least 4 punctures");
  build();
  self_check();
}

void Surface::build() {
  const int b = b_;
  punctures_.reserve(static_cast<size_t>(b));
  for (int i = 1; i <= b; ++i) punctures_.push_back(Pt{Rational(4 * i), Rational(0)});

  auto add_edge = [&](EdgeGeom e) {
    by_name_[e.name] = static_cast<int>(edges_.size());
    edges_.push_back(std::move(e));
  };

  for (int i = 1; i <= b - 1; ++i) {
    EdgeGeom e;
    e.name = "A" + std::to_string(i);
    e.tail = i;
    e.head = i + 1;
    e.pts = {puncture(i), puncture(i + 1)};
    e.seg_sheet = {Sheet::Front};
    add_edge(std::move(e));
  }

  {
    EdgeGeom e;
    e.name = "wrap";
    e.tail = b;
    e.head = 1;
    e.pts = {puncture(b), Pt{Rational(4 * b + 4), Rational(0)}, Pt{Rational(0), Rational(0)},
             puncture(1)};
    e.seg_sheet = {Sheet::Front, Sheet::Back, Sheet::Front};
    add_edge(std::move(e));
  }

  // Arch j rises to height j-2; the slight x-offsets by (j-2)/b keep distinct
  // arches' legs non-parallel so they only meet at the shared puncture.
  for (int j = 3; j <= b - 1; ++j) {
    Pt la{Rational(5) - frac(j - 2, b), Rational(j - 2)};
    Pt ra{Rational(4 * j - 1) + frac(j - 2, b), Rational(j - 2)};
    EdgeGeom e;
    e.name = "U" + std::to_string(j);
    e.tail = 1;
    e.head = j;
    e.pts = {puncture(1), la, ra, puncture(j)};
    e.seg_sheet = {Sheet::Front, Sheet::Front, Sheet::Front};
    add_edge(std::move(e));
  }
  for (int j = 3; j <= b - 1; ++j) {
    Pt la{Rational(5) - frac(j - 2, b), Rational(-(j - 2))};
    Pt ra{Rational(4 * j - 1) + frac(j - 2, b), Rational(-(j - 2))};
    EdgeGeom e;
    e.name = "L" + std::to_string(j);
    e.tail = 1;
    e.head = j;
    e.pts = {puncture(1), la, ra, puncture(j)};
    e.seg_sheet = {Sheet::Front, Sheet::Front, Sheet::Front};
    add_edge(std::move(e));
  }

  auto tri = [&](int s0, bool f0, int s1, bool f1, int s2, bool f2, int c0, int c1, int c2) {
    TriangleRef t;
    t.side = {s0, s1, s2};
    t.fwd = {f0, f1, f2};
    t.corner = {c0, c1, c2};
    triangles_.push_back(t);
  };

  const int A = 0;  // a_edge(i) = A + (i-1)
  const int W = wrap_edge();

  // Upper fan: p_1 sees every A_i across the arches.
  if (b == 4) {
    tri(A + 0, true, A + 1, true, upper_arch(3), false, 2, 3, 1);
    tri(upper_arch(3), true, A + 2, true, W, true, 3, 4, 1);
  } else {
    tri(A + 0, true, A + 1, true, upper_arch(3), false, 2, 3, 1);
    for (int j = 3; j <= b - 2; ++j)
      tri(upper_arch(j), true, A + (j - 1), true, upper_arch(j + 1), false, j, j + 1, 1);
    tri(upper_arch(b - 1), true, A + (b - 2), true, W, true, b - 1, b, 1);
  }
  // Lower fan, mirrored, using each edge with the opposite orientation.
  if (b == 4) {
    tri(A + 1, false, A + 0, false, lower_arch(3), true, 2, 1, 3);
    tri(A + 2, false, lower_arch(3), false, W, false, 3, 1, 4);
  } else {
    tri(A + 1, false, A + 0, false, lower_arch(3), true, 2, 1, 3);
    for (int j = 3; j <= b - 2; ++j)
      tri(A + (j - 1), false, lower_arch(j), false, lower_arch(j + 1), true, j, 1, j + 1);
    tri(A + (b - 2), false, lower_arch(b - 1), false, W, false, b - 1, 1, b);
  }

  coside_.assign(edges_.size(), {std::make_pair(-1, -1), std::make_pair(-1, -1)});
  for (int t = 0; t < triangle_count(); ++t) {
    for (int c = 0; c < 3; ++c) {
      auto& slot = coside_[static_cast<size_t>(triangles_[static_cast<size_t>(t)].side[static_cast<size_t>(c)])]
                          [triangles_[static_cast<size_t>(t)].fwd[static_cast<size_t>(c)] ? 0 : 1];
      if (slot.first != -1) throw std::logic_error("edge used twice with the same orientation");
      slot = {t, c};
    }
  }
}

int Surface::edge_index(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) throw std::out_of_range("no such edge: " + name);
  return it->second;
}

int Surface::a_edge(int i) const {
  if (i < 1 || i > b_ - 1) throw std::out_of_range("a_edge index");
  return i - 1;
}

int Surface::wrap_edge() const { return b_ - 1; }

int Surface::upper_arch(int j) const {
  if (j < 3 || j > b_ - 1) throw std::out_of_range("upper_arch index");
  return b_ + (j - 3);
}

int Surface::lower_arch(int j) const {
  if (j < 3 || j > b_ - 1) throw std::out_of_range("lower_arch index");
  return b_ + (b_ - 3) + (j - 3);
}

Rational Surface::q_width() const { return Rational(4 * b_ + 4); }
Rational Surface::q_height() const { return Rational(b_ + 2); }

bool Surface::on_gluing_boundary(const Pt& p) const {
  return p.x == 0 || p.x == q_width() || p.y == q_height() || p.y == -q_height();
}

std::pair<int, int> Surface::coside(int e, bool fwd) const {
  return coside_.at(static_cast<size_t>(e))[fwd ? 0 : 1];
}

bool surface_points_equal(const Surface& S, const SPt& a, const SPt& b) {
  if (a.p != b.p) return false;
  if (a.sheet == b.sheet) return true;
  return S.on_gluing_boundary(a.p);
}

namespace {

// The intersection of two segments, assuming they are not allowed to overlap
// in more than the listed shared points. Returns false on any contact beyond
// the allowed set.
bool contact_within(const Pt& a, const Pt& b, const Pt& c, const Pt& d,
                    const std::vector<Pt>& allowed) {
  SegHit hit = intersect_segments(a, b, c, d);
  if (hit.rel == SegRel::Disjoint) return true;
  if (hit.rel == SegRel::ProperCross) return false;
  // Degenerate contact: enumerate the touching set via endpoints.
  std::vector<Pt> touching;
  auto push = [&](const Pt& p) {
    for (const auto& q : touching)
      if (q == p) return;
    touching.push_back(p);
  };
  if (point_on_closed_segment(a, c, d)) push(a);
  if (point_on_closed_segment(b, c, d)) push(b);
  if (point_on_closed_segment(c, a, b)) push(c);
  if (point_on_closed_segment(d, a, b)) push(d);
  if (touching.empty()) return false;  // collinear overlap with no endpoint inside cannot happen
  // Collinear overlap of positive length shows up as >= 2 touching points
  // that do not coincide; a fortiori not within a one-point allowance unless
  // both are allowed (still wrong: segments sharing two points overlap).
  if (touching.size() > 1) return false;
  for (const auto& p : allowed)
    if (p == touching.front()) return true;
  return false;
}

}  // namespace

void Surface::self_check() const {
  const int b = b_;
  if (edge_count() != 3 * b - 6) throw std::logic_error("edge count");
  if (triangle_count() != 2 * (b - 2)) throw std::logic_error("triangle count");

  for (const auto& e : edges_) {
    if (e.pts.size() != e.seg_sheet.size() + 1 || e.seg_sheet.empty())
      throw std::logic_error("edge polyline shape: " + e.name);
    if (e.pts.front() != puncture(e.tail) || e.pts.back() != puncture(e.head))
      throw std::logic_error("edge endpoints: " + e.name);
    for (size_t k = 0; k + 1 < e.pts.size(); ++k) {
      if (e.pts[k] == e.pts[k + 1]) throw std::logic_error("zero-length segment: " + e.name);
      if (k + 1 < e.seg_sheet.size() && e.seg_sheet[k] != e.seg_sheet[k + 1] &&
          !on_gluing_boundary(e.pts[k + 1]))
        throw std::logic_error("sheet change off the gluing boundary: " + e.name);
    }
    for (const auto& p : e.pts) {
      if (p.x < 0 || p.x > q_width() || p.y < -q_height() || p.y > q_height())
        throw std::logic_error("edge leaves the rectangle: " + e.name);
    }
  }

  // Every edge appears in exactly one triangle forward and one reversed, and
  // corners match the walk.
  for (int e = 0; e < edge_count(); ++e) {
    for (int o = 0; o < 2; ++o)
      if (coside_[static_cast<size_t>(e)][static_cast<size_t>(o)].first < 0)
        throw std::logic_error("edge missing an orientation: " + edges_[static_cast<size_t>(e)].name);
  }
  for (const auto& t : triangles_) {
    for (int c = 0; c < 3; ++c) {
      const auto& e = edges_[static_cast<size_t>(t.side[static_cast<size_t>(c)])];
      const auto& enext = edges_[static_cast<size_t>(t.side[static_cast<size_t>((c + 1) % 3)])];
      int head = t.fwd[static_cast<size_t>(c)] ? e.head : e.tail;
      int tail_next = t.fwd[static_cast<size_t>((c + 1) % 3)] ? enext.tail : enext.head;
      if (head != t.corner[static_cast<size_t>(c)] || tail_next != t.corner[static_cast<size_t>(c)])
        throw std::logic_error("triangle corner mismatch");
    }
  }

  // Geometric embedding: segments of distinct edges meet only at shared
  // puncture endpoints; segments of one edge only at consecutive breakpoints.
  struct Seg {
    int edge;
    int k;
    Sheet sheet;
    Pt a, bpt;
  };
  std::vector<Seg> segs;
  for (int e = 0; e < edge_count(); ++e) {
    const auto& eg = edges_[static_cast<size_t>(e)];
    for (int k = 0; k < eg.segments(); ++k)
      segs.push_back(Seg{e, k, eg.seg_sheet[static_cast<size_t>(k)], eg.pts[static_cast<size_t>(k)],
                         eg.pts[static_cast<size_t>(k) + 1]});
  }
  for (size_t i = 0; i < segs.size(); ++i) {
    for (size_t j = i + 1; j < segs.size(); ++j) {
      const Seg& s1 = segs[i];
      const Seg& s2 = segs[j];
      std::vector<Pt> allowed;
      if (s1.edge == s2.edge) {
        if (s2.k == s1.k + 1)
          allowed.push_back(s1.bpt);
        // tail==head cannot occur here (no loop edges in this triangulation)
      } else {
        const auto& e1 = edges_[static_cast<size_t>(s1.edge)];
        const auto& e2 = edges_[static_cast<size_t>(s2.edge)];
        for (int v1 : {e1.tail, e1.head})
          for (int v2 : {e2.tail, e2.head})
            if (v1 == v2) allowed.push_back(puncture(v1));
      }
      if (s1.sheet != s2.sheet) {
        // Sheets only meet along the gluing boundary, so the surface contact
        // set is the planar intersection restricted to it. None of our edges
        // run along a boundary line, so that restriction is a finite set of
        // points found among crossing points and endpoints.
        std::vector<Pt> contacts;
        auto consider = [&](const Pt& p) {
          if (!on_gluing_boundary(p)) return;
          for (const auto& q : contacts)
            if (q == p) return;
          contacts.push_back(p);
        };
        SegHit hit = intersect_segments(s1.a, s1.bpt, s2.a, s2.bpt);
        if (hit.rel == SegRel::Disjoint) continue;
        if (hit.rel == SegRel::ProperCross) consider(hit.point);
        for (const Pt& p : {s1.a, s1.bpt})
          if (point_on_closed_segment(p, s2.a, s2.bpt)) consider(p);
        for (const Pt& p : {s2.a, s2.bpt})
          if (point_on_closed_segment(p, s1.a, s1.bpt)) consider(p);
        for (const auto& p : contacts) {
          bool ok = false;
          for (const auto& q : allowed)
            if (q == p) ok = true;
          if (!ok)
            throw std::logic_error("cross-sheet contact between " +
                                   edges_[static_cast<size_t>(s1.edge)].name + " and " +
                                   edges_[static_cast<size_t>(s2.edge)].name);
        }
        continue;
      }
      if (!contact_within(s1.a, s1.bpt, s2.a, s2.bpt, allowed))
        throw std::logic_error("edges collide: " + edges_[static_cast<size_t>(s1.edge)].name +
                               " vs " + edges_[static_cast<size_t>(s2.edge)].name);
    }
  }

  // Punctures stay off the gluing boundary and off other edges' interiors:
  // covered above since punctures are segment endpoints; also ensure interior
  // breakpoints are not punctures.
  for (const auto& e : edges_) {
    for (size_t k = 1; k + 1 < e.pts.size(); ++k)
      for (const auto& q : punctures_)
        if (e.pts[k] == q) throw std::logic_error("breakpoint hits a puncture: " + e.name);
  }
}

std::shared_ptr<const Surface> Surface::get(int b) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const Surface>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(b);
  if (it != cache.end()) return it->second;
  auto s = std::make_shared<const Surface>(b);
  cache.emplace(b, s);
  return s;
}

}  // namespace curvekit
