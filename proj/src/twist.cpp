#include "curvekit/twist.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "curvekit/geom.hpp"

namespace curvekit {

namespace {

constexpr int kRings = 4;            // concentric layers between core and rim
constexpr int kSpokes = 2 * kRings;  // marked points per layer boundary
static_assert(kSpokes == 8, "marked-point table below is written for 8 spokes");

// Layer 0 bounds the core rectangle, layer kRings is the lens rim.
Rational layer_w(int j) { return Rational(3) + Rational(j, kRings); }
Rational layer_h(int j) { return Rational(1, 2) + Rational(j, 4 * kRings); }

struct Cell {
  Pt a, b, c;  // positively oriented
  Affine f;
};

struct TwistCells {
  Pt center;
  Rational rim_w, rim_h;
  std::vector<Cell> cells;
  std::vector<Pt> nodes;

  bool in_lens(const Pt& p) const {
    return p.x >= center.x - rim_w && p.x <= center.x + rim_w && p.y >= -rim_h &&
           p.y <= rim_h;
  }

  const Affine& cell_at(const Pt& p) const {
    for (const auto& c : cells)
      if (orient(c.a, c.b, p) >= 0 && orient(c.b, c.c, p) >= 0 &&
          orient(c.c, c.a, p) >= 0)
        return c.f;
    throw std::logic_error("twist: point in lens escaped every cell");
  }
};

Rational twice_area(const Pt& a, const Pt& b, const Pt& c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

// Marked point l of layer j, counterclockwise from the right side midpoint.
// Spokes alternate side midpoints and corners, so every layer corner is a
// cell vertex and the point reflection through the center is l -> l + 4.
Pt marked(const Pt& m, int j, int l) {
  l = ((l % kSpokes) + kSpokes) % kSpokes;
  const Rational w = layer_w(j), h = layer_h(j);
  switch (l) {
    case 0: return {m.x + w, 0};
    case 1: return {m.x + w, h};
    case 2: return {m.x, h};
    case 3: return {m.x - w, h};
    case 4: return {m.x - w, 0};
    case 5: return {m.x - w, -h};
    case 6: return {m.x, -h};
    default: return {m.x + w, -h};
  }
}

// The lens splits into a core rectangle and kRings concentric layers. The
// core maps by the point reflection through the center (which swaps the two
// punctures); layer j shifts its inner boundary one spoke further than its
// outer boundary, unwinding the half turn to the identity on the rim. Each
// piece is affine. Positive determinants everywhere plus a pointwise-fixed
// rim give degree one, so the pieces assemble to a homeomorphism of the lens
// that extends by the identity.
std::shared_ptr<const TwistCells> build_cells(int index, int sign) {
  auto tc = std::make_shared<TwistCells>();
  tc->center = {Rational(4 * index + 2), 0};
  tc->rim_w = layer_w(kRings);
  tc->rim_h = layer_h(kRings);

  auto node = [&](int j, int l) { return marked(tc->center, j, l); };
  auto add = [&](const Pt& a, const Pt& b, const Pt& c, const Pt& ia, const Pt& ib,
                 const Pt& ic) {
    if (orient(a, b, c) <= 0)
      throw std::logic_error("twist: cell not positively oriented");
    Cell cell{a, b, c, affine_from_triangles(a, b, c, ia, ib, ic)};
    if (cell.f.det() <= 0)
      throw std::logic_error("twist: piece reverses orientation");
    tc->cells.push_back(std::move(cell));
  };

  // Core fan; the +kRings shift is the half turn, the same for both signs.
  for (int l = 0; l < kSpokes; ++l)
    add(tc->center, node(0, l), node(0, l + 1),
        tc->center, node(0, l + kRings), node(0, l + 1 + kRings));

  for (int j = 1; j <= kRings; ++j) {
    const int s_in = sign * (kRings - j + 1);
    const int s_out = sign * (kRings - j);
    for (int l = 0; l < kSpokes; ++l) {
      const Pt A = node(j - 1, l), B = node(j - 1, l + 1);
      const Pt C = node(j, l), D = node(j, l + 1);
      const Pt Ai = node(j - 1, l + s_in), Bi = node(j - 1, l + 1 + s_in);
      const Pt Ci = node(j, l + s_out), Di = node(j, l + 1 + s_out);
      // The quad diagonal must follow the shear, or the sheared image of the
      // off-diagonal triangle folds over.
      if (sign > 0) {
        add(A, C, D, Ai, Ci, Di);
        add(A, D, B, Ai, Di, Bi);
      } else {
        add(A, C, B, Ai, Ci, Bi);
        add(C, D, B, Ci, Di, Bi);
      }
    }
  }

  Rational dom = 0, img = 0;
  for (const auto& c : tc->cells) {
    dom += twice_area(c.a, c.b, c.c);
    img += twice_area(c.f(c.a), c.f(c.b), c.f(c.c));
    for (const Pt* v : {&c.a, &c.b, &c.c}) {
      const bool on_rim = v->x == tc->center.x - tc->rim_w ||
                          v->x == tc->center.x + tc->rim_w || v->y == -tc->rim_h ||
                          v->y == tc->rim_h;
      if (on_rim && c.f(*v) != *v) throw std::logic_error("twist: rim not fixed");
    }
  }
  const Rational lens2 = 2 * (2 * tc->rim_w) * (2 * tc->rim_h);
  if (dom != lens2 || img != lens2)
    throw std::logic_error("twist: cells do not tile the lens");

  tc->nodes.push_back(tc->center);
  for (int j = 0; j <= kRings; ++j)
    for (int l = 0; l < kSpokes; ++l) tc->nodes.push_back(node(j, l));
  return tc;
}

std::shared_ptr<const TwistCells> cells_for(int index, int sign) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const TwistCells>> cache;
  std::lock_guard<std::mutex> lk(mu);
  auto& slot = cache[{index, sign}];
  if (!slot) slot = build_cells(index, sign);
  return slot;
}

Pt lerp(const Pt& a, const Pt& b, const Rational& t) { return a + t * (b - a); }

Rational param_on(const Pt& p, const Pt& a, const Pt& b) {
  if (a.x != b.x) return (p.x - a.x) / (b.x - a.x);
  return (p.y - a.y) / (b.y - a.y);
}

void check_letter(int b, const MappingLetter& l) {
  if (l.index < 1 || l.index >= b)
    throw std::invalid_argument("generator index out of range");
  if (l.sign != 1 && l.sign != -1)
    throw std::invalid_argument("generator sign must be +1 or -1");
}

}  // namespace

PLCurve map_through_halftwist(const Surface& S, const PLCurve& c, const MappingLetter& l) {
  check_letter(S.b(), l);
  auto tc = cells_for(l.index, l.sign);
  const Rational xlo = tc->center.x - tc->rim_w, xhi = tc->center.x + tc->rim_w;

  PLCurve out;
  const int n = c.size();
  for (int i = 0; i < n; ++i) {
    const Pt a = c.v[i], b = c.v[(i + 1) % n];
    const Sheet sh = c.sheet[i];
    auto push = [&](const Pt& p) {
      out.v.push_back(p);
      out.sheet.push_back(sh);
    };
    if (sh != Sheet::Front || (a.x < xlo && b.x < xlo) || (a.x > xhi && b.x > xhi) ||
        (a.y < -tc->rim_h && b.y < -tc->rim_h) ||
        (a.y > tc->rim_h && b.y > tc->rim_h)) {
      push(a);
      continue;
    }

    // Split the segment wherever it meets the cell complex, then map each
    // piece by the affine map of the cell its midpoint lies in. Pieces along
    // shared cell edges are consistent either way.
    std::vector<Rational> ts{Rational(0), Rational(1)};
    for (const auto& cell : tc->cells) {
      const Pt* tri[3] = {&cell.a, &cell.b, &cell.c};
      for (int e = 0; e < 3; ++e) {
        SegHit h = intersect_segments(a, b, *tri[e], *tri[(e + 1) % 3]);
        if (h.rel == SegRel::ProperCross) ts.push_back(h.s);
      }
    }
    for (const Pt& p : tc->nodes)
      if (point_on_open_segment(p, a, b)) ts.push_back(param_on(p, a, b));
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

    for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
      const Pt p0 = lerp(a, b, ts[k]);
      const Pt mid = lerp(a, b, (ts[k] + ts[k + 1]) / 2);
      if (tc->in_lens(mid))
        push(tc->cell_at(mid)(p0));
      else
        push(p0);
    }
  }

  for (std::size_t i = 0; i < out.v.size(); ++i)
    if (out.v[i] == out.v[(i + 1) % out.v.size()])
      throw std::logic_error("twist: degenerate image vertex");
  return out;
}

CurveKey apply_letter(const CurveKey& k, const MappingLetter& l) {
  check_letter(k.b, l);
  if (total_weight(k) > (std::int64_t{1} << 40))
    throw std::overflow_error("curve weights exceed the twist pipeline bound");
  validate_key(k);

  using MemoKey = std::tuple<int, int, int, std::vector<std::int64_t>>;
  static std::mutex mu;
  static std::map<MemoKey, CurveKey> memo;
  MemoKey mk{k.b, l.index, l.sign, k.w};
  {
    std::lock_guard<std::mutex> lk(mu);
    auto it = memo.find(mk);
    if (it != memo.end()) return it->second;
  }

  auto Sp = Surface::get(k.b);
  const Surface& S = *Sp;
  // Degenerate contacts between the image and the triangulation are isolated
  // in the realization depth, so shrinking the depth steps off them.
  for (int step = 0; step <= 100; ++step) {
    PLCurve img =
        map_through_halftwist(S, realize_curve_at(k, Rational(101 - step, 101)), l);
    try {
      CurveKey out = extract_key(S, img);
      std::lock_guard<std::mutex> lk(mu);
      memo.emplace(std::move(mk), out);
      return out;
    } catch (const std::runtime_error& e) {
      if (std::string(e.what()).rfind("degeneracy:", 0) != 0) throw;
    }
  }
  throw std::logic_error("twist: image stayed degenerate at every retry depth");
}

CurveKey apply_word(const CurveKey& k, const MappingWord& w) {
  CurveKey cur = k;
  for (auto it = w.rbegin(); it != w.rend(); ++it) cur = apply_letter(cur, *it);
  return cur;
}

MappingWord inverse_word(const MappingWord& w) {
  MappingWord inv(w.rbegin(), w.rend());
  for (auto& l : inv) l.sign = -l.sign;
  return inv;
}

LensBox halftwist_lens(int b, int index) {
  if (b < 4) throw std::invalid_argument("surface needs at least four punctures");
  check_letter(b, MappingLetter{index, +1});
  const Rational cx(4 * index + 2);
  return {cx - layer_w(kRings), cx + layer_w(kRings), -layer_h(kRings), layer_h(kRings)};
}

}  // namespace curvekit
