#include "curvekit/pairpos.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "curvekit/normal.hpp"
#include "curvekit/surface.hpp"

namespace curvekit {

namespace {

struct Strand {
  std::vector<Transit> ts;
  std::vector<std::int64_t> w;
  // Incident transits of each edge point: the one entering through it and
  // the one leaving through it. They lie in the two triangles beside the
  // edge, and consecutive transits share a point.
  std::vector<std::vector<int>> enter, leave;
};

Strand make_strand(const Surface& S, const CurveKey& k) {
  Strand s;
  s.w = k.w;
  auto comps = trace_components(S, k.w);
  s.ts = std::move(comps.front().transits);
  s.enter.resize(static_cast<size_t>(S.edge_count()));
  s.leave.resize(static_cast<size_t>(S.edge_count()));
  for (int e = 0; e < S.edge_count(); ++e) {
    s.enter[static_cast<size_t>(e)].assign(static_cast<size_t>(k.w[static_cast<size_t>(e)]), -1);
    s.leave[static_cast<size_t>(e)].assign(static_cast<size_t>(k.w[static_cast<size_t>(e)]), -1);
  }
  for (size_t i = 0; i < s.ts.size(); ++i) {
    const Transit& t = s.ts[i];
    s.enter[static_cast<size_t>(t.edge_in)][static_cast<size_t>(t.k_in)] = static_cast<int>(i);
    s.leave[static_cast<size_t>(t.edge_out)][static_cast<size_t>(t.k_out)] = static_cast<int>(i);
  }
  return s;
}

struct Walker {
  int idx = 0;
  int dir = +1;  // +1 follows the traced order, -1 runs it backwards
};

struct PairState {
  const Surface& S;
  std::array<Strand, 2> strand;
  // Merged token order (curve, point index) along each edge, and the slot of
  // each curve point within it.
  std::vector<std::vector<std::pair<int, std::int64_t>>> M;
  std::vector<std::array<std::vector<int>, 2>> slot;
  std::set<std::pair<int, int>> live;  // interleaved (a-transit, c-transit) pairs
  long long stride = 0;

  explicit PairState(const Surface& s) : S(s) {}

  std::pair<int, std::int64_t> entry_point(int cu, Walker wk) const {
    const Transit& t = strand[static_cast<size_t>(cu)].ts[static_cast<size_t>(wk.idx)];
    return wk.dir > 0 ? std::pair<int, std::int64_t>{t.edge_in, t.k_in}
                      : std::pair<int, std::int64_t>{t.edge_out, t.k_out};
  }
  std::pair<int, std::int64_t> exit_point(int cu, Walker wk) const {
    const Transit& t = strand[static_cast<size_t>(cu)].ts[static_cast<size_t>(wk.idx)];
    return wk.dir > 0 ? std::pair<int, std::int64_t>{t.edge_out, t.k_out}
                      : std::pair<int, std::int64_t>{t.edge_in, t.k_in};
  }
  void advance(int cu, Walker& wk) const {
    const int n = static_cast<int>(strand[static_cast<size_t>(cu)].ts.size());
    wk.idx = (wk.idx + wk.dir + n) % n;
  }

  // Continuation of curve cu across the edge point, away from triangle t0.
  Walker away_from(int cu, int e, std::int64_t k, int t0) const {
    const Strand& s = strand[static_cast<size_t>(cu)];
    const int in = s.enter[static_cast<size_t>(e)][static_cast<size_t>(k)];
    const int out = s.leave[static_cast<size_t>(e)][static_cast<size_t>(k)];
    if (s.ts[static_cast<size_t>(in)].tri != t0) return {in, +1};
    if (s.ts[static_cast<size_t>(out)].tri != t0) return {out, -1};
    throw std::logic_error("pair position: edge point has no continuation");
  }

  // Circular boundary coordinate of an edge point within its triangle: sides
  // are walked in order, each in its own direction.
  long long bpos(const TriangleRef& tri, int cu, int e, std::int64_t k) const {
    int s = -1;
    for (int i = 0; i < 3; ++i)
      if (tri.side[static_cast<size_t>(i)] == e) s = i;
    if (s < 0) throw std::logic_error("pair position: edge not a side of its triangle");
    const long long L = static_cast<long long>(M[static_cast<size_t>(e)].size());
    const long long r = slot[static_cast<size_t>(e)][static_cast<size_t>(cu)][static_cast<size_t>(k)];
    const long long p = tri.fwd[static_cast<size_t>(s)] ? r : L - 1 - r;
    return s * stride + p;
  }

  bool interleaved(int ia, int jc) const {
    const Transit& ta = strand[0].ts[static_cast<size_t>(ia)];
    const Transit& tc = strand[1].ts[static_cast<size_t>(jc)];
    const TriangleRef& tri = S.triangles()[static_cast<size_t>(ta.tri)];
    long long x1 = bpos(tri, 0, ta.edge_in, ta.k_in);
    long long x2 = bpos(tri, 0, ta.edge_out, ta.k_out);
    if (x1 > x2) std::swap(x1, x2);
    const long long y1 = bpos(tri, 1, tc.edge_in, tc.k_in);
    const long long y2 = bpos(tri, 1, tc.edge_out, tc.k_out);
    return ((x1 < y1 && y1 < x2) != (x1 < y2 && y2 < x2));
  }

  bool adjacent(int e, std::int64_t ka, std::int64_t kc) const {
    const int sa = slot[static_cast<size_t>(e)][0][static_cast<size_t>(ka)];
    const int sc = slot[static_cast<size_t>(e)][1][static_cast<size_t>(kc)];
    return sa - sc == 1 || sc - sa == 1;
  }

  void swap_pair(int e, std::int64_t ka, std::int64_t kc) {
    int& sa = slot[static_cast<size_t>(e)][0][static_cast<size_t>(ka)];
    int& sc = slot[static_cast<size_t>(e)][1][static_cast<size_t>(kc)];
    if (sa - sc != 1 && sc - sa != 1)
      throw std::logic_error("pair position: swapping non-adjacent strands");
    std::swap(M[static_cast<size_t>(e)][static_cast<size_t>(sa)],
              M[static_cast<size_t>(e)][static_cast<size_t>(sc)]);
    std::swap(sa, sc);
  }

  // Walk the corridor leaving the crossing (ia, jc) through edge e. Returns
  // true when an innermost bigon was found and removed.
  bool try_corridor(int ia, int jc, int e, std::int64_t ka, std::int64_t kc) {
    if (!adjacent(e, ka, kc)) return false;
    const int t0 = strand[0].ts[static_cast<size_t>(ia)].tri;
    Walker wa = away_from(0, e, ka, t0);
    Walker wc = away_from(1, e, kc, t0);

    std::vector<std::tuple<int, std::int64_t, std::int64_t>> rungs{{e, ka, kc}};
    const size_t cap = strand[0].ts.size() + strand[1].ts.size() + 4;
    for (size_t step = 0; step < cap; ++step) {
      const Transit& ta = strand[0].ts[static_cast<size_t>(wa.idx)];
      const Transit& tc = strand[1].ts[static_cast<size_t>(wc.idx)];
      if (ta.tri != tc.tri)
        throw std::logic_error("pair position: corridor strands split");

      if (interleaved(wa.idx, wc.idx)) {
        // Closing crossing: swap the strand pair along every rung. This
        // flips exactly the two end interleavings (each end triangle has one
        // swapped side) and keeps every interior arc pair parallel (both of
        // its sides swap).
        for (const auto& [re, rka, rkc] : rungs) swap_pair(re, rka, rkc);
        live.erase({ia, jc});
        live.erase({wa.idx, wc.idx});
        return true;
      }
      if (ta.corner != tc.corner) return false;

      const auto [ea, ka2] = exit_point(0, wa);
      const auto [ec, kc2] = exit_point(1, wc);
      if (ea != ec) throw std::logic_error("pair position: parallel arcs exit apart");
      if (!adjacent(ea, ka2, kc2)) return false;
      rungs.emplace_back(ea, ka2, kc2);
      advance(0, wa);
      advance(1, wc);
    }
    throw std::logic_error("pair position: corridor never closed");
  }

  bool remove_one_bigon() {
    for (const auto& [ia, jc] : live) {
      const Transit& ta = strand[0].ts[static_cast<size_t>(ia)];
      const Transit& tc = strand[1].ts[static_cast<size_t>(jc)];
      const std::pair<int, std::int64_t> ends_a[2] = {{ta.edge_in, ta.k_in},
                                                      {ta.edge_out, ta.k_out}};
      const std::pair<int, std::int64_t> ends_c[2] = {{tc.edge_in, tc.k_in},
                                                      {tc.edge_out, tc.k_out}};
      for (const auto& pa : ends_a)
        for (const auto& pc : ends_c)
          if (pa.first == pc.first &&
              try_corridor(ia, jc, pa.first, pa.second, pc.second))
            return true;
    }
    return false;
  }
};

}  // namespace

PairPosition minimal_pair_position(const CurveKey& a, const CurveKey& c) {
  // Bound the weights before validation: validating traces the curve point
  // by point, which must not run on absurd inputs.
  if (total_weight(a) > (std::int64_t{1} << 30) || total_weight(c) > (std::int64_t{1} << 30))
    throw std::overflow_error("curve weights exceed the pairing bound");
  validate_key(a);
  validate_key(c);
  if (a.b != c.b) throw std::invalid_argument("curves live on different surfaces");

  auto Sp = Surface::get(a.b);
  const Surface& S = *Sp;
  PairState st(S);
  st.strand[0] = make_strand(S, a);
  st.strand[1] = make_strand(S, c);

  // Proportional merge: point i of n sits at (i+1)/(n+1), ties a first.
  st.M.resize(static_cast<size_t>(S.edge_count()));
  st.slot.resize(static_cast<size_t>(S.edge_count()));
  for (int e = 0; e < S.edge_count(); ++e) {
    const std::int64_t nA = a.w[static_cast<size_t>(e)], nC = c.w[static_cast<size_t>(e)];
    auto& m = st.M[static_cast<size_t>(e)];
    std::int64_t i = 0, j = 0;
    while (i < nA || j < nC) {
      if (j == nC || (i < nA && (i + 1) * (nC + 1) <= (j + 1) * (nA + 1)))
        m.emplace_back(0, i++);
      else
        m.emplace_back(1, j++);
    }
    st.slot[static_cast<size_t>(e)][0].assign(static_cast<size_t>(nA), -1);
    st.slot[static_cast<size_t>(e)][1].assign(static_cast<size_t>(nC), -1);
    for (size_t r = 0; r < m.size(); ++r)
      st.slot[static_cast<size_t>(e)][static_cast<size_t>(m[r].first)]
             [static_cast<size_t>(m[r].second)] = static_cast<int>(r);
    st.stride = std::max(st.stride, static_cast<long long>(m.size()) + 1);
  }

  // All crossings of the chord picture.
  std::vector<std::vector<int>> by_tri[2];
  for (int cu = 0; cu < 2; ++cu) {
    by_tri[cu].resize(static_cast<size_t>(S.triangle_count()));
    const auto& ts = st.strand[static_cast<size_t>(cu)].ts;
    for (size_t i = 0; i < ts.size(); ++i)
      by_tri[cu][static_cast<size_t>(ts[i].tri)].push_back(static_cast<int>(i));
  }
  for (int t = 0; t < S.triangle_count(); ++t)
    for (int ia : by_tri[0][static_cast<size_t>(t)])
      for (int jc : by_tri[1][static_cast<size_t>(t)])
        if (st.interleaved(ia, jc)) st.live.insert({ia, jc});

  while (st.remove_one_bigon()) {
  }

  PairPosition out;
  out.b = a.b;
  out.transits[0] = std::move(st.strand[0].ts);
  out.transits[1] = std::move(st.strand[1].ts);
  out.order = std::move(st.M);
  out.crossings.assign(st.live.begin(), st.live.end());
  return out;
}

std::int64_t intersection_number(const CurveKey& a, const CurveKey& c) {
  using MemoKey = std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>>;
  static std::mutex mu;
  static std::map<std::pair<int, MemoKey>, std::int64_t> memo;
  MemoKey mk = a.w <= c.w ? MemoKey{a.w, c.w} : MemoKey{c.w, a.w};
  {
    std::lock_guard<std::mutex> lk(mu);
    auto it = memo.find({a.b, mk});
    if (it != memo.end()) return it->second;
  }
  const auto out =
      static_cast<std::int64_t>(minimal_pair_position(a, c).crossings.size());
  std::lock_guard<std::mutex> lk(mu);
  memo.emplace(std::make_pair(a.b, std::move(mk)), out);
  return out;
}

}  // namespace curvekit
