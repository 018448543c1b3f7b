#include "curvekit/normal.hpp"

#include <map>
#include <stdexcept>

namespace curvekit {

bool admissible(const Surface& S, const std::vector<std::int64_t>& w, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (static_cast<int>(w.size()) != S.edge_count()) return fail("weight vector length mismatch");
  for (auto v : w)
    if (v < 0) return fail("negative weight");
  for (int t = 0; t < S.triangle_count(); ++t) {
    const auto& tri = S.triangles()[static_cast<size_t>(t)];
    std::int64_t a = w[static_cast<size_t>(tri.side[0])];
    std::int64_t b = w[static_cast<size_t>(tri.side[1])];
    std::int64_t c = w[static_cast<size_t>(tri.side[2])];
    if ((a + b + c) % 2 != 0) return fail("odd side sum in triangle " + std::to_string(t));
    if (a > b + c || b > a + c || c > a + b)
      return fail("triangle inequality fails in triangle " + std::to_string(t));
  }
  return true;
}

std::array<std::int64_t, 3> corner_counts(const Surface& S, const TriangleRef& t,
                                          const std::vector<std::int64_t>& w) {
  (void)S;
  std::array<std::int64_t, 3> n{};
  for (int c = 0; c < 3; ++c) {
    std::int64_t wc = w[static_cast<size_t>(t.side[static_cast<size_t>(c)])];
    std::int64_t wn = w[static_cast<size_t>(t.side[static_cast<size_t>((c + 1) % 3)])];
    std::int64_t wo = w[static_cast<size_t>(t.side[static_cast<size_t>((c + 2) % 3)])];
    n[static_cast<size_t>(c)] = (wc + wn - wo) / 2;
  }
  return n;
}

std::vector<std::int64_t> vertex_link_weights(const Surface& S, int puncture) {
  std::vector<std::int64_t> w(static_cast<size_t>(S.edge_count()), 0);
  for (int e = 0; e < S.edge_count(); ++e) {
    const auto& eg = S.edge(e);
    if (eg.tail == puncture || eg.head == puncture) w[static_cast<size_t>(e)] = 1;
  }
  return w;
}

namespace {

// Local index of edge point k on side s of triangle t (0 at the corner the
// boundary walk enters the side from).
std::int64_t local_index(const TriangleRef& t, int s, std::int64_t we, std::int64_t k) {
  return t.fwd[static_cast<size_t>(s)] ? k : we - 1 - k;
}

std::int64_t edge_index_from_local(const TriangleRef& t, int s, std::int64_t we, std::int64_t d) {
  return t.fwd[static_cast<size_t>(s)] ? d : we - 1 - d;
}

}  // namespace

std::vector<TracedComponent> trace_components(const Surface& S,
                                              const std::vector<std::int64_t>& w) {
  std::string why;
  if (!admissible(S, w, &why)) throw std::invalid_argument("malformed-key: " + why);

  std::vector<std::vector<char>> visited(static_cast<size_t>(S.edge_count()));
  for (int e = 0; e < S.edge_count(); ++e)
    visited[static_cast<size_t>(e)].assign(static_cast<size_t>(w[static_cast<size_t>(e)]), 0);

  std::vector<TracedComponent> out;

  for (int e0 = 0; e0 < S.edge_count(); ++e0) {
    for (std::int64_t k0 = 0; k0 < w[static_cast<size_t>(e0)]; ++k0) {
      if (visited[static_cast<size_t>(e0)][static_cast<size_t>(k0)]) continue;

      TracedComponent comp;
      comp.weights.assign(static_cast<size_t>(S.edge_count()), 0);

      // Walk forward: start by entering the triangle on the forward side.
      int e = e0;
      std::int64_t k = k0;
      bool into_fwd = true;
      while (true) {
        if (visited[static_cast<size_t>(e)][static_cast<size_t>(k)]) {
          // must have closed up exactly at the start
          if (e != e0 || k != k0)
            throw std::logic_error("normal trace failed to close up");
          break;
        }
        visited[static_cast<size_t>(e)][static_cast<size_t>(k)] = 1;
        comp.weights[static_cast<size_t>(e)]++;

        auto [t, s] = S.coside(e, into_fwd);
        const TriangleRef& tri = S.triangles()[static_cast<size_t>(t)];
        auto n = corner_counts(S, tri, w);
        std::int64_t d = local_index(tri, s, w[static_cast<size_t>(e)], k);

        int corner;
        int s_out;
        std::int64_t d_out;
        std::int64_t arc;
        int tail_corner = (s + 2) % 3;
        if (d < n[static_cast<size_t>(tail_corner)]) {
          // turn around the corner at the walk-tail of this side
          corner = tail_corner;
          s_out = (s + 2) % 3;
          std::int64_t wout = w[static_cast<size_t>(tri.side[static_cast<size_t>(s_out)])];
          d_out = wout - 1 - d;
          arc = d;
        } else {
          corner = s;
          arc = w[static_cast<size_t>(e)] - 1 - d;
          if (arc >= n[static_cast<size_t>(s)])
            throw std::logic_error("normal trace: point in no corner range");
          s_out = (s + 1) % 3;
          d_out = arc;
        }
        int e_out = tri.side[static_cast<size_t>(s_out)];
        std::int64_t k_out =
            edge_index_from_local(tri, s_out, w[static_cast<size_t>(e_out)], d_out);

        comp.transits.push_back(Transit{t, corner, arc, e, k, e_out, k_out});

        // Continue into the triangle on the other side of the exit edge.
        bool exited_fwd_side = tri.fwd[static_cast<size_t>(s_out)];
        e = e_out;
        k = k_out;
        into_fwd = !exited_fwd_side;
      }
      out.push_back(std::move(comp));
    }
  }
  return out;
}

bool is_vertex_link(const Surface& S, const std::vector<std::int64_t>& w, int* puncture) {
  for (int v = 1; v <= S.b(); ++v) {
    if (w == vertex_link_weights(S, v)) {
      if (puncture) *puncture = v;
      return true;
    }
  }
  return false;
}

void validate_key(const CurveKey& k) {
  if (k.b < 4) throw std::invalid_argument("malformed-key: puncture count below 4");
  auto S = Surface::get(k.b);
  std::string why;
  if (!admissible(*S, k.w, &why)) throw std::invalid_argument("malformed-key: " + why);
  std::int64_t total = 0;
  for (auto v : k.w) total += v;
  if (total == 0) throw std::invalid_argument("malformed-key: empty curve");
  auto comps = trace_components(*S, k.w);
  if (comps.size() != 1)
    throw std::invalid_argument("malformed-key: " + std::to_string(comps.size()) +
                                " components, expected 1");
  if (is_vertex_link(*S, k.w))
    throw std::invalid_argument("malformed-key: peripheral (puncture-parallel) curve");
}

}  // namespace curvekit
