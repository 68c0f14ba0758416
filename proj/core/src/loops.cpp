#include "sixv/loops.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>

#include "sixv/error.hpp"

namespace sixv {

namespace {

enum Pos { PosW = 0, PosS = 1, PosE = 2, PosN = 3 };

struct VertexEdges {
  int l, b, r, t;
};

VertexEdges edges_at(const Domain& d, int vi) {
  const auto& fs = d.vertex_faces(vi);
  return {d.edge_index(fs[CornerSW], DirN), d.edge_index(fs[CornerSW], DirE),
          d.edge_index(fs[CornerSE], DirN), d.edge_index(fs[CornerNW], DirE)};
}

// Successor position for an incoming arrow, by vertex type. c-vertices
// (types 5, 6) use the left-turning split; types 1-4 have a unique
// noncrossing split.
int successor_pos(int type, int in_pos) {
  switch (type) {
    case 1: return in_pos == PosW ? PosN : PosE;  // W->N, S->E
    case 2: return in_pos == PosE ? PosS : PosW;  // E->S, N->W
    case 3: return in_pos == PosW ? PosS : PosE;  // W->S, N->E
    case 4: return in_pos == PosE ? PosN : PosW;  // E->N, S->W
    case 5: return in_pos == PosW ? PosN : PosS;  // W->N, E->S
    case 6: return in_pos == PosS ? PosW : PosE;  // S->W, N->E
  }
  throw Error("internal: bad vertex type");
}

// Head vertex of the arrow on edge e; (-1,-1) flag when it leaves through a
// cylinder end.
VertexCoord arrow_head(const Domain& d, const Arrows& a, int e) {
  auto ref = d.edge(e);
  FaceCoord f = d.face(ref.face);
  if (ref.dir == DirE) {
    // Primal vertical edge at column x+1, rows y..y+1.
    return a[e] ? VertexCoord{f.x + 1, f.y + 1} : VertexCoord{f.x + 1, f.y};
  }
  // Primal horizontal edge at row y+1.
  return a[e] ? VertexCoord{f.x + 1, f.y + 1} : VertexCoord{f.x, f.y + 1};
}

int incoming_pos(const VertexEdges& ve, int e) {
  if (e == ve.l) return PosW;
  if (e == ve.b) return PosS;
  if (e == ve.r) return PosE;
  if (e == ve.t) return PosN;
  throw Error("internal: edge not incident to vertex");
}

int edge_of_pos(const VertexEdges& ve, int pos) {
  switch (pos) {
    case PosW: return ve.l;
    case PosS: return ve.b;
    case PosE: return ve.r;
    case PosN: return ve.t;
  }
  throw Error("internal: bad position");
}

}  // namespace

LoopDecomposition loop_decompose(const Domain& d, const Arrows& a) {
  if (d.kind() != DomainKind::Cylinder)
    throw PreconditionError("loop_decompose: cylinder only");
  if (!satisfies_ice(d, a)) throw PreconditionError("loop_decompose: ice rule violated");

  std::vector<std::uint8_t> used(d.edge_count(), 0);
  LoopDecomposition out;

  auto follow = [&](int e0, LoopDecomposition::Path& p, bool stop_at_boundary) {
    int e = e0;
    while (true) {
      p.edges.push_back(e);
      used[e] = 1;
      VertexCoord head = arrow_head(d, a, e);
      int vi = d.vertex_index(head);
      if (vi < 0) {
        if (!stop_at_boundary) throw Error("internal: loop left the bulk");
        p.ends_bottom = head.y == 0;
        p.end_col = head.x;
        return;
      }
      VertexEdges ve = edges_at(d, vi);
      int type = vertex_type(d, a, vi);
      int nxt = edge_of_pos(ve, successor_pos(type, incoming_pos(ve, e)));
      if (!stop_at_boundary && nxt == e0) return;  // loop closed
      e = nxt;
    }
  };

  // Paths enter through stubs whose arrow points into the bulk: bottom
  // stubs pointing north, top stubs pointing south.
  const int n = d.size_n();
  const int m = d.size_m();
  for (int x = 0; x < n; ++x) {
    int e_b = d.edge_index(d.index_of({x, 0}), DirE);  // stub at column x+1
    if (a[e_b]) {
      LoopDecomposition::Path p;
      p.starts_bottom = true;
      p.start_col = (x + 1) % n;
      follow(e_b, p, true);
      out.paths.push_back(std::move(p));
    }
    int e_t = d.edge_index(d.index_of({x, m - 1}), DirE);
    if (!a[e_t]) {
      LoopDecomposition::Path p;
      p.starts_bottom = false;
      p.start_col = (x + 1) % n;
      follow(e_t, p, true);
      out.paths.push_back(std::move(p));
    }
  }
  for (int e = 0; e < d.edge_count(); ++e) {
    if (used[e]) continue;
    LoopDecomposition::Path p;
    p.is_loop = true;
    follow(e, p, false);
    out.loops.push_back(std::move(p));
  }
  // Edge-disjoint cover by construction; make sure nothing was missed.
  for (int e = 0; e < d.edge_count(); ++e)
    if (!used[e]) throw Error("internal: loop decomposition missed an edge");
  return out;
}

namespace {

struct CrossingRef {
  int path_idx;
  int col;
  bool up;
};

// Region to the right of gamma_low, bounded by the two paths: face flood
// fill blocked on path edges, seeded at the east face of the entry stub.
std::vector<std::uint8_t> right_region(const Domain& d, const std::vector<int>& gamma_low,
                                       const std::vector<int>& gamma_high) {
  std::vector<std::uint8_t> blocked(d.edge_count(), 0);
  for (int e : gamma_low) blocked[e] = 1;
  for (int e : gamma_high) blocked[e] = 1;

  // First edge of gamma_low is a bottom stub, the E-edge of some face f;
  // its east side is the E-neighbour of f.
  int e0 = gamma_low.front();
  auto ref = d.edge(e0);
  if (ref.dir != DirE) throw Error("internal: crossing does not start on a stub");
  int seed = d.edge_neighbors(ref.face)[DirE];

  std::vector<std::uint8_t> region(d.face_count(), 0);
  std::deque<int> q{seed};
  region[seed] = 1;
  while (!q.empty()) {
    int f = q.front();
    q.pop_front();
    for (int dir = 0; dir < 4; ++dir) {
      int g = d.edge_neighbors(f)[dir];
      if (g < 0 || region[g]) continue;
      int e = (dir == DirE || dir == DirN)
                  ? d.edge_index(f, dir)
                  : d.edge_index(g, dir == DirW ? DirE : DirN);
      if (e < 0 || blocked[e]) continue;
      region[g] = 1;
      q.push_back(g);
    }
  }
  // The west side of the entry stub must stay outside.
  if (region[ref.face]) throw Error("internal: reversal region wraps the cylinder");
  return region;
}

Arrows reverse_region(const Domain& d, const Arrows& a, const std::vector<int>& gamma_low,
                      const std::vector<int>& gamma_high,
                      const std::vector<std::uint8_t>& region) {
  std::vector<std::uint8_t> on_low(d.edge_count(), 0), on_high(d.edge_count(), 0);
  for (int e : gamma_low) on_low[e] = 1;
  for (int e : gamma_high) on_high[e] = 1;
  Arrows out = a;
  for (int e = 0; e < d.edge_count(); ++e) {
    if (on_low[e]) {
      out[e] ^= 1;
      continue;
    }
    if (on_high[e]) continue;
    auto [u, v] = d.edge_faces(e);
    if (region[u] != region[v]) throw Error("internal: non-path edge straddles the region");
    if (region[u]) out[e] ^= 1;
  }
  return out;
}

}  // namespace

MapTResult map_t(const Domain& d, const Arrows& a, int flux_l) {
  if (flux_l <= 0) throw PreconditionError("map_t: need positive flux");
  if (sector_flux(d, a) != flux_l)
    throw PreconditionError("map_t: configuration not in the requested sector");
  const int two_l = 2 * flux_l;

  LoopDecomposition dec = loop_decompose(d, a);
  std::vector<CrossingRef> crossings;
  for (size_t i = 0; i < dec.paths.size(); ++i) {
    const auto& p = dec.paths[i];
    if (p.upward_crossing() || p.downward_crossing())
      crossings.push_back({static_cast<int>(i), p.bottom_col(), p.upward_crossing()});
  }
  std::sort(crossings.begin(), crossings.end(),
            [](const CrossingRef& x, const CrossingRef& y) { return x.col < y.col; });
  int ups = 0, downs = 0;
  for (const auto& cr : crossings) (cr.up ? ups : downs)++;
  if (ups - downs != two_l) throw Error("internal: crossing count does not match the flux");

  // Leftmost family of 2L upward crossings whose consecutive gaps hold
  // equally many unselected up and down crossings: first solution of the
  // lexicographic backtracking over cyclic positions.
  const int nc = static_cast<int>(crossings.size());
  std::vector<int> chosen;
  std::function<bool(int, int)> pick = [&](int from, int need) -> bool {
    if (need == 0) return true;
    for (int i = from; i < nc; ++i) {
      if (!crossings[i].up) continue;
      if (!chosen.empty()) {
        int bal = 0;
        for (int j = chosen.back() + 1; j < i; ++j) bal += crossings[j].up ? 1 : -1;
        if (bal != 0) continue;
      }
      chosen.push_back(i);
      if (pick(i + 1, need - 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (!pick(0, two_l)) throw Error("internal: no balanced crossing family found");

  // i* minimizes the combined length of the paired crossings.
  int i_star = 0;
  size_t best = SIZE_MAX;
  for (int i = 0; i < flux_l; ++i) {
    size_t len = dec.paths[crossings[chosen[i]].path_idx].edges.size() +
                 dec.paths[crossings[chosen[i + flux_l]].path_idx].edges.size();
    if (len < best) {
      best = len;
      i_star = i;
    }
  }

  MapTResult res;
  res.i_star = i_star;
  res.gamma_low = dec.paths[crossings[chosen[i_star]].path_idx].edges;
  res.gamma_high = dec.paths[crossings[chosen[i_star + flux_l]].path_idx].edges;
  res.region = right_region(d, res.gamma_low, res.gamma_high);
  res.out = reverse_region(d, a, res.gamma_low, res.gamma_high, res.region);
  return res;
}

Arrows map_t_reconstruct(const Domain& d, const Arrows& image, const std::vector<int>& gamma_low,
                         const std::vector<int>& gamma_high) {
  auto region = right_region(d, gamma_low, gamma_high);
  return reverse_region(d, image, gamma_low, gamma_high, region);
}

std::set<int> vertical_level_crossings(const Domain& d, const Heights& h) {
  if (d.kind() != DomainKind::Cylinder)
    throw PreconditionError("vertical_level_crossings: cylinder only");
  const int n = d.size_n();
  const int m = d.size_m();
  std::set<int> out;
  std::set<int> levels(h.begin(), h.end());
  for (int v : levels) {
    std::vector<std::uint8_t> seen(d.face_count(), 0);
    std::deque<int> q;
    for (int x = 0; x < n; ++x) {
      int f = d.index_of({x, 0});
      if (h[f] == v) {
        seen[f] = 1;
        q.push_back(f);
      }
    }
    bool hit = false;
    while (!q.empty() && !hit) {
      int f = q.front();
      q.pop_front();
      if (d.face(f).y == m - 1) {
        hit = true;
        break;
      }
      for (int g : d.cross_neighbors(f))
        if (!seen[g] && h[g] == v) {
          seen[g] = 1;
          if (d.face(g).y == m - 1) hit = true;
          q.push_back(g);
        }
    }
    if (hit) out.insert(v);
  }
  return out;
}

bool has_level_pair(const Domain& d, const Arrows& balanced, int level_gap) {
  Heights h = arrows_to_height(d, balanced, d.index_of({0, 0}), d.parity(d.index_of({0, 0})));
  auto levels = vertical_level_crossings(d, h);
  for (int v : levels)
    if (levels.count(v + level_gap)) return true;
  return false;
}

}  // namespace sixv
