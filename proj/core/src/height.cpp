#include "sixv/height.hpp"

#include <algorithm>
#include <deque>

#include "sixv/error.hpp"

namespace sixv {

std::vector<std::uint8_t> BoundaryCondition::support_mask(const Domain& d) const {
  std::vector<std::uint8_t> m(d.face_count(), 0);
  for (int f : faces) {
    if (f < 0 || f >= d.face_count()) throw PreconditionError("boundary condition outside domain");
    m[f] = 1;
  }
  return m;
}

int checkerboard_value(const Domain& d, int face, int base) {
  int p = d.parity(face);
  int bp = ((base % 2) + 2) % 2;
  return (p == bp) ? base : base + 1;
}

BoundaryCondition checkerboard_condition(const Domain& d, const std::vector<int>& faces, int base) {
  BoundaryCondition bc;
  for (int f : faces) bc.add(f, checkerboard_value(d, f, base));
  return bc;
}

BoundaryCondition boundary_01(const Domain& d) {
  std::vector<int> faces;
  for (int f = 0; f < d.face_count(); ++f)
    if (d.is_boundary(f)) faces.push_back(f);
  return checkerboard_condition(d, faces, 0);
}

bool is_height_function(const Domain& d, const Heights& h) {
  if (static_cast<int>(h.size()) != d.face_count()) return false;
  for (int f = 0; f < d.face_count(); ++f) {
    if (((h[f] % 2) + 2) % 2 != d.parity(f)) return false;
    for (int g : d.edge_neighbors(f))
      if (g >= 0 && std::abs(h[f] - h[g]) != 1) return false;
  }
  return true;
}

bool leq(const Heights& h, const Heights& g) {
  for (size_t i = 0; i < h.size(); ++i)
    if (h[i] > g[i]) return false;
  return true;
}

namespace {

void check_parity(const Domain& d, const BoundaryCondition& xi) {
  for (size_t i = 0; i < xi.size(); ++i) {
    int f = xi.faces[i];
    if (f < 0 || f >= d.face_count()) throw PreconditionError("boundary condition outside domain");
    if (((xi.values[i] % 2) + 2) % 2 != d.parity(f))
      throw InadmissibleBoundary("boundary value has wrong parity", f);
  }
}

// Tropical BFS: g(x) = max_y (xi(y) - d(x,y)), computed by relaxing in
// decreasing value order (each relaxation lowers by exactly 1).
Heights tropical_extension(const Domain& d, const BoundaryCondition& xi, bool minimal) {
  const int nf = d.face_count();
  const int kUnset = INT32_MIN;
  std::vector<int> g(nf, kUnset);
  int vmax = INT32_MIN, vmin = INT32_MAX;
  for (size_t i = 0; i < xi.size(); ++i) {
    int f = xi.faces[i];
    int v = minimal ? xi.values[i] : -xi.values[i];
    if (g[f] != kUnset && g[f] != v)
      throw PreconditionError("duplicate boundary face with conflicting values");
    g[f] = v;
    vmax = std::max(vmax, v);
    vmin = std::min(vmin, v);
  }
  // Values decrease by one per step; range is bounded by vmax - (vmin - nf).
  const int floor_all = vmin - nf - 1;
  const int buckets = vmax - floor_all + 1;
  std::vector<std::vector<int>> bucket(buckets);
  for (size_t i = 0; i < xi.size(); ++i) bucket[g[xi.faces[i]] - floor_all].push_back(xi.faces[i]);
  std::vector<std::uint8_t> done(nf, 0);
  for (int b = buckets - 1; b >= 0; --b) {
    for (size_t qi = 0; qi < bucket[b].size(); ++qi) {
      int f = bucket[b][qi];
      if (done[f] || g[f] != b + floor_all) continue;
      done[f] = 1;
      for (int nb : d.edge_neighbors(f)) {
        if (nb < 0) continue;
        int cand = g[f] - 1;
        if (g[nb] == kUnset || cand > g[nb]) {
          g[nb] = cand;
          bucket[cand - floor_all].push_back(nb);
        }
      }
    }
  }
  for (int f = 0; f < nf; ++f)
    if (g[f] == kUnset)
      throw PreconditionError("boundary support does not reach every face (disconnected domain)");
  if (!minimal)
    for (auto& v : g) v = -v;
  return g;
}

}  // namespace

Heights min_extension(const Domain& d, const BoundaryCondition& xi, std::optional<int> floor) {
  if (xi.size() == 0) throw PreconditionError("min_extension: empty boundary condition");
  check_parity(d, xi);
  Heights g = tropical_extension(d, xi, /*minimal=*/true);
  if (floor) {
    for (int f = 0; f < d.face_count(); ++f)
      g[f] = std::max(g[f], checkerboard_value(d, f, *floor));
  }
  for (size_t i = 0; i < xi.size(); ++i)
    if (g[xi.faces[i]] != xi.values[i])
      throw InadmissibleBoundary("boundary condition admits no extension", xi.faces[i]);
  for (int f = 0; f < d.face_count(); ++f)
    for (int nb : d.edge_neighbors(f))
      if (nb >= 0 && std::abs(g[f] - g[nb]) != 1)
        throw InadmissibleBoundary("boundary condition admits no extension", f);
  return g;
}

Heights max_extension(const Domain& d, const BoundaryCondition& xi, std::optional<int> ceiling) {
  if (xi.size() == 0) throw PreconditionError("max_extension: empty boundary condition");
  check_parity(d, xi);
  Heights g = tropical_extension(d, xi, /*minimal=*/false);
  if (ceiling) {
    for (int f = 0; f < d.face_count(); ++f)
      g[f] = std::min(g[f], checkerboard_value(d, f, *ceiling - 1));
  }
  for (size_t i = 0; i < xi.size(); ++i)
    if (g[xi.faces[i]] != xi.values[i])
      throw InadmissibleBoundary("boundary condition admits no extension", xi.faces[i]);
  for (int f = 0; f < d.face_count(); ++f)
    for (int nb : d.edge_neighbors(f))
      if (nb >= 0 && std::abs(g[f] - g[nb]) != 1)
        throw InadmissibleBoundary("boundary condition admits no extension", f);
  return g;
}

bool is_admissible(const Domain& d, const BoundaryCondition& xi) {
  try {
    min_extension(d, xi);
    return true;
  } catch (const PreconditionError&) {
    return false;
  }
}

Arrows height_to_arrows(const Domain& d, const Heights& h) {
  if (!is_height_function(d, h)) throw PreconditionError("height_to_arrows: invalid height function");
  Arrows a(d.edge_count());
  for (int e = 0; e < d.edge_count(); ++e) {
    auto [f, g] = d.edge_faces(e);
    int dir = d.edge(e).dir;
    // E-edge: arrow north iff west face (owner) is higher.
    // N-edge: arrow east iff north face (neighbor) is higher.
    a[e] = (dir == DirE) ? (h[f] > h[g]) : (h[g] > h[f]);
  }
  return a;
}

Heights arrows_to_height(const Domain& d, const Arrows& a, int root_face, int root_value) {
  if (static_cast<int>(a.size()) != d.edge_count())
    throw PreconditionError("arrows_to_height: wrong edge count");
  if (root_face < 0 || root_face >= d.face_count())
    throw PreconditionError("arrows_to_height: root outside domain");
  if (((root_value % 2) + 2) % 2 != d.parity(root_face))
    throw PreconditionError("arrows_to_height: root value has wrong parity");

  // Increment across edge e from owner to neighbor.
  auto delta = [&](int e) {
    int dir = d.edge(e).dir;
    // E-edge, arrow north: owner (west) higher => neighbor = owner - 1.
    // N-edge, arrow east: neighbor (north) higher => neighbor = owner + 1.
    if (dir == DirE) return a[e] ? -1 : +1;
    return a[e] ? +1 : -1;
  };

  const int kUnset = INT32_MIN;
  Heights h(d.face_count(), kUnset);
  h[root_face] = root_value;
  std::deque<int> q{root_face};
  while (!q.empty()) {
    int f = q.front();
    q.pop_front();
    for (int dir : {DirE, DirN}) {
      int e = d.edge_index(f, dir);
      if (e < 0) continue;
      int g = d.edge_neighbors(f)[dir];
      int v = h[f] + delta(e);
      if (h[g] == kUnset) {
        h[g] = v;
        q.push_back(g);
      } else if (h[g] != v) {
        throw NoHeightFunction("arrow configuration has no consistent height function");
      }
    }
    // Also walk edges owned by neighbors pointing at f.
    for (int dir : {DirW, DirS}) {
      int g = d.edge_neighbors(f)[dir];
      if (g < 0) continue;
      int e = d.edge_index(g, dir == DirW ? DirE : DirN);
      if (e < 0) continue;
      int v = h[f] - delta(e);
      if (h[g] == kUnset) {
        h[g] = v;
        q.push_back(g);
      } else if (h[g] != v) {
        throw NoHeightFunction("arrow configuration has no consistent height function");
      }
    }
  }
  // Final consistency sweep over every edge (detects winding on wrapped
  // domains even when BFS happened to avoid the offending edge).
  for (int e = 0; e < d.edge_count(); ++e) {
    auto [f, g] = d.edge_faces(e);
    if (h[f] == kUnset || h[g] == kUnset)
      throw PreconditionError("arrows_to_height: domain is disconnected");
    if (h[g] != h[f] + delta(e))
      throw NoHeightFunction("arrow configuration has no consistent height function");
  }
  return h;
}

namespace {

// Orientation booleans around an interior vertex: l,b,r,t with
// l,r = east?, b,t = north? of the four incident primal edges.
struct VertexArrows {
  bool l, b, r, t;
};

VertexArrows vertex_arrows(const Domain& d, const Arrows& a, int vi) {
  const auto& fs = d.vertex_faces(vi);
  int e_l = d.edge_index(fs[CornerSW], DirN);  // west primal H edge
  int e_r = d.edge_index(fs[CornerSE], DirN);  // east primal H edge
  int e_b = d.edge_index(fs[CornerSW], DirE);  // south primal V edge
  int e_t = d.edge_index(fs[CornerNW], DirE);  // north primal V edge
  if (e_l < 0 || e_r < 0 || e_b < 0 || e_t < 0)
    throw Error("internal: interior vertex with missing incident edge");
  return {a[e_l] != 0, a[e_b] != 0, a[e_r] != 0, a[e_t] != 0};
}

}  // namespace

int vertex_type(const Domain& d, const Arrows& a, int vertex_idx) {
  VertexArrows v = vertex_arrows(d, a, vertex_idx);
  // (l,b,r,t) with + = east/north:
  if (v.l && v.b && v.r && v.t) return 1;
  if (!v.l && !v.b && !v.r && !v.t) return 2;
  if (v.l && !v.b && v.r && !v.t) return 3;
  if (!v.l && v.b && !v.r && v.t) return 4;
  if (v.l && !v.b && !v.r && v.t) return 5;
  if (!v.l && v.b && v.r && !v.t) return 6;
  throw PreconditionError("ice rule violated at vertex");
}

bool satisfies_ice(const Domain& d, const Arrows& a) {
  for (int vi = 0; vi < d.vertex_count(); ++vi) {
    try {
      vertex_type(d, a, vi);
    } catch (const PreconditionError&) {
      return false;
    }
  }
  return true;
}

bool is_c_vertex(const Domain& d, const Heights& h, int vertex_idx) {
  const auto& fs = d.vertex_faces(vertex_idx);
  return h[fs[CornerSW]] == h[fs[CornerNE]] && h[fs[CornerSE]] == h[fs[CornerNW]];
}

int count_c_vertices(const Domain& d, const Heights& h) {
  int n = 0;
  for (int vi = 0; vi < d.vertex_count(); ++vi) n += is_c_vertex(d, h, vi);
  return n;
}

bool is_balanced(const Domain& t, const Arrows& a) {
  if (t.kind() != DomainKind::Torus) throw PreconditionError("is_balanced: torus only");
  const int n = t.size_n();
  // Row y: the N vertical primal edges through that face row are the
  // E-edges of faces (x-1, y); count north arrows.
  for (int y = 0; y < n; ++y) {
    int up = 0;
    for (int x = 0; x < n; ++x) {
      int f = t.index_of({x, y});
      int e = t.edge_index(f, DirE);
      up += a[e] ? 1 : 0;
    }
    if (2 * up != n) return false;
  }
  for (int x = 0; x < n; ++x) {
    int east = 0;
    for (int y = 0; y < n; ++y) {
      int f = t.index_of({x, y});
      int e = t.edge_index(f, DirN);
      east += a[e] ? 1 : 0;
    }
    if (2 * east != n) return false;
  }
  return true;
}

int sector_flux(const Domain& c, const Arrows& a) {
  if (c.kind() != DomainKind::Cylinder) throw PreconditionError("sector_flux: cylinder only");
  const int n = c.size_n();
  int flux0 = 0;
  for (int y = 0; y < c.size_m(); ++y) {
    int up = 0;
    for (int x = 0; x < n; ++x) {
      int f = c.index_of({x, y});
      int e = c.edge_index(f, DirE);
      up += a[e] ? 1 : 0;
    }
    int flux = 2 * up - n;  // #up - #down
    if (flux % 2 != 0) throw Error("internal: odd row flux");
    if (y == 0)
      flux0 = flux;
    else if (flux != flux0)
      throw PreconditionError("sector_flux: row flux not conserved (ice rule violated)");
  }
  return flux0 / 2;
}

}  // namespace sixv
