#include "sixv/domain.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

#include "sixv/error.hpp"

namespace sixv {

std::vector<FaceCoord> lambda_faces(int n) {
  if (n <= 0) throw PreconditionError("lambda_faces: n must be positive");
  std::vector<FaceCoord> out;
  out.reserve(4 * n * n);
  for (int y = -n; y <= n - 1; ++y)
    for (int x = -n; x <= n - 1; ++x) out.push_back({x, y});
  return out;
}

std::vector<FaceCoord> annulus_faces(int n, int N) {
  if (!(0 < n && n < N)) throw PreconditionError("annulus_faces: need 0 < n < N");
  std::vector<FaceCoord> out;
  for (int y = -N; y <= N - 1; ++y)
    for (int x = -N; x <= N - 1; ++x) {
      FaceCoord f{x, y};
      if (!lambda_contains(n, f)) out.push_back(f);
    }
  return out;
}

std::vector<VertexCoord> lambda_vertices(int n) {
  std::vector<VertexCoord> out;
  for (int y = -n + 1; y <= n - 1; ++y)
    for (int x = -n + 1; x <= n - 1; ++x) out.push_back({x, y});
  return out;
}

namespace {

int wrap(int a, int n) { return ((a % n) + n) % n; }

}  // namespace

FaceCoord Domain::canonical(FaceCoord f) const {
  switch (kind_) {
    case DomainKind::PlanePatch:
      return f;
    case DomainKind::Torus:
      return {wrap(f.x, n_), wrap(f.y, n_)};
    case DomainKind::Cylinder:
      return {wrap(f.x, n_), f.y};
  }
  return f;
}

int Domain::index_of(FaceCoord f) const {
  FaceCoord c = canonical(f);
  auto it = face_idx_.find(coord_key(c.x, c.y));
  return it == face_idx_.end() ? -1 : it->second;
}

int Domain::vertex_index(VertexCoord v) const {
  VertexCoord c = v;
  if (kind_ != DomainKind::PlanePatch) c.x = wrap(c.x, n_);
  if (kind_ == DomainKind::Torus) c.y = wrap(c.y, n_);
  auto it = vert_idx_.find(coord_key(c.x, c.y));
  return it == vert_idx_.end() ? -1 : it->second;
}

bool Domain::vertex_has(VertexCoord v) const { return vertex_index(v) >= 0; }

std::pair<int, int> Domain::edge_faces(int e) const {
  EdgeRef r = edges_[e];
  return {r.face, adj_[r.face][r.dir]};
}

namespace {

// Corner offsets of face (x,y): SW,SE,NW,NE lattice vertices.
constexpr int kCornerDx[4] = {0, 1, 0, 1};
constexpr int kCornerDy[4] = {0, 0, 1, 1};
// Diagonal face across each corner.
constexpr int kDiagDx[4] = {-1, 1, -1, 1};
constexpr int kDiagDy[4] = {-1, -1, 1, 1};
// The two companion directions at each corner (edge-neighbours sharing it).
constexpr int kCompanion[4][2] = {
    {DirW, DirS}, {DirE, DirS}, {DirW, DirN}, {DirE, DirN}};

constexpr int kDirDx[4] = {1, 0, -1, 0};
constexpr int kDirDy[4] = {0, 1, 0, -1};

}  // namespace

void Domain::finish_build() {
  const int nf = face_count();
  parity_.resize(nf);
  for (int i = 0; i < nf; ++i) parity_[i] = static_cast<std::uint8_t>(face_parity(faces_[i]));
  boundary_count_ = 0;
  for (auto b : boundary_) boundary_count_ += b;

  // Interior-vertex faces.
  vert_faces_.resize(verts_.size());
  for (size_t vi = 0; vi < verts_.size(); ++vi) {
    VertexCoord v = verts_[vi];
    std::array<int, 4> fs{};
    fs[CornerSW] = index_of({v.x - 1, v.y - 1});
    fs[CornerSE] = index_of({v.x, v.y - 1});
    fs[CornerNW] = index_of({v.x - 1, v.y});
    fs[CornerNE] = index_of({v.x, v.y});
    for (int s = 0; s < 4; ++s)
      if (fs[s] < 0) throw Error("internal: interior vertex misses a face");
    vert_faces_[vi] = fs;
  }

  // Corner diagonals.
  corner_diag_.assign(nf, {-1, -1, -1, -1});
  for (int i = 0; i < nf; ++i) {
    FaceCoord f = faces_[i];
    for (int c = 0; c < 4; ++c) {
      VertexCoord v{f.x + kCornerDx[c], f.y + kCornerDy[c]};
      if (!vertex_has(v)) continue;
      int d = index_of({f.x + kDiagDx[c], f.y + kDiagDy[c]});
      if (d < 0) throw Error("internal: diagonal face of interior corner missing");
      corner_diag_[i][c] = d;
    }
  }

  // x-adjacency: diagonal face present and reachable through a companion
  // face with both dual edges inside the domain.
  cross_.assign(nf, {});
  for (int i = 0; i < nf; ++i) {
    FaceCoord f = faces_[i];
    for (int c = 0; c < 4; ++c) {
      int d = index_of({f.x + kDiagDx[c], f.y + kDiagDy[c]});
      if (d < 0 || d == i) continue;
      bool linked = false;
      for (int w : kCompanion[c]) {
        int comp = adj_[i][w];
        if (comp < 0) continue;
        // The companion must also be edge-adjacent to the diagonal face.
        const auto& ca = adj_[comp];
        if (ca[DirE] == d || ca[DirN] == d || ca[DirW] == d || ca[DirS] == d) {
          linked = true;
          break;
        }
      }
      if (linked) cross_[i].push_back(d);
    }
    auto& v = cross_[i];
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }

  // Edge list: each dual edge owned by (face, E|N).
  edge_idx_.assign(nf, {-1, -1});
  for (int i = 0; i < nf; ++i)
    for (int dir : {DirE, DirN})
      if (adj_[i][dir] >= 0) {
        edge_idx_[i][dir] = static_cast<int>(edges_.size());
        edges_.push_back({i, dir});
      }
}

Domain Domain::plane_patch(std::vector<VertexCoord> vertices) {
  if (vertices.empty()) throw PreconditionError("plane_patch: empty vertex set");
  std::sort(vertices.begin(), vertices.end(),
            [](VertexCoord a, VertexCoord b) { return std::tie(a.y, a.x) < std::tie(b.y, b.x); });
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());

  std::unordered_set<std::uint64_t> vset;
  for (auto v : vertices) vset.insert(coord_key(v.x, v.y));
  auto in_v = [&](int x, int y) { return vset.count(coord_key(x, y)) > 0; };

  // Connectivity of V in the square-grid graph.
  {
    std::unordered_set<std::uint64_t> seen;
    std::deque<VertexCoord> q{vertices[0]};
    seen.insert(coord_key(vertices[0].x, vertices[0].y));
    while (!q.empty()) {
      auto v = q.front();
      q.pop_front();
      for (int d = 0; d < 4; ++d) {
        int x = v.x + kDirDx[d], y = v.y + kDirDy[d];
        if (in_v(x, y) && seen.insert(coord_key(x, y)).second) q.push_back({x, y});
      }
    }
    if (seen.size() != vertices.size())
      throw PreconditionError("plane_patch: vertex set is not connected");
  }

  Domain D;
  D.kind_ = DomainKind::PlanePatch;

  std::unordered_set<std::uint64_t> fset;
  std::vector<FaceCoord> faces;
  for (auto v : vertices)
    for (int c = 0; c < 4; ++c) {
      FaceCoord f{v.x - kCornerDx[c], v.y - kCornerDy[c]};
      if (fset.insert(coord_key(f.x, f.y)).second) faces.push_back(f);
    }
  std::sort(faces.begin(), faces.end(),
            [](FaceCoord a, FaceCoord b) { return std::tie(a.y, a.x) < std::tie(b.y, b.x); });
  D.faces_ = std::move(faces);
  for (int i = 0; i < static_cast<int>(D.faces_.size()); ++i)
    D.face_idx_[coord_key(D.faces_[i].x, D.faces_[i].y)] = i;

  D.boundary_.resize(D.faces_.size());
  for (size_t i = 0; i < D.faces_.size(); ++i) {
    FaceCoord f = D.faces_[i];
    bool all_in = true;
    for (int c = 0; c < 4; ++c)
      all_in = all_in && in_v(f.x + kCornerDx[c], f.y + kCornerDy[c]);
    D.boundary_[i] = !all_in;
  }

  D.verts_ = std::move(vertices);
  for (int i = 0; i < static_cast<int>(D.verts_.size()); ++i)
    D.vert_idx_[coord_key(D.verts_[i].x, D.verts_[i].y)] = i;

  // Dual edge present iff the crossed primal edge has an endpoint in V.
  D.adj_.assign(D.faces_.size(), {-1, -1, -1, -1});
  for (size_t i = 0; i < D.faces_.size(); ++i) {
    FaceCoord f = D.faces_[i];
    // E: crosses primal edge (x+1,y)-(x+1,y+1).
    if (int j = D.index_of({f.x + 1, f.y}); j >= 0)
      if (in_v(f.x + 1, f.y) || in_v(f.x + 1, f.y + 1)) D.adj_[i][DirE] = j;
    // N: crosses primal edge (x,y+1)-(x+1,y+1).
    if (int j = D.index_of({f.x, f.y + 1}); j >= 0)
      if (in_v(f.x, f.y + 1) || in_v(f.x + 1, f.y + 1)) D.adj_[i][DirN] = j;
    // W: crosses primal edge (x,y)-(x,y+1).
    if (int j = D.index_of({f.x - 1, f.y}); j >= 0)
      if (in_v(f.x, f.y) || in_v(f.x, f.y + 1)) D.adj_[i][DirW] = j;
    // S: crosses primal edge (x,y)-(x+1,y).
    if (int j = D.index_of({f.x, f.y - 1}); j >= 0)
      if (in_v(f.x, f.y) || in_v(f.x + 1, f.y)) D.adj_[i][DirS] = j;
  }

  D.finish_build();
  return D;
}

Domain Domain::torus(int n) {
  if (n <= 0 || n % 2 != 0) throw PreconditionError("torus: N must be positive and even");
  Domain D;
  D.kind_ = DomainKind::Torus;
  D.n_ = n;
  D.m_ = n;
  D.faces_.reserve(static_cast<size_t>(n) * n);
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x) D.faces_.push_back({x, y});
  for (int i = 0; i < static_cast<int>(D.faces_.size()); ++i)
    D.face_idx_[coord_key(D.faces_[i].x, D.faces_[i].y)] = i;
  D.boundary_.assign(D.faces_.size(), 0);

  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x) D.verts_.push_back({x, y});
  for (int i = 0; i < static_cast<int>(D.verts_.size()); ++i)
    D.vert_idx_[coord_key(D.verts_[i].x, D.verts_[i].y)] = i;

  D.adj_.assign(D.faces_.size(), {-1, -1, -1, -1});
  for (size_t i = 0; i < D.faces_.size(); ++i) {
    FaceCoord f = D.faces_[i];
    for (int d = 0; d < 4; ++d)
      D.adj_[i][d] = D.index_of({f.x + kDirDx[d], f.y + kDirDy[d]});
  }

  D.finish_build();
  return D;
}

Domain Domain::cylinder(int n, int m) {
  if (n <= 0 || n % 2 != 0) throw PreconditionError("cylinder: N must be positive and even");
  if (m < 2) throw PreconditionError("cylinder: M must be at least 2");
  Domain D;
  D.kind_ = DomainKind::Cylinder;
  D.n_ = n;
  D.m_ = m;
  for (int y = 0; y < m; ++y)
    for (int x = 0; x < n; ++x) D.faces_.push_back({x, y});
  for (int i = 0; i < static_cast<int>(D.faces_.size()); ++i)
    D.face_idx_[coord_key(D.faces_[i].x, D.faces_[i].y)] = i;

  D.boundary_.assign(D.faces_.size(), 0);
  for (size_t i = 0; i < D.faces_.size(); ++i)
    D.boundary_[i] = (D.faces_[i].y == 0 || D.faces_[i].y == m - 1);

  // Ice vertices: rows 1..m-1 between face rows.
  for (int y = 1; y <= m - 1; ++y)
    for (int x = 0; x < n; ++x) D.verts_.push_back({x, y});
  for (int i = 0; i < static_cast<int>(D.verts_.size()); ++i)
    D.vert_idx_[coord_key(D.verts_[i].x, D.verts_[i].y)] = i;

  D.adj_.assign(D.faces_.size(), {-1, -1, -1, -1});
  for (size_t i = 0; i < D.faces_.size(); ++i) {
    FaceCoord f = D.faces_[i];
    for (int d = 0; d < 4; ++d) {
      int y = f.y + kDirDy[d];
      if (y < 0 || y >= m) continue;
      D.adj_[i][d] = D.index_of({f.x + kDirDx[d], y});
    }
  }

  D.finish_build();
  return D;
}

std::optional<int> Domain::distance(int u, int v) const {
  if (u < 0 || u >= face_count() || v < 0 || v >= face_count())
    throw PreconditionError("distance: face outside domain");
  if (u == v) return 0;
  std::vector<int> dist(face_count(), -1);
  std::deque<int> q{u};
  dist[u] = 0;
  while (!q.empty()) {
    int f = q.front();
    q.pop_front();
    for (int g : adj_[f]) {
      if (g < 0 || dist[g] >= 0) continue;
      dist[g] = dist[f] + 1;
      if (g == v) return dist[g];
      q.push_back(g);
    }
  }
  return std::nullopt;
}

std::vector<int> Domain::distances_from(std::span<const int> sources) const {
  std::vector<int> dist(face_count(), -1);
  std::deque<int> q;
  for (int s : sources) {
    if (s < 0 || s >= face_count()) throw PreconditionError("distances_from: bad source");
    if (dist[s] != 0) {
      dist[s] = 0;
      q.push_back(s);
    }
  }
  while (!q.empty()) {
    int f = q.front();
    q.pop_front();
    for (int g : adj_[f])
      if (g >= 0 && dist[g] < 0) {
        dist[g] = dist[f] + 1;
        q.push_back(g);
      }
  }
  return dist;
}

bool Domain::connected() const {
  if (face_count() == 0) return false;
  int src[1] = {0};
  auto d = distances_from(src);
  return std::none_of(d.begin(), d.end(), [](int x) { return x < 0; });
}

Domain lambda_domain(int n) { return Domain::plane_patch(lambda_vertices(n)); }

}  // namespace sixv
