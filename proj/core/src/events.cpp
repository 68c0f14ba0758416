#include "sixv/events.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "sixv/enumerate.hpp"
#include "sixv/error.hpp"

namespace sixv {

bool crossing(const Domain& d, const Heights& h, std::span<const int> a, std::span<const int> b,
              HeightPred pred, Adjacency adj) {
  std::vector<std::uint8_t> ok(d.face_count());
  for (int f = 0; f < d.face_count(); ++f) ok[f] = pred.holds(h[f]);
  std::vector<std::uint8_t> target(d.face_count(), 0);
  for (int f : b) {
    if (f < 0 || f >= d.face_count()) throw PreconditionError("crossing: face outside domain");
    target[f] = 1;
  }
  std::vector<std::uint8_t> seen(d.face_count(), 0);
  std::deque<int> q;
  bool hit = false;
  auto push = [&](int g) {
    if (g >= 0 && ok[g] && !seen[g]) {
      seen[g] = 1;
      if (target[g]) hit = true;
      q.push_back(g);
    }
  };
  for (int f : a) {
    if (f < 0 || f >= d.face_count()) throw PreconditionError("crossing: face outside domain");
    push(f);
  }
  while (!q.empty() && !hit) {
    int f = q.front();
    q.pop_front();
    if (adj == Adjacency::Edge)
      for (int g : d.edge_neighbors(f)) push(g);
    else
      for (int g : d.cross_neighbors(f)) push(g);
  }
  return hit;
}

namespace {

// Union-find with integer potentials phi; merging an edge u->v of weight w
// asserts phi(v) - phi(u) = w. A conflict is a cycle of nonzero total
// weight, i.e. nonzero winding.
struct WindingDsu {
  std::vector<int> parent, rank_;
  std::vector<long long> pot;  // potential relative to parent

  explicit WindingDsu(int n) : parent(n), rank_(n, 0), pot(n, 0) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  std::pair<int, long long> find(int x) {
    if (parent[x] == x) return {x, 0};
    auto [r, p] = find(parent[x]);
    parent[x] = r;
    pot[x] += p;
    return {r, pot[x]};
  }
  // Returns true when a nonzero-winding cycle is detected.
  bool unite(int u, int v, long long w) {
    auto [ru, pu] = find(u);
    auto [rv, pv] = find(v);
    if (ru == rv) return pv - pu != w;
    // Constraint phi(v) - phi(u) = w; pot stores phi(x) - phi(parent(x)).
    if (rank_[ru] < rank_[rv]) {
      parent[ru] = rv;
      pot[ru] = pv - pu - w;
    } else {
      parent[rv] = ru;
      pot[rv] = pu + w - pv;
      if (rank_[ru] == rank_[rv]) ++rank_[ru];
    }
    return false;
  }
};

// Signed crossing of the cut ray {y = 0, x > 0} by the step between face
// centers; the ray runs from inside the hole to infinity.
int cut_weight(FaceCoord u, FaceCoord v) {
  if (u.y == -1 && v.y == 0) return (u.x + v.x >= 0) ? +1 : 0;
  if (u.y == 0 && v.y == -1) return (u.x + v.x >= 0) ? -1 : 0;
  return 0;
}

}  // namespace

bool circuit(const Domain& d, const Heights& h, int n, int N, HeightPred pred, Adjacency adj) {
  if (!(0 < n && n < N)) throw PreconditionError("circuit: need 0 < n < N");
  if (d.kind() != DomainKind::PlanePatch)
    throw PreconditionError("circuit: plane patches only");
  auto ann = annulus_faces(n, N);
  std::vector<int> idx(ann.size());
  std::vector<int> local_of_face(d.face_count(), -1);
  for (size_t i = 0; i < ann.size(); ++i) {
    int f = d.index_of(ann[i]);
    if (f < 0) throw PreconditionError("circuit: annulus not contained in the domain");
    idx[i] = f;
    local_of_face[f] = static_cast<int>(i);
  }
  std::vector<std::uint8_t> ok(ann.size());
  for (size_t i = 0; i < ann.size(); ++i) ok[i] = pred.holds(h[idx[i]]);

  WindingDsu dsu(static_cast<int>(ann.size()));
  for (size_t i = 0; i < ann.size(); ++i) {
    if (!ok[i]) continue;
    int f = idx[i];
    auto try_edge = [&](int g) -> bool {
      if (g < 0) return false;
      int j = local_of_face[g];
      if (j < 0 || !ok[j]) return false;
      int w = cut_weight(d.face(f), d.face(g));
      return dsu.unite(static_cast<int>(i), j, w);
    };
    if (adj == Adjacency::Edge) {
      for (int g : d.edge_neighbors(f))
        if (try_edge(g)) return true;
    } else {
      for (int g : d.cross_neighbors(f))
        if (try_edge(g)) return true;
    }
  }
  return false;
}

Quad::Quad(Domain d, FaceCoord a, FaceCoord b, FaceCoord c, FaceCoord dd) : d_(std::move(d)) {
  if (d_.kind() != DomainKind::PlanePatch) throw PreconditionError("quad: plane patches only");
  std::vector<int> bnd;
  for (int f = 0; f < d_.face_count(); ++f)
    if (d_.is_boundary(f)) bnd.push_back(f);
  if (bnd.size() < 4) throw PreconditionError("quad: boundary too small");

  // Boundary faces must form a simple cycle under plain lattice adjacency.
  std::vector<std::vector<int>> nbr(d_.face_count());
  for (int f : bnd) {
    FaceCoord fc = d_.face(f);
    for (auto [dx, dy] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
      int g = d_.index_of({fc.x + dx, fc.y + dy});
      if (g >= 0 && d_.is_boundary(g)) nbr[f].push_back(g);
    }
    if (nbr[f].size() != 2)
      throw PreconditionError("quad: boundary is not a simple loop (pinched domain)");
  }
  loop_.push_back(bnd[0]);
  int prev = -1, cur = bnd[0];
  while (true) {
    int nxt = (nbr[cur][0] == prev) ? nbr[cur][1] : nbr[cur][0];
    if (nxt == loop_[0]) break;
    loop_.push_back(nxt);
    prev = cur;
    cur = nxt;
  }
  if (loop_.size() != bnd.size()) throw PreconditionError("quad: boundary loop does not close");

  // Orient counter-clockwise by the shoelace sign of face centers.
  long long area2 = 0;
  for (size_t i = 0; i < loop_.size(); ++i) {
    FaceCoord p = d_.face(loop_[i]);
    FaceCoord q = d_.face(loop_[(i + 1) % loop_.size()]);
    area2 += static_cast<long long>(p.x) * q.y - static_cast<long long>(q.x) * p.y;
  }
  if (area2 < 0) std::reverse(loop_.begin() + 1, loop_.end());

  auto pos_of = [&](FaceCoord f) {
    int fi = d_.index_of(f);
    auto it = std::find(loop_.begin(), loop_.end(), fi);
    if (fi < 0 || it == loop_.end())
      throw PreconditionError("quad: mark is not a boundary face");
    return static_cast<int>(it - loop_.begin());
  };
  std::array<int, 4> pos{pos_of(a), pos_of(b), pos_of(c), pos_of(dd)};
  // Rotate so that a sits first.
  std::rotate(loop_.begin(), loop_.begin() + pos[0], loop_.end());
  for (auto& p : pos) p = (p - pos[0] + static_cast<int>(loop_.size())) % loop_.size();
  if (!(pos[0] < pos[1] && pos[1] < pos[2] && pos[2] < pos[3]))
    throw PreconditionError("quad: marks not in counter-clockwise order");
  for (int i = 0; i < 4; ++i) marks_[i] = loop_[pos[i]];

  auto arc_slice = [&](int from, int to) {
    std::vector<int> out;
    int i = from;
    while (true) {
      out.push_back(loop_[i]);
      if (i == to) break;
      i = (i + 1) % static_cast<int>(loop_.size());
    }
    return out;
  };
  arcs_[0] = arc_slice(pos[0], pos[1]);
  arcs_[1] = arc_slice(pos[1], pos[2]);
  arcs_[2] = arc_slice(pos[2], pos[3]);
  arcs_[3] = arc_slice(pos[3], pos[0]);
}

DualityResult duality_check(const Quad& q, const Heights& h, int k) {
  const Domain& d = q.domain();
  DualityResult r{};
  r.primal_crossing =
      crossing(d, h, q.arc(0), q.arc(2), HeightPred{HeightPred::GE, k}, Adjacency::Edge);
  r.dual_crossing =
      crossing(d, h, q.arc(1), q.arc(3), HeightPred{HeightPred::LT, k}, Adjacency::Cross);
  r.identity_ok = (r.primal_crossing != r.dual_crossing);
  bool low = crossing(d, h, q.arc(1), q.arc(3), HeightPred{HeightPred::LE, k - 2}, Adjacency::Edge);
  bool high = crossing(d, h, q.arc(1), q.arc(3), HeightPred{HeightPred::LE, k}, Adjacency::Edge);
  r.sandwich_ok = (!low || r.dual_crossing) && (!r.dual_crossing || high);
  return r;
}

SymmetricQuadResult symmetric_quad_bound(const Quad& q,
                                         const std::function<FaceCoord(FaceCoord)>& sigma,
                                         const BoundaryCondition& xi, const Rational& c) {
  const Domain& d = q.domain();
  // sigma maps the domain onto itself and preserves parity.
  for (int f = 0; f < d.face_count(); ++f) {
    FaceCoord img = sigma(d.face(f));
    int g = d.index_of(img);
    if (g < 0) throw PreconditionError("symmetric_quad: sigma does not preserve the domain");
    if (d.parity(f) != d.parity(g))
      throw PreconditionError("symmetric_quad: sigma does not preserve the bipartition");
  }
  auto image_set = [&](const std::vector<int>& arc) {
    std::vector<int> out;
    for (int f : arc) out.push_back(d.index_of(sigma(d.face(f))));
    std::sort(out.begin(), out.end());
    return out;
  };
  auto sorted = [](std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  if (image_set(q.arc(0)) != sorted(q.arc(1)) || image_set(q.arc(2)) != sorted(q.arc(3)))
    throw PreconditionError("symmetric_quad: sigma does not map (ab),(cd) to (bc),(da)");

  // sigma(xi) >= -xi on the support (the support must be sigma-invariant).
  std::vector<int> val(d.face_count(), INT32_MIN);
  for (size_t i = 0; i < xi.size(); ++i) val[xi.faces[i]] = xi.values[i];
  for (size_t i = 0; i < xi.size(); ++i) {
    int f = xi.faces[i];
    int g = d.index_of(sigma(d.face(f)));
    if (val[g] == INT32_MIN)
      throw PreconditionError("symmetric_quad: support not sigma-invariant");
    // (sigma xi)(g) = xi(f); require >= -xi(g).
    if (xi.values[i] < -val[g])
      throw PreconditionError("symmetric_quad: sigma(xi) >= -xi fails");
  }

  SymmetricQuadResult res;
  res.probability = exact_probability<Rational>(
      d, xi, c,
      [&](const Heights& h) {
        return crossing(d, h, q.arc(0), q.arc(2), HeightPred{HeightPred::GE, 0}, Adjacency::Edge);
      });
  res.bound_ok = res.probability >= Rational(1, 2);
  return res;
}

}  // namespace sixv
