#include "sixv/enumerate.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "sixv/error.hpp"

namespace sixv {

namespace {

// Face visit order: BFS from the pinned faces, so every face meets an
// already-assigned neighbour. Returns the order of free faces.
std::vector<int> bfs_order(const Domain& d, const std::vector<int>& seeds,
                           const std::vector<std::uint8_t>& pinned) {
  std::vector<int> order;
  std::vector<std::uint8_t> seen(d.face_count(), 0);
  std::deque<int> q;
  for (int s : seeds) {
    if (!seen[s]) {
      seen[s] = 1;
      q.push_back(s);
    }
  }
  while (!q.empty()) {
    int f = q.front();
    q.pop_front();
    for (int g : d.edge_neighbors(f))
      if (g >= 0 && !seen[g]) {
        seen[g] = 1;
        q.push_back(g);
      }
    if (!pinned[f]) order.push_back(f);
  }
  return order;
}

struct Dfs {
  const Domain& d;
  const std::vector<int>& order;
  const Heights& lo;
  const Heights& hi;
  const std::function<void(const Heights&)>& visit;
  Heights h;
  std::vector<std::uint8_t> assigned;

  void run(size_t depth) {
    if (depth == order.size()) {
      visit(h);
      return;
    }
    int f = order[depth];
    int vlo = lo[f], vhi = hi[f];
    // Tighten by assigned neighbours: value must be each +-1.
    for (int g : d.edge_neighbors(f))
      if (g >= 0 && assigned[g]) {
        vlo = std::max(vlo, h[g] - 1);
        vhi = std::min(vhi, h[g] + 1);
      }
    assigned[f] = 1;
    for (int v = vlo; v <= vhi; ++v) {
      bool ok = (((v % 2) + 2) % 2 == d.parity(f));
      if (ok)
        for (int g : d.edge_neighbors(f))
          if (g >= 0 && assigned[g] && std::abs(v - h[g]) != 1) {
            ok = false;
            break;
          }
      if (!ok) continue;
      h[f] = v;
      run(depth + 1);
    }
    assigned[f] = 0;
  }
};

void check_caps(const Heights& lo, const Heights& hi, const std::vector<int>& order,
                const EnumOptions& opts) {
  if (static_cast<int>(order.size()) > opts.max_free_faces) {
    double est = 0;
    for (int f : order) est += std::log2(static_cast<double>((hi[f] - lo[f]) / 2 + 1));
    throw EnumerationCap("enumeration refused: too many free faces", est);
  }
  double est = 0;
  for (int f : order) est += std::log2(static_cast<double>((hi[f] - lo[f]) / 2 + 1));
  if (est > opts.max_log2_states)
    throw EnumerationCap("enumeration refused: state count too large", est);
}

}  // namespace

void enumerate_extensions(const Domain& d, const BoundaryCondition& xi,
                          const std::function<void(const Heights&)>& visit,
                          const EnumOptions& opts) {
  Heights lo = min_extension(d, xi);
  Heights hi = max_extension(d, xi);
  auto pinned_mask = xi.support_mask(d);
  // Faces with lo == hi are forced; pin them too.
  for (int f = 0; f < d.face_count(); ++f)
    if (lo[f] == hi[f]) pinned_mask[f] = 1;
  auto order = bfs_order(d, xi.faces, pinned_mask);
  check_caps(lo, hi, order, opts);
  Dfs dfs{d, order, lo, hi, visit, lo, pinned_mask};
  dfs.run(0);
}

void enumerate_rooted(const Domain& d, const std::vector<int>& root_values,
                      const std::function<void(const Heights&)>& visit, const EnumOptions& opts) {
  if (d.face_count() == 0) return;
  for (int rv : root_values) {
    BoundaryCondition xi;
    xi.add(0, rv);
    // No envelope beyond the trivial Lipschitz cone from the root.
    Heights lo = min_extension(d, xi);
    Heights hi = max_extension(d, xi);
    auto pinned = xi.support_mask(d);
    auto order = bfs_order(d, xi.faces, pinned);
    check_caps(lo, hi, order, opts);
    Dfs dfs{d, order, lo, hi, visit, lo, pinned};
    dfs.run(0);
  }
}

void enumerate_torus_heights(const Domain& torus, const std::function<void(const Heights&)>& visit,
                             const EnumOptions& opts) {
  if (torus.kind() != DomainKind::Torus)
    throw PreconditionError("enumerate_torus_heights: torus only");
  int root = torus.index_of({0, 0});
  enumerate_rooted(torus, {torus.parity(root)}, visit, opts);
}

namespace {

// Shared DFS over arrow configurations: assign edges in a fixed order,
// checking the ice rule at every vertex whose four edges are all assigned.
struct IceDfs {
  const Domain& d;
  const std::function<void(const Arrows&)>& visit;
  Arrows a;
  std::vector<std::int8_t> set_mask;                 // -1 unset, else 0/1
  std::vector<std::vector<int>> edge_vertices;       // vertices touching edge
  std::vector<std::array<int, 4>> vertex_edges;      // l,b,r,t edge ids
  std::function<bool(const Arrows&)> accept;

  explicit IceDfs(const Domain& dom, const std::function<void(const Arrows&)>& v)
      : d(dom), visit(v), a(dom.edge_count(), 0), set_mask(dom.edge_count(), -1) {
    vertex_edges.resize(d.vertex_count());
    edge_vertices.resize(d.edge_count());
    for (int vi = 0; vi < d.vertex_count(); ++vi) {
      const auto& fs = d.vertex_faces(vi);
      std::array<int, 4> es{
          d.edge_index(fs[CornerSW], DirN),  // l
          d.edge_index(fs[CornerSW], DirE),  // b
          d.edge_index(fs[CornerSE], DirN),  // r
          d.edge_index(fs[CornerNW], DirE),  // t
      };
      vertex_edges[vi] = es;
      for (int e : es) edge_vertices[e].push_back(vi);
    }
  }

  // Ice check at vertex when all four edges assigned; partial feasibility
  // when some unset: in-degree so far must stay in range.
  bool feasible(int vi) const {
    const auto& es = vertex_edges[vi];
    // Incoming flags: l east in, b north in, r west in (=!east), t south in (=!north).
    int in = 0, unset = 0;
    auto acc = [&](int e, bool in_when_set) {
      if (set_mask[e] < 0)
        ++unset;
      else
        in += (set_mask[e] == 1) == in_when_set ? 1 : 0;
    };
    acc(es[0], true);   // l: east = incoming
    acc(es[1], true);   // b: north = incoming
    acc(es[2], false);  // r: west = incoming
    acc(es[3], false);  // t: south = incoming
    return in <= 2 && in + unset >= 2;
  }

  void run(int e) {
    if (e == d.edge_count()) {
      if (!accept || accept(a)) visit(a);
      return;
    }
    for (int v = 0; v < 2; ++v) {
      set_mask[e] = static_cast<std::int8_t>(v);
      a[e] = static_cast<std::uint8_t>(v);
      bool ok = true;
      for (int vi : edge_vertices[e])
        if (!feasible(vi)) {
          ok = false;
          break;
        }
      if (ok) run(e + 1);
    }
    set_mask[e] = -1;
  }
};

}  // namespace

void enumerate_cylinder_sector(const Domain& cyl, std::optional<int> flux_k,
                               const std::function<void(const Arrows&)>& visit) {
  if (cyl.kind() != DomainKind::Cylinder)
    throw PreconditionError("enumerate_cylinder_sector: cylinder only");
  IceDfs dfs(cyl, visit);
  dfs.accept = [&](const Arrows& a) {
    return !flux_k || sector_flux(cyl, a) == *flux_k;
  };
  dfs.run(0);
}

void enumerate_torus_ice(const Domain& torus, const std::function<void(const Arrows&)>& visit) {
  if (torus.kind() != DomainKind::Torus)
    throw PreconditionError("enumerate_torus_ice: torus only");
  IceDfs dfs(torus, visit);
  dfs.run(0);
}

// pow helper resolving to std::pow for double and rational_pow for Rational.
static double rational_or_pow(const double& c, int n) { return std::pow(c, n); }
static Rational rational_or_pow(const Rational& c, int n) {
  return rational_pow(c, static_cast<unsigned>(n));
}

template <class S>
S exact_partition(const Domain& d, const BoundaryCondition& xi, const S& c,
                  const EnumOptions& opts) {
  S z{};
  enumerate_extensions(
      d, xi,
      [&](const Heights& h) { z += rational_or_pow(c, count_c_vertices(d, h)); }, opts);
  return z;
}

template <class S>
S exact_probability(const Domain& d, const BoundaryCondition& xi, const S& c,
                    const std::function<bool(const Heights&)>& event, const EnumOptions& opts) {
  S z{}, hit{};
  enumerate_extensions(
      d, xi,
      [&](const Heights& h) {
        S w = rational_or_pow(c, count_c_vertices(d, h));
        z += w;
        if (event(h)) hit += w;
      },
      opts);
  if (z == S{}) throw PreconditionError("exact_probability: empty measure");
  return hit / z;
}

template <class S>
S exact_expectation(const Domain& d, const BoundaryCondition& xi, const S& c,
                    const std::function<S(const Heights&)>& f, const EnumOptions& opts) {
  S z{}, acc{};
  enumerate_extensions(
      d, xi,
      [&](const Heights& h) {
        S w = rational_or_pow(c, count_c_vertices(d, h));
        z += w;
        acc += w * f(h);
      },
      opts);
  if (z == S{}) throw PreconditionError("exact_expectation: empty measure");
  return acc / z;
}

template <class S>
S exact_variance(const Domain& d, const BoundaryCondition& xi, const S& c,
                 const std::function<S(const Heights&)>& f, const EnumOptions& opts) {
  S z{}, acc{}, acc2{};
  enumerate_extensions(
      d, xi,
      [&](const Heights& h) {
        S w = rational_or_pow(c, count_c_vertices(d, h));
        S v = f(h);
        z += w;
        acc += w * v;
        acc2 += w * v * v;
      },
      opts);
  if (z == S{}) throw PreconditionError("exact_variance: empty measure");
  S mean = acc / z;
  return acc2 / z - mean * mean;
}

template <class S>
S torus_partition(const Domain& torus, const S& c, const EnumOptions& opts) {
  S z{};
  enumerate_torus_heights(
      torus, [&](const Heights& h) { z += rational_or_pow(c, count_c_vertices(torus, h)); }, opts);
  return z;
}

template <class S>
S torus_expectation(const Domain& torus, const S& c, const std::function<S(const Heights&)>& f,
                    const EnumOptions& opts) {
  S z{}, acc{};
  enumerate_torus_heights(
      torus,
      [&](const Heights& h) {
        S w = rational_or_pow(c, count_c_vertices(torus, h));
        z += w;
        acc += w * f(h);
      },
      opts);
  if (z == S{}) throw PreconditionError("torus_expectation: empty measure");
  return acc / z;
}

template double exact_partition<double>(const Domain&, const BoundaryCondition&, const double&,
                                        const EnumOptions&);
template Rational exact_partition<Rational>(const Domain&, const BoundaryCondition&,
                                            const Rational&, const EnumOptions&);
template double exact_probability<double>(const Domain&, const BoundaryCondition&, const double&,
                                          const std::function<bool(const Heights&)>&,
                                          const EnumOptions&);
template Rational exact_probability<Rational>(const Domain&, const BoundaryCondition&,
                                              const Rational&,
                                              const std::function<bool(const Heights&)>&,
                                              const EnumOptions&);
template double exact_expectation<double>(const Domain&, const BoundaryCondition&, const double&,
                                          const std::function<double(const Heights&)>&,
                                          const EnumOptions&);
template Rational exact_expectation<Rational>(const Domain&, const BoundaryCondition&,
                                              const Rational&,
                                              const std::function<Rational(const Heights&)>&,
                                              const EnumOptions&);
template double exact_variance<double>(const Domain&, const BoundaryCondition&, const double&,
                                       const std::function<double(const Heights&)>&,
                                       const EnumOptions&);
template Rational exact_variance<Rational>(const Domain&, const BoundaryCondition&, const Rational&,
                                           const std::function<Rational(const Heights&)>&,
                                           const EnumOptions&);
template double torus_partition<double>(const Domain&, const double&, const EnumOptions&);
template Rational torus_partition<Rational>(const Domain&, const Rational&, const EnumOptions&);
template double torus_expectation<double>(const Domain&, const double&,
                                          const std::function<double(const Heights&)>&,
                                          const EnumOptions&);
template Rational torus_expectation<Rational>(const Domain&, const Rational&,
                                              const std::function<Rational(const Heights&)>&,
                                              const EnumOptions&);

}  // namespace sixv
