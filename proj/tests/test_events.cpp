#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "sixv/enumerate.hpp"
#include "sixv/error.hpp"
#include "sixv/events.hpp"

using namespace sixv;

namespace {

Quad square_quad(int nv) {
  // (nv+1) x (nv+1) vertex block; marks at the four boundary corners.
  std::vector<VertexCoord> v;
  for (int y = 0; y <= nv; ++y)
    for (int x = 0; x <= nv; ++x) v.push_back({x, y});
  Domain d = Domain::plane_patch(v);
  return Quad(d, {-1, -1}, {nv, -1}, {nv, nv}, {-1, nv});
}

}  // namespace

TEST_CASE("constant-level field crosses anything in one component") {
  Domain d = lambda_domain(2);
  Heights h(d.face_count());
  for (int f = 0; f < d.face_count(); ++f) h[f] = checkerboard_value(d, f, 0);
  std::vector<int> a{d.index_of({-2, -2})}, b{d.index_of({1, 1})};
  CHECK(crossing(d, h, a, b, {HeightPred::GE, 0}));
  CHECK(!crossing(d, h, a, b, {HeightPred::GE, 2}));
  CHECK(crossing(d, h, a, b, {HeightPred::AbsLE, 1}));
}

TEST_CASE("crossing agrees with an explicit path-search oracle on all extensions") {
  Domain d = Domain::plane_patch({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  BoundaryCondition xi = boundary_01(d);
  std::vector<int> a{d.index_of({-1, -1})}, b{d.index_of({1, 1})};
  std::set<int> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  enumerate_extensions(d, xi, [&](const Heights& h) {
    for (int k : {0, 1, 2}) {
      HeightPred pred{HeightPred::GE, k};
      std::vector<int> ok;
      for (int f = 0; f < d.face_count(); ++f)
        if (pred.holds(h[f])) ok.push_back(f);
      auto nbrs = [&](int f) {
        std::vector<int> out;
        for (int g : d.edge_neighbors(f))
          if (g >= 0) out.push_back(g);
        return out;
      };
      CHECK(crossing(d, h, a, b, pred) == oracle::path_exists(ok, nbrs, sa, sb));
    }
  });
}

TEST_CASE("checkerboard circuit exists; a radial fault line kills it") {
  Domain d = lambda_domain(4);
  Heights h(d.face_count());
  for (int f = 0; f < d.face_count(); ++f) h[f] = checkerboard_value(d, f, 0);
  CHECK(circuit(d, h, 2, 4, {HeightPred::GE, 0}));
  // Dig a graded trench through the annulus cut columns (x in {2,3},
  // y in {-1,0}); every winding circuit must cross it, so h >= 0 dies.
  Heights hcut(d.face_count());
  for (int f = 0; f < d.face_count(); ++f) {
    FaceCoord fc = d.face(f);
    int dist = 1000;
    for (int tx : {2, 3})
      for (int ty : {-1, 0})
        dist = std::min(dist, std::abs(fc.x - tx) + std::abs(fc.y - ty));
    hcut[f] = checkerboard_value(d, f, -2 + std::min(2, dist));
  }
  REQUIRE(is_height_function(d, hcut));
  CHECK(!circuit(d, hcut, 2, 4, {HeightPred::GE, 0}));
  CHECK(circuit(d, hcut, 2, 4, {HeightPred::GE, -6}));
}

TEST_CASE("circuit winding is detected by an independent cycle search") {
  // Exhaustive cross-check on a small annulus: compare with rotating-ray
  // reachability: a circuit exists iff some allowed face reaches itself
  // with nonzero winding going around; oracle: split the annulus along the
  // ray and ask for a path between the two copies of the cut.
  Domain d = lambda_domain(2);
  BoundaryCondition xi = boundary_01(d);
  enumerate_extensions(d, xi, [&](const Heights& h) {
    for (int k : {-1, 0, 1}) {
      HeightPred pred{HeightPred::GE, k};
      bool lib = circuit(d, h, 1, 2, pred);
      // Oracle: duplicate-layer BFS. State (face, crossed mod 2) with the
      // cut on the positive x-axis; a circuit exists iff some face reaches
      // itself with an odd... winding needs full integers, so track the
      // crossing count in [-4,4].
      auto faces = annulus_faces(1, 2);
      bool found = false;
      for (auto start : faces) {
        int si = d.index_of(start);
        if (si < 0 || !pred.holds(h[si])) continue;
        // DFS over (face, winding), winding in [-8, 8].
        std::set<std::pair<int, int>> seen;
        std::vector<std::pair<int, int>> stack{{si, 0}};
        while (!stack.empty() && !found) {
          auto [f, w] = stack.back();
          stack.pop_back();
          if (!seen.insert({f, w}).second) continue;
          if (f == si && w != 0) {
            found = true;
            break;
          }
          for (int g : d.edge_neighbors(f)) {
            if (g < 0 || !pred.holds(h[g])) continue;
            FaceCoord fc = d.face(f), gc = d.face(g);
            if (!lambda_contains(2, gc) || lambda_contains(1, gc)) continue;
            int dw = 0;
            if (fc.y == -1 && gc.y == 0 && fc.x + gc.x >= 0) dw = 1;
            if (fc.y == 0 && gc.y == -1 && fc.x + gc.x >= 0) dw = -1;
            int nw = w + dw;
            if (std::abs(nw) <= 8) stack.push_back({g, nw});
          }
        }
        if (found) break;
      }
      CAPTURE(k);
      CHECK(lib == found);
    }
  });
}

TEST_CASE("duality identity and sandwich hold for every extension of small quads") {
  Quad q = square_quad(1);  // 9 faces
  const Domain& d = q.domain();
  BoundaryCondition xi = boundary_01(d);
  int checked = 0;
  enumerate_extensions(d, xi, [&](const Heights& h) {
    for (int k : {0, 1, 2}) {
      auto r = duality_check(q, h, k);
      CHECK(r.identity_ok);
      CHECK(r.sandwich_ok);
      ++checked;
    }
  });
  CHECK(checked > 0);
}

TEST_CASE("duality on a larger quad over rooted enumeration") {
  Quad q = square_quad(2);  // 16 faces
  const Domain& d = q.domain();
  int checked = 0;
  enumerate_rooted(d, {0, 2}, [&](const Heights& h) {
    for (int k : {0, 1, 2}) {
      auto r = duality_check(q, h, k);
      CHECK(r.identity_ok);
      CHECK(r.sandwich_ok);
    }
    ++checked;
  });
  CHECK(checked > 100);
}

TEST_CASE("a quad can block the primal crossing while a negative x-crossing runs") {
  // Search for a configuration with no top-bottom nonnegative path but a
  // left-right strictly negative x-crossing.
  Quad q = square_quad(2);
  const Domain& d = q.domain();
  bool witnessed = false;
  enumerate_rooted(d, {0}, [&](const Heights& h) {
    if (witnessed) return;
    bool primal = crossing(d, h, q.arc(0), q.arc(2), {HeightPred::GE, 0});
    bool dualneg = crossing(d, h, q.arc(1), q.arc(3), {HeightPred::LT, 0}, Adjacency::Cross);
    if (!primal && dualneg) witnessed = true;
  });
  CHECK(witnessed);
}

TEST_CASE("symmetric quads cross with probability at least 1/2") {
  const int nv = 1;
  Quad q = square_quad(nv);
  const Domain& d = q.domain();
  // Anti-diagonal reflection: fixes the domain and maps (ab)->(bc),
  // (cd)->(da) as the crossing bound requires.
  auto sigma = [nv](FaceCoord f) { return FaceCoord{nv - 1 - f.y, nv - 1 - f.x}; };
  SUBCASE("0,1 boundary condition") {
    auto res = symmetric_quad_bound(q, sigma, boundary_01(d), Rational(2));
    CHECK(res.bound_ok);
    CHECK(res.probability >= Rational(1, 2));
  }
  SUBCASE("large positive boundary gives probability 1") {
    std::vector<int> bfaces;
    for (int f = 0; f < d.face_count(); ++f)
      if (d.is_boundary(f)) bfaces.push_back(f);
    auto res = symmetric_quad_bound(q, sigma, checkerboard_condition(d, bfaces, 4), Rational(2));
    CHECK(res.probability == Rational(1));
  }
  SUBCASE("sign-flipped condition violates the precondition gate") {
    std::vector<int> bfaces;
    for (int f = 0; f < d.face_count(); ++f)
      if (d.is_boundary(f)) bfaces.push_back(f);
    CHECK_THROWS_AS(
        symmetric_quad_bound(q, sigma, checkerboard_condition(d, bfaces, -4), Rational(2)),
        PreconditionError);
  }
}

TEST_CASE("monotone predicates transfer crossings upward") {
  Domain d = Domain::plane_patch({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  BoundaryCondition xi = boundary_01(d);
  std::vector<Heights> states;
  enumerate_extensions(d, xi, [&](const Heights& h) { states.push_back(h); });
  std::vector<int> a{d.index_of({-1, -1})}, b{d.index_of({1, 1})};
  for (const auto& h : states)
    for (const auto& g : states) {
      if (!leq(h, g)) continue;
      for (int k : {0, 1, 2}) {
        if (crossing(d, h, a, b, {HeightPred::GE, k})) CHECK(crossing(d, g, a, b, {HeightPred::GE, k}));
        if (crossing(d, g, a, b, {HeightPred::LE, k})) CHECK(crossing(d, h, a, b, {HeightPred::LE, k}));
      }
    }
}

TEST_CASE("circuit detection is invariant under rotating the configuration") {
  // Rotating the field by 90 degrees moves the cut ray homologically; the
  // verdict must not change.
  Domain d = lambda_domain(3);
  for (std::uint64_t s = 0; s < 12; ++s) {
    Heights h = oracle::random_heights(d, 4000 + s, 6);
    Heights rot(d.face_count());
    for (int f = 0; f < d.face_count(); ++f) {
      FaceCoord fc = d.face(f);
      // Preimage of face (x,y) under the quarter turn.
      rot[f] = h[d.index_of({fc.y, -fc.x - 1})];
    }
    for (int k : {-1, 0, 1})
      CHECK(circuit(d, h, 1, 3, {HeightPred::GE, k}) ==
            circuit(d, rot, 1, 3, {HeightPred::GE, k}));
  }
}

TEST_CASE("circuit preconditions") {
  Domain d = lambda_domain(2);
  Heights h(d.face_count(), 0);
  for (int f = 0; f < d.face_count(); ++f) h[f] = checkerboard_value(d, f, 0);
  CHECK_THROWS_AS(circuit(d, h, 2, 2, {HeightPred::GE, 0}), PreconditionError);
  CHECK_THROWS_AS(circuit(d, h, 1, 4, {HeightPred::GE, 0}), PreconditionError);
}
