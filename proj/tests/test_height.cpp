#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "sixv/enumerate.hpp"
#include "sixv/error.hpp"
#include "sixv/height.hpp"

using namespace sixv;

namespace {

Heights checkerboard(const Domain& d, int base = 0) {
  Heights h(d.face_count());
  for (int f = 0; f < d.face_count(); ++f) h[f] = checkerboard_value(d, f, base);
  return h;
}

Heights linear(const Domain& d) {
  Heights h(d.face_count());
  for (int f = 0; f < d.face_count(); ++f) h[f] = d.face(f).x + d.face(f).y;
  return h;
}

}  // namespace

TEST_CASE("checkerboard on the torus: every vertex is a c-vertex") {
  Domain t = Domain::torus(2);
  Heights h = checkerboard(t);
  Arrows a = height_to_arrows(t, h);
  for (int vi = 0; vi < t.vertex_count(); ++vi) {
    int ty = vertex_type(t, a, vi);
    CHECK(ty >= 5);
    CHECK(is_c_vertex(t, h, vi));
  }
}

TEST_CASE("linear height: uniform arrows, no c-vertices, weight 1") {
  Domain d = lambda_domain(3);
  Heights h = linear(d);
  REQUIRE(is_height_function(d, h));
  Arrows a = height_to_arrows(d, h);
  for (int vi = 0; vi < d.vertex_count(); ++vi) {
    int ty = vertex_type(d, a, vi);
    CHECK(ty <= 4);
  }
  CHECK(count_c_vertices(d, h) == 0);
  CHECK(weight(d, h, {2.0}) == 1.0);
}

TEST_CASE("checkerboard on the 2x2-vertex patch weighs c^4; raising the center kills it") {
  Domain d = Domain::plane_patch({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  Heights h = checkerboard(d);
  CHECK(count_c_vertices(d, h) == 4);
  CHECK(weight(d, h, {2.0}) == 16.0);
  CHECK(weight_exact(d, h, Rational(3)) == Rational(81));
  int center = d.index_of({0, 0});
  h[center] = 2;
  REQUIRE(is_height_function(d, h));
  CHECK(count_c_vertices(d, h) == 0);
  CHECK(weight(d, h, {2.0}) == 1.0);
}

TEST_CASE("round trip heights -> arrows -> heights") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    Domain d = seed % 2 ? Domain::torus(4) : lambda_domain(2);
    Heights h = oracle::random_heights(d, seed);
    REQUIRE(is_height_function(d, h));
    Arrows a = height_to_arrows(d, h);
    CHECK(satisfies_ice(d, a));
    Heights back = arrows_to_height(d, a, 0, h[0]);
    CHECK(back == h);
    // A different root value shifts by a constant.
    Heights shifted = arrows_to_height(d, a, 0, h[0] + 2);
    for (int f = 0; f < d.face_count(); ++f) CHECK(shifted[f] == h[f] + 2);
  }
}

TEST_CASE("uniform flow on the torus winds and has no height function") {
  Domain t = Domain::torus(4);
  Arrows a(t.edge_count());
  for (int e = 0; e < t.edge_count(); ++e) a[e] = 1;  // all north / all east
  CHECK(satisfies_ice(t, a));
  CHECK(!is_balanced(t, a));
  CHECK_THROWS_AS(arrows_to_height(t, a, 0, 0), NoHeightFunction);
}

TEST_CASE("ice-rule violation is detected") {
  Domain t = Domain::torus(2);
  Arrows a(t.edge_count(), 1);
  a[0] = 0;
  bool any_bad = false;
  for (int vi = 0; vi < t.vertex_count(); ++vi) {
    try {
      vertex_type(t, a, vi);
    } catch (const PreconditionError&) {
      any_bad = true;
    }
  }
  CHECK(any_bad);
}

TEST_CASE("every balanced ice configuration on T_2 integrates to a height function") {
  Domain t = Domain::torus(2);
  int balanced = 0, total = 0;
  enumerate_torus_ice(t, [&](const Arrows& a) {
    ++total;
    if (is_balanced(t, a)) {
      ++balanced;
      Heights h = arrows_to_height(t, a, 0, t.parity(0));
      CHECK(is_height_function(t, h));
      CHECK(height_to_arrows(t, h) == a);
    } else {
      CHECK_THROWS_AS(arrows_to_height(t, a, 0, t.parity(0)), NoHeightFunction);
    }
  });
  CHECK(total > balanced);
  CHECK(balanced > 0);
}

TEST_CASE("global arrow flip pairs types 1-2, 3-4, 5-6") {
  Domain t = Domain::torus(4);
  Heights h = oracle::random_heights(t, 99);
  Arrows a = height_to_arrows(t, h);
  Arrows flipped(a.size());
  for (size_t e = 0; e < a.size(); ++e) flipped[e] = a[e] ^ 1;
  int pair[7] = {0, 2, 1, 4, 3, 6, 5};
  for (int vi = 0; vi < t.vertex_count(); ++vi)
    CHECK(vertex_type(t, flipped, vi) == pair[vertex_type(t, a, vi)]);
}

TEST_CASE("weight symmetry: negation and +2 shift") {
  Domain d = Domain::plane_patch({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  for (std::uint64_t s = 0; s < 6; ++s) {
    Heights h = oracle::random_heights(d, 1000 + s);
    Heights neg = h, up = h;
    for (auto& v : neg) v = -v;
    for (auto& v : up) v += 2;
    CHECK(count_c_vertices(d, h) == count_c_vertices(d, neg));
    CHECK(count_c_vertices(d, h) == count_c_vertices(d, up));
  }
}

TEST_CASE("minimal extension from a single anchored face is the distance cone") {
  Domain d = lambda_domain(3);
  int y0 = d.index_of({0, 0});
  BoundaryCondition xi;
  xi.add(y0, 6);  // (0,0) is an even face
  Heights lo = min_extension(d, xi);
  for (int f = 0; f < d.face_count(); ++f) CHECK(lo[f] == 6 - *d.distance(f, y0));
  Heights hi = max_extension(d, xi);
  for (int f = 0; f < d.face_count(); ++f) CHECK(hi[f] == 6 + *d.distance(f, y0));
}

TEST_CASE("0,1 boundary: floored minimal extension is the global checkerboard") {
  Domain d = lambda_domain(2);
  BoundaryCondition xi = boundary_01(d);
  // The unfloored minimum dips below zero on interior odd faces; flooring
  // at 0 pins it to the checkerboard.
  Heights lo = min_extension(d, xi);
  CHECK(leq(lo, checkerboard(d)));
  CHECK(lo != checkerboard(d));
  CHECK(*std::min_element(lo.begin(), lo.end()) == -1);
  CHECK(min_extension(d, xi, 0) == checkerboard(d));
}

TEST_CASE("min/max extensions sandwich every extension (exhaustive)") {
  Domain d = Domain::plane_patch({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  BoundaryCondition xi = boundary_01(d);
  Heights lo = min_extension(d, xi);
  Heights hi = max_extension(d, xi);
  int count = 0;
  enumerate_extensions(d, xi, [&](const Heights& h) {
    ++count;
    CHECK(leq(lo, h));
    CHECK(leq(h, hi));
  });
  CHECK(count == 2);  // center face is 0 or 2
}

TEST_CASE("frozen boundary admits exactly one extension, min == max") {
  Domain d = lambda_domain(2);
  BoundaryCondition xi;
  for (int f = 0; f < d.face_count(); ++f)
    if (d.is_boundary(f)) xi.add(f, d.face(f).x + d.face(f).y);
  REQUIRE(is_admissible(d, xi));
  CHECK(min_extension(d, xi) == max_extension(d, xi));
  int count = 0;
  enumerate_extensions(d, xi, [&](const Heights&) { ++count; });
  CHECK(count == 1);
}

TEST_CASE("inadmissible boundary conditions carry a witness") {
  Domain d = lambda_domain(2);
  BoundaryCondition xi;
  xi.add(d.index_of({-2, -2}), 0);
  xi.add(d.index_of({1, 1}), 8);  // too steep: distance is 6
  CHECK(!is_admissible(d, xi));
  CHECK_THROWS_AS(min_extension(d, xi), InadmissibleBoundary);
  BoundaryCondition bad_parity;
  bad_parity.add(d.index_of({-2, -2}), 1);  // even face, odd value
  CHECK_THROWS_AS(min_extension(d, bad_parity), InadmissibleBoundary);
}

TEST_CASE("balance and sector bookkeeping") {
  Domain t = Domain::torus(4);
  Heights h = oracle::random_heights(t, 5);
  CHECK(is_balanced(t, height_to_arrows(t, h)));

  Domain c = Domain::cylinder(4, 3);
  SUBCASE("all-up flow has flux +4, sector k = 2") {
    Arrows a(c.edge_count(), 0);
    for (int e = 0; e < c.edge_count(); ++e)
      a[e] = (c.edge(e).dir == DirE) ? 1 : 0;  // vertical north, horizontal west
    CHECK(satisfies_ice(c, a));
    CHECK(sector_flux(c, a) == 2);
  }
  SUBCASE("sector is invariant under any single-face flip") {
    Heights hc(c.face_count());
    for (int f = 0; f < c.face_count(); ++f) hc[f] = c.parity(f);
    Arrows a = height_to_arrows(c, hc);
    CHECK(sector_flux(c, a) == 0);
    for (int f = 0; f < c.face_count(); ++f) {
      int lo = INT32_MAX, hi = INT32_MIN;
      for (int g : c.edge_neighbors(f))
        if (g >= 0) {
          lo = std::min(lo, hc[g]);
          hi = std::max(hi, hc[g]);
        }
      if (lo != hi) continue;  // forced face, no flip possible
      Heights flipped = hc;
      flipped[f] = (hc[f] == lo + 1) ? lo - 1 : lo + 1;
      REQUIRE(is_height_function(c, flipped));
      CHECK(sector_flux(c, height_to_arrows(c, flipped)) == 0);
    }
  }
}

TEST_CASE("c-vertices of h are c-vertices of |h|") {
  Domain d = Domain::plane_patch({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  for (std::uint64_t s = 0; s < 10; ++s) {
    Heights h = oracle::random_heights(d, 2000 + s);
    Heights ab = h;
    for (auto& v : ab) v = std::abs(v);
    if (!is_height_function(d, ab)) continue;
    for (int vi = 0; vi < d.vertex_count(); ++vi)
      if (is_c_vertex(d, h, vi)) CHECK(is_c_vertex(d, ab, vi));
  }
}
