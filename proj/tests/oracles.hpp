#pragma once

// Independent brute-force oracles for the test suites. Everything here is
// deliberately naive: plain BFS/DFS over raw coordinates, no reuse of the
// library's adjacency tables beyond face lookup.

#include <deque>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "sixv/domain.hpp"
#include "sixv/height.hpp"
#include "sixv/rng.hpp"

namespace oracle {

using sixv::Domain;
using sixv::FaceCoord;
using sixv::Heights;

// BFS distance recomputed from scratch on an explicit adjacency relation.
inline int bfs_distance(const std::vector<FaceCoord>& faces,
                        const std::function<bool(FaceCoord, FaceCoord)>& adjacent, FaceCoord from,
                        FaceCoord to) {
  std::map<std::pair<int, int>, int> dist;
  std::deque<FaceCoord> q{from};
  dist[{from.x, from.y}] = 0;
  while (!q.empty()) {
    FaceCoord u = q.front();
    q.pop_front();
    int du = dist[{u.x, u.y}];
    if (u == to) return du;
    for (const auto& v : faces)
      if (adjacent(u, v) && !dist.count({v.x, v.y})) {
        dist[{v.x, v.y}] = du + 1;
        q.push_back(v);
      }
  }
  return -1;
}

// Exhaustive path search: does a pred-path from A to B exist? Explicit
// recursion over face sequences, independent of the library BFS.
inline bool path_exists(const std::vector<int>& faces_ok,
                        const std::function<std::vector<int>(int)>& nbrs, const std::set<int>& a,
                        const std::set<int>& b) {
  std::set<int> ok(faces_ok.begin(), faces_ok.end());
  std::set<int> seen;
  std::function<bool(int)> dfs = [&](int u) -> bool {
    if (b.count(u)) return true;
    seen.insert(u);
    for (int v : nbrs(u))
      if (ok.count(v) && !seen.count(v) && dfs(v)) return true;
    return false;
  };
  for (int s : a)
    if (ok.count(s) && !seen.count(s) && dfs(s)) return true;
  return false;
}

// Uniformly random height function via rejection-free local growth: start
// from the checkerboard and randomize with many single-site moves at c = 1
// driven by a throwaway generator. Good enough to generate diverse valid
// inputs; distribution does not matter for round-trip tests.
inline Heights random_heights(const Domain& d, std::uint64_t seed, int moves_per_face = 30) {
  Heights h(d.face_count());
  for (int f = 0; f < d.face_count(); ++f) h[f] = d.parity(f);
  sixv::RngStream st{sixv::RngKey::from(seed, 0xbeef)};
  const int total = d.face_count() * moves_per_face;
  for (int i = 0; i < total; ++i) {
    int f = static_cast<int>(st.next_below(d.face_count()));
    int lo = INT32_MAX, hi = INT32_MIN;
    for (int g : d.edge_neighbors(f))
      if (g >= 0) {
        lo = std::min(lo, h[g]);
        hi = std::max(hi, h[g]);
      }
    if (lo == hi)
      h[f] = lo + (st.next_uniform() < 0.5 ? 1 : -1);
    else
      h[f] = lo + 1;
  }
  return h;
}

}  // namespace oracle
