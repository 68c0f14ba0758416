#pragma once

#include <compare>
#include <cstdint>
#include <vector>

namespace sixv {

// Face (x,y) is the unit square [x,x+1] x [y,y+1]; its dual vertex sits at
// (x+1/2, y+1/2). Corners are the lattice vertices (x,y) .. (x+1,y+1).
struct FaceCoord {
  int x = 0;
  int y = 0;
  auto operator<=>(const FaceCoord&) const = default;
};

struct VertexCoord {
  int x = 0;
  int y = 0;
  auto operator<=>(const VertexCoord&) const = default;
};

// Faces are bipartitioned by (x+y) mod 2. Even faces carry even heights.
inline int face_parity(FaceCoord f) { return ((f.x + f.y) % 2 + 2) % 2; }

inline std::uint64_t coord_key(int x, int y) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)) << 32) |
         static_cast<std::uint64_t>(static_cast<std::uint32_t>(y));
}

// Lambda_n = (-n,n)^2 as a face set: face (x,y) belongs iff its dual vertex
// lies in the open square, i.e. -n <= x <= n-1 and -n <= y <= n-1.
inline bool lambda_contains(int n, FaceCoord f) {
  return f.x >= -n && f.x <= n - 1 && f.y >= -n && f.y <= n - 1;
}

std::vector<FaceCoord> lambda_faces(int n);

// A(n,N) = Lambda_N \ Lambda_n, 0 < n < N.
std::vector<FaceCoord> annulus_faces(int n, int N);

// Vertices of Lambda_n, i.e. Z^2 points strictly inside (-n,n)^2.
std::vector<VertexCoord> lambda_vertices(int n);

}  // namespace sixv
