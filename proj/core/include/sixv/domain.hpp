#pragma once

#include <array>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "sixv/geometry.hpp"

namespace sixv {

enum class DomainKind { PlanePatch, Torus, Cylinder };

// Slots of the edge-adjacency array.
enum Dir : int { DirE = 0, DirN = 1, DirW = 2, DirS = 3 };
// Slots of the corner arrays (lattice corners of a face).
enum Corner : int { CornerSW = 0, CornerSE = 1, CornerNW = 2, CornerNE = 3 };

// A discrete domain: a plane patch generated by a vertex set V, a torus
// T_N (N even), or a cylinder O_{N,M} (N even). Immutable after
// construction; all queries are pure and safe for concurrent reads.
//
// Plane patch conventions: faces are the unit squares with at least one
// corner in V; boundary faces have at least one corner outside V; dual
// edges exist where the crossed primal edge has an endpoint in V; the
// ice rule lives on the vertices of V.
class Domain {
public:
  static Domain plane_patch(std::vector<VertexCoord> vertices);
  static Domain torus(int n);
  static Domain cylinder(int n, int m);

  DomainKind kind() const { return kind_; }
  bool is_plane() const { return kind_ == DomainKind::PlanePatch; }
  int size_n() const { return n_; }  // torus/cylinder circumference
  int size_m() const { return m_; }  // cylinder height (faces)

  int face_count() const { return static_cast<int>(faces_.size()); }
  FaceCoord face(int idx) const { return faces_[idx]; }
  int index_of(FaceCoord f) const;  // -1 if absent; wraps coords on torus/cylinder
  bool contains(FaceCoord f) const { return index_of(f) >= 0; }
  FaceCoord canonical(FaceCoord f) const;  // wrapped representative

  int parity(int idx) const { return parity_[idx]; }
  bool is_boundary(int idx) const { return boundary_[idx] != 0; }
  int boundary_count() const { return boundary_count_; }

  // Edge-adjacent neighbour face indices in slots {E,N,W,S}; -1 when the
  // dual edge is absent from the domain.
  const std::array<int, 4>& edge_neighbors(int idx) const { return adj_[idx]; }

  // For each lattice corner {SW,SE,NW,NE} of the face: the index of the
  // diagonal face across that corner if the corner is an interior (ice)
  // vertex, else -1. Repeats are possible on small tori.
  const std::array<int, 4>& corner_diagonals(int idx) const { return corner_diag_[idx]; }

  // x-adjacency: distinct faces sharing a corner with idx at domain
  // distance exactly 2 (witnessed by a companion face inside the domain).
  const std::vector<int>& cross_neighbors(int idx) const { return cross_[idx]; }

  // Interior (ice rule) vertices.
  int vertex_count() const { return static_cast<int>(verts_.size()); }
  VertexCoord vertex(int vi) const { return verts_[vi]; }
  int vertex_index(VertexCoord v) const;
  // The four faces around an interior vertex, slots {SW,SE,NW,NE}; always valid.
  const std::array<int, 4>& vertex_faces(int vi) const { return vert_faces_[vi]; }

  // Dual edges, each owned by (face, dir) with dir in {E,N}.
  struct EdgeRef {
    int face;
    int dir;  // DirE or DirN
  };
  int edge_count() const { return static_cast<int>(edges_.size()); }
  EdgeRef edge(int e) const { return edges_[e]; }
  int edge_index(int face, int dir) const { return edge_idx_[face][dir]; }
  // The two faces of an edge: (owner, neighbor).
  std::pair<int, int> edge_faces(int e) const;

  // Graph distance on the dual within the domain; nullopt when unreachable.
  std::optional<int> distance(int u, int v) const;
  // BFS distances from a set of sources; -1 marks unreachable faces.
  std::vector<int> distances_from(std::span<const int> sources) const;
  bool connected() const;

  // Faces listed in construction order (row-major by (y,x) for patches).
  const std::vector<FaceCoord>& faces() const { return faces_; }

private:
  Domain() = default;
  void finish_build();

  DomainKind kind_ = DomainKind::PlanePatch;
  int n_ = 0, m_ = 0;
  std::vector<FaceCoord> faces_;
  std::unordered_map<std::uint64_t, int> face_idx_;
  std::vector<std::uint8_t> parity_;
  std::vector<std::uint8_t> boundary_;
  int boundary_count_ = 0;
  std::vector<std::array<int, 4>> adj_;
  std::vector<std::array<int, 4>> corner_diag_;
  std::vector<std::vector<int>> cross_;
  std::vector<VertexCoord> verts_;
  std::unordered_map<std::uint64_t, int> vert_idx_;
  std::vector<std::array<int, 4>> vert_faces_;
  std::vector<EdgeRef> edges_;
  std::vector<std::array<int, 2>> edge_idx_;
  bool vertex_has(VertexCoord v) const;
};

// Domain generated by the vertices of Lambda_n (the standard box domain).
Domain lambda_domain(int n);

}  // namespace sixv
