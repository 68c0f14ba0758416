#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sixv/domain.hpp"
#include "sixv/rational.hpp"

namespace sixv {

// Heights indexed by domain face index.
using Heights = std::vector<int>;

struct ModelParams {
  double c = 1.0;  // weight of type 5-6 vertices; a = b = 1
  double delta() const { return (2.0 - c * c) / 2.0; }
};

// Partial height assignment on a face subset B.
struct BoundaryCondition {
  std::vector<int> faces;   // face indices, no duplicates
  std::vector<int> values;  // parity-consistent heights

  void add(int face, int value) {
    faces.push_back(face);
    values.push_back(value);
  }
  size_t size() const { return faces.size(); }
  std::vector<std::uint8_t> support_mask(const Domain& d) const;
};

// The {base, base+1} checkerboard on a face set (even heights on even faces).
int checkerboard_value(const Domain& d, int face, int base);
BoundaryCondition checkerboard_condition(const Domain& d, const std::vector<int>& faces, int base);
// Convenience: the 0,1 condition on the full boundary.
BoundaryCondition boundary_01(const Domain& d);

bool is_height_function(const Domain& d, const Heights& h);
// h <= g pointwise.
bool leq(const Heights& h, const Heights& g);

// Pointwise-minimal height function extending xi (floored at m when given),
// via the distance formula max_y(xi(y) - d(x,y)). Throws InadmissibleBoundary
// with a witness face when xi admits no extension.
Heights min_extension(const Domain& d, const BoundaryCondition& xi,
                      std::optional<int> floor = std::nullopt);
Heights max_extension(const Domain& d, const BoundaryCondition& xi,
                      std::optional<int> ceiling = std::nullopt);
bool is_admissible(const Domain& d, const BoundaryCondition& xi);

// --- Arrow configurations ------------------------------------------------
//
// One byte per dual edge, in domain edge order. For the E-edge of a face
// (crossed primal edge vertical) the flag means "arrow points north";
// for the N-edge (crossed primal edge horizontal) it means "points east".
// Both reduce to: flag set iff the owning face is the higher one resp.
// the higher face is the north one.
using Arrows = std::vector<std::uint8_t>;

Arrows height_to_arrows(const Domain& d, const Heights& h);
// Integrates the gradient from a root; throws NoHeightFunction when the
// configuration winds (torus/cylinder) or is inconsistent.
Heights arrows_to_height(const Domain& d, const Arrows& a, int root_face, int root_value);

// Vertex type 1..6 per the standard classification; 5 and 6 are the
// c-vertices. Throws PreconditionError if the ice rule fails at the vertex.
int vertex_type(const Domain& d, const Arrows& a, int vertex_idx);
bool satisfies_ice(const Domain& d, const Arrows& a);

// c-vertices of a height function: both diagonal face pairs around the
// vertex are equal.
bool is_c_vertex(const Domain& d, const Heights& h, int vertex_idx);
int count_c_vertices(const Domain& d, const Heights& h);

inline double weight(const Domain& d, const Heights& h, const ModelParams& p) {
  return std::pow(p.c, count_c_vertices(d, h));
}
inline double log_weight(const Domain& d, const Heights& h, const ModelParams& p) {
  return count_c_vertices(d, h) * std::log(p.c);
}
inline Rational weight_exact(const Domain& d, const Heights& h, const Rational& c) {
  return rational_pow(c, static_cast<unsigned>(count_c_vertices(d, h)));
}

// Torus balance: every row and column of faces has equal up/down
// (right/left) flux.
bool is_balanced(const Domain& torus, const Arrows& a);
// Cylinder sector: row flux is 2k, conserved row to row; returns k.
int sector_flux(const Domain& cylinder, const Arrows& a);

}  // namespace sixv
