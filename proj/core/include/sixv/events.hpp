#pragma once

#include <array>
#include <functional>
#include <vector>

#include "sixv/height.hpp"

namespace sixv {

// Level-set predicates on a single face height.
struct HeightPred {
  enum Kind { GE, LE, LT, AbsGE, AbsLE } kind = GE;
  int k = 0;

  bool holds(int h) const {
    switch (kind) {
      case GE: return h >= k;
      case LE: return h <= k;
      case LT: return h < k;
      case AbsGE: return std::abs(h) >= k;
      case AbsLE: return std::abs(h) <= k;
    }
    return false;
  }
  bool increasing() const { return kind == GE; }
  bool decreasing() const { return kind == LE || kind == LT; }
};

enum class Adjacency { Edge, Cross };

// Path of pred-satisfying faces from A to B under the chosen adjacency.
bool crossing(const Domain& d, const Heights& h, std::span<const int> a, std::span<const int> b,
              HeightPred pred, Adjacency adj = Adjacency::Edge);

// O_pred(n, N): a circuit of pred-satisfying faces in the annulus A(n,N)
// with nonzero winding around Lambda_n. Winding is detected by signed
// crossings of a cut ray from the hole to the outer boundary, via a
// union-find with potentials; a potential conflict is exactly a cycle of
// nonzero winding. Plane patches only; throws when A(n,N) is not inside D.
bool circuit(const Domain& d, const Heights& h, int n, int N, HeightPred pred,
             Adjacency adj = Adjacency::Edge);

// A simply-connected plane patch with four marked boundary faces in
// counter-clockwise order and the induced boundary arcs.
class Quad {
public:
  Quad(Domain d, FaceCoord a, FaceCoord b, FaceCoord c, FaceCoord dd);

  const Domain& domain() const { return d_; }
  // Arc i: 0=(ab), 1=(bc), 2=(cd), 3=(da); faces in loop order, inclusive.
  const std::vector<int>& arc(int i) const { return arcs_[i]; }
  const std::vector<int>& boundary_loop() const { return loop_; }
  int mark(int i) const { return marks_[i]; }

private:
  Domain d_;
  std::array<int, 4> marks_;
  std::vector<int> loop_;
  std::array<std::vector<int>, 4> arcs_;
};

struct DualityResult {
  bool primal_crossing;   // (ab) <-> (cd) with h >= k
  bool dual_crossing;     // (bc) <->x (da) with h < k
  bool identity_ok;       // exactly one of the two occurs
  bool sandwich_ok;       // h<=k-2 crossing => dual => h<=k crossing
};

// The crossing/dual-crossing identity and its sandwich for one height
// function. identity_ok must hold for every h (combinatorial identity).
DualityResult duality_check(const Quad& q, const Heights& h, int k);

struct SymmetricQuadResult {
  Rational probability;  // exact P[(ab) <-> (cd) with h >= 0]
  bool bound_ok;         // probability >= 1/2
};

// Exact crossing probability in a symmetric quad. sigma must be a parity-
// preserving symmetry with sigma(D) = D mapping arc (ab) onto (bc) and
// (cd) onto (da); xi must satisfy sigma(xi) >= -xi.
SymmetricQuadResult symmetric_quad_bound(const Quad& q,
                                         const std::function<FaceCoord(FaceCoord)>& sigma,
                                         const BoundaryCondition& xi, const Rational& c);

}  // namespace sixv
