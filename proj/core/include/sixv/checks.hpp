#pragma once

#include <string>
#include <vector>

#include "sixv/enumerate.hpp"
#include "sixv/events.hpp"
#include "sixv/height.hpp"

namespace sixv {

struct CheckRow {
  std::string check;
  std::string instance;
  double c = 1;
  bool pass = false;
  double max_violation = 0;  // 0 when pass; worst slack when failing
  std::string witness;
};

// Spatial Markov property: the conditional law of h on the sub-domain given
// the realized heights outside (and on its boundary) equals the measure on
// the sub-domain with the induced boundary condition. Exact, measure by
// measure, over every achievable outside realization.
CheckRow smp_check(const Domain& big, const std::vector<VertexCoord>& sub_vertices,
                   const BoundaryCondition& xi, const Rational& c, std::string instance = {});

struct FkgOptions {
  int max_single_indicators = 60;
  int random_monotone = 24;
  std::uint64_t seed = 42;
  bool explore_only = false;  // record violations without failing (c < 1 probes)
};

// FKG (positive association) and CBC (comparison of boundary conditions)
// for h over an auto-verified family of increasing indicator events.
std::vector<CheckRow> fkg_cbc_suite(const Domain& d, const BoundaryCondition& xi,
                                    const BoundaryCondition& xi_prime, const Rational& c,
                                    const FkgOptions& opts = {}, std::string instance = {});

// |h| analogue with conditioning on |h| = zeta over a face set B; pairs
// (zeta, zeta') range over achievable nonnegative comparable pairs.
std::vector<CheckRow> fkg_cbc_abs_suite(const Domain& d, const BoundaryCondition& xi,
                                        const BoundaryCondition& xi_prime,
                                        const std::vector<int>& b_set, const Rational& c,
                                        const FkgOptions& opts = {}, std::string instance = {});

// Single-site Holley criterion: conditional CDF domination at every face,
// every achievable comparable pair of outside configurations, every level.
CheckRow holley_single_site_check(const Domain& d, const BoundaryCondition& xi,
                                  const BoundaryCondition& xi_prime, const Rational& c,
                                  std::string instance = {});

// Boundary pushing: P^{zeta|B'}[exists C: h|C >= k] <= 2 P^xi[...] with the
// floored minimal extension zeta; the factor drops to 1 when every C meets
// the support of xi. Returns the measured ratio as diagnostics.
struct PushingResult {
  CheckRow row;
  double max_ratio = 0;  // sup over instances of lhs/rhs (<= 2 resp. 1)
};
PushingResult pushing_check(const Domain& d, const BoundaryCondition& xi, int m,
                            const std::vector<int>& b_prime,
                            const std::vector<std::vector<int>>& collection, int k,
                            const Rational& c, std::string instance = {});

// Two-domain corollary: P^{xi}_D[exists C: h|C >= k+2] <= 2 P^{xi'}_{D'}[... >= k].
CheckRow pushing_two_domain_check(const Domain& big, const std::vector<VertexCoord>& sub_vertices,
                                  const BoundaryCondition& xi_prime_on_big, int m,
                                  const std::vector<std::vector<int>>& collection_coords_ok,
                                  int k, const Rational& c, std::string instance = {});

// Cluster graph of a nonnegative height function: vertices are clusters of
// H > 0, one edge per lattice vertex whose alternating pattern joins two
// clusters through zeros.
struct ClusterGraph {
  int cluster_count = 0;
  std::vector<int> cluster_of_face;          // -1 on H == 0 faces
  std::vector<std::pair<int, int>> edges;    // one entry per joining vertex
  int n_extra_c_vertices = 0;                // c-vertices of H not edges
};
ClusterGraph build_cluster_graph(const Domain& d, const Heights& habs);

// Sign representation: W(h) = c^{N(H)} * W_Ising(signs) for every sign
// assignment, plus the Ising contraction law for a comparable pair H <= H'.
CheckRow sign_lemma_check(const Domain& d, const Heights& habs, const Rational& c,
                          std::string instance = {});
CheckRow ising_contraction_check(const Domain& d, const Heights& habs, const Heights& habs_prime,
                                 const Rational& c, std::string instance = {});

struct VerifyOptions {
  int max_free_faces = 8;
  std::vector<double> c_values = {1.0, 1.5, 2.0, 3.0};
  bool include_explore_c_half = false;
};

// The full battery over small instances; every row must pass for c >= 1.
std::vector<CheckRow> run_verify_battery(const VerifyOptions& opts);

std::string check_report_csv(const std::vector<CheckRow>& rows);

}  // namespace sixv
