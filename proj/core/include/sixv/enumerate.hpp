#pragma once

#include <functional>

#include "sixv/height.hpp"

namespace sixv {

struct EnumOptions {
  int max_free_faces = 26;      // refuse beyond this many unpinned faces
  double max_log2_states = 42;  // refuse when the envelope estimate is larger
};

// Every height function extending xi, via DFS over faces in BFS order from
// the support, pruned by the min/max extension envelope. Throws
// EnumerationCap when the instance exceeds the caps, InadmissibleBoundary
// when xi admits no extension.
void enumerate_extensions(const Domain& d, const BoundaryCondition& xi,
                          const std::function<void(const Heights&)>& visit,
                          const EnumOptions& opts = {});

// Balanced torus configurations, represented by the height functions rooted
// at face (0,0) with value parity(root).
void enumerate_torus_heights(const Domain& torus, const std::function<void(const Heights&)>& visit,
                             const EnumOptions& opts = {});

// All height functions on a domain with values in [lo_at_root..] window:
// enumerates rooted representatives with root value in the given set.
void enumerate_rooted(const Domain& d, const std::vector<int>& root_values,
                      const std::function<void(const Heights&)>& visit,
                      const EnumOptions& opts = {});

// All ice configurations on a cylinder with prescribed sector flux 2k
// (pass std::nullopt for every sector).
void enumerate_cylinder_sector(const Domain& cyl, std::optional<int> flux_k,
                               const std::function<void(const Arrows&)>& visit);

// All ice configurations on a torus (for tiny N); balanced ones included.
void enumerate_torus_ice(const Domain& torus, const std::function<void(const Arrows&)>& visit);

// --- Exact finite-volume measures ----------------------------------------

// Summation over all extensions with Boltzmann weights c^{#c-vertices}.
// S is double or Rational.
template <class S>
struct WeightedSum {
  S z{};
  S accum{};
};

template <class S>
S exact_partition(const Domain& d, const BoundaryCondition& xi, const S& c,
                  const EnumOptions& opts = {});

template <class S>
S exact_probability(const Domain& d, const BoundaryCondition& xi, const S& c,
                    const std::function<bool(const Heights&)>& event,
                    const EnumOptions& opts = {});

template <class S>
S exact_expectation(const Domain& d, const BoundaryCondition& xi, const S& c,
                    const std::function<S(const Heights&)>& f, const EnumOptions& opts = {});

template <class S>
S exact_variance(const Domain& d, const BoundaryCondition& xi, const S& c,
                 const std::function<S(const Heights&)>& f, const EnumOptions& opts = {});

// Torus (balanced) analogues over rooted representatives.
template <class S>
S torus_partition(const Domain& torus, const S& c, const EnumOptions& opts = {});
template <class S>
S torus_expectation(const Domain& torus, const S& c, const std::function<S(const Heights&)>& f,
                    const EnumOptions& opts = {});

}  // namespace sixv
