#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sixv/events.hpp"
#include "sixv/mcmc.hpp"

namespace sixv {

int resolve_threads(int requested);  // SIXV_THREADS overrides; 0 = hardware

// Static-partition worker pool; results must be written by index so the
// output is independent of scheduling.
void parallel_for(int n, int threads, const std::function<void(int)>& body);

struct VarianceBudget {
  int burnin_sweeps = 2000;
  int measure_sweeps = 20000;
  int thinning = 4;
  std::uint64_t seed = 1;
};

struct VariancePoint {
  int d = 0;
  double mean_increment = 0;  // E[h(x)-h(y)], should vanish by symmetry
  double var = 0;             // E[(h(x)-h(y))^2]
  double stderr_val = 0;
  int batches = 0;
};

struct VarianceResult {
  int n = 0;
  double c = 0;
  std::vector<VariancePoint> points;
  // Weighted least squares fit var(d) ~ a + b log d.
  double a = 0, b = 0, b_stderr = 0, r2 = 0;
  // Plateau diagnostic: V(d_max) - V(d_mid) with its batch stderr.
  double plateau_diff = 0, plateau_stderr = 0;
  std::uint64_t seed = 0;
  int sweeps = 0;
};

// Increment variance on the balanced torus T_N at the given distances,
// averaged over all translates and both axis directions.
VarianceResult variance_experiment(int n, double c, const std::vector<int>& distances,
                                   const VarianceBudget& budget);

struct CircuitBudget {
  int burnin_sweeps = 0;  // 0: use 4x the sandwich coupling time
  int measure_sweeps = 12000;
  int thinning = 4;
  std::uint64_t seed = 1;
  int coupling_cap = 20000;
};

struct CircuitResult {
  int n = 0;
  int k = 0;
  double c = 0;
  double p_hat = 0;
  double stderr_val = 0;
  int batches = 0;
  double p_block = 0;  // companion: boundary reaches Lambda_n through |h|<=k
  double block_stderr = 0;
  std::uint64_t seed = 0;
  int sweeps = 0;
  int burnin = 0;
};

// P^{0,1}_{Lambda_2n}[O_{h>=k}(n,2n)] by heat-bath sampling.
CircuitResult circuit_experiment(int n, int k, double c, const CircuitBudget& budget);

std::string variance_csv(const std::vector<VarianceResult>& rows);
std::string circuit_csv(const std::vector<CircuitResult>& rows);

}  // namespace sixv
