#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sixv/height.hpp"
#include "sixv/rng.hpp"

namespace sixv {

enum class SweepOrder { Sequential, Checkerboard, RandomPermutation };

// Heat-bath (Glauber) chain over height functions. Planar domains keep the
// boundary condition frozen; tori and sector-0 cylinders update every face
// and store an unrooted representative (observables must be increment-based
// or root-normalized).
class Chain {
public:
  // Planar: state starts from the minimal extension of xi.
  Chain(const Domain& d, const BoundaryCondition& xi, ModelParams p, RngKey key);
  // Torus / cylinder: starts from the 0,1 checkerboard; every face updatable.
  Chain(const Domain& d, ModelParams p, RngKey key);

  const Domain& domain() const { return *d_; }
  const Heights& heights() const { return h_; }
  void set_heights(const Heights& h);
  std::uint64_t sweeps_done() const { return sweeps_; }
  const std::vector<int>& updatable_faces() const { return updatable_; }

  // Single heat-bath update with an explicit uniform (couplings feed the
  // same uniform to several chains).
  void update_face(int face, double u);
  // One sweep: every updatable face once, uniforms drawn from (key, face,
  // sweep index).
  void sweep(SweepOrder order = SweepOrder::Sequential);

  // Conditional probability of the up move at an unforced face; exposed for
  // the exact stationarity checks.
  double p_up(int n_plus, int n_minus) const { return p_up_[n_plus][n_minus]; }

  // Root-normalized copy (h(root) = parity(root), root = face 0).
  Heights rooted_heights() const;

private:
  void init_tables(double c);
  const Domain* d_;
  ModelParams params_;
  Heights h_;
  std::vector<std::uint8_t> frozen_;
  std::vector<int> updatable_;
  RngKey key_;
  std::uint64_t sweeps_ = 0;
  double p_up_[5][5];
};

// Batch-means accumulator: mean, autocorrelation-robust standard error.
class Estimator {
public:
  explicit Estimator(int target_batches = 25) : target_batches_(target_batches) {}
  void add(double x);
  long count() const { return n_; }
  double mean() const;
  // Standard error from batch means; batches() reports how many closed
  // batches back it. Fewer than 20 closed batches marks the report
  // underpowered rather than failing.
  double stderr_batch() const;
  int batches() const;
  bool well_powered() const { return batches() >= 20; }
  // Associative, order-independent combination of estimators from
  // independent chains (batch lengths are aligned by doubling).
  void merge(const Estimator& other);

private:
  int target_batches_;
  long n_ = 0;
  double sum_ = 0;
  std::vector<double> batch_sums_;
  double cur_sum_ = 0;
  long cur_n_ = 0;
  long batch_len_ = 1;
  void close_batch();
  void coarsen();
};

struct Observable {
  std::string name;
  std::function<double(const Domain&, const Heights&)> eval;
};

struct ChainSpec {
  ModelParams params;
  std::uint64_t seed = 1;
  std::uint64_t chain_id = 0;
  int burnin_sweeps = 1000;
  int measure_sweeps = 10000;
  int thinning = 1;
  SweepOrder order = SweepOrder::Sequential;
  int batches = 25;
};

struct ObservableReport {
  std::string name;
  double mean = 0;
  double stderr_val = 0;
  int batches = 0;
  bool well_powered = true;
};

struct ChainReport {
  std::vector<ObservableReport> rows;
  std::uint64_t seed = 0;
  int sweeps = 0;
};

// Deterministic given the chain spec. The planar overload takes the
// boundary condition; the other samples the balanced torus / sector-0
// cylinder.
ChainReport run_chain(const Domain& d, const BoundaryCondition& xi, const ChainSpec& spec,
                      const std::vector<Observable>& obs);
ChainReport run_chain(const Domain& d, const ChainSpec& spec, const std::vector<Observable>& obs);

struct CouplingReport {
  std::vector<int> max_gap;  // per sweep, max pointwise gap
  int coupled_at = -1;       // first sweep with gap 0, -1 if not reached
  bool order_violated = false;
};

// Min/max-start chains driven by shared randomness; the gap certificate is
// an empirical mixing diagnostic. Requires c >= 1.
CouplingReport sandwich_diagnostic(const Domain& d, const BoundaryCondition& xi, ModelParams p,
                                   std::uint64_t seed, int max_sweeps);

}  // namespace sixv
