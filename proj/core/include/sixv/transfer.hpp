#pragma once

#include <vector>

#include "sixv/height.hpp"

namespace sixv {

// Row-to-row transfer operator for the cylinder of circumference N.
// States are the 2^N patterns of vertical arrows crossing a face row
// (bit set = up); one application is one ring of N vertices with the
// horizontal edges summed internally. The operator preserves the up-arrow
// count k, so it block-decomposes over k = 0..N.
//
// Cylinder ends are free: Z^{(s)}_{N,M} = 1^T T^{M-1} 1 on the block
// k = N/2 + s (row flux 2s).
class TransferOperator {
public:
  TransferOperator(int n, double c);

  int circumference() const { return n_; }
  double c() const { return c_; }

  // out = T * in over the full 2^N state space (flux blocks never mix).
  void apply(const std::vector<double>& in, std::vector<double>& out) const;

  // Exact partition function of sector flux 2k on M face rows.
  Rational sector_partition_exact(int k, int m, const Rational& c_exact) const;
  double sector_partition(int k, int m) const;
  double log_sector_partition(int k, int m) const;  // scaled, safe for large M

  struct Eig {
    double lambda = 0;
    int iterations = 0;
    double residual = 0;
    bool converged = false;
  };
  // Perron eigenvalue of block k by power iteration from the uniform
  // positive vector. Throws ConvergenceError when the tolerance is not met.
  Eig leading_eigenvalue(int k, double tol = 1e-12, int max_iter = 100000) const;

private:
  int n_;
  double c_;
};

struct FreeEnergyEstimate {
  int n = 0;
  int k = 0;          // up arrows in the block
  double alpha = 0;   // realized unbalance (k - N/2)/N
  double f_hat = 0;   // (1/N) log lambda_max(block k)
  double residual = 0;
  int iterations = 0;
};

// f_hat at unbalance alpha: block k = N/2 + round(alpha*N).
FreeEnergyEstimate free_energy(int n, double c, double alpha, double tol = 1e-12);

struct CurvatureRow {
  double alpha = 0;
  int k = 0;
  double f_hat = 0;
  double g = 0;             // f_hat(0) - f_hat(alpha), >= 0
  double g_over_alpha = 0;
  double g_over_alpha2 = 0;
};

// g_N(alpha) for alpha = j/N, j = 0..k_max, plus the ratio diagnostics used
// by the curvature dichotomy checks.
std::vector<CurvatureRow> curvature_table(int n, double c, int k_max, double tol = 1e-12);

}  // namespace sixv
