#include "sixv/transfer.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "sixv/error.hpp"

namespace sixv {

namespace {

// One row of N vertices applied to a state vector, horizontal ring summed.
// Work vector w[mask][l] carries the partially updated mask (bits < i are
// "above the row") and the horizontal arrow l entering vertex i (1 = east).
// At each vertex the ice rule forces the outgoing pair (t, r) up to the
// usual two-fold branching; c-vertices are exactly those with b != t.
template <class S>
void apply_row(int n, const S& c, const std::vector<S>& in, std::vector<S>& out,
               std::vector<S>& w, std::vector<S>& nw) {
  const size_t dim = static_cast<size_t>(1) << n;
  const S zero{};
  out.assign(dim, zero);
  for (int h0 = 0; h0 < 2; ++h0) {
    w.assign(dim * 2, zero);
    for (size_t mask = 0; mask < dim; ++mask)
      if (!(in[mask] == zero)) w[mask * 2 + h0] = in[mask];
    for (int i = 0; i < n; ++i) {
      nw.assign(dim * 2, zero);
      for (size_t mask = 0; mask < dim; ++mask) {
        for (int l = 0; l < 2; ++l) {
          const S& v = w[mask * 2 + l];
          if (v == zero) continue;
          const int b = (mask >> i) & 1;
          for (int t = 0; t < 2; ++t) {
            // incoming: b up, l east, t down, r west; total must be 2.
            const int need_r_in = 2 - (b + l + (1 - t));
            if (need_r_in < 0 || need_r_in > 1) continue;
            const int r = 1 - need_r_in;  // 1 = east
            const size_t nmask = mask ^ (static_cast<size_t>(b ^ t) << i);
            if (b != t)
              nw[nmask * 2 + r] += v * c;
            else
              nw[nmask * 2 + r] += v;
          }
        }
      }
      w.swap(nw);
    }
    for (size_t mask = 0; mask < dim; ++mask) out[mask] += w[mask * 2 + h0];
  }
}

template <class S>
std::vector<S> block_indicator(int n, int k) {
  const size_t dim = static_cast<size_t>(1) << n;
  std::vector<S> v(dim, S{});
  for (size_t mask = 0; mask < dim; ++mask)
    if (std::popcount(mask) == k) v[mask] = S(1);
  return v;
}

}  // namespace

TransferOperator::TransferOperator(int n, double c) : n_(n), c_(c) {
  if (n <= 0 || n % 2 != 0) throw PreconditionError("transfer: N must be positive and even");
  if (n > 24) throw PreconditionError("transfer: N too large for the dense state space");
  if (c <= 0) throw PreconditionError("transfer: c must be positive");
}

void TransferOperator::apply(const std::vector<double>& in, std::vector<double>& out) const {
  std::vector<double> w, nw;
  apply_row<double>(n_, c_, in, out, w, nw);
}

Rational TransferOperator::sector_partition_exact(int k, int m, const Rational& c_exact) const {
  if (k < 0 || k > n_) throw PreconditionError("sector_partition: k out of range");
  if (m < 2) throw PreconditionError("sector_partition: M >= 2");
  auto v = block_indicator<Rational>(n_, k);
  std::vector<Rational> out, w, nw;
  for (int row = 0; row < m - 1; ++row) {
    apply_row<Rational>(n_, c_exact, v, out, w, nw);
    v.swap(out);
  }
  Rational z = 0;
  const size_t dim = static_cast<size_t>(1) << n_;
  for (size_t mask = 0; mask < dim; ++mask)
    if (std::popcount(mask) == k) z += v[mask];
  return z;
}

double TransferOperator::sector_partition(int k, int m) const {
  return std::exp(log_sector_partition(k, m));
}

double TransferOperator::log_sector_partition(int k, int m) const {
  if (k < 0 || k > n_) throw PreconditionError("sector_partition: k out of range");
  if (m < 2) throw PreconditionError("sector_partition: M >= 2");
  auto v = block_indicator<double>(n_, k);
  std::vector<double> out, w, nw;
  double logscale = 0;
  for (int row = 0; row < m - 1; ++row) {
    apply(v, out);
    v.swap(out);
    double mx = *std::max_element(v.begin(), v.end());
    if (mx <= 0) return -std::numeric_limits<double>::infinity();
    logscale += std::log(mx);
    for (auto& x : v) x /= mx;
  }
  double z = 0;
  const size_t dim = static_cast<size_t>(1) << n_;
  for (size_t mask = 0; mask < dim; ++mask)
    if (std::popcount(mask) == k) z += v[mask];
  if (z <= 0) return -std::numeric_limits<double>::infinity();
  return logscale + std::log(z);
}

TransferOperator::Eig TransferOperator::leading_eigenvalue(int k, double tol, int max_iter) const {
  if (k < 0 || k > n_) throw PreconditionError("leading_eigenvalue: k out of range");
  const size_t dim = static_cast<size_t>(1) << n_;
  auto v = block_indicator<double>(n_, k);
  std::vector<double> out, w, nw;
  double lambda = 0, prev = -1;
  int it = 0;
  for (; it < max_iter; ++it) {
    apply(v, out);
    double num = 0, den = 0;
    for (size_t mask = 0; mask < dim; ++mask) {
      num += out[mask] * v[mask];
      den += v[mask] * v[mask];
    }
    lambda = num / den;
    double nrm = 0;
    for (size_t mask = 0; mask < dim; ++mask) nrm = std::max(nrm, std::abs(out[mask]));
    for (auto& x : out) x /= nrm;
    v.swap(out);
    if (prev > 0 && std::abs(lambda - prev) <= tol * std::abs(lambda)) {
      // Sup-norm residual on the normalized vector.
      apply(v, out);
      double res = 0, vmax = 0;
      for (size_t mask = 0; mask < dim; ++mask) {
        res = std::max(res, std::abs(out[mask] - lambda * v[mask]));
        vmax = std::max(vmax, std::abs(v[mask]));
      }
      res /= lambda * vmax;
      if (res <= 100 * tol) return {lambda, it + 1, res, true};
    }
    prev = lambda;
  }
  throw ConvergenceError("power iteration did not converge", std::abs(lambda - prev));
}

FreeEnergyEstimate free_energy(int n, double c, double alpha, double tol) {
  TransferOperator t(n, c);
  int k = n / 2 + static_cast<int>(std::lround(alpha * n));
  if (k < 0 || k > n) throw PreconditionError("free_energy: alpha out of range");
  auto eig = t.leading_eigenvalue(k, tol);
  FreeEnergyEstimate est;
  est.n = n;
  est.k = k;
  est.alpha = static_cast<double>(k - n / 2) / n;
  est.f_hat = std::log(eig.lambda) / n;
  est.residual = eig.residual;
  est.iterations = eig.iterations;
  return est;
}

std::vector<CurvatureRow> curvature_table(int n, double c, int k_max, double tol) {
  if (k_max < 1 || k_max > n / 2 - 1) throw PreconditionError("curvature_table: bad k_max");
  TransferOperator t(n, c);
  double f0 = std::log(t.leading_eigenvalue(n / 2, tol).lambda) / n;
  std::vector<CurvatureRow> rows;
  rows.push_back({0.0, n / 2, f0, 0.0, 0.0, 0.0});
  for (int j = 1; j <= k_max; ++j) {
    double fj = std::log(t.leading_eigenvalue(n / 2 + j, tol).lambda) / n;
    CurvatureRow r;
    r.alpha = static_cast<double>(j) / n;
    r.k = n / 2 + j;
    r.f_hat = fj;
    r.g = f0 - fj;
    r.g_over_alpha = r.g / r.alpha;
    r.g_over_alpha2 = r.g / (r.alpha * r.alpha);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace sixv
