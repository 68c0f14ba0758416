#include "sixv/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "sixv/error.hpp"

namespace sixv {

int resolve_threads(int requested) {
  if (const char* env = std::getenv("SIXV_THREADS")) {
    int t = std::atoi(env);
    if (t > 0) return t;
  }
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

void parallel_for(int n, int threads, const std::function<void(int)>& body) {
  threads = std::max(1, std::min(threads, n));
  if (threads == 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&]() {
      while (true) {
        int i = next.fetch_add(1);
        if (i >= n) return;
        body(i);
      }
    });
  for (auto& th : pool) th.join();
}

VarianceResult variance_experiment(int n, double c, const std::vector<int>& distances,
                                   const VarianceBudget& budget) {
  if (n % 2 != 0) throw PreconditionError("variance_experiment: torus size must be even");
  for (int d : distances)
    if (d <= 0 || d > n / 2) throw PreconditionError("variance_experiment: distances in (0, N/2]");

  Domain torus = Domain::torus(n);
  ModelParams params{c};
  Chain chain(torus, params, RngKey::from(budget.seed, 0));

  const int nd = static_cast<int>(distances.size());
  std::vector<Estimator> var_est(nd), mean_est(nd);
  Estimator plateau_est;
  const int d_hi = distances.back();
  const int d_mid = nd >= 2 ? distances[nd - 2] : distances.back();

  for (int s = 0; s < budget.burnin_sweeps; ++s) chain.sweep();
  for (int s = 0; s < budget.measure_sweeps; ++s) {
    chain.sweep();
    if ((s + 1) % budget.thinning != 0) continue;
    const Heights& h = chain.heights();
    double vhi = 0, vmid = 0;
    for (int di = 0; di < nd; ++di) {
      int d = distances[di];
      double acc = 0, acc1 = 0;
      for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x) {
          int f = torus.index_of({x, y});
          int gx = torus.index_of({x + d, y});
          int gy = torus.index_of({x, y + d});
          double ix = h[f] - h[gx];
          double iy = h[f] - h[gy];
          acc += ix * ix + iy * iy;
          acc1 += ix + iy;
        }
      double v = acc / (2.0 * n * n);
      var_est[di].add(v);
      mean_est[di].add(acc1 / (2.0 * n * n));
      if (d == d_hi) vhi = v;
      if (d == d_mid) vmid = v;
    }
    plateau_est.add(vhi - vmid);
  }

  VarianceResult res;
  res.n = n;
  res.c = c;
  res.seed = budget.seed;
  res.sweeps = budget.burnin_sweeps + budget.measure_sweeps;
  for (int di = 0; di < nd; ++di) {
    VariancePoint p;
    p.d = distances[di];
    p.var = var_est[di].mean();
    p.stderr_val = var_est[di].stderr_batch();
    p.mean_increment = mean_est[di].mean();
    p.batches = var_est[di].batches();
    res.points.push_back(p);
  }
  res.plateau_diff = plateau_est.mean();
  res.plateau_stderr = plateau_est.stderr_batch();

  // Weighted least squares var ~ a + b log d, weights 1/se^2.
  double sw = 0, swx = 0, swy = 0, swxx = 0, swxy = 0;
  for (const auto& p : res.points) {
    double w = 1.0 / std::max(1e-12, p.stderr_val * p.stderr_val);
    double x = std::log(static_cast<double>(p.d));
    sw += w;
    swx += w * x;
    swy += w * p.var;
    swxx += w * x * x;
    swxy += w * x * p.var;
  }
  double det = sw * swxx - swx * swx;
  res.b = (sw * swxy - swx * swy) / det;
  res.a = (swxx * swy - swx * swxy) / det;
  res.b_stderr = std::sqrt(sw / det);
  double ybar = 0;
  for (const auto& p : res.points) ybar += p.var;
  ybar /= nd;
  double ss_res = 0, ss_tot = 0;
  for (const auto& p : res.points) {
    double fit = res.a + res.b * std::log(static_cast<double>(p.d));
    ss_res += (p.var - fit) * (p.var - fit);
    ss_tot += (p.var - ybar) * (p.var - ybar);
  }
  res.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  return res;
}

CircuitResult circuit_experiment(int n, int k, double c, const CircuitBudget& budget) {
  Domain dom = lambda_domain(2 * n);
  BoundaryCondition xi = boundary_01(dom);
  ModelParams params{c};

  int burnin = budget.burnin_sweeps;
  if (burnin <= 0) {
    auto rep = sandwich_diagnostic(dom, xi, params, budget.seed ^ 0x5a5a, budget.coupling_cap);
    burnin = rep.coupled_at > 0 ? 4 * rep.coupled_at : 10 * 2 * n;
  }

  Chain chain(dom, xi, params, RngKey::from(budget.seed, 0));
  for (int s = 0; s < burnin; ++s) chain.sweep();

  Estimator circ_est, block_est;
  std::vector<int> boundary, lam_n;
  for (int f = 0; f < dom.face_count(); ++f) {
    if (dom.is_boundary(f)) boundary.push_back(f);
    if (lambda_contains(n, dom.face(f))) lam_n.push_back(f);
  }
  for (int s = 0; s < budget.measure_sweeps; ++s) {
    chain.sweep();
    if ((s + 1) % budget.thinning != 0) continue;
    const Heights& h = chain.heights();
    circ_est.add(circuit(dom, h, n, 2 * n, HeightPred{HeightPred::GE, k}) ? 1.0 : 0.0);
    block_est.add(crossing(dom, h, boundary, lam_n, HeightPred{HeightPred::AbsLE, k}) ? 1.0 : 0.0);
  }

  CircuitResult res;
  res.n = n;
  res.k = k;
  res.c = c;
  res.p_hat = circ_est.mean();
  res.stderr_val = circ_est.stderr_batch();
  res.batches = circ_est.batches();
  res.p_block = block_est.mean();
  res.block_stderr = block_est.stderr_batch();
  res.seed = budget.seed;
  res.sweeps = burnin + budget.measure_sweeps;
  res.burnin = burnin;
  return res;
}

std::string variance_csv(const std::vector<VarianceResult>& rows) {
  std::ostringstream os;
  os << "N,c,d,mean_increment,var,stderr,batches,a,b,b_stderr,r2,plateau_diff,plateau_stderr,"
        "seed,sweeps\n";
  for (const auto& r : rows)
    for (const auto& p : r.points)
      os << r.n << "," << r.c << "," << p.d << "," << p.mean_increment << "," << p.var << ","
         << p.stderr_val << "," << p.batches << "," << r.a << "," << r.b << "," << r.b_stderr
         << "," << r.r2 << "," << r.plateau_diff << "," << r.plateau_stderr << "," << r.seed
         << "," << r.sweeps << "\n";
  return os.str();
}

std::string circuit_csv(const std::vector<CircuitResult>& rows) {
  std::ostringstream os;
  os << "n,k,c,p_hat,stderr,batches,p_block,block_stderr,seed,sweeps,burnin\n";
  for (const auto& r : rows)
    os << r.n << "," << r.k << "," << r.c << "," << r.p_hat << "," << r.stderr_val << ","
       << r.batches << "," << r.p_block << "," << r.block_stderr << "," << r.seed << ","
       << r.sweeps << "," << r.burnin << "\n";
  return os.str();
}

}  // namespace sixv
