#include "sixv/mcmc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "sixv/error.hpp"

namespace sixv {

void Chain::init_tables(double c) {
  if (c <= 0) throw PreconditionError("chain: c must be positive");
  for (int np = 0; np <= 4; ++np)
    for (int nm = 0; nm <= 4; ++nm) {
      double up = std::pow(c, np);
      double dn = std::pow(c, nm);
      p_up_[np][nm] = up / (up + dn);
    }
}

Chain::Chain(const Domain& d, const BoundaryCondition& xi, ModelParams p, RngKey key)
    : d_(&d), params_(p), key_(key) {
  init_tables(p.c);
  h_ = min_extension(d, xi);
  frozen_ = xi.support_mask(d);
  for (int f = 0; f < d.face_count(); ++f)
    if (!frozen_[f]) updatable_.push_back(f);
  if (updatable_.empty()) throw PreconditionError("chain: no updatable faces");
}

Chain::Chain(const Domain& d, ModelParams p, RngKey key) : d_(&d), params_(p), key_(key) {
  if (d.kind() == DomainKind::PlanePatch)
    throw PreconditionError("chain: planar domains need a boundary condition");
  init_tables(p.c);
  h_.resize(d.face_count());
  for (int f = 0; f < d.face_count(); ++f) h_[f] = d.parity(f);
  frozen_.assign(d.face_count(), 0);
  updatable_.resize(d.face_count());
  std::iota(updatable_.begin(), updatable_.end(), 0);
}

void Chain::set_heights(const Heights& h) {
  if (!is_height_function(*d_, h)) throw PreconditionError("set_heights: invalid height function");
  for (int f = 0; f < d_->face_count(); ++f)
    if (frozen_[f] && h[f] != h_[f])
      throw PreconditionError("set_heights: disagrees with the frozen boundary");
  h_ = h;
}

void Chain::update_face(int f, double u) {
  int lo = INT32_MAX, hi = INT32_MIN;
  for (int g : d_->edge_neighbors(f))
    if (g >= 0) {
      lo = std::min(lo, h_[g]);
      hi = std::max(hi, h_[g]);
    }
  if (hi != lo) {  // neighbours at {m, m+2}: value forced
    h_[f] = lo + 1;
    return;
  }
  const int m = lo;
  int np = 0, nm = 0;
  for (int g : d_->corner_diagonals(f))
    if (g >= 0) {
      np += h_[g] == m + 1;
      nm += h_[g] == m - 1;
    }
  h_[f] = (u < p_up_[np][nm]) ? m + 1 : m - 1;
}

void Chain::sweep(SweepOrder order) {
  const std::uint64_t s = sweeps_;
  switch (order) {
    case SweepOrder::Sequential:
      for (int f : updatable_) update_face(f, key_.uniform(f, s));
      break;
    case SweepOrder::Checkerboard:
      for (int f : updatable_)
        if (d_->parity(f) == 0) update_face(f, key_.uniform(f, s));
      for (int f : updatable_)
        if (d_->parity(f) == 1) update_face(f, key_.uniform(f, s));
      break;
    case SweepOrder::RandomPermutation: {
      std::vector<int> perm = updatable_;
      RngStream st{key_.derive(0x7065726dull + s)};
      for (size_t i = perm.size(); i > 1; --i)
        std::swap(perm[i - 1], perm[st.next_below(i)]);
      for (int f : perm) update_face(f, key_.uniform(f, s));
      break;
    }
  }
  ++sweeps_;
  // Heights stay within machine range at any realistic budget; cheap guard.
  if (std::abs(h_[updatable_[0]]) > (1 << 28)) throw Error("chain: height range overflow");
}

Heights Chain::rooted_heights() const {
  Heights h = h_;
  int shift = h[0] - d_->parity(0);
  for (auto& v : h) v -= shift;
  return h;
}

void Estimator::add(double x) {
  ++n_;
  sum_ += x;
  cur_sum_ += x;
  if (++cur_n_ == batch_len_) close_batch();
}

void Estimator::close_batch() {
  batch_sums_.push_back(cur_sum_);
  cur_sum_ = 0;
  cur_n_ = 0;
  // Keep the number of closed batches near the target by doubling the
  // batch length (standard batch-means growth schedule).
  if (static_cast<int>(batch_sums_.size()) >= 2 * target_batches_) coarsen();
}

void Estimator::coarsen() {
  std::vector<double> merged;
  merged.reserve(batch_sums_.size() / 2);
  for (size_t i = 0; i + 1 < batch_sums_.size(); i += 2)
    merged.push_back(batch_sums_[i] + batch_sums_[i + 1]);
  // An unpaired tail batch is dropped from the spread, like a partial batch.
  batch_sums_ = std::move(merged);
  batch_len_ *= 2;
}

void Estimator::merge(const Estimator& other) {
  Estimator o = other;
  while (batch_len_ < o.batch_len_) coarsen();
  while (o.batch_len_ < batch_len_) o.coarsen();
  n_ += o.n_;
  sum_ += o.sum_;
  batch_sums_.insert(batch_sums_.end(), o.batch_sums_.begin(), o.batch_sums_.end());
  // Partial batches are dropped from the spread, as within one chain.
}

double Estimator::mean() const { return n_ ? sum_ / static_cast<double>(n_) : 0.0; }

int Estimator::batches() const { return static_cast<int>(batch_sums_.size()); }

double Estimator::stderr_batch() const {
  const int b = batches();
  if (b < 2) return std::numeric_limits<double>::infinity();
  const double bl = static_cast<double>(batch_len_);
  double bm = 0;
  for (double s : batch_sums_) bm += s / bl;
  bm /= b;
  double var = 0;
  for (double s : batch_sums_) {
    double d = s / bl - bm;
    var += d * d;
  }
  var /= (b - 1);
  return std::sqrt(var / b);
}

namespace {

ChainReport measure(Chain& chain, const ChainSpec& spec, const std::vector<Observable>& obs) {
  for (int s = 0; s < spec.burnin_sweeps; ++s) chain.sweep(spec.order);
  std::vector<Estimator> est(obs.size(), Estimator(spec.batches));
  const Domain& d = chain.domain();
  for (int s = 0; s < spec.measure_sweeps; ++s) {
    chain.sweep(spec.order);
    if ((s + 1) % spec.thinning == 0)
      for (size_t i = 0; i < obs.size(); ++i) est[i].add(obs[i].eval(d, chain.heights()));
  }
  ChainReport rep;
  rep.seed = spec.seed;
  rep.sweeps = spec.burnin_sweeps + spec.measure_sweeps;
  for (size_t i = 0; i < obs.size(); ++i) {
    ObservableReport r;
    r.name = obs[i].name;
    r.mean = est[i].mean();
    r.stderr_val = est[i].stderr_batch();
    r.batches = est[i].batches();
    r.well_powered = est[i].well_powered();
    rep.rows.push_back(std::move(r));
  }
  return rep;
}

}  // namespace

ChainReport run_chain(const Domain& d, const BoundaryCondition& xi, const ChainSpec& spec,
                      const std::vector<Observable>& obs) {
  Chain chain(d, xi, spec.params, RngKey::from(spec.seed, spec.chain_id));
  return measure(chain, spec, obs);
}

ChainReport run_chain(const Domain& d, const ChainSpec& spec, const std::vector<Observable>& obs) {
  Chain chain(d, spec.params, RngKey::from(spec.seed, spec.chain_id));
  return measure(chain, spec, obs);
}

CouplingReport sandwich_diagnostic(const Domain& d, const BoundaryCondition& xi, ModelParams p,
                                   std::uint64_t seed, int max_sweeps) {
  if (p.c < 1.0)
    throw PreconditionError("sandwich_diagnostic: monotone coupling needs c >= 1");
  RngKey shared = RngKey::from(seed, 0);
  Chain lo(d, xi, p, shared);
  Chain hi(d, xi, p, shared);
  hi.set_heights(max_extension(d, xi));

  CouplingReport rep;
  for (int s = 0; s < max_sweeps; ++s) {
    lo.sweep(SweepOrder::Sequential);
    hi.sweep(SweepOrder::Sequential);
    int gap = 0;
    bool ordered = true;
    for (int f = 0; f < d.face_count(); ++f) {
      int diff = hi.heights()[f] - lo.heights()[f];
      if (diff < 0) ordered = false;
      gap = std::max(gap, diff);
    }
    rep.max_gap.push_back(gap);
    if (!ordered) {
      rep.order_violated = true;
      return rep;
    }
    if (gap == 0) {
      rep.coupled_at = s + 1;
      return rep;
    }
  }
  return rep;
}

}  // namespace sixv
