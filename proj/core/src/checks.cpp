#include "sixv/checks.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "sixv/error.hpp"
#include "sixv/rng.hpp"

namespace sixv {

namespace {

std::string face_str(const Domain& d, int f) {
  std::ostringstream os;
  os << "(" << d.face(f).x << "," << d.face(f).y << ")";
  return os.str();
}

struct StateSet {
  std::vector<Heights> states;
  std::vector<Rational> weights;
  Rational z = 0;
};

StateSet collect_states(const Domain& d, const BoundaryCondition& xi, const Rational& c,
                        const EnumOptions& opts = {}) {
  StateSet s;
  enumerate_extensions(
      d, xi,
      [&](const Heights& h) {
        Rational w = rational_pow(c, static_cast<unsigned>(count_c_vertices(d, h)));
        s.states.push_back(h);
        s.weights.push_back(w);
        s.z += w;
      },
      opts);
  return s;
}

bool heights_leq(const Heights& a, const Heights& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Heights abs_heights(const Heights& h) {
  Heights a = h;
  for (auto& v : a) v = std::abs(v);
  return a;
}

}  // namespace

// --------------------------------------------------------------------------
// Spatial Markov property
// --------------------------------------------------------------------------

CheckRow smp_check(const Domain& big, const std::vector<VertexCoord>& sub_vertices,
                   const BoundaryCondition& xi, const Rational& c, std::string instance) {
  CheckRow row{"smp", std::move(instance), to_double(c), true, 0, ""};
  Domain sub = Domain::plane_patch(sub_vertices);

  // Face maps between the two domains.
  std::vector<int> big_of_sub(sub.face_count());
  for (int f = 0; f < sub.face_count(); ++f) {
    int bf = big.index_of(sub.face(f));
    if (bf < 0) throw PreconditionError("smp_check: sub-domain not contained in domain");
    big_of_sub[f] = bf;
  }
  std::vector<std::uint8_t> in_sub_interior(big.face_count(), 0);
  std::vector<std::uint8_t> in_sub(big.face_count(), 0);
  for (int f = 0; f < sub.face_count(); ++f) {
    in_sub[big_of_sub[f]] = 1;
    if (!sub.is_boundary(f)) in_sub_interior[big_of_sub[f]] = 1;
  }

  StateSet full = collect_states(big, xi, c);

  // Group by the realization on D^c cup dD (everything but the sub-domain
  // interior); the conditional law of the interior must match the measure
  // on the sub-domain with the induced boundary values.
  struct Group {
    std::map<Heights, Rational> cond;  // interior restriction -> weight
    Rational total = 0;
    Heights outside;  // one representative (full heights)
  };
  std::map<Heights, Group> groups;
  for (size_t i = 0; i < full.states.size(); ++i) {
    Heights key, interior;
    key.reserve(big.face_count());
    for (int f = 0; f < big.face_count(); ++f)
      if (!in_sub_interior[f]) key.push_back(full.states[i][f]);
    for (int f = 0; f < sub.face_count(); ++f)
      if (!sub.is_boundary(f)) interior.push_back(full.states[i][big_of_sub[f]]);
    auto& g = groups[key];
    g.cond[interior] += full.weights[i];
    g.total += full.weights[i];
    g.outside = full.states[i];
  }

  for (auto& [key, g] : groups) {
    // Induced boundary condition on the sub-domain boundary.
    BoundaryCondition zeta;
    for (int f = 0; f < sub.face_count(); ++f)
      if (sub.is_boundary(f)) zeta.add(f, g.outside[big_of_sub[f]]);
    StateSet direct = collect_states(sub, zeta, c);
    std::map<Heights, Rational> want;
    for (size_t i = 0; i < direct.states.size(); ++i) {
      Heights interior;
      for (int f = 0; f < sub.face_count(); ++f)
        if (!sub.is_boundary(f)) interior.push_back(direct.states[i][f]);
      want[interior] += direct.weights[i];
    }
    if (want.size() != g.cond.size()) {
      row.pass = false;
      row.witness = "support mismatch";
      return row;
    }
    for (auto& [interior, w] : g.cond) {
      auto it = want.find(interior);
      if (it == want.end() || w * direct.z != it->second * g.total) {
        row.pass = false;
        row.max_violation = 1;
        row.witness = "conditional law differs";
        return row;
      }
    }
  }

  // Factorization: conditionally on the sub-boundary values, the interior
  // and the exterior are independent.
  struct FGroup {
    std::map<Heights, Rational> in, out;
    std::map<std::pair<Heights, Heights>, Rational> joint;
    Rational total = 0;
  };
  std::map<Heights, FGroup> fgroups;
  for (size_t i = 0; i < full.states.size(); ++i) {
    Heights bkey, interior, exterior;
    for (int f = 0; f < sub.face_count(); ++f)
      if (sub.is_boundary(f)) bkey.push_back(full.states[i][big_of_sub[f]]);
    for (int f = 0; f < big.face_count(); ++f) {
      if (in_sub_interior[f])
        interior.push_back(full.states[i][f]);
      else if (!in_sub[f])
        exterior.push_back(full.states[i][f]);
    }
    auto& g = fgroups[bkey];
    g.in[interior] += full.weights[i];
    g.out[exterior] += full.weights[i];
    g.joint[{interior, exterior}] += full.weights[i];
    g.total += full.weights[i];
  }
  for (auto& [bkey, g] : fgroups)
    for (auto& [pr, w] : g.joint)
      if (w * g.total != g.in[pr.first] * g.out[pr.second]) {
        row.pass = false;
        row.max_violation = 1;
        row.witness = "interior/exterior not conditionally independent";
        return row;
      }
  return row;
}

// --------------------------------------------------------------------------
// Increasing event families
// --------------------------------------------------------------------------

namespace {

using EventFn = std::function<bool(const Heights&)>;

struct EventFamily {
  std::vector<EventFn> events;
  std::vector<std::string> names;
};

// Indicator family on height fields: single-face thresholds, a few pairwise
// unions/intersections, and random up-sets generated from reference states.
EventFamily build_increasing_family(const std::vector<Heights>& pool, const FkgOptions& opts) {
  EventFamily fam;
  if (pool.empty()) return fam;
  const size_t nf = pool[0].size();
  std::vector<int> lo(nf, INT32_MAX), hi(nf, INT32_MIN);
  for (const auto& h : pool)
    for (size_t f = 0; f < nf; ++f) {
      lo[f] = std::min(lo[f], h[f]);
      hi[f] = std::max(hi[f], h[f]);
    }
  std::vector<std::pair<int, int>> singles;  // (face, level)
  for (size_t f = 0; f < nf; ++f)
    for (int k = lo[f] + 2; k <= hi[f]; k += 2) singles.push_back({static_cast<int>(f), k});
  if (static_cast<int>(singles.size()) > opts.max_single_indicators)
    singles.resize(opts.max_single_indicators);
  for (auto [f, k] : singles) {
    fam.events.push_back([f, k](const Heights& h) { return h[f] >= k; });
    fam.names.push_back("h(" + std::to_string(f) + ")>=" + std::to_string(k));
  }
  // Pairwise unions and intersections of a small prefix.
  const size_t np = std::min<size_t>(singles.size(), 6);
  for (size_t i = 0; i < np; ++i)
    for (size_t j = i + 1; j < np; ++j) {
      auto [f1, k1] = singles[i];
      auto [f2, k2] = singles[j];
      fam.events.push_back([=](const Heights& h) { return h[f1] >= k1 && h[f2] >= k2; });
      fam.names.push_back("and:" + std::to_string(i) + "," + std::to_string(j));
      fam.events.push_back([=](const Heights& h) { return h[f1] >= k1 || h[f2] >= k2; });
      fam.names.push_back("or:" + std::to_string(i) + "," + std::to_string(j));
    }
  // Random up-sets anchored at sampled states.
  RngStream st{RngKey::from(opts.seed, 0xfa111ull)};
  for (int r = 0; r < opts.random_monotone; ++r) {
    size_t m = 1 + st.next_below(2);
    std::vector<Heights> gens;
    for (size_t i = 0; i < m; ++i) gens.push_back(pool[st.next_below(pool.size())]);
    fam.events.push_back([gens](const Heights& h) {
      for (const auto& g : gens)
        if (heights_leq(g, h)) return true;
      return false;
    });
    fam.names.push_back("upset:" + std::to_string(r));
  }
  return fam;
}

// Every event must be increasing over the given poset of states; returns a
// witness string when not.
std::string verify_increasing(const EventFamily& fam, const std::vector<Heights>& states) {
  for (size_t e = 0; e < fam.events.size(); ++e)
    for (size_t i = 0; i < states.size(); ++i)
      for (size_t j = 0; j < states.size(); ++j) {
        if (i == j || !heights_leq(states[i], states[j])) continue;
        if (fam.events[e](states[i]) && !fam.events[e](states[j]))
          return fam.names[e];
      }
  return {};
}

}  // namespace

std::vector<CheckRow> fkg_cbc_suite(const Domain& d, const BoundaryCondition& xi,
                                    const BoundaryCondition& xi_prime, const Rational& c,
                                    const FkgOptions& opts, std::string instance) {
  std::vector<CheckRow> rows;
  StateSet base = collect_states(d, xi, c);
  StateSet prime = collect_states(d, xi_prime, c);

  std::vector<Heights> pool = base.states;
  pool.insert(pool.end(), prime.states.begin(), prime.states.end());
  EventFamily fam = build_increasing_family(pool, opts);

  CheckRow mono{"fkg-family-monotone", instance, to_double(c), true, 0, ""};
  if (auto w = verify_increasing(fam, pool); !w.empty()) {
    mono.pass = false;
    mono.witness = w;
    rows.push_back(mono);
    return rows;  // a non-monotone family invalidates the rest
  }
  rows.push_back(mono);

  // Cache event values per state.
  auto table = [&](const StateSet& s) {
    std::vector<std::vector<char>> t(fam.events.size(), std::vector<char>(s.states.size()));
    for (size_t e = 0; e < fam.events.size(); ++e)
      for (size_t i = 0; i < s.states.size(); ++i) t[e][i] = fam.events[e](s.states[i]);
    return t;
  };
  auto tb = table(base);
  auto tp = table(prime);

  auto sum_where = [&](const StateSet& s, const std::vector<char>& ev) {
    Rational acc = 0;
    for (size_t i = 0; i < s.states.size(); ++i)
      if (ev[i]) acc += s.weights[i];
    return acc;
  };
  auto sum_where2 = [&](const StateSet& s, const std::vector<char>& e1,
                        const std::vector<char>& e2) {
    Rational acc = 0;
    for (size_t i = 0; i < s.states.size(); ++i)
      if (e1[i] && e2[i]) acc += s.weights[i];
    return acc;
  };

  CheckRow fkg{"fkg-h", instance, to_double(c), true, 0, ""};
  for (size_t a = 0; a < fam.events.size() && fkg.pass; ++a)
    for (size_t b = a; b < fam.events.size(); ++b) {
      // E[FG] Z^2 >= E[F] E[G] Z^2  <=>  S_FG * Z >= S_F * S_G.
      Rational lhs = sum_where2(base, tb[a], tb[b]) * base.z;
      Rational rhs = sum_where(base, tb[a]) * sum_where(base, tb[b]);
      if (lhs < rhs) {
        fkg.pass = false;
        fkg.max_violation = to_double((rhs - lhs) / (base.z * base.z));
        fkg.witness = fam.names[a] + " & " + fam.names[b];
        break;
      }
    }
  rows.push_back(fkg);

  CheckRow cbc{"cbc-h", instance, to_double(c), true, 0, ""};
  for (size_t a = 0; a < fam.events.size(); ++a) {
    Rational lhs = sum_where(prime, tp[a]) * base.z;
    Rational rhs = sum_where(base, tb[a]) * prime.z;
    if (lhs < rhs) {
      cbc.pass = false;
      cbc.max_violation = to_double((rhs - lhs) / (base.z * prime.z));
      cbc.witness = fam.names[a];
      break;
    }
  }
  rows.push_back(cbc);

  if (opts.explore_only)
    for (auto& r : rows) r.check = "explore-" + r.check;
  return rows;
}

std::vector<CheckRow> fkg_cbc_abs_suite(const Domain& d, const BoundaryCondition& xi,
                                        const BoundaryCondition& xi_prime,
                                        const std::vector<int>& b_set, const Rational& c,
                                        const FkgOptions& opts, std::string instance) {
  std::vector<CheckRow> rows;
  for (int v : xi.values)
    if (v < 0) throw PreconditionError("fkg_cbc_abs_suite: xi must be nonnegative");

  StateSet base = collect_states(d, xi, c);
  StateSet prime = collect_states(d, xi_prime, c);

  // Distributions of |h|.
  auto abs_states = [&](const StateSet& s) {
    std::map<Heights, Rational> m;
    for (size_t i = 0; i < s.states.size(); ++i) m[abs_heights(s.states[i])] += s.weights[i];
    return m;
  };
  auto mb = abs_states(base);
  auto mp = abs_states(prime);

  std::vector<Heights> pool;
  for (auto& [h, w] : mb) pool.push_back(h);
  for (auto& [h, w] : mp) pool.push_back(h);
  EventFamily fam = build_increasing_family(pool, opts);
  CheckRow mono{"fkg-abs-family-monotone", instance, to_double(c), true, 0, ""};
  if (auto w = verify_increasing(fam, pool); !w.empty()) {
    mono.pass = false;
    mono.witness = w;
    rows.push_back(mono);
    return rows;
  }

  // FKG for |h| under xi (unconditioned).
  CheckRow fkg{"fkg-abs", instance, to_double(c), true, 0, ""};
  {
    Rational z = 0;
    for (auto& [h, w] : mb) z += w;
    for (size_t a = 0; a < fam.events.size() && fkg.pass; ++a)
      for (size_t b = a; b < fam.events.size(); ++b) {
        Rational sfg = 0, sf = 0, sg = 0;
        for (auto& [h, w] : mb) {
          bool fa = fam.events[a](h), fb = fam.events[b](h);
          if (fa && fb) sfg += w;
          if (fa) sf += w;
          if (fb) sg += w;
        }
        if (sfg * z < sf * sg) {
          fkg.pass = false;
          fkg.max_violation = to_double((sf * sg - sfg * z) / (z * z));
          fkg.witness = fam.names[a] + " & " + fam.names[b];
          break;
        }
      }
  }
  rows.push_back(fkg);

  // CBC for |h| with conditioning on achievable zeta <= zeta' over B.
  CheckRow cbc{"cbc-abs", instance, to_double(c), true, 0, ""};
  {
    auto restrict_b = [&](const Heights& habs) {
      Heights r;
      for (int f : b_set) r.push_back(habs[f]);
      return r;
    };
    // zeta-conditioned sub-distributions.
    std::map<Heights, std::map<Heights, Rational>> cond_b, cond_p;
    for (auto& [h, w] : mb) cond_b[restrict_b(h)][h] += w;
    for (auto& [h, w] : mp) cond_p[restrict_b(h)][h] += w;
    for (auto& [zeta, distb] : cond_b) {
      for (auto& [zetap, distp] : cond_p) {
        if (zeta.size() != zetap.size()) continue;
        bool leq_ok = true;
        for (size_t i = 0; i < zeta.size(); ++i) leq_ok = leq_ok && zeta[i] <= zetap[i];
        if (!leq_ok) continue;
        Rational zb = 0, zp = 0;
        for (auto& [h, w] : distb) zb += w;
        for (auto& [h, w] : distp) zp += w;
        for (size_t a = 0; a < fam.events.size(); ++a) {
          Rational sb = 0, sp = 0;
          for (auto& [h, w] : distb)
            if (fam.events[a](h)) sb += w;
          for (auto& [h, w] : distp)
            if (fam.events[a](h)) sp += w;
          if (sp * zb < sb * zp) {
            cbc.pass = false;
            cbc.max_violation =
                std::max(cbc.max_violation, to_double((sb * zp - sp * zb) / (zb * zp)));
            cbc.witness = fam.names[a];
          }
        }
      }
    }
  }
  rows.push_back(cbc);

  if (opts.explore_only)
    for (auto& r : rows) r.check = "explore-" + r.check;
  return rows;
}

// --------------------------------------------------------------------------
// Holley single-site criterion
// --------------------------------------------------------------------------

CheckRow holley_single_site_check(const Domain& d, const BoundaryCondition& xi,
                                  const BoundaryCondition& xi_prime, const Rational& c,
                                  std::string instance) {
  CheckRow row{"holley-single-site", std::move(instance), to_double(c), true, 0, ""};
  StateSet base = collect_states(d, xi, c);
  StateSet prime = collect_states(d, xi_prime, c);
  auto frozen = xi.support_mask(d);

  for (int x = 0; x < d.face_count() && row.pass; ++x) {
    if (frozen[x]) continue;
    // Conditional distributions at x given the rest.
    struct Cond {
      std::map<int, Rational> at_x;
      Rational z = 0;
      Heights chi;  // restriction off x
    };
    auto conds = [&](const StateSet& s) {
      std::map<Heights, Cond> m;
      for (size_t i = 0; i < s.states.size(); ++i) {
        Heights chi = s.states[i];
        chi.erase(chi.begin() + x);
        auto& cd = m[chi];
        cd.at_x[s.states[i][x]] += s.weights[i];
        cd.z += s.weights[i];
        cd.chi = chi;
      }
      return m;
    };
    auto mb = conds(base);
    auto mp = conds(prime);

    // Internal cross-check: the unforced conditional must match the
    // closed-form c^{n+}/(c^{n+}+c^{n-}) read off the corner diagonals.
    for (auto& [chi, cd] : mb) {
      if (cd.at_x.size() != 2) continue;
      auto it = cd.at_x.begin();
      int vlow = it->first;
      Rational wlow = it->second;
      ++it;
      Rational whigh = it->second;
      int m = vlow + 1;
      int np = 0, nm = 0;
      Heights full = cd.chi;
      full.insert(full.begin() + x, m + 1);
      for (int g : d.corner_diagonals(x))
        if (g >= 0) {
          np += full[g] == m + 1;
          nm += full[g] == m - 1;
        }
      // P[up]/P[down] must equal c^{np}/c^{nm}.
      Rational lhs = whigh * rational_pow(c, static_cast<unsigned>(nm));
      Rational rhs = wlow * rational_pow(c, static_cast<unsigned>(np));
      if (lhs != rhs) {
        row.pass = false;
        row.witness = "closed-form mismatch at " + face_str(d, x);
        break;
      }
    }
    if (!row.pass) break;

    for (auto& [chi, cb] : mb)
      for (auto& [chip, cp] : mp) {
        bool cmp = true;
        for (size_t i = 0; i < chi.size(); ++i) cmp = cmp && chi[i] <= chip[i];
        if (!cmp) continue;
        // P^xi[h(x) >= k | chi] <= P^xi'[h(x) >= k | chi'] for every k.
        std::vector<int> ks;
        for (auto& [v, w] : cb.at_x) ks.push_back(v);
        for (auto& [v, w] : cp.at_x) ks.push_back(v);
        for (int k : ks) {
          Rational pb = 0, pp = 0;
          for (auto& [v, w] : cb.at_x)
            if (v >= k) pb += w;
          for (auto& [v, w] : cp.at_x)
            if (v >= k) pp += w;
          if (pb * cp.z > pp * cb.z) {
            row.pass = false;
            row.max_violation = to_double((pb * cp.z - pp * cb.z) / (cb.z * cp.z));
            row.witness = "face " + face_str(d, x) + " level " + std::to_string(k);
            return row;
          }
        }
      }
  }
  return row;
}

// --------------------------------------------------------------------------
// Boundary pushing
// --------------------------------------------------------------------------

namespace {

bool collection_event(const std::vector<std::vector<int>>& collection, const Heights& h, int k) {
  for (const auto& cset : collection) {
    bool all = true;
    for (int f : cset)
      if (h[f] < k) {
        all = false;
        break;
      }
    if (all) return true;
  }
  return false;
}

}  // namespace

PushingResult pushing_check(const Domain& d, const BoundaryCondition& xi, int m,
                            const std::vector<int>& b_prime,
                            const std::vector<std::vector<int>>& collection, int k,
                            const Rational& c, std::string instance) {
  PushingResult res;
  res.row = {"pushing", std::move(instance), to_double(c), true, 0, ""};
  if (k <= m) throw PreconditionError("pushing_check: need k > m");
  for (int v : xi.values)
    if (v < m) throw PreconditionError("pushing_check: xi >= m required");

  Heights zeta_full = min_extension(d, xi, m - 1);
  BoundaryCondition zeta;
  for (int f : b_prime) zeta.add(f, zeta_full[f]);

  auto support = xi.support_mask(d);
  bool all_meet_b = true;
  for (const auto& cset : collection) {
    bool meets = false;
    for (int f : cset) meets = meets || support[f];
    all_meet_b = all_meet_b && meets;
  }

  Rational lhs = exact_probability<Rational>(
      d, zeta, c, [&](const Heights& h) { return collection_event(collection, h, k); });
  Rational rhs = exact_probability<Rational>(
      d, xi, c, [&](const Heights& h) { return collection_event(collection, h, k); });

  Rational factor = all_meet_b ? Rational(1) : Rational(2);
  if (lhs > factor * rhs) {
    res.row.pass = false;
    res.row.max_violation = to_double(lhs - factor * rhs);
    res.row.witness = all_meet_b ? "factor-1 form" : "factor-2 form";
  }
  res.max_ratio = rhs > 0 ? to_double(lhs / rhs) : (lhs > 0 ? 1e300 : 0.0);
  return res;
}

CheckRow pushing_two_domain_check(const Domain& big, const std::vector<VertexCoord>& sub_vertices,
                                  const BoundaryCondition& xi_prime_on_big, int m,
                                  const std::vector<std::vector<int>>& collection_sub_faces,
                                  int k, const Rational& c, std::string instance) {
  CheckRow row{"pushing-two-domain", std::move(instance), to_double(c), true, 0, ""};
  if (k <= m) throw PreconditionError("pushing_two_domain: need k > m");
  for (int v : xi_prime_on_big.values)
    if (v < m) throw PreconditionError("pushing_two_domain: xi' >= m required");

  Domain sub = Domain::plane_patch(sub_vertices);
  std::vector<int> big_of_sub(sub.face_count());
  for (int f = 0; f < sub.face_count(); ++f) {
    big_of_sub[f] = big.index_of(sub.face(f));
    if (big_of_sub[f] < 0) throw PreconditionError("pushing_two_domain: sub not inside domain");
  }

  // Minimal admissible xi on the sub boundary: >= m, matching xi' where the
  // two boundaries share faces.
  std::vector<std::uint8_t> big_bc(big.face_count(), 0);
  std::vector<int> big_bc_val(big.face_count(), 0);
  for (size_t i = 0; i < xi_prime_on_big.size(); ++i) {
    big_bc[xi_prime_on_big.faces[i]] = 1;
    big_bc_val[xi_prime_on_big.faces[i]] = xi_prime_on_big.values[i];
  }
  BoundaryCondition shared;
  for (int f = 0; f < sub.face_count(); ++f)
    if (sub.is_boundary(f) && big_bc[big_of_sub[f]]) shared.add(f, big_bc_val[big_of_sub[f]]);

  BoundaryCondition xi_sub;
  if (shared.size() == 0) {
    for (int f = 0; f < sub.face_count(); ++f)
      if (sub.is_boundary(f)) xi_sub.add(f, checkerboard_value(sub, f, m));
  } else {
    Heights eta = min_extension(sub, shared, m);
    for (int f = 0; f < sub.face_count(); ++f)
      if (sub.is_boundary(f)) xi_sub.add(f, eta[f]);
  }

  // Collections are given as sub-domain face indices; map to big.
  std::vector<std::vector<int>> coll_big;
  for (const auto& cset : collection_sub_faces) {
    std::vector<int> cs;
    for (int f : cset) cs.push_back(big_of_sub[f]);
    coll_big.push_back(cs);
  }

  Rational lhs = exact_probability<Rational>(sub, xi_sub, c, [&](const Heights& h) {
    return collection_event(collection_sub_faces, h, k + 2);
  });
  Rational rhs = exact_probability<Rational>(big, xi_prime_on_big, c, [&](const Heights& h) {
    return collection_event(coll_big, h, k);
  });
  if (lhs > 2 * rhs) {
    row.pass = false;
    row.max_violation = to_double(lhs - 2 * rhs);
  }
  return row;
}

// --------------------------------------------------------------------------
// Cluster-graph Ising representation
// --------------------------------------------------------------------------

ClusterGraph build_cluster_graph(const Domain& d, const Heights& habs) {
  for (int v : habs)
    if (v < 0) throw PreconditionError("cluster graph: H must be nonnegative");
  if (!is_height_function(d, habs))
    throw PreconditionError("cluster graph: H is not a height function");

  ClusterGraph g;
  g.cluster_of_face.assign(d.face_count(), -1);
  for (int f = 0; f < d.face_count(); ++f) {
    if (habs[f] == 0 || g.cluster_of_face[f] >= 0) continue;
    int id = g.cluster_count++;
    std::vector<int> stack{f};
    g.cluster_of_face[f] = id;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int w : d.edge_neighbors(u))
        if (w >= 0 && habs[w] > 0 && g.cluster_of_face[w] < 0) {
          g.cluster_of_face[w] = id;
          stack.push_back(w);
        }
    }
  }
  for (int vi = 0; vi < d.vertex_count(); ++vi) {
    if (!is_c_vertex(d, habs, vi)) continue;
    const auto& fs = d.vertex_faces(vi);
    int mn = std::min(std::min(habs[fs[0]], habs[fs[1]]), std::min(habs[fs[2]], habs[fs[3]]));
    if (mn == 0) {
      // Joining vertex: the positive diagonal pair lies in two clusters
      // (possibly the same, making a loop edge).
      int a = habs[fs[CornerSW]] > 0 ? fs[CornerSW] : fs[CornerSE];
      int b = habs[fs[CornerNE]] > 0 ? fs[CornerNE] : fs[CornerNW];
      g.edges.push_back({g.cluster_of_face[a], g.cluster_of_face[b]});
    } else {
      ++g.n_extra_c_vertices;
    }
  }
  return g;
}

namespace {

Rational ising_weight(const ClusterGraph& g, const std::vector<int>& sigma, const Rational& c) {
  Rational w = 1;
  for (auto [u, v] : g.edges)
    if (sigma[u] == sigma[v]) w *= c;
  return w;
}

}  // namespace

CheckRow sign_lemma_check(const Domain& d, const Heights& habs, const Rational& c,
                          std::string instance) {
  CheckRow row{"sign-representation", std::move(instance), to_double(c), true, 0, ""};
  ClusterGraph g = build_cluster_graph(d, habs);
  const int nc = g.cluster_count;
  const Rational cn = rational_pow(c, static_cast<unsigned>(g.n_extra_c_vertices));
  for (int bits = 0; bits < (1 << nc); ++bits) {
    std::vector<int> sigma(nc);
    for (int i = 0; i < nc; ++i) sigma[i] = (bits >> i) & 1 ? 1 : -1;
    Heights h(d.face_count());
    for (int f = 0; f < d.face_count(); ++f)
      h[f] = g.cluster_of_face[f] < 0 ? 0 : sigma[g.cluster_of_face[f]] * habs[f];
    if (!is_height_function(d, h)) {
      row.pass = false;
      row.witness = "sign assignment broke the homomorphism";
      return row;
    }
    Rational w6v = rational_pow(c, static_cast<unsigned>(count_c_vertices(d, h)));
    Rational wrep = cn * ising_weight(g, sigma, c);
    if (w6v != wrep) {
      row.pass = false;
      row.max_violation = std::abs(to_double(w6v - wrep));
      row.witness = "weight identity fails for sign pattern " + std::to_string(bits);
      return row;
    }
  }
  return row;
}

CheckRow ising_contraction_check(const Domain& d, const Heights& habs, const Heights& habs_prime,
                                 const Rational& c, std::string instance) {
  CheckRow row{"ising-contraction", std::move(instance), to_double(c), true, 0, ""};
  if (!heights_leq(habs, habs_prime))
    throw PreconditionError("ising_contraction: need H <= H'");
  ClusterGraph g = build_cluster_graph(d, habs);
  ClusterGraph gp = build_cluster_graph(d, habs_prime);

  // Projection: each H-cluster lies in a unique H'-cluster.
  std::vector<int> pi(g.cluster_count, -1);
  for (int f = 0; f < d.face_count(); ++f)
    if (g.cluster_of_face[f] >= 0) pi[g.cluster_of_face[f]] = gp.cluster_of_face[f];
  std::vector<std::vector<int>> fiber(gp.cluster_count);
  for (int u = 0; u < g.cluster_count; ++u) fiber[pi[u]].push_back(u);
  for (int v = 0; v < gp.cluster_count; ++v)
    if (fiber[v].empty()) {
      row.witness = "skipped: empty fiber";
      return row;  // lemma applies with every fiber inhabited
    }

  // Conditioned law of sigma composed with the fiber map.
  std::map<std::vector<int>, Rational> law;
  Rational z = 0;
  for (int bits = 0; bits < (1 << g.cluster_count); ++bits) {
    std::vector<int> sigma(g.cluster_count);
    for (int i = 0; i < g.cluster_count; ++i) sigma[i] = (bits >> i) & 1 ? 1 : -1;
    bool constant = true;
    for (const auto& fib : fiber) {
      for (size_t i = 1; i < fib.size(); ++i) constant = constant && sigma[fib[i]] == sigma[fib[0]];
    }
    if (!constant) continue;
    std::vector<int> sp(gp.cluster_count);
    for (int v = 0; v < gp.cluster_count; ++v) sp[v] = sigma[fiber[v][0]];
    Rational w = ising_weight(g, sigma, c);
    law[sp] += w;
    z += w;
  }
  Rational zp = 0;
  std::map<std::vector<int>, Rational> want;
  for (int bits = 0; bits < (1 << gp.cluster_count); ++bits) {
    std::vector<int> sp(gp.cluster_count);
    for (int i = 0; i < gp.cluster_count; ++i) sp[i] = (bits >> i) & 1 ? 1 : -1;
    Rational w = ising_weight(gp, sp, c);
    want[sp] += w;
    zp += w;
  }
  for (auto& [sp, w] : want)
    if (law[sp] * zp != w * z) {
      row.pass = false;
      row.max_violation = std::abs(to_double(law[sp] / z - w / zp));
      row.witness = "contracted law differs";
      return row;
    }
  return row;
}

// --------------------------------------------------------------------------
// Battery
// --------------------------------------------------------------------------

namespace {

struct Instance {
  std::string name;
  Domain domain;
  BoundaryCondition xi;
  BoundaryCondition xi_prime;  // xi shifted up by 2
  std::vector<int> b_set;      // conditioning faces for |h| checks
  int free_faces = 0;
};

BoundaryCondition shift_bc(const BoundaryCondition& xi, int delta) {
  BoundaryCondition out = xi;
  for (auto& v : out.values) v += delta;
  return out;
}

int count_free(const Domain& d, const BoundaryCondition& xi) {
  auto mask = xi.support_mask(d);
  int n = 0;
  for (int f = 0; f < d.face_count(); ++f) n += !mask[f];
  return n;
}

std::vector<Instance> build_instances(int max_free) {
  std::vector<Instance> out;
  auto add = [&](std::string name, Domain dom, BoundaryCondition xi, std::vector<int> b_set) {
    Instance inst{std::move(name), std::move(dom), std::move(xi), {}, std::move(b_set), 0};
    inst.free_faces = count_free(inst.domain, inst.xi);
    if (inst.free_faces == 0 || inst.free_faces > max_free) return;
    inst.xi_prime = shift_bc(inst.xi, 2);
    out.push_back(std::move(inst));
  };

  // Tiny all-boundary domains with partial supports.
  {
    Domain d = Domain::plane_patch({{0, 0}});  // 4 faces
    std::vector<int> b;
    for (int f = 0; f < d.face_count(); ++f)
      if (f != 0) b.push_back(f);
    add("1-vertex/partial", d, checkerboard_condition(d, b, 0), {0});
  }
  {
    Domain d = Domain::plane_patch({{0, 0}, {1, 0}});  // 6 faces
    std::vector<int> b;
    for (int f = 0; f < d.face_count(); ++f)
      if (f % 3 != 1) b.push_back(f);
    add("domino/partial", d, checkerboard_condition(d, b, 0), {0, 1});
  }
  {
    Domain d = Domain::plane_patch({{0, 0}, {1, 0}, {0, 1}});  // 8 faces
    std::vector<int> b;
    for (int f = 0; f < d.face_count(); ++f)
      if (f % 2 == 0) b.push_back(f);
    add("L-shape/partial", d, checkerboard_condition(d, b, 0), {1, 3});
  }
  // Classic full-boundary domains (interior faces free).
  {
    Domain d = Domain::plane_patch({{0, 0}, {1, 0}, {0, 1}, {1, 1}});  // 9 faces
    add("2x2/full", d, boundary_01(d), {d.index_of({0, 0})});
  }
  {
    std::vector<VertexCoord> v;
    for (int y = 0; y <= 1; ++y)
      for (int x = 0; x <= 2; ++x) v.push_back({x, y});
    Domain d = Domain::plane_patch(v);  // 12 faces, 2 interior
    add("3x2/full", d, boundary_01(d), {d.index_of({0, 0}), d.index_of({1, 0})});
  }
  {
    std::vector<VertexCoord> v;
    for (int y = 0; y <= 2; ++y)
      for (int x = 0; x <= 2; ++x) v.push_back({x, y});
    Domain d = Domain::plane_patch(v);  // 16 faces, 4 interior
    add("3x3/full", d, boundary_01(d), {d.index_of({0, 0}), d.index_of({1, 1})});
    // A sloped admissible condition: restriction of x+y.
    BoundaryCondition slope;
    for (int f = 0; f < d.face_count(); ++f)
      if (d.is_boundary(f)) slope.add(f, d.face(f).x + d.face(f).y);
    add("3x3/slope", d, slope, {d.index_of({1, 1})});
  }
  return out;
}

}  // namespace

std::vector<CheckRow> run_verify_battery(const VerifyOptions& opts) {
  std::vector<CheckRow> rows;
  auto instances = build_instances(opts.max_free_faces);

  std::vector<Rational> cs;
  for (double cv : opts.c_values) cs.push_back(Rational(cv));
  if (opts.include_explore_c_half) cs.push_back(Rational(1, 2));

  for (const auto& inst : instances) {
    for (const auto& c : cs) {
      bool explore = c < 1;
      FkgOptions fo;
      fo.explore_only = explore;
      fo.random_monotone = 12;

      auto fkg = fkg_cbc_suite(inst.domain, inst.xi, inst.xi_prime, c, fo, inst.name);
      rows.insert(rows.end(), fkg.begin(), fkg.end());
      rows.push_back(
          holley_single_site_check(inst.domain, inst.xi, inst.xi_prime, c, inst.name));

      // |h| suites need a nonnegative base condition.
      bool nonneg = std::all_of(inst.xi.values.begin(), inst.xi.values.end(),
                                [](int v) { return v >= 0; });
      if (nonneg) {
        auto abs_rows =
            fkg_cbc_abs_suite(inst.domain, inst.xi, inst.xi_prime, inst.b_set, c, fo, inst.name);
        rows.insert(rows.end(), abs_rows.begin(), abs_rows.end());

        // Pushing: m = 0, k in {1,2}; collections inside, plus one meeting B.
        auto support = inst.xi.support_mask(inst.domain);
        std::vector<int> free_faces, b_faces;
        for (int f = 0; f < inst.domain.face_count(); ++f)
          (support[f] ? b_faces : free_faces).push_back(f);
        std::vector<std::vector<int>> coll{{free_faces[0]}};
        if (free_faces.size() > 1) coll.push_back({free_faces[0], free_faces[1]});
        std::vector<int> bprime = inst.xi.faces;
        bprime.push_back(free_faces[0]);
        for (int k : {1, 2}) {
          auto pr = pushing_check(inst.domain, inst.xi, 0, bprime, coll, k, c,
                                  inst.name + "/k=" + std::to_string(k));
          rows.push_back(pr.row);
          std::vector<std::vector<int>> coll_b{{b_faces[0]}, {free_faces[0]}};
          // Connect the second set to the support so the factor drops to 1.
          int nb = -1;
          for (int g : inst.domain.edge_neighbors(free_faces[0]))
            if (g >= 0 && support[g]) nb = g;
          if (nb >= 0) {
            coll_b[1] = {free_faces[0], nb};
            auto pr1 = pushing_check(inst.domain, inst.xi, 0, bprime, coll_b, k, c,
                                     inst.name + "/meetB/k=" + std::to_string(k));
            rows.push_back(pr1.row);
          }
        }
      }
    }
  }

  // SMP instances on nested patches.
  {
    std::vector<VertexCoord> v;
    for (int y = 0; y <= 2; ++y)
      for (int x = 0; x <= 2; ++x) v.push_back({x, y});
    Domain big = Domain::plane_patch(v);
    for (const auto& c : cs) {
      if (c < 1) continue;
      rows.push_back(smp_check(big, {{1, 1}}, boundary_01(big), c, "3x3/sub-1"));
      rows.push_back(smp_check(big, {{1, 1}, {2, 1}}, boundary_01(big), c, "3x3/sub-domino"));
    }
  }

  // Two-domain pushing on nested patches.
  {
    std::vector<VertexCoord> v;
    for (int y = 0; y <= 2; ++y)
      for (int x = 0; x <= 2; ++x) v.push_back({x, y});
    Domain big = Domain::plane_patch(v);
    Domain sub = Domain::plane_patch({{1, 1}});
    std::vector<std::vector<int>> coll{{sub.index_of({0, 0})}, {sub.index_of({1, 1})}};
    for (const auto& c : cs) {
      if (c < 1) continue;
      rows.push_back(pushing_two_domain_check(big, {{1, 1}}, boundary_01(big), 0, coll, 1, c,
                                              "3x3/sub-1"));
      rows.push_back(pushing_two_domain_check(big, {{0, 0}, {1, 0}}, boundary_01(big), 0,
                                              {{0}, {1}}, 1, c, "3x3/corner-domino"));
    }
  }

  // Sign representation: exhaustive nonnegative H on the domino domain.
  {
    Domain d = Domain::plane_patch({{0, 0}, {1, 0}});
    std::vector<Heights> all_h;
    enumerate_rooted(d, {0, 2, 4}, [&](const Heights& h) {
      bool ok = true;
      for (int v : h) ok = ok && v >= 0 && v <= 5;
      if (ok) all_h.push_back(h);
    });
    for (const auto& c : cs) {
      if (c < 1) continue;
      int id = 0;
      for (const auto& h : all_h)
        rows.push_back(sign_lemma_check(d, h, c, "domino/H" + std::to_string(id++)));
      // Comparable pairs with inhabited fibers.
      int pairs = 0;
      for (size_t i = 0; i < all_h.size() && pairs < 40; ++i)
        for (size_t j = 0; j < all_h.size() && pairs < 40; ++j) {
          if (i == j || !heights_leq(all_h[i], all_h[j])) continue;
          auto row = ising_contraction_check(d, all_h[i], all_h[j], c,
                                             "domino/pair" + std::to_string(pairs));
          if (row.witness.rfind("skipped", 0) == 0) continue;
          rows.push_back(row);
          ++pairs;
        }
    }
  }

  return rows;
}

std::string check_report_csv(const std::vector<CheckRow>& rows) {
  std::ostringstream os;
  os << "check,instance_id,c,status,max_violation,witness\n";
  for (const auto& r : rows) {
    std::string witness = r.witness;
    std::replace(witness.begin(), witness.end(), ',', ';');
    os << r.check << "," << r.instance << "," << r.c << "," << (r.pass ? "pass" : "FAIL") << ","
       << r.max_violation << "," << witness << "\n";
  }
  return os.str();
}

}  // namespace sixv
