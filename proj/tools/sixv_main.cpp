// sixv: exact computation and sampling for the six-vertex height function
// (a = b = 1, c >= 1).
//
// Subcommands: enumerate, transfer, free-energy, sample, variance,
// circuits, verify, loopmap. Exit codes: 0 success, 1 usage error,
// 2 precondition violation, 3 verification failure.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sixv/checks.hpp"
#include "sixv/enumerate.hpp"
#include "sixv/error.hpp"
#include "sixv/experiments.hpp"
#include "sixv/io.hpp"
#include "sixv/loops.hpp"
#include "sixv/mcmc.hpp"
#include "sixv/transfer.hpp"

using namespace sixv;
using nlohmann::json;

namespace {

struct GlobalOpts {
  std::uint64_t seed = 1;
  std::string out;
  int threads = 0;
  bool exact_rational = false;
};

void emit(const GlobalOpts& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out);
  if (!f) throw PreconditionError("cannot open output file " + g.out);
  f << text;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw PreconditionError("cannot open " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::istringstream is(s);
  std::string tok;
  while (std::getline(is, tok, ',')) out.push_back(std::stod(tok));
  if (out.empty()) throw PreconditionError("empty list");
  return out;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  for (double v : parse_list(s)) out.push_back(static_cast<int>(v));
  return out;
}

Rational rational_c(double c) { return Rational(c); }  // exact for binary-representable c

// ---------------------------------------------------------------------------

int cmd_enumerate(const GlobalOpts& g, const std::string& domain_json, const std::string& cs,
                  const std::string& event_json) {
  Domain d = domain_from_json(domain_json);
  std::ostringstream os;
  if (d.kind() == DomainKind::Torus) {
    int count = 0;
    enumerate_torus_heights(d, [&](const Heights&) { ++count; });
    os << "c,count,Z\n";
    for (double c : parse_list(cs)) {
      if (g.exact_rational)
        os << c << "," << count << "," << torus_partition<Rational>(d, rational_c(c)) << "\n";
      else
        os << c << "," << count << "," << torus_partition<double>(d, c) << "\n";
    }
    emit(g, os.str());
    return 0;
  }
  BoundaryCondition xi = boundary_01(d);
  int count = 0;
  enumerate_extensions(d, xi, [&](const Heights&) { ++count; });
  std::optional<EventSpec> ev;
  if (!event_json.empty()) ev = event_from_json(read_file(event_json));
  os << "c,count,Z" << (ev ? ",P_event" : "") << "\n";
  for (double c : parse_list(cs)) {
    if (g.exact_rational) {
      os << c << "," << count << "," << exact_partition<Rational>(d, xi, rational_c(c));
      if (ev)
        os << ","
           << exact_probability<Rational>(d, xi, rational_c(c),
                                          [&](const Heights& h) { return ev->eval(d, h); });
    } else {
      os << c << "," << count << "," << exact_partition<double>(d, xi, c);
      if (ev)
        os << ","
           << exact_probability<double>(d, xi, c,
                                        [&](const Heights& h) { return ev->eval(d, h); });
    }
    os << "\n";
  }
  emit(g, os.str());
  return 0;
}

int cmd_transfer(const GlobalOpts& g, int n, int m, const std::string& cs) {
  std::ostringstream os;
  os << "sector,k,alpha,logZ,M\n";
  for (double c : parse_list(cs)) {
    TransferOperator t(n, c);
    for (int k = 0; k <= n; ++k)
      os << (k - n / 2) << "," << k << "," << static_cast<double>(k - n / 2) / n << ","
         << t.log_sector_partition(k, m) << "," << m << "\n";
  }
  emit(g, os.str());
  return 0;
}

int cmd_free_energy(const GlobalOpts& g, int n, const std::string& cs, int kmax) {
  std::ostringstream os;
  os << "N,c,alpha,f_hat,g,g_over_alpha,g_over_alpha2\n";
  std::vector<double> cv = parse_list(cs);
  // Blocks for different (c, k) are independent; aggregate by cell key.
  const int cols = kmax + 1;
  std::vector<double> fhat(cv.size() * cols);
  parallel_for(static_cast<int>(fhat.size()), resolve_threads(g.threads), [&](int cell) {
    int ci = cell / cols, j = cell % cols;
    fhat[cell] = free_energy(n, cv[ci], static_cast<double>(j) / n).f_hat;
  });
  for (size_t ci = 0; ci < cv.size(); ++ci) {
    double f0 = fhat[ci * cols];
    for (int j = 0; j <= kmax; ++j) {
      double alpha = static_cast<double>(j) / n;
      double gg = j == 0 ? 0.0 : f0 - fhat[ci * cols + j];
      os << n << "," << cv[ci] << "," << alpha << "," << fhat[ci * cols + j] << "," << gg << ","
         << (j ? gg / alpha : 0.0) << "," << (j ? gg / (alpha * alpha) : 0.0) << "\n";
    }
  }
  emit(g, os.str());
  return 0;
}

Observable observable_from_json(const json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "height") {
    FaceCoord f{j.at("face").at(0).get<int>(), j.at("face").at(1).get<int>()};
    return {"h(" + std::to_string(f.x) + "." + std::to_string(f.y) + ")",
            [f](const Domain& d, const Heights& h) {
              int shift = h[0] - d.parity(0);  // root-normalized
              return static_cast<double>(h[d.index_of(f)] - shift);
            }};
  }
  if (kind == "height_sq") {
    FaceCoord f{j.at("face").at(0).get<int>(), j.at("face").at(1).get<int>()};
    return {"h2(" + std::to_string(f.x) + "." + std::to_string(f.y) + ")",
            [f](const Domain& d, const Heights& h) {
              int shift = h[0] - d.parity(0);
              double v = h[d.index_of(f)] - shift;
              return v * v;
            }};
  }
  if (kind == "increment_sq") {
    FaceCoord x{j.at("x").at(0).get<int>(), j.at("x").at(1).get<int>()};
    FaceCoord y{j.at("y").at(0).get<int>(), j.at("y").at(1).get<int>()};
    return {"inc2", [x, y](const Domain& d, const Heights& h) {
              double v = h[d.index_of(x)] - h[d.index_of(y)];
              return v * v;
            }};
  }
  if (kind == "event") {
    EventSpec spec = event_from_json(j.at("event").dump());
    return {"event",
            [spec](const Domain& d, const Heights& h) { return spec.eval(d, h) ? 1.0 : 0.0; }};
  }
  throw PreconditionError("unknown observable kind '" + kind + "'");
}

int cmd_sample(const GlobalOpts& g, const std::string& config_path) {
  json j;
  try {
    j = json::parse(read_file(config_path));
  } catch (const json::exception& e) {
    throw PreconditionError(std::string("chain spec JSON: ") + e.what());
  }
  Domain d = domain_from_json(j.at("domain").dump());
  ChainSpec spec;
  spec.params.c = j.value("c", 1.0);
  spec.seed = j.value("seed", g.seed);
  spec.burnin_sweeps = j.value("burnin", 1000);
  spec.measure_sweeps = j.value("sweeps", 10000);
  spec.thinning = j.value("thinning", 1);
  spec.batches = j.value("batches", 25);
  std::string order = j.value("order", "sequential");
  spec.order = order == "checkerboard" ? SweepOrder::Checkerboard
               : order == "random"     ? SweepOrder::RandomPermutation
                                       : SweepOrder::Sequential;
  std::vector<Observable> obs;
  for (const auto& jo : j.at("observables")) obs.push_back(observable_from_json(jo));

  ChainReport rep;
  if (d.kind() == DomainKind::PlanePatch) {
    BoundaryCondition xi;
    if (!j.contains("bc") || j.at("bc") == "checkerboard01") {
      xi = boundary_01(d);
    } else {
      for (const auto& row : j.at("bc").at("faces")) {
        int f = d.index_of({row.at(0).get<int>(), row.at(1).get<int>()});
        if (f < 0) throw PreconditionError("bc face outside domain");
        xi.add(f, row.at(2).get<int>());
      }
    }
    rep = run_chain(d, xi, spec, obs);
  } else {
    rep = run_chain(d, spec, obs);
  }
  std::ostringstream os;
  os << "observable,mean,stderr,batches,sweeps,seed\n";
  for (const auto& r : rep.rows)
    os << r.name << "," << r.mean << "," << r.stderr_val << "," << r.batches << "," << rep.sweeps
       << "," << rep.seed << "\n";
  emit(g, os.str());
  return 0;
}

int cmd_variance(const GlobalOpts& g, int n, const std::string& cs, const std::string& pairs,
                 int sweeps, int burnin, int thinning) {
  std::vector<int> distances;
  if (pairs == "log-spaced") {
    for (int d = 2; d <= n / 4; d *= 2) distances.push_back(d);
  } else {
    distances = parse_int_list(pairs);
  }
  std::vector<double> cv = parse_list(cs);
  std::vector<VarianceResult> rows(cv.size());
  parallel_for(static_cast<int>(cv.size()), resolve_threads(g.threads), [&](int i) {
    VarianceBudget b;
    b.seed = g.seed + static_cast<std::uint64_t>(i);
    b.measure_sweeps = sweeps;
    b.burnin_sweeps = burnin;
    b.thinning = thinning;
    rows[i] = variance_experiment(n, cv[i], distances, b);
  });
  emit(g, variance_csv(rows));
  return 0;
}

int cmd_circuits(const GlobalOpts& g, const std::string& ns, int k, const std::string& cs,
                 int sweeps, int burnin) {
  std::vector<int> nvals = parse_int_list(ns);
  std::vector<double> cv = parse_list(cs);
  struct Cell {
    int n;
    double c;
  };
  std::vector<Cell> cells;
  for (double c : cv)
    for (int n : nvals) cells.push_back({n, c});
  std::vector<CircuitResult> rows(cells.size());
  parallel_for(static_cast<int>(cells.size()), resolve_threads(g.threads), [&](int i) {
    CircuitBudget b;
    b.seed = g.seed + static_cast<std::uint64_t>(i) * 7919;
    b.measure_sweeps = sweeps;
    b.burnin_sweeps = burnin;
    rows[i] = circuit_experiment(cells[i].n, k, cells[i].c, b);
  });
  emit(g, circuit_csv(rows));
  return 0;
}

int cmd_verify(const GlobalOpts& g, int max_faces, const std::string& cs, bool explore_half) {
  VerifyOptions opts;
  opts.max_free_faces = max_faces;
  opts.c_values = parse_list(cs);
  opts.include_explore_c_half = explore_half;
  auto rows = run_verify_battery(opts);
  emit(g, check_report_csv(rows));
  int violations = 0;
  for (const auto& r : rows)
    if (!r.pass && r.check.rfind("explore-", 0) != 0) ++violations;
  if (violations) {
    std::cerr << "verify: " << violations << " violation(s) out of " << rows.size() << " checks\n";
    return 3;
  }
  std::cerr << "verify: " << rows.size() << " checks passed\n";
  return 0;
}

int cmd_loopmap(const GlobalOpts& g, int n, int m, int l, double c) {
  Domain cyl = Domain::cylinder(n, m);
  int total = 0, violations = 0;
  double worst_ratio = 1e300;
  const double alpha = static_cast<double>(l) / n;
  const double bound = std::pow(c, -2.0 * m / alpha);
  enumerate_cylinder_sector(cyl, l, [&](const Arrows& a) {
    ++total;
    auto res = map_t(cyl, a, l);
    bool ok = sector_flux(cyl, res.out) == 0 && has_level_pair(cyl, res.out, l);
    auto count_c = [&](const Arrows& w) {
      int nc = 0;
      for (int vi = 0; vi < cyl.vertex_count(); ++vi) nc += vertex_type(cyl, w, vi) >= 5;
      return nc;
    };
    double ratio = std::pow(c, count_c(res.out) - count_c(a));
    worst_ratio = std::min(worst_ratio, ratio);
    ok = ok && ratio >= bound - 1e-12;
    Arrows back = map_t_reconstruct(cyl, res.out, res.gamma_low, res.gamma_high);
    ok = ok && back == a;
    if (!ok) ++violations;
  });
  std::ostringstream os;
  os << "N,M,L,c,configs,violations,worst_weight_ratio,ratio_bound\n"
     << n << "," << m << "," << l << "," << c << "," << total << "," << violations << ","
     << worst_ratio << "," << bound << "\n";
  emit(g, os.str());
  return violations ? 3 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"six-vertex height function toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  GlobalOpts g;
  app.add_option("--seed", g.seed, "master RNG seed");
  app.add_option("--out", g.out, "output file (default stdout)");
  app.add_option("--threads", g.threads, "worker threads (SIXV_THREADS overrides)");
  app.add_flag("--exact-rational", g.exact_rational, "exact rational arithmetic where supported");

  auto* en = app.add_subcommand("enumerate", "exhaustive measure on a small domain");
  std::string en_domain_file, en_cs = "1", en_event;
  int en_torus = 0;
  en->add_option("--domain", en_domain_file, "domain JSON file");
  en->add_option("--torus", en_torus, "torus of side N");
  en->add_option("--c", en_cs, "comma-separated c values");
  en->add_option("--event", en_event, "event spec JSON file");

  auto* tr = app.add_subcommand("transfer", "sector partition functions on the cylinder");
  int tr_n = 4, tr_m = 3;
  std::string tr_cs = "1";
  tr->add_option("--N", tr_n, "circumference (even)")->required();
  tr->add_option("--M", tr_m, "height in faces")->required();
  tr->add_option("--c", tr_cs, "comma-separated c values");

  auto* fe = app.add_subcommand("free-energy", "leading-eigenvalue curvature table");
  int fe_n = 16, fe_kmax = 3;
  std::string fe_cs = "1";
  fe->add_option("--N", fe_n, "circumference (even)");
  fe->add_option("--c", fe_cs, "comma-separated c values");
  fe->add_option("--kmax", fe_kmax, "largest sector offset");

  auto* sa = app.add_subcommand("sample", "heat-bath chain from a JSON spec");
  std::string sa_config;
  sa->add_option("--config", sa_config, "chain spec JSON file")->required();

  auto* va = app.add_subcommand("variance", "increment variance on the balanced torus");
  int va_n = 64, va_sweeps = 20000, va_burnin = 2000, va_thin = 4;
  std::string va_cs = "1", va_pairs = "log-spaced";
  va->add_option("--torus", va_n, "torus side (even)");
  va->add_option("--c", va_cs, "comma-separated c values");
  va->add_option("--pairs", va_pairs, "'log-spaced' or comma-separated distances");
  va->add_option("--sweeps", va_sweeps, "measurement sweeps");
  va->add_option("--burnin", va_burnin, "burn-in sweeps");
  va->add_option("--thinning", va_thin, "measure every k-th sweep");

  auto* ci = app.add_subcommand("circuits", "annulus circuit probabilities under 0,1 boundary");
  std::string ci_ns = "8,16", ci_cs = "2";
  int ci_k = 4, ci_sweeps = 12000, ci_burnin = 0;
  ci->add_option("--n", ci_ns, "comma-separated inner radii");
  ci->add_option("--k", ci_k, "circuit level");
  ci->add_option("--c", ci_cs, "comma-separated c values");
  ci->add_option("--sweeps", ci_sweeps, "measurement sweeps");
  ci->add_option("--burnin", ci_burnin, "burn-in sweeps (0: 4x coupling time)");

  auto* ve = app.add_subcommand("verify", "exact combinatorial check battery");
  int ve_max = 8;
  std::string ve_cs = "1,1.5,2,3";
  bool ve_half = false;
  ve->add_option("--max-faces", ve_max, "cap on free faces per instance");
  ve->add_option("--c", ve_cs, "comma-separated c values");
  ve->add_flag("--explore-c-half", ve_half, "also probe c = 0.5 without asserting");

  auto* lm = app.add_subcommand("loopmap", "exhaustive loop-reversal map suite");
  int lm_n = 4, lm_m = 3, lm_l = 1;
  double lm_c = 2.0;
  lm->add_option("--N", lm_n, "circumference (even)");
  lm->add_option("--M", lm_m, "height in faces");
  lm->add_option("--L", lm_l, "flux (sector 2L)");
  lm->add_option("--c", lm_c, "weight c");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;  // 0 for --help, 1 for usage errors
  }

  try {
    if (*en) {
      std::string dj = R"({"kind":"plane","vertices":[[0,0],[1,0],[0,1],[1,1]]})";
      if (en_torus > 0)
        dj = "{\"kind\":\"torus\",\"N\":" + std::to_string(en_torus) + "}";
      else if (!en_domain_file.empty())
        dj = read_file(en_domain_file);
      return cmd_enumerate(g, dj, en_cs, en_event);
    }
    if (*tr) return cmd_transfer(g, tr_n, tr_m, tr_cs);
    if (*fe) return cmd_free_energy(g, fe_n, fe_cs, fe_kmax);
    if (*sa) return cmd_sample(g, sa_config);
    if (*va) return cmd_variance(g, va_n, va_cs, va_pairs, va_sweeps, va_burnin, va_thin);
    if (*ci) return cmd_circuits(g, ci_ns, ci_k, ci_cs, ci_sweeps, ci_burnin);
    if (*ve) return cmd_verify(g, ve_max, ve_cs, ve_half);
    if (*lm) return cmd_loopmap(g, lm_n, lm_m, lm_l, lm_c);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
