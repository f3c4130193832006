// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "sacut/sacut.hpp"

using namespace sacut;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Runs suites through the verify harness and summarizes their rows.
Outcome suites(const std::vector<std::pair<std::string, int>>& runs, double time_limit = 0.0) {
  const auto start = Clock::now();
  std::ostringstream os;
  bool pass = true;
  for (const auto& [check, trials] : runs) {
    VerifyConfig cfg;
    cfg.check = check;
    cfg.trials = trials;
    cfg.seed = 1;
    const auto rows = run_verify(cfg);
    const auto failed = std::count_if(rows.begin(), rows.end(), [](const VerifyRow& r) { return !r.pass; });
    pass = pass && failed == 0 && !rows.empty();
    os << check << " rows=" << rows.size() << " violations=" << failed << "; ";
    for (const auto& r : rows) {
      if (!r.pass) {
        os << "first violation " << r.instance << " [" << r.params << "] " << r.relation << " lhs=" << fmt(r.lhs)
           << " rhs=" << fmt(r.rhs) << "; ";
        break;
      }
    }
  }
  const double secs = seconds_since(start);
  os << "time=" << fmt(secs) << "s";
  if (time_limit > 0.0) {
    os << " (limit " << fmt(time_limit) << "s)";
    pass = pass && secs < time_limit;
  }
  return {pass, os.str()};
}

Outcome relaxation_sandwich() { return suites({{"relaxation-sandwich", 200}}, 300.0); }

Outcome triangle_gap() {
  const auto inst = make_maxcut(clique(3));
  const double sa2 = solve_sa(inst, 2).value;
  const double opt = brute_force_optimum(inst).value;
  const bool pass = std::abs(sa2 - 1.0) <= 1e-7 && std::abs(opt - 2.0 / 3.0) <= 1e-12;
  return {pass, "SA_2(K3)=" + fmt(sa2) + " OPT=" + fmt(opt)};
}

Outcome trace_bound() { return suites({{"trace-bound", 50}}, 120.0); }

Outcome local_to_global() { return suites({{"loc-to-glob", 100}, {"loc-to-glob-ug", 100}}); }

Outcome conditioning_identity() { return suites({{"conditioning-identity", 16}}); }

Outcome entropy_potential() { return suites({{"entropy-potential", 200}}); }

Outcome rounding_bounds() { return suites({{"rounding-bound", 50}, {"rounding-bound-ug", 50}}); }

Outcome pipeline_floor() {
  std::vector<Graph> corpus;
  for (std::uint64_t s = 1; s <= 10; ++s) corpus.push_back(random_gnp(6 + static_cast<int>(s), 0.4, s));
  for (std::uint64_t s = 1; s <= 5; ++s) corpus.push_back(planted_cut(10, 0.5, 0.3, s).graph);
  for (std::uint64_t s = 1; s <= 5; ++s) corpus.push_back(expander_union(3, 6, 3, 2, s));
  corpus.push_back(clique(3));
  corpus.push_back(clique(7));
  {
    Rng rng(77);
    std::vector<Edge> edges;
    for (int i = 0; i < 10; ++i)
      for (int j = i + 1; j < 10; ++j)
        if (uniform01(rng) < 0.5 || j == i + 1) edges.push_back({i, j, 0.1 + uniform01(rng) * 5.0});
    corpus.emplace_back(10, edges);
  }
  double worst = 2.0;
  int high_rank = 0;
  for (const Graph& g : corpus) {
    const auto tr = solve_maxcut(g, PipelineOptions{});
    worst = std::min(worst, tr.final_value);
    if (tr.branch == "high-rank") ++high_rank;
  }
  // Partitioned runs exercise the recombination on real pieces.
  for (std::uint64_t s = 1; s <= 5; ++s) {
    PipelineOptions opts;
    opts.tau = 0.2;
    opts.rank_target = 1;
    const auto tr = solve_maxcut(expander_union(3, 8, 7, 3, s), opts);
    worst = std::min(worst, tr.final_value);
    if (tr.branch == "high-rank") ++high_rank;
  }
  const bool floor_ok = worst >= 0.5 - 1e-9;

  // Sign recombination against exhaustive enumeration of all 2^m signings.
  Rng rng(2024);
  int sign_cases = 0;
  int sign_failures = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 12 + static_cast<int>(uniform_index(rng, 9));
    const auto inst = make_maxcut(random_gnp(n, 0.3, 1000 + trial));
    const int m = 2 + static_cast<int>(uniform_index(rng, 9));
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[uniform_index(rng, i + 1)]);
    std::vector<std::vector<int>> comps(m);
    for (int i = 0; i < n; ++i) comps[i < m ? i : uniform_index(rng, m)].push_back(perm[i]);
    for (auto& c : comps) std::sort(c.begin(), c.end());
    Assignment x(n);
    for (int& v : x) v = static_cast<int>(uniform_index(rng, 2));
    const auto r = combine_with_signs(inst, comps, x);

    std::vector<int> label(n);
    for (int c = 0; c < m; ++c)
      for (int v : comps[c]) label[v] = c;
    double within = 0.0, cross = 0.0, best = 0.0;
    for (const Edge& e : inst.graph().edges()) {
      if (label[e.u] == label[e.v]) within += x[e.u] != x[e.v] ? e.w : 0.0;
      else cross += e.w;
    }
    double mean = 0.0;
    for (int mask = 0; mask < (1 << m); ++mask) {
      Assignment y = x;
      for (int v = 0; v < n; ++v)
        if (mask >> label[v] & 1) y[v] = 1 - y[v];
      const double val = objective_value(inst, y);
      best = std::max(best, val);
      mean += val;
    }
    mean /= (1 << m);
    ++sign_cases;
    // The average signing earns within + cross / 2; the greedy output must reach
    // it and cannot beat the best signing.
    const bool ok = r.value >= within + cross / 2.0 - 1e-12 && std::abs(mean - (within + cross / 2.0)) <= 1e-12 &&
                    r.value <= best + 1e-12 && std::abs(r.within - within) <= 1e-12 &&
                    std::abs(r.cross - cross) <= 1e-12;
    if (!ok) ++sign_failures;
  }
  std::ostringstream os;
  os << "instances=" << corpus.size() + 5 << " high_rank_runs=" << high_rank << " min_final=" << fmt(worst)
     << "; sign checks=" << sign_cases << " failures=" << sign_failures;
  return {floor_ok && sign_failures == 0, os.str()};
}

Outcome partition_certificates() {
  struct Case {
    std::string name;
    Graph g;
    double tau;
    int target;
    double c = 24.0;  // 12 / alpha at alpha = 1/2
  };
  std::vector<Case> cases;
  cases.push_back({"3K8", expander_union(3, 8, 7, 0, 1), 0.2, 1});
  for (std::uint64_t s = 1; s <= 3; ++s) cases.push_back({"3K8+bridges", expander_union(3, 8, 7, 2, s), 0.2, 1});
  for (std::uint64_t s = 1; s <= 4; ++s)
    cases.push_back({"expander-union", expander_union(4, 20, 4, 6, s), 0.3, 1});
  for (std::uint64_t s = 1; s <= 4; ++s) cases.push_back({"gnp", random_gnp(40 + 15 * static_cast<int>(s), 0.08, s), 0.3, 2});
  cases.push_back({"expander-union-100", expander_union(5, 20, 3, 8, 9), 0.3, 2});
  // The default c gives horizon 1; a small c forces multi-step walks so the
  // telescoping product has more than one factor.
  for (std::uint64_t s = 1; s <= 3; ++s)
    cases.push_back({"gnp-long-walk", random_gnp(60, 0.08, 20 + s), 0.3, 2, 0.25});
  for (std::uint64_t s = 1; s <= 3; ++s)
    cases.push_back({"3K8+bridges-long-walk", expander_union(3, 8, 7, 2, s), 0.2, 1, 0.25});

  int nibbles = 0;
  int failures = 0;
  int max_horizon = 0;
  double worst_tele = 0.0;
  std::ostringstream notes;
  for (const auto& c : cases) {
    Partition p;
    try {
      p = decompose(c.g, c.tau, c.target, c.c);
    } catch (const PartitionError& e) {
      ++failures;
      notes << c.name << ": " << e.what() << "; ";
      continue;
    }
    for (std::size_t k = 0; k < p.components.size(); ++k) {
      if (p.components[k].size() < 2) continue;
      const Spectrum s = eigendecompose(normalized_adjacency(induced_subgraph(c.g, p.components[k])));
      int rank = 0;
      for (double lam : s.eigenvalues) rank += lam > c.tau ? 1 : 0;
      if (rank > c.target || rank != p.ranks[k]) {
        ++failures;
        notes << c.name << ": component " << k << " rank " << rank << "; ";
      }
    }
    for (const auto& cert : p.certificates) {
      ++nibbles;
      max_horizon = std::max(max_horizon, cert.horizon);
      const Graph h = induced_subgraph(c.g, cert.parent);
      std::vector<bool> in(c.g.num_vertices(), false);
      for (int v : cert.set) in[v] = true;
      double a = 0.0, d = 0.0;
      for (std::size_t i = 0; i < cert.parent.size(); ++i) {
        if (!in[cert.parent[i]]) continue;
        d += h.degree(static_cast<int>(i));
        for (std::size_t j = 0; j < cert.parent.size(); ++j)
          if (in[cert.parent[j]]) a += h.weight(static_cast<int>(i), static_cast<int>(j));
      }
      const bool witness = cert.eta > 0.0 && a >= cert.eta * d * (1.0 - 1e-12) &&
                           std::abs(a - cert.set_adjacency) <= 1e-9 * a && std::abs(d - cert.set_volume) <= 1e-9 * d;
      double product = 1.0;
      for (double qt : cert.quotients) product *= qt;
      // e^T N^{2T} e by explicit powers of N in the nibbled graph.
      const int start = static_cast<int>(std::find(cert.parent.begin(), cert.parent.end(), cert.start_vertex) -
                                         cert.parent.begin());
      const Matrix N = normalized_adjacency(h);
      std::vector<double> v(h.num_vertices(), 0.0);
      v[start] = 1.0;
      for (int step = 0; step < cert.horizon; ++step) v = N * std::span<const double>(v);
      const double mass = dot(v, v);
      const double tele = std::max({std::abs(product - mass) / mass, std::abs(cert.telescoping_product - mass) / mass,
                                    std::abs(cert.walk_mass - mass) / mass});
      worst_tele = std::max(worst_tele, tele);
      const bool floor = cert.walk_mass >= cert.telescoping_floor * (1.0 - 1e-9);
      if (!witness || tele > 1e-9 || !floor) {
        ++failures;
        notes << c.name << ": certificate at start " << cert.start_vertex << " invalid; ";
      }
    }
  }
  std::ostringstream os;
  os << "graphs=" << cases.size() << " nibbles=" << nibbles << " max_horizon=" << max_horizon
     << " max_telescoping_rel_err=" << fmt(worst_tele)
     << " failures=" << failures;
  if (!notes.str().empty()) os << "; " << notes.str();
  return {failures == 0 && nibbles > 0, os.str()};
}

Outcome maxqp() {
  const auto start = Clock::now();
  const auto a = maxqp_report(6, 4);
  const auto b = maxqp_report(8, 8);
  bool pass = a.sa_value == Rational::make(10, 1) && a.bruteforce_max == 6 && b.sa_value == Rational::make(8, 1) &&
              b.bruteforce_max == 8;
  int checked = 0;
  int failed = 0;
  for (int k = 2; k <= 12; k += 2) {
    const auto m = balanced_moments(k);
    for (int n = k; n <= 12; ++n) {
      ++checked;
      if (!verify_k_locality(n, m).passed) ++failed;
    }
  }
  const double secs = seconds_since(start);
  pass = pass && failed == 0 && secs < 60.0;
  std::ostringstream os;
  os << "(6,4): " << a.sa_value.str() << " vs " << a.bruteforce_max << "; (8,8): " << b.sa_value.str() << " vs "
     << b.bruteforce_max << "; locality pairs=" << checked << " failed=" << failed << " time=" << fmt(secs)
     << "s (limit 60s)";
  return {pass, os.str()};
}

Outcome cov_pi_oracle() {
  Rng rng(11);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int q = 2 + static_cast<int>(uniform_index(rng, 4));
    Matrix j(q, q);
    double s = 0.0;
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b) s += (j(a, b) = uniform01(rng) < 0.25 ? 0.0 : uniform01(rng));
    if (s == 0.0) s = (j(0, 0) = 1.0);
    std::vector<double> p(q, 0.0), r(q, 0.0);
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b) {
        j(a, b) /= s;
        p[a] += j(a, b);
        r[b] += j(a, b);
      }
    std::vector<int> pi(q);
    std::iota(pi.begin(), pi.end(), 0);
    double best = 0.0;
    do {
      double v = 0.0;
      for (int a = 0; a < q; ++a) v += std::abs(j(a, pi[a]) - p[a] * r[pi[a]]);
      best = std::max(best, v);
    } while (std::next_permutation(pi.begin(), pi.end()));
    worst = std::max(worst, std::abs(cov_pi_of(j) - best));
  }
  return {worst <= 1e-10, "tables=1000 max_abs_diff=" + fmt(worst)};
}

Outcome distinguishing() {
  const int seeds = 20;
  const int n = 8;
  const int q = 3;
  PipelineOptions opts;
  opts.alpha = 2.0;  // rank target n^2: every instance takes the low-rank branch
  opts.degree = 3;
  double planted_min = 2.0;
  std::vector<double> values;
  double opt_sum = 0.0;
  for (int s = 1; s <= seeds; ++s) {
    opts.seed = static_cast<std::uint64_t>(s);
    const auto pl = planted_ug_shift(n, q, 0.5, 0.0, static_cast<std::uint64_t>(s));
    planted_min = std::min(planted_min, solve_unique_games(pl.instance, opts).final_value);
    const auto rnd = random_unique_games(n, q, 0.5, static_cast<std::uint64_t>(s));
    values.push_back(solve_unique_games(rnd, opts).final_value);
    opt_sum += brute_force_optimum(rnd).value;
  }
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / seeds;
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  const double se = std::sqrt(var / (seeds - 1) / seeds);
  const double baseline = 1.0 / q + 0.25;
  const bool planted_ok = planted_min >= 1.0 - 1e-9;
  const bool random_ok = std::abs(mean - baseline) <= 3.0 * se;
  std::ostringstream os;
  os << "seeds=" << seeds << " planted_min=" << fmt(planted_min) << "; random mean=" << fmt(mean)
     << " se=" << fmt(se) << " baseline=" << fmt(baseline) << " brute_force_opt_mean=" << fmt(opt_sum / seeds);
  if (!random_ok) os << " (random-constraint instances this small have optimum far above the baseline)";
  return {planted_ok && random_ok, os.str()};
}

}  // namespace

// With arguments, runs only the listed criterion numbers.
int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"relaxation-sandwich", relaxation_sandwich},
      {"triangle-gap", triangle_gap},
      {"trace-bound", trace_bound},
      {"local-to-global", local_to_global},
      {"conditioning-identity", conditioning_identity},
      {"entropy-potential", entropy_potential},
      {"rounding-bounds", rounding_bounds},
      {"pipeline-floor", pipeline_floor},
      {"partition-certificates", partition_certificates},
      {"maxqp", maxqp},
      {"cov-pi-oracle", cov_pi_oracle},
      {"distinguishing", distinguishing},
  };
  std::vector<std::size_t> selected;
  for (int i = 1; i < argc; ++i) {
    const long k = std::strtol(argv[i], nullptr, 10);
    if (k < 1 || k > static_cast<long>(criteria.size())) {
      std::fprintf(stderr, "acceptance: no criterion %s\n", argv[i]);
      return 2;
    }
    selected.push_back(static_cast<std::size_t>(k - 1));
  }
  if (selected.empty())
    for (std::size_t k = 0; k < criteria.size(); ++k) selected.push_back(k);
  int failed = 0;
  for (std::size_t k : selected) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("criterion %zu %s %s: %s\n", k + 1, o.pass ? "PASS" : "FAIL", criteria[k].first, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(selected.size()) - failed, selected.size());
  return failed == 0 ? 0 : 1;
}
