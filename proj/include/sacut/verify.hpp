#ifndef SACUT_VERIFY_HPP
#define SACUT_VERIFY_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <functional>
#include <mutex>
#include <numeric>
#include <sstream>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

#include "sacut/common.hpp"
#include "sacut/csp.hpp"
#include "sacut/generators.hpp"
#include "sacut/graph.hpp"
#include "sacut/rounding.hpp"
#include "sacut/sherali_adams.hpp"
#include "sacut/spectrum.hpp"

namespace sacut {

// Experiment harness: each check runs a seeded corpus and reports one row per
// (trial, inequality) with both sides evaluated exactly.

struct VerifyRow {
  std::string check;
  std::string instance;
  std::uint64_t seed = 0;  // seed of the trial that produced the row
  std::string params;      // "key=value;..." with the base seed first
  std::string relation;    // e.g. "lhs<=rhs"
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

struct VerifyConfig {
  std::string check;
  int trials = -1;  // default per check
  std::uint64_t seed = 1;
  int threads = 0;  // 0: hardware concurrency
};

class UnknownCheck : public Error {
 public:
  using Error::Error;
};

inline const std::vector<std::string>& verify_check_names() {
  static const std::vector<std::string> names{"trace-bound",           "loc-to-glob",        "loc-to-glob-ug",
                                              "conditioning-identity", "entropy-potential",  "rounding-bound",
                                              "rounding-bound-ug",     "relaxation-sandwich"};
  return names;
}

namespace detail {

inline std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

class Params {
 public:
  explicit Params(std::uint64_t base_seed) { add("base_seed", base_seed); }
  template <class T>
  Params& add(const std::string& key, const T& value) {
    if (!s_.empty()) s_ += ';';
    s_ += key + '=';
    if constexpr (std::is_floating_point_v<T>) s_ += fmt12(value);
    else if constexpr (std::is_convertible_v<T, std::string>) s_ += std::string(value);
    else s_ += std::to_string(value);
    return *this;
  }
  const std::string& str() const { return s_; }

 private:
  std::string s_;
};

// Runs job(i) for i in [0, count) on a thread pool; results keep index order.
inline std::vector<VerifyRow> run_parallel(int count, int threads,
                                           const std::function<std::vector<VerifyRow>(int)>& job) {
  std::vector<std::vector<VerifyRow>> out(count);
  const int workers = std::max(
      1, std::min(count, threads > 0 ? threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()))));
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (int i = next++; i < count; i = next++) {
      try {
        out[i] = job(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  std::vector<VerifyRow> rows;
  for (auto& v : out)
    for (auto& r : v) rows.push_back(std::move(r));
  return rows;
}

inline VerifyRow make_row(const std::string& check, const std::string& instance, std::uint64_t seed,
                          const std::string& params, const std::string& relation, double lhs, double rhs, bool pass) {
  return {check, instance, seed, params, relation, lhs, rhs, pass};
}

// Random genuine distribution over [q]^n. Kind 0: mixture of a few random
// assignments (strong correlation); kind 1: dense skewed weights (weak);
// kind 2: a random assignment with independent per-vertex flips.
inline std::vector<double> random_distribution(int n, int q, int kind, Rng& rng) {
  const std::size_t size = int_pow(q, n);
  std::vector<double> p(size, 0.0);
  if (kind == 0) {
    const int m = 2 + static_cast<int>(uniform_index(rng, 5));
    for (int c = 0; c < m; ++c) p[uniform_index(rng, size)] += 0.05 + uniform01(rng);
  } else if (kind == 1) {
    for (double& v : p) {
      const double u = uniform01(rng);
      v = u * u * u;
    }
  } else {
    std::vector<int> base(n);
    for (int& a : base) a = static_cast<int>(uniform_index(rng, q));
    const double flip = 0.05 + 0.4 * uniform01(rng);
    for (std::size_t idx = 0; idx < size; ++idx) {
      std::size_t rest = idx;
      double w = 1.0;
      for (int i = n - 1; i >= 0; --i) {
        const int a = static_cast<int>(rest % q);
        rest /= q;
        w *= a == base[i] ? 1.0 - flip : flip / (q - 1);
      }
      p[idx] = w;
    }
  }
  double total = 0.0;
  for (double v : p) total += v;
  for (double& v : p) v /= total;
  return p;
}

inline int uniform_int(Rng& rng, int lo, int hi) { return lo + static_cast<int>(uniform_index(rng, hi - lo + 1)); }

// Connected G(n, p) with p in [max(0.3, 1.2 ln n / n), 0.9] and, if `weighted`,
// weights uniform in [0.5, 2].
inline Graph corpus_graph(int n, bool weighted, Rng& rng) {
  const double lo = std::max(0.3, 1.2 * std::log(static_cast<double>(n)) / n);
  const double p = lo + (0.9 - lo) * uniform01(rng);
  const Graph g = random_gnp(n, p, rng());
  if (!weighted) return g;
  std::vector<Edge> edges = g.edges();
  for (Edge& e : edges) e.w = 0.5 + 1.5 * uniform01(rng);
  return Graph(n, edges);
}

// ---------------------------------------------------------------------------
// Individual suites

inline std::vector<VerifyRow> trace_bound(const VerifyConfig& cfg, int trials) {
  return run_parallel(trials, cfg.threads, [&](int trial) {
    const std::uint64_t seed = derive_seed(cfg.seed, trial);
    Rng rng(seed);
    const int n = uniform_int(rng, 10, 200);
    Graph g = trial % 3 == 2 ? expander_union(std::max(2, n / 20), 20, trial % 2 == 0 ? 3 : 4, uniform_int(rng, 0, 5), rng())
                             : random_gnp(n, std::min(1.0, (trial % 3 == 0 ? 3.0 : 12.0) * std::log(n) / n), rng());
    const std::string inst = (trial % 3 == 2 ? "expander-union" : "random-gnp") + std::string("#") +
                             std::to_string(trial) + "/n=" + std::to_string(g.num_vertices());
    const Spectrum s = graph_spectrum(g);
    std::vector<VerifyRow> rows;
    for (double tau : {0.1, 0.3}) {
      const int rank = threshold_rank(s, tau);
      for (int t = 1; t <= 4; ++t) {
        const double lhs = trace_power(s, 2 * t);
        const double rhs = 2.0 * (rank + g.num_vertices() * std::pow(tau, 2 * t - 1));
        Params p(cfg.seed);
        p.add("n", g.num_vertices()).add("m", g.num_edges()).add("tau", tau).add("t", t).add("rank_tau", rank);
        rows.push_back(make_row("trace-bound", inst, seed, p.str(), "lhs<=rhs+1e-9", lhs, rhs, lhs <= rhs + 1e-9));
      }
    }
    return rows;
  });
}

inline std::vector<VerifyRow> loc_to_glob(const VerifyConfig& cfg, int trials, bool ug) {
  const char* name = ug ? "loc-to-glob-ug" : "loc-to-glob";
  return run_parallel(trials, cfg.threads, [&, name](int trial) {
    const std::uint64_t seed = derive_seed(cfg.seed, trial);
    Rng rng(seed);
    const int q = ug ? 3 : 2;
    const int n = uniform_int(rng, 3, ug ? 7 : 10);
    const Graph g = corpus_graph(n, trial % 2 == 1, rng);
    const int kind = trial % 3;
    const auto mu = LocalPseudodistribution::from_distribution(n, q, n, random_distribution(n, q, kind, rng));
    const double constant = ug ? 0.25 : 1.0 / 16.0;
    const double local =
        aggregate_correlation(mu, g, PairMode::LocalEdge, ug ? Measure::CovPi : Measure::Cov).value;
    const double global =
        aggregate_correlation(mu, g, PairMode::GlobalPair, ug ? Measure::CovPiSquared : Measure::CovSquared).value;
    const Spectrum s = graph_spectrum(g);
    std::vector<VerifyRow> rows;
    for (int t = 1; t <= 2; ++t) {
      const double lhs = std::pow(constant * local, 2 * t);
      const double rhs = trace_power(s, 2 * t) * global + 1e-9;
      Params p(cfg.seed);
      p.add("n", n).add("q", q).add("t", t).add("distribution", kind).add("local", local).add("global_sq", global);
      rows.push_back(make_row(name, "gnp#" + std::to_string(trial), seed, p.str(), "lhs<=rhs", lhs, rhs, lhs <= rhs));
    }
    return rows;
  });
}

inline std::vector<VerifyRow> conditioning_identity(const VerifyConfig& cfg, int trials) {
  return run_parallel(trials, cfg.threads, [&](int trial) {
    const std::uint64_t seed = derive_seed(cfg.seed, trial);
    Rng rng(seed);
    const int n = trial % 2 == 0 ? 3 : 4;
    const bool maxcut = (trial / 2) % 2 == 0;
    const bool from_lp = (trial / 4) % 2 == 0;
    const int q = maxcut ? 2 : 3;
    const Graph g = clique(n);
    const CspInstance inst = maxcut ? make_maxcut(g) : random_unique_games(n, q, 1.0, rng());
    const LocalPseudodistribution mu =
        from_lp ? solve_sa(inst, n).mu
                : LocalPseudodistribution::from_distribution(n, q, n, random_distribution(n, q, trial % 3, rng));
    const double rhs = pseudo_objective(inst, mu);
    const std::string inst_name = std::string(maxcut ? "maxcut" : "ug") + "/K" + std::to_string(n) + "#" +
                                  std::to_string(trial);
    std::vector<VerifyRow> rows;
    for (int size = 1; size <= n - 2; ++size) {
      for_each_subset(n, size, [&](const std::vector<int>& S) {
        double lhs = 0.0;
        const auto table = mu.marginal(S);
        std::vector<int> xs(S.size(), 0);
        for (std::size_t idx = 0; idx < table.size(); ++idx) {
          if (table[idx] > 1e-12) lhs += table[idx] * pseudo_objective(inst, mu.condition(S, xs));
          for (int d = static_cast<int>(xs.size()) - 1; d >= 0; --d) {
            if (++xs[d] < q) break;
            xs[d] = 0;
          }
        }
        std::string set;
        for (std::size_t k = 0; k < S.size(); ++k) set += (k ? "," : "") + std::to_string(S[k]);
        Params p(cfg.seed);
        p.add("n", n).add("q", q).add("t", n).add("S", set).add("source", from_lp ? "sa-lp" : "distribution");
        rows.push_back(make_row("conditioning-identity", inst_name, seed, p.str(), "|lhs-rhs|<=1e-6", lhs, rhs,
                                std::abs(lhs - rhs) <= 1e-6));
      });
    }
    return rows;
  });
}

// `runs` conditioning loops per (instance, budget); rows compare the smallest
// per-step mean of the global MI with log(q)/k plus three standard errors.
inline std::vector<VerifyRow> entropy_potential(const VerifyConfig& cfg, int runs) {
  const int instances = 3;
  const std::vector<int> budgets{2, 4, 8};
  const int n = 10;
  return run_parallel(instances * static_cast<int>(budgets.size()), cfg.threads, [&](int job) {
    const int inst_id = job / static_cast<int>(budgets.size());
    const int k = budgets[job % budgets.size()];
    const std::uint64_t seed = derive_seed(cfg.seed, inst_id);
    Rng rng(seed);
    const Graph g = corpus_graph(n, inst_id % 2 == 1, rng);
    const CspInstance inst = make_maxcut(g);
    const auto mu = LocalPseudodistribution::from_distribution(n, 2, n, random_distribution(n, 2, inst_id % 3, rng));
    std::vector<double> sum(k + 1, 0.0);
    std::vector<double> sum_sq(k + 1, 0.0);
    for (int r = 0; r < runs; ++r) {
      const auto res = gcr_condition_loop(inst, mu, {k, 0.0, Measure::MutualInfo, IndexSampling::Stationary},
                                          derive_seed(seed, 1000 * static_cast<std::uint64_t>(k) + r));
      for (int s = 1; s <= k; ++s) {
        sum[s] += res.measure_by_step[s];
        sum_sq[s] += res.measure_by_step[s] * res.measure_by_step[s];
      }
    }
    int best = 1;
    for (int s = 2; s <= k; ++s)
      if (sum[s] < sum[best]) best = s;
    const double mean = sum[best] / runs;
    const double var = runs > 1 ? std::max(0.0, (sum_sq[best] - runs * mean * mean) / (runs - 1)) : 0.0;
    const double se = std::sqrt(var / runs);
    const double rhs = std::log(2.0) / k + 3.0 * se;
    Params p(cfg.seed);
    p.add("n", n).add("q", 2).add("budget", k).add("runs", runs).add("best_step", best).add("std_error", se);
    return std::vector<VerifyRow>{make_row("entropy-potential", "gnp#" + std::to_string(inst_id), seed, p.str(),
                                           "lhs<=rhs", mean, rhs, mean <= rhs)};
  });
}

inline std::vector<VerifyRow> rounding_bound(const VerifyConfig& cfg, int trials, bool ug) {
  const char* name = ug ? "rounding-bound-ug" : "rounding-bound";
  const int samples = 1000;
  return run_parallel(trials, cfg.threads, [&, name](int trial) {
    const std::uint64_t seed = derive_seed(cfg.seed, trial);
    Rng rng(seed);
    const int n = uniform_int(rng, 3, ug ? 5 : 6);
    const int q = ug ? uniform_int(rng, 2, 3) : 2;
    const Graph g = corpus_graph(n, trial % 4 >= 2, rng);
    CspInstance inst = make_maxcut(g);
    if (ug) {
      std::vector<std::vector<int>> sigmas;
      for (std::size_t e = 0; e < g.num_edges(); ++e) {
        std::vector<int> s(q);
        std::iota(s.begin(), s.end(), 0);
        shuffle(s, rng);
        sigmas.push_back(std::move(s));
      }
      inst = make_unique_games(g, q, sigmas);
    }
    const int t = std::min(n, 3);
    const bool from_lp = trial % 2 == 0;
    LocalPseudodistribution mu =
        from_lp ? solve_sa(inst, t).mu
                : LocalPseudodistribution::from_distribution(n, q, t, random_distribution(n, q, 1 + trial % 2, rng));
    if (from_lp && t == 3 && trial % 4 == 0) {
      mu = gcr_condition_loop(inst, mu, {1, 0.0, Measure::MutualInfo, IndexSampling::Stationary}, rng()).mu;
    }
    const double pe = pseudo_objective(inst, mu);
    const double local =
        aggregate_correlation(mu, g, PairMode::LocalEdge, ug ? Measure::CovPi : Measure::Cov).value;
    double s1 = 0.0;
    double s2 = 0.0;
    Rng round_rng(derive_seed(seed, 77));
    for (int r = 0; r < samples; ++r) {
      const double v = objective_value(inst, independent_round(inst, mu, round_rng));
      s1 += v;
      s2 += v * v;
    }
    const double mean = s1 / samples;
    const double se = std::sqrt(std::max(0.0, (s2 - samples * mean * mean) / (samples - 1)) / samples);
    const double exact = independent_round_expectation(inst, mu);
    const double derand = objective_value(inst, derandomize_independent(inst, mu));
    const std::string inst_name = "gnp#" + std::to_string(trial);
    Params p(cfg.seed);
    p.add("n", n).add("q", q).add("t", mu.degree()).add("source", from_lp ? "sa-lp" : "distribution");
    p.add("samples", samples).add("pe", pe).add("local", local).add("std_error", se);
    return std::vector<VerifyRow>{
        make_row(name, inst_name + "/sampled", seed, p.str(), "lhs+3se>=rhs-1e-9", mean, pe - local,
                 mean + 3.0 * se >= pe - local - 1e-9),
        make_row(name, inst_name + "/derandomized", seed, p.str(), "lhs>=rhs-1e-9", derand, exact,
                 derand >= exact - 1e-9)};
  });
}

inline std::vector<VerifyRow> relaxation_sandwich(const VerifyConfig& cfg, int trials) {
  return run_parallel(2 * trials, cfg.threads, [&](int job) {
    const bool ug = job % 2 == 1;
    const int trial = job / 2;
    const std::uint64_t seed = derive_seed(cfg.seed, job);
    Rng rng(seed);
    const int n = uniform_int(rng, ug ? 2 : 3, ug ? 5 : 6);
    const int q = ug ? uniform_int(rng, 2, 3) : 2;
    const Graph g = n == 2 ? clique(2) : corpus_graph(n, trial % 2 == 1, rng);
    CspInstance inst = make_maxcut(g);
    if (ug) {
      std::vector<std::vector<int>> sigmas;
      for (std::size_t e = 0; e < g.num_edges(); ++e) {
        std::vector<int> s(q);
        std::iota(s.begin(), s.end(), 0);
        shuffle(s, rng);
        sigmas.push_back(std::move(s));
      }
      inst = make_unique_games(g, q, sigmas);
    }
    const double opt = brute_force_optimum(inst).value;
    const std::string inst_name = std::string(ug ? "ug" : "maxcut") + "#" + std::to_string(trial);
    std::vector<VerifyRow> rows;
    double prev = 0.0;
    for (int t = 2; t <= n; ++t) {
      const double sa = solve_sa(inst, t).value;
      Params p(cfg.seed);
      p.add("n", n).add("q", q).add("m", g.num_edges()).add("t", t);
      rows.push_back(make_row("relaxation-sandwich", inst_name + "/upper", seed, p.str(), "lhs<=rhs+1e-7", opt, sa,
                              opt <= sa + 1e-7));
      if (t > 2) {
        rows.push_back(make_row("relaxation-sandwich", inst_name + "/monotone", seed, p.str(), "lhs<=rhs+1e-7", sa,
                                prev, sa <= prev + 1e-7));
      }
      if (t == n) {
        rows.push_back(make_row("relaxation-sandwich", inst_name + "/exact", seed, p.str(), "|lhs-rhs|<=1e-6", sa,
                                opt, std::abs(sa - opt) <= 1e-6));
      }
      prev = sa;
    }
    return rows;
  });
}

}  // namespace detail

/// Default trial counts: trace-bound 50 graphs, loc-to-glob(-ug) 100
/// distributions, conditioning-identity 16 pseudodistributions,
/// entropy-potential 200 runs per setting, rounding-bound(-ug) 50 instances,
/// relaxation-sandwich 200 graphs per problem.
inline int default_trials(const std::string& check) {
  if (check == "trace-bound") return 50;
  if (check == "loc-to-glob" || check == "loc-to-glob-ug") return 100;
  if (check == "conditioning-identity") return 16;
  if (check == "entropy-potential") return 200;
  if (check == "rounding-bound" || check == "rounding-bound-ug") return 50;
  if (check == "relaxation-sandwich") return 200;
  throw UnknownCheck("unknown check \"" + check + "\"");
}

/// Rows come out in trial order, then emission order within a trial.
inline std::vector<VerifyRow> run_verify(const VerifyConfig& cfg) {
  const int fallback = default_trials(cfg.check);
  const int trials = cfg.trials > 0 ? cfg.trials : fallback;
  const std::string& c = cfg.check;
  if (c == "trace-bound") return detail::trace_bound(cfg, trials);
  if (c == "loc-to-glob") return detail::loc_to_glob(cfg, trials, false);
  if (c == "loc-to-glob-ug") return detail::loc_to_glob(cfg, trials, true);
  if (c == "conditioning-identity") return detail::conditioning_identity(cfg, trials);
  if (c == "entropy-potential") return detail::entropy_potential(cfg, trials);
  if (c == "rounding-bound") return detail::rounding_bound(cfg, trials, false);
  if (c == "rounding-bound-ug") return detail::rounding_bound(cfg, trials, true);
  return detail::relaxation_sandwich(cfg, trials);
}

inline bool all_pass(const std::vector<VerifyRow>& rows) {
  return std::all_of(rows.begin(), rows.end(), [](const VerifyRow& r) { return r.pass; });
}

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

}  // namespace detail

/// Header "check,instance,seed,params,relation,lhs,rhs,pass"; numbers with
/// 12 significant digits.
inline std::string to_csv(const std::vector<VerifyRow>& rows) {
  std::ostringstream os;
  os << "check,instance,seed,params,relation,lhs,rhs,pass\n";
  for (const auto& r : rows) {
    os << detail::csv_field(r.check) << ',' << detail::csv_field(r.instance) << ',' << r.seed << ','
       << detail::csv_field(r.params) << ',' << detail::csv_field(r.relation) << ',' << detail::fmt12(r.lhs) << ','
       << detail::fmt12(r.rhs) << ',' << (r.pass ? "true" : "false") << '\n';
  }
  return os.str();
}

}  // namespace sacut

#endif  // SACUT_VERIFY_HPP
