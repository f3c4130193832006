#ifndef SACUT_ROUNDING_HPP
#define SACUT_ROUNDING_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sacut/common.hpp"
#include "sacut/csp.hpp"
#include "sacut/graph.hpp"
#include "sacut/partition.hpp"
#include "sacut/sherali_adams.hpp"

namespace sacut {

// ---------------------------------------------------------------------------
// Independent rounding

/// Y_i drawn independently from the singleton marginal of X_i, in index order.
inline Assignment independent_round(const CspInstance& inst, const LocalPseudodistribution& mu, Rng& rng) {
  Assignment x(inst.num_vertices());
  for (int i = 0; i < inst.num_vertices(); ++i) x[i] = static_cast<int>(sample_discrete(mu.singleton(i), rng));
  return x;
}

inline Assignment independent_round(const CspInstance& inst, const LocalPseudodistribution& mu, std::uint64_t seed) {
  Rng rng(seed);
  return independent_round(inst, mu, rng);
}

namespace detail {

inline std::vector<std::vector<double>> singletons(const LocalPseudodistribution& mu) {
  std::vector<std::vector<double>> p(mu.num_vertices());
  for (int i = 0; i < mu.num_vertices(); ++i) p[i] = mu.singleton(i);
  return p;
}

inline double edge_expectation(const PredicateTable& t, const std::vector<double>& pu, const std::vector<double>& pv) {
  double s = 0.0;
  for (int a = 0; a < t.q(); ++a) {
    if (pu[a] == 0.0) continue;
    for (int b = 0; b < t.q(); ++b)
      if (t(a, b)) s += pu[a] * pv[b];
  }
  return s;
}

}  // namespace detail

/// Exact E[objective] of independent rounding, from singleton marginals.
inline double independent_round_expectation(const CspInstance& inst, const LocalPseudodistribution& mu) {
  const auto p = detail::singletons(mu);
  double total = 0.0;
  const auto& edges = inst.graph().edges();
  for (std::size_t e = 0; e < edges.size(); ++e)
    total += edges[e].w * detail::edge_expectation(inst.predicate(e), p[edges[e].u], p[edges[e].v]);
  return total;
}

/// Conditional expectations over vertices in ascending order; each vertex takes
/// the value maximizing the expected objective given earlier choices and the
/// singleton marginals of later vertices. Ties go to the smallest value.
inline Assignment derandomize_independent(const CspInstance& inst, const std::vector<std::vector<double>>& marginals) {
  const int n = inst.num_vertices();
  const int q = inst.q();
  auto p = marginals;
  Assignment x(n, 0);
  const auto& edges = inst.graph().edges();
  std::vector<std::vector<std::size_t>> incident(n);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    incident[edges[e].u].push_back(e);
    incident[edges[e].v].push_back(e);
  }
  for (int i = 0; i < n; ++i) {
    int best_a = 0;
    double best = -1.0;
    for (int a = 0; a < q; ++a) {
      std::vector<double> point(q, 0.0);
      point[a] = 1.0;
      double s = 0.0;
      for (std::size_t e : incident[i]) {
        const Edge& ed = edges[e];
        s += ed.w * (ed.u == i ? detail::edge_expectation(inst.predicate(e), point, p[ed.v])
                               : detail::edge_expectation(inst.predicate(e), p[ed.u], point));
      }
      if (s > best + 1e-15) {
        best = s;
        best_a = a;
      }
    }
    x[i] = best_a;
    std::fill(p[i].begin(), p[i].end(), 0.0);
    p[i][best_a] = 1.0;
  }
  return x;
}

inline Assignment derandomize_independent(const CspInstance& inst, const LocalPseudodistribution& mu) {
  return derandomize_independent(inst, detail::singletons(mu));
}

inline Assignment derandomize_uniform(const CspInstance& inst) {
  return derandomize_independent(
      inst, std::vector<std::vector<double>>(inst.num_vertices(), std::vector<double>(inst.q(), 1.0 / inst.q())));
}

// ---------------------------------------------------------------------------
// Conditioning loop

enum class IndexSampling { Stationary, Uniform };

struct GcrOptions {
  int budget = 0;                 // k
  double target = 0.0;            // kappa; only reported
  Measure measure = Measure::MutualInfo;
  IndexSampling sampling = IndexSampling::Stationary;
};

struct GcrResult {
  LocalPseudodistribution mu;                    // at the chosen prefix
  std::vector<std::pair<int, int>> conditioned;  // (vertex, value), chosen prefix only
  std::vector<int> sampled_indices;              // all k draws
  std::vector<double> measure_by_step;           // global measure after s draws, s = 0..k
  int chosen_step = 0;
  CorrelationReport before;
  CorrelationReport after;
  double implied_kappa = 0.0;  // 6 log q / k, infinite for k = 0
  bool target_met = false;
};

/// Draws i_1..i_k (from pi or uniformly), conditions on values sampled from
/// the current marginals, and returns the prefix minimizing the global-pair
/// measure (ties go to the shortest prefix). A repeated index is a no-op.
inline GcrResult gcr_condition_loop(const CspInstance& inst, const LocalPseudodistribution& mu,
                                    const GcrOptions& opts, std::uint64_t seed) {
  if (opts.budget < 0) throw Error("gcr_condition_loop: budget must be nonnegative");
  if (mu.degree() < opts.budget + 2) {
    throw Error("gcr_condition_loop: degree " + std::to_string(mu.degree()) + " is below budget + 2 = " +
                std::to_string(opts.budget + 2));
  }
  if (opts.measure != Measure::MutualInfo && opts.measure != Measure::CovSquared &&
      opts.measure != Measure::CovPiSquared) {
    throw Error("gcr_condition_loop: measure must be MutualInfo, CovSquared or CovPiSquared");
  }
  const Graph& g = inst.graph();
  const int n = g.num_vertices();
  Rng rng(seed);
  const std::vector<double> weights =
      opts.sampling == IndexSampling::Stationary ? stationary_distribution(g) : std::vector<double>(n, 1.0 / n);

  std::vector<LocalPseudodistribution> states{mu};
  std::vector<std::vector<std::pair<int, int>>> prefixes{{}};
  GcrResult out{mu, {}, {}, {}, 0, {}, {}, 0.0, false};
  out.before = aggregate_correlation(mu, g, PairMode::GlobalPair, opts.measure);
  out.measure_by_step.push_back(out.before.value);
  std::vector<bool> fixed(n, false);
  for (int s = 1; s <= opts.budget; ++s) {
    const int i = static_cast<int>(sample_discrete(weights, rng));
    out.sampled_indices.push_back(i);
    if (fixed[i]) {
      states.push_back(states.back());
      prefixes.push_back(prefixes.back());
    } else {
      const int a = static_cast<int>(sample_discrete(states.back().singleton(i), rng));
      fixed[i] = true;
      states.push_back(states.back().condition({i}, {a}));
      auto prefix = prefixes.back();
      prefix.push_back({i, a});
      prefixes.push_back(std::move(prefix));
    }
    out.measure_by_step.push_back(aggregate_correlation(states.back(), g, PairMode::GlobalPair, opts.measure).value);
  }
  int best = 0;
  for (int s = 1; s <= opts.budget; ++s) {
    if (out.measure_by_step[s] < out.measure_by_step[best]) best = s;
  }
  out.chosen_step = best;
  out.mu = states[best];
  out.conditioned = prefixes[best];
  out.after = out.before;
  out.after.value = out.measure_by_step[best];
  out.implied_kappa =
      opts.budget > 0 ? 6.0 * std::log(static_cast<double>(inst.q())) / opts.budget : std::numeric_limits<double>::infinity();
  out.target_met = out.after.value <= opts.target;
  return out;
}

// ---------------------------------------------------------------------------
// Sign recombination for Max-Cut

struct SignedCombination {
  Assignment assignment;
  std::vector<int> signs;  // +1 keeps a component, -1 flips it
  double within = 0.0;     // weight of satisfied internal edges
  double cross = 0.0;      // total weight of cross-component edges
  double cross_cut = 0.0;  // weight of cut cross edges
  double value = 0.0;
};

/// Greedy signs: components in decreasing internal weight (ties by index);
/// each takes the sign that cuts more weight towards those already placed
/// (ties keep +1). Guarantees value >= within + cross / 2.
inline SignedCombination combine_with_signs(const CspInstance& inst, const std::vector<std::vector<int>>& components,
                                            const Assignment& x) {
  if (inst.q() != 2) throw Error("combine_with_signs: Max-Cut instances only");
  check_assignment(inst, x);
  const int n = inst.num_vertices();
  std::vector<int> label(n, -1);
  for (std::size_t c = 0; c < components.size(); ++c)
    for (int v : components[c]) {
      if (label[v] >= 0) throw Error("combine_with_signs: components overlap");
      label[v] = static_cast<int>(c);
    }
  for (int v = 0; v < n; ++v)
    if (label[v] < 0) throw Error("combine_with_signs: components do not cover vertex " + std::to_string(v));

  const auto& edges = inst.graph().edges();
  const std::size_t m = components.size();
  std::vector<double> internal(m, 0.0);
  SignedCombination out;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const Edge& ed = edges[e];
    if (label[ed.u] == label[ed.v]) {
      internal[label[ed.u]] += ed.w;
      if (inst.predicate(e)(x[ed.u], x[ed.v])) out.within += ed.w;
    } else {
      out.cross += ed.w;
    }
  }
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return internal[a] > internal[b]; });

  out.signs.assign(m, 0);
  out.assignment = x;
  for (std::size_t c : order) {
    double keep = 0.0;
    double flip = 0.0;
    for (int v : components[c]) {
      for (const auto& [u, w] : inst.graph().neighbors(v)) {
        const int lu = label[u];
        if (lu == static_cast<int>(c) || out.signs[lu] == 0) continue;
        if (x[v] != out.assignment[u]) keep += w;
        else flip += w;
      }
    }
    out.signs[c] = flip > keep ? -1 : 1;
    if (out.signs[c] < 0)
      for (int v : components[c]) out.assignment[v] = 1 - x[v];
  }
  for (const Edge& ed : edges) {
    if (label[ed.u] != label[ed.v] && out.assignment[ed.u] != out.assignment[ed.v]) out.cross_cut += ed.w;
  }
  out.value = objective_value(inst, out.assignment);
  return out;
}

// ---------------------------------------------------------------------------
// Permutation-symmetric recombination

struct PermutationCombination {
  Assignment assignment;
  std::vector<int> chosen;  // family index applied to each component
};

namespace detail {

inline void require_symmetry(const CspInstance& inst, const PermutationFamily& fam) {
  if (fam.q != inst.q()) throw Error("permutation family alphabet differs from the instance");
  if (!check_permutation_symmetry(inst.predicates(), fam)) {
    throw Error("predicates are not symmetric under the permutation family");
  }
}

inline std::vector<int> component_labels(int n, const std::vector<std::vector<int>>& components) {
  std::vector<int> label(n, -1);
  for (std::size_t c = 0; c < components.size(); ++c)
    for (int v : components[c]) label[v] = static_cast<int>(c);
  for (int v = 0; v < n; ++v)
    if (label[v] < 0) throw Error("components do not cover vertex " + std::to_string(v));
  return label;
}

}  // namespace detail

/// Applies an independent uniformly drawn family member to each component.
inline PermutationCombination round_permutation_symmetric(const CspInstance& inst, const PermutationFamily& fam,
                                                          const std::vector<std::vector<int>>& components,
                                                          const Assignment& x, std::uint64_t seed) {
  detail::require_symmetry(inst, fam);
  check_assignment(inst, x);
  detail::component_labels(inst.num_vertices(), components);
  Rng rng(seed);
  PermutationCombination out{x, {}};
  for (const auto& comp : components) {
    const int k = static_cast<int>(uniform_index(rng, fam.permutations.size()));
    out.chosen.push_back(k);
    for (int v : comp) out.assignment[v] = fam.permutations[k][x[v]];
  }
  return out;
}

/// Components in index order; each takes the family member (first among ties)
/// satisfying the most cross weight towards components already placed.
inline PermutationCombination round_permutation_symmetric_greedy(const CspInstance& inst, const PermutationFamily& fam,
                                                                 const std::vector<std::vector<int>>& components,
                                                                 const Assignment& x) {
  detail::require_symmetry(inst, fam);
  check_assignment(inst, x);
  const auto label = detail::component_labels(inst.num_vertices(), components);
  PermutationCombination out{x, std::vector<int>(components.size(), -1)};
  for (std::size_t c = 0; c < components.size(); ++c) {
    int best_k = 0;
    double best = -1.0;
    for (std::size_t k = 0; k < fam.permutations.size(); ++k) {
      const auto& p = fam.permutations[k];
      double s = 0.0;
      for (int v : components[c]) {
        for (const auto& [u, w] : inst.graph().neighbors(v)) {
          const int lu = label[u];
          if (lu == static_cast<int>(c) || out.chosen[lu] < 0) continue;
          if (inst.satisfied(v, u, p[x[v]], out.assignment[u])) s += w;
        }
      }
      if (s > best + 1e-15) {
        best = s;
        best_k = static_cast<int>(k);
      }
    }
    out.chosen[c] = best_k;
    for (int v : components[c]) out.assignment[v] = fam.permutations[best_k][x[v]];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pipelines

struct ComponentTrace {
  std::vector<int> vertices;
  int rank_tau = 0;
  int degree = 0;
  int budget = 0;
  double sa_value = 0.0;
  long lp_pivots = 0;
  std::vector<std::pair<int, int>> conditioned;  // global vertex ids
  int chosen_step = 0;
  std::uint64_t chosen_seed = 0;
  int restart = 0;
  CorrelationReport global_before;
  CorrelationReport global_after;
  double implied_kappa = 0.0;
  double pe_objective = 0.0;        // pE objective after conditioning
  double local_correlation = 0.0;   // local-edge Cov (Max-Cut) or CovPi (UG) after conditioning
  double independent_expectation = 0.0;
  bool rounding_bound_holds = true;  // independent_expectation >= pe_objective - local_correlation
  double value = 0.0;                // component objective after derandomization
};

struct RoundingTrace {
  std::string problem;  // "maxcut" or "unique-games"
  std::string branch;   // "low-rank" or "high-rank"
  double alpha = 0.0;
  double delta = 0.0;
  double tau = 0.0;
  int rank_tau = 0;
  double rank_target = 0.0;
  int degree = 0;
  int restarts = 0;
  std::uint64_t seed = 0;
  Measure measure = Measure::MutualInfo;
  std::optional<Partition> partition;
  std::vector<ComponentTrace> components;
  std::vector<int> signs;
  double within = 0.0;
  double cross = 0.0;
  double pipeline_value = 0.0;
  double fallback_value = 0.0;
  bool fallback_used = false;
  Assignment final_assignment;
  double final_value = 0.0;
};

struct PipelineOptions {
  double alpha = 0.5;
  int degree = 3;
  std::uint64_t seed = 1;
  int restarts = 16;
  int budget = -1;            // default degree - 2
  double tau = -1.0;          // default from alpha
  double rank_target = -1.0;  // default n^{alpha/2} (Max-Cut) or n^alpha (UG)
  double c = -1.0;            // default 12 / alpha
  IndexSampling sampling = IndexSampling::Stationary;
};

namespace detail {

// SA + best-of-R conditioning + derandomized rounding on one connected piece.
inline ComponentTrace solve_component(const CspInstance& sub, const std::vector<int>& vertices, int degree,
                                      int budget, Measure measure, Measure local_measure, const PipelineOptions& opts,
                                      std::uint64_t stream, Assignment& global) {
  ComponentTrace ct;
  ct.vertices = vertices;
  const int n = sub.num_vertices();
  ct.degree = std::min(degree, n);
  ct.budget = std::max(0, std::min(budget < 0 ? ct.degree - 2 : budget, ct.degree - 2));
  const SaResult sa = solve_sa(sub, ct.degree);
  ct.sa_value = sa.value;
  ct.lp_pivots = sa.pivots;

  const int restarts = ct.budget == 0 ? 1 : std::max(1, opts.restarts);
  std::optional<GcrResult> best;
  double best_pe = 0.0;
  double best_value = 0.0;
  Assignment best_x;
  for (int r = 0; r < restarts; ++r) {
    const std::uint64_t seed = derive_seed(opts.seed, stream * 1'000'003ULL + static_cast<std::uint64_t>(r));
    GcrResult res = gcr_condition_loop(sub, sa.mu, {ct.budget, 0.0, measure, opts.sampling}, seed);
    const double pe = pseudo_objective(sub, res.mu);
    Assignment x = derandomize_independent(sub, res.mu);
    const double value = objective_value(sub, x);
    const bool better = !best || res.after.value < best->after.value - 1e-12 ||
                        (std::abs(res.after.value - best->after.value) <= 1e-12 &&
                         (pe > best_pe + 1e-12 || (std::abs(pe - best_pe) <= 1e-12 && value > best_value + 1e-12)));
    if (better) {
      best = std::move(res);
      best_pe = pe;
      best_value = value;
      best_x = std::move(x);
      ct.restart = r;
      ct.chosen_seed = seed;
    }
  }
  ct.chosen_step = best->chosen_step;
  for (const auto& [v, a] : best->conditioned) ct.conditioned.push_back({vertices[v], a});
  ct.global_before = best->before;
  ct.global_after = best->after;
  ct.implied_kappa = best->implied_kappa;
  ct.pe_objective = best_pe;
  ct.local_correlation = aggregate_correlation(best->mu, sub.graph(), PairMode::LocalEdge, local_measure).value;
  ct.independent_expectation = independent_round_expectation(sub, best->mu);
  ct.rounding_bound_holds = ct.independent_expectation >= ct.pe_objective - ct.local_correlation - 1e-9;
  ct.value = best_value;
  for (int k = 0; k < n; ++k) global[vertices[k]] = best_x[k];
  return ct;
}

inline RoundingTrace run_pipeline(const CspInstance& inst, bool maxcut, const PipelineOptions& opts) {
  if (!(opts.alpha > 0.0 && opts.alpha <= 2.0)) throw Error("alpha must lie in (0, 2]");
  if (opts.degree < 2) throw Error("degree must be at least 2");
  const Graph& g = inst.graph();
  const int n = g.num_vertices();
  RoundingTrace tr;
  tr.problem = maxcut ? "maxcut" : "unique-games";
  tr.alpha = opts.alpha;
  tr.delta = maxcut ? 1.0 / 64.0 : 1.0 / 16.0;
  tr.tau = opts.tau > 0.0 ? opts.tau
                          : (maxcut ? std::pow(tr.delta / 16.0, 2.0 / opts.alpha) : std::pow(tr.delta / 4.0, 1.0 / opts.alpha));
  if (!(tr.tau > 0.0 && tr.tau < 1.0)) throw Error("tau must lie in (0, 1)");
  tr.rank_target = opts.rank_target > 0.0 ? opts.rank_target
                                          : std::pow(static_cast<double>(n), maxcut ? opts.alpha / 2.0 : opts.alpha);
  tr.degree = opts.degree;
  tr.restarts = opts.restarts;
  tr.seed = opts.seed;
  tr.measure = maxcut ? Measure::MutualInfo : Measure::CovPiSquared;
  const Measure local = maxcut ? Measure::Cov : Measure::CovPi;
  tr.rank_tau = threshold_rank(g, tr.tau);

  Assignment x(n, 0);
  std::vector<std::vector<int>> pieces;
  if (tr.rank_tau <= tr.rank_target) {
    tr.branch = "low-rank";
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    tr.components.push_back(solve_component(inst, all, opts.degree, opts.budget, tr.measure, local, opts, 0, x));
    tr.components.back().rank_tau = tr.rank_tau;
    pieces.push_back(all);
  } else {
    tr.branch = "high-rank";
    const int k = std::max(1, static_cast<int>(std::floor(tr.rank_target)));
    const double c = opts.c > 0.0 ? opts.c : 12.0 / opts.alpha;
    tr.partition = decompose(g, tr.tau, k, c);
    pieces = tr.partition->components;
    for (std::size_t p = 0; p < pieces.size(); ++p) {
      if (pieces[p].size() == 1) {
        ComponentTrace ct;
        ct.vertices = pieces[p];
        x[pieces[p][0]] = 0;
        tr.components.push_back(ct);
        continue;
      }
      const CspInstance sub = inst.restrict_to(pieces[p]);
      tr.components.push_back(
          solve_component(sub, pieces[p], opts.degree, opts.budget, tr.measure, local, opts, p + 1, x));
      tr.components.back().rank_tau = tr.partition->ranks[p];
    }
  }

  if (maxcut) {
    const auto comb = combine_with_signs(inst, pieces, x);
    tr.signs = comb.signs;
    tr.within = comb.within;
    tr.cross = comb.cross;
    x = comb.assignment;
  } else {
    std::vector<int> label(n, -1);
    for (std::size_t p = 0; p < pieces.size(); ++p)
      for (int v : pieces[p]) label[v] = static_cast<int>(p);
    const auto& edges = g.edges();
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (label[edges[e].u] != label[edges[e].v]) tr.cross += edges[e].w;
      else if (inst.predicate(e)(x[edges[e].u], x[edges[e].v])) tr.within += edges[e].w;
    }
  }
  tr.pipeline_value = objective_value(inst, x);
  const Assignment fallback = derandomize_uniform(inst);
  tr.fallback_value = objective_value(inst, fallback);
  if (tr.fallback_value > tr.pipeline_value) {
    tr.fallback_used = true;
    x = fallback;
  }
  tr.final_assignment = x;
  tr.final_value = objective_value(inst, x);
  return tr;
}

}  // namespace detail

/// Max-Cut pipeline: delta = 1/64, tau = (delta/16)^{2/alpha}. Low-rank
/// graphs (rank_tau <= n^{alpha/2}) are rounded directly; otherwise the graph
/// is decomposed, pieces are rounded separately and recombined with signs.
inline RoundingTrace solve_maxcut(const Graph& g, const PipelineOptions& opts) {
  return detail::run_pipeline(make_maxcut(g), true, opts);
}

/// Unique Games pipeline: delta = 1/16, tau = (delta/4)^{1/alpha}, CovPi^2 as
/// the conditioning measure, pieces concatenated without relabeling.
inline RoundingTrace solve_unique_games(const CspInstance& inst, const PipelineOptions& opts) {
  if (!is_unique_games(inst)) throw Error("solve_unique_games: predicates must be bijections");
  return detail::run_pipeline(inst, false, opts);
}

/// Line-oriented report of a pipeline run.
inline std::string format_trace(const RoundingTrace& tr) {
  std::ostringstream os;
  os.precision(12);
  os << "problem=" << tr.problem << '\n'
     << "branch=" << tr.branch << '\n'
     << "alpha=" << tr.alpha << " delta=" << tr.delta << " tau=" << tr.tau << '\n'
     << "rank_tau=" << tr.rank_tau << " rank_target=" << tr.rank_target << '\n'
     << "degree=" << tr.degree << " restarts=" << tr.restarts << " seed=" << tr.seed
     << " measure=" << to_string(tr.measure) << '\n';
  if (tr.partition) {
    os << "partition_components=" << tr.partition->components.size()
       << " cut_fraction=" << tr.partition->cut_weight_fraction << " max_expansion=" << tr.partition->max_expansion
       << " nibbles=" << tr.partition->certificates.size() << '\n';
  }
  for (std::size_t k = 0; k < tr.components.size(); ++k) {
    const auto& c = tr.components[k];
    os << "component " << k << ": vertices=";
    for (std::size_t j = 0; j < c.vertices.size(); ++j) os << (j ? "," : "") << c.vertices[j];
    os << " rank_tau=" << c.rank_tau << " degree=" << c.degree << " budget=" << c.budget
       << " sa_value=" << c.sa_value << " chosen_step=" << c.chosen_step << " conditioned=";
    for (std::size_t j = 0; j < c.conditioned.size(); ++j)
      os << (j ? "," : "") << c.conditioned[j].first << ':' << c.conditioned[j].second;
    if (c.conditioned.empty()) os << '-';
    os << " measure_before=" << c.global_before.value << " measure_after=" << c.global_after.value
       << " implied_kappa=" << c.implied_kappa << " pe_objective=" << c.pe_objective
       << " local_correlation=" << c.local_correlation << " independent_expectation=" << c.independent_expectation
       << " rounding_bound=" << (c.rounding_bound_holds ? "ok" : "violated") << " value=" << c.value << '\n';
  }
  if (!tr.signs.empty()) {
    os << "signs=";
    for (std::size_t k = 0; k < tr.signs.size(); ++k) os << (k ? "," : "") << (tr.signs[k] > 0 ? '+' : '-');
    os << '\n';
  }
  os << "within=" << tr.within << " cross=" << tr.cross << '\n'
     << "pipeline_value=" << tr.pipeline_value << " fallback_value=" << tr.fallback_value
     << " fallback_used=" << (tr.fallback_used ? "yes" : "no") << '\n'
     << "assignment=";
  for (std::size_t i = 0; i < tr.final_assignment.size(); ++i) os << (i ? "," : "") << tr.final_assignment[i];
  os << '\n' << "final_value=" << tr.final_value << '\n';
  return os.str();
}

}  // namespace sacut

#endif  // SACUT_ROUNDING_HPP
