#ifndef SACUT_CSP_HPP
#define SACUT_CSP_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sacut/common.hpp"
#include "sacut/graph.hpp"

namespace sacut {

using Assignment = std::vector<int>;

/// 0/1 table over [q] x [q]. Entry (a, b) refers to value a at the
/// lower-indexed endpoint of the edge and b at the higher one.
class PredicateTable {
 public:
  PredicateTable() = default;
  explicit PredicateTable(int q) : q_(q), cells_(static_cast<std::size_t>(q) * q, 0) {}

  int q() const { return q_; }
  bool operator()(int a, int b) const { return cells_[static_cast<std::size_t>(a) * q_ + b] != 0; }
  void set(int a, int b, bool value) { cells_[static_cast<std::size_t>(a) * q_ + b] = value ? 1 : 0; }

  PredicateTable transposed() const {
    PredicateTable t(q_);
    for (int a = 0; a < q_; ++a)
      for (int b = 0; b < q_; ++b) t.set(b, a, (*this)(a, b));
    return t;
  }

  int satisfied_count() const { return std::accumulate(cells_.begin(), cells_.end(), 0); }

  friend bool operator==(const PredicateTable&, const PredicateTable&) = default;

 private:
  int q_ = 0;
  std::vector<std::uint8_t> cells_;
};

inline PredicateTable inequality_predicate(int q) {
  PredicateTable t(q);
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) t.set(a, b, a != b);
  return t;
}

/// b = sigma[a]. `sigma` must be a bijection on [q].
inline PredicateTable bijection_predicate(const std::vector<int>& sigma) {
  const int q = static_cast<int>(sigma.size());
  std::vector<bool> seen(q, false);
  for (int b : sigma) {
    if (b < 0 || b >= q || seen[b]) throw Error("constraint table is not a bijection on [q]");
    seen[b] = true;
  }
  PredicateTable t(q);
  for (int a = 0; a < q; ++a) t.set(a, sigma[a], true);
  return t;
}

/// Image list of a bijection predicate, or an empty vector if the table is not one.
inline std::vector<int> as_bijection(const PredicateTable& t) {
  std::vector<int> sigma(t.q(), -1);
  std::vector<bool> used(t.q(), false);
  for (int a = 0; a < t.q(); ++a) {
    for (int b = 0; b < t.q(); ++b) {
      if (!t(a, b)) continue;
      if (sigma[a] >= 0 || used[b]) return {};
      sigma[a] = b;
      used[b] = true;
    }
    if (sigma[a] < 0) return {};
  }
  return sigma;
}

/// Drops edges with w < w_max / n^3 (ties kept) and rescales the rest to sum
/// to 1. Throws if a vertex loses all its edges.
inline Graph sanitize_weights(const Graph& g) {
  const double n = g.num_vertices();
  double w_max = 0.0;
  for (const Edge& e : g.edges()) w_max = std::max(w_max, e.w);
  const double cutoff = w_max / (n * n * n);
  std::vector<Edge> kept;
  double total = 0.0;
  for (const Edge& e : g.edges()) {
    if (e.w >= cutoff) {
      kept.push_back(e);
      total += e.w;
    }
  }
  std::vector<bool> touched(g.num_vertices(), false);
  for (Edge& e : kept) {
    e.w /= total;
    touched[e.u] = touched[e.v] = true;
  }
  for (int i = 0; i < g.num_vertices(); ++i) {
    if (!touched[i]) throw Error("sanitization isolates vertex " + std::to_string(i));
  }
  return Graph(g.num_vertices(), kept, std::max(g.num_vertices(), kDefaultMaxVertices));
}

enum class WeightPolicy { Sanitize, NormalizeOnly };

/// Weighted 2CSP (G, Pi). predicates()[e] belongs to graph().edges()[e].
class CspInstance {
 public:
  CspInstance(const Graph& g, int q, std::vector<PredicateTable> predicates,
              WeightPolicy policy = WeightPolicy::Sanitize)
      : graph_(g), q_(q), predicates_(std::move(predicates)) {
    if (q < 2) throw Error("alphabet size must be at least 2");
    if (predicates_.size() != g.num_edges()) throw Error("need one predicate per edge");
    for (const auto& p : predicates_) {
      if (p.q() != q) throw Error("predicate alphabet differs from instance alphabet");
    }
    if (policy == WeightPolicy::Sanitize) {
      Graph clean = sanitize_weights(g);
      // clean.edges() is an order-preserving subsequence of g.edges().
      std::vector<PredicateTable> kept;
      std::size_t k = 0;
      for (std::size_t e = 0; e < g.num_edges() && k < clean.num_edges(); ++e) {
        if (g.edges()[e].u == clean.edges()[k].u && g.edges()[e].v == clean.edges()[k].v) {
          kept.push_back(predicates_[e]);
          ++k;
        }
      }
      graph_ = std::move(clean);
      predicates_ = std::move(kept);
    } else {
      std::vector<Edge> edges = g.edges();
      double total = 0.0;
      for (const Edge& e : edges) total += e.w;
      for (Edge& e : edges) e.w /= total;
      graph_ = Graph(g.num_vertices(), edges, std::max(g.num_vertices(), kDefaultMaxVertices));
    }
  }

  const Graph& graph() const { return graph_; }
  int num_vertices() const { return graph_.num_vertices(); }
  int q() const { return q_; }
  const std::vector<PredicateTable>& predicates() const { return predicates_; }
  const PredicateTable& predicate(std::size_t e) const { return predicates_[e]; }

  /// Pi_ij(a, b) with a the value at i, b the value at j, for either orientation.
  bool satisfied(int i, int j, int a, int b) const {
    const int e = graph_.edge_index(i, j);
    if (e < 0) throw Error("no edge between " + std::to_string(i) + " and " + std::to_string(j));
    return i < j ? predicates_[e](a, b) : predicates_[e](b, a);
  }

  /// Restriction to the induced subgraph on `vertices` (relabeled 0..k-1 by
  /// position). Weights are renormalized but not re-sanitized.
  CspInstance restrict_to(const std::vector<int>& vertices) const {
    std::vector<int> local(num_vertices(), -1);
    for (std::size_t k = 0; k < vertices.size(); ++k) local[vertices[k]] = static_cast<int>(k);
    std::vector<Edge> edges;
    std::vector<std::pair<std::pair<int, int>, PredicateTable>> keyed;
    for (std::size_t e = 0; e < graph_.num_edges(); ++e) {
      const Edge& ed = graph_.edges()[e];
      const int a = local[ed.u];
      const int b = local[ed.v];
      if (a < 0 || b < 0) continue;
      edges.push_back({a, b, ed.w});
      keyed.push_back({{std::min(a, b), std::max(a, b)}, a < b ? predicates_[e] : predicates_[e].transposed()});
    }
    if (edges.empty()) throw Error("restriction has no internal edges");
    std::sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    std::vector<PredicateTable> preds;
    for (auto& kv : keyed) preds.push_back(std::move(kv.second));
    return CspInstance(Graph(static_cast<int>(vertices.size()), edges), q_, std::move(preds),
                       WeightPolicy::NormalizeOnly);
  }

 private:
  Graph graph_;
  int q_;
  std::vector<PredicateTable> predicates_;
};

inline void check_assignment(const CspInstance& inst, const Assignment& x) {
  if (x.size() != static_cast<std::size_t>(inst.num_vertices())) throw Error("assignment length differs from n");
  for (int v : x) {
    if (v < 0 || v >= inst.q()) throw Error("assignment value outside [q]");
  }
}

/// Sum over edges of w_ij * Pi_ij(x_i, x_j), summed in edge order.
inline double objective_value(const CspInstance& inst, const Assignment& x) {
  check_assignment(inst, x);
  double total = 0.0;
  const auto& edges = inst.graph().edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (inst.predicate(e)(x[edges[e].u], x[edges[e].v])) total += edges[e].w;
  }
  return total;
}

/// Exact E over independent uniform labels: sum_e w_e * |Pi_e| / q^2.
inline double random_assignment_value(const CspInstance& inst) {
  const double q2 = static_cast<double>(inst.q()) * inst.q();
  double total = 0.0;
  const auto& edges = inst.graph().edges();
  for (std::size_t e = 0; e < edges.size(); ++e) total += edges[e].w * inst.predicate(e).satisfied_count() / q2;
  return total;
}

inline CspInstance make_maxcut(const Graph& g) {
  return CspInstance(g, 2, std::vector<PredicateTable>(g.num_edges(), inequality_predicate(2)));
}

inline CspInstance make_max_k_cut(const Graph& g, int k) {
  return CspInstance(g, k, std::vector<PredicateTable>(g.num_edges(), inequality_predicate(k)));
}

/// sigmas[e] maps the value at edges()[e].u to the required value at edges()[e].v.
inline CspInstance make_unique_games(const Graph& g, int q, const std::vector<std::vector<int>>& sigmas) {
  if (sigmas.size() != g.num_edges()) throw Error("need one bijection per edge");
  std::vector<PredicateTable> preds;
  preds.reserve(sigmas.size());
  for (const auto& s : sigmas) {
    if (static_cast<int>(s.size()) != q) throw Error("bijection table has the wrong length");
    preds.push_back(bijection_predicate(s));
  }
  return CspInstance(g, q, std::move(preds));
}

/// Max-2-Lin mod q: x_v - x_u = shifts[e] (mod q) for edge e = {u < v}.
inline CspInstance make_max_2lin(const Graph& g, int q, const std::vector<int>& shifts) {
  if (shifts.size() != g.num_edges()) throw Error("need one shift per edge");
  std::vector<std::vector<int>> sigmas;
  for (int c : shifts) {
    std::vector<int> s(q);
    for (int a = 0; a < q; ++a) s[a] = ((a + c) % q + q) % q;
    sigmas.push_back(std::move(s));
  }
  return make_unique_games(g, q, sigmas);
}

inline bool is_unique_games(const CspInstance& inst) {
  return std::all_of(inst.predicates().begin(), inst.predicates().end(),
                     [](const PredicateTable& t) { return !as_bijection(t).empty(); });
}

/// Exhaustive optimum over [q]^n. Ties resolve to the lexicographically smallest assignment.
struct BruteForceResult {
  double value = 0.0;
  Assignment assignment;
};

inline BruteForceResult brute_force_optimum(const CspInstance& inst) {
  const int n = inst.num_vertices();
  const int q = inst.q();
  if (std::pow(static_cast<double>(q), n) > 5e7) throw Error("instance too large for exhaustive search");
  Assignment x(n, 0);
  BruteForceResult best{-1.0, x};
  for (;;) {
    const double v = objective_value(inst, x);
    if (v > best.value) best = {v, x};
    int k = n - 1;
    while (k >= 0 && ++x[k] == q) x[k--] = 0;
    if (k < 0) break;
  }
  return best;
}

// ---------------------------------------------------------------------------
// Permutation families

struct PermutationFamily {
  int q = 0;
  std::vector<std::vector<int>> permutations;

  void validate() const {
    if (permutations.empty()) throw Error("permutation family is empty");
    for (const auto& p : permutations) {
      if (static_cast<int>(p.size()) != q) throw Error("permutation has the wrong length");
      std::vector<bool> seen(q, false);
      for (int b : p) {
        if (b < 0 || b >= q || seen[b]) throw Error("family element is not a bijection");
        seen[b] = true;
      }
    }
  }
};

inline PermutationFamily all_permutations(int q) {
  PermutationFamily f{q, {}};
  std::vector<int> p(q);
  std::iota(p.begin(), p.end(), 0);
  do f.permutations.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return f;
}

inline PermutationFamily shift_family(int q) {
  PermutationFamily f{q, {}};
  for (int s = 0; s < q; ++s) {
    std::vector<int> p(q);
    for (int a = 0; a < q; ++a) p[a] = (a + s) % q;
    f.permutations.push_back(std::move(p));
  }
  return f;
}

/// (a) for each a, pi(a) is uniform on [q] when pi is uniform on the family;
/// (b) every predicate is invariant under every family member.
inline bool check_permutation_symmetry(const std::vector<PredicateTable>& predicates, const PermutationFamily& fam) {
  fam.validate();
  const int q = fam.q;
  const std::size_t m = fam.permutations.size();
  if (m % q != 0) return false;
  for (int a = 0; a < q; ++a) {
    std::vector<std::size_t> hits(q, 0);
    for (const auto& p : fam.permutations) ++hits[p[a]];
    for (std::size_t h : hits) {
      if (h * q != m) return false;
    }
  }
  for (const auto& t : predicates) {
    if (t.q() != q) return false;
    for (const auto& p : fam.permutations)
      for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
          if (t(a, b) && !t(p[a], p[b])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Unique Games text format: "n q", then "u v w a0 ... a(q-1)" per edge.

inline CspInstance parse_unique_games(std::string_view text) {
  int n = -1;
  int q = -1;
  std::vector<Edge> edges;
  std::vector<std::vector<int>> sigmas;
  std::vector<std::pair<int, int>> seen;
  detail::for_each_line(text, [&](std::size_t line_no, std::string_view raw) {
    auto tokens = detail::split_ws(detail::strip_comment(raw));
    if (tokens.empty()) return;
    if (n < 0) {
      if (tokens.size() != 2 || !detail::parse_number(tokens[0], n) || !detail::parse_number(tokens[1], q) ||
          n < 1 || q < 2 || n > kDefaultMaxVertices || q > 64) {
        throw ParseError(line_no, "expected header \"n q\" with n >= 1 and 2 <= q <= 64");
      }
      return;
    }
    if (tokens.size() != static_cast<std::size_t>(3 + q)) {
      throw ParseError(line_no, "expected \"u v w\" followed by " + std::to_string(q) + " labels");
    }
    int u = 0;
    int v = 0;
    double w = 0.0;
    if (!detail::parse_number(tokens[0], u) || !detail::parse_number(tokens[1], v) ||
        !detail::parse_number(tokens[2], w)) {
      throw ParseError(line_no, "malformed number");
    }
    if (u < 0 || v < 0 || u >= n || v >= n) throw ParseError(line_no, "vertex id out of range");
    if (u == v) throw ParseError(line_no, "self-loop at vertex " + std::to_string(u));
    if (!(w > 0.0) || !std::isfinite(w)) throw ParseError(line_no, "weight must be positive");
    std::vector<int> sigma(q);
    std::vector<bool> used(q, false);
    for (int a = 0; a < q; ++a) {
      int b = -1;
      if (!detail::parse_number(tokens[3 + a], b) || b < 0 || b >= q || used[b]) {
        throw ParseError(line_no, "labels do not form a bijection on [q]");
      }
      used[b] = true;
      sigma[a] = b;
    }
    int a_end = u;
    int b_end = v;
    if (a_end > b_end) {
      std::swap(a_end, b_end);
      std::vector<int> inv(q);
      for (int a = 0; a < q; ++a) inv[sigma[a]] = a;
      sigma = std::move(inv);
    }
    const std::pair<int, int> key{a_end, b_end};
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) throw ParseError(line_no, "duplicate edge");
    seen.push_back(key);
    edges.push_back({a_end, b_end, w});
    sigmas.push_back(std::move(sigma));
  });
  if (n < 0) throw ParseError(0, "missing header \"n q\"");
  std::vector<std::size_t> order(edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return std::pair{edges[x].u, edges[x].v} < std::pair{edges[y].u, edges[y].v}; });
  std::vector<Edge> sorted_edges;
  std::vector<std::vector<int>> sorted_sigmas;
  for (std::size_t k : order) {
    sorted_edges.push_back(edges[k]);
    sorted_sigmas.push_back(sigmas[k]);
  }
  std::vector<int> degree(n, 0);
  for (const Edge& e : sorted_edges) ++degree[e.u], ++degree[e.v];
  for (int i = 0; i < n; ++i) {
    if (degree[i] == 0) throw ParseError(0, "isolated vertex " + std::to_string(i));
  }
  return make_unique_games(Graph(n, sorted_edges), q, sorted_sigmas);
}

/// Writes a Unique Games instance in the text format read by parse_unique_games.
inline std::string to_unique_games_text(const CspInstance& inst) {
  std::ostringstream os;
  os.precision(17);
  os << inst.num_vertices() << ' ' << inst.q() << '\n';
  const auto& edges = inst.graph().edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto sigma = as_bijection(inst.predicate(e));
    if (sigma.empty()) throw Error("instance is not a Unique Games instance");
    os << edges[e].u << ' ' << edges[e].v << ' ' << edges[e].w;
    for (int b : sigma) os << ' ' << b;
    os << '\n';
  }
  return os.str();
}

}  // namespace sacut

#endif  // SACUT_CSP_HPP
