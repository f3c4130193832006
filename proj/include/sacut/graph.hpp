#ifndef SACUT_GRAPH_HPP
#define SACUT_GRAPH_HPP

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sacut/common.hpp"
#include "sacut/matrix.hpp"
#include "sacut/spectrum.hpp"

namespace sacut {

inline constexpr int kDefaultMaxVertices = 2000;

/// Undirected weighted edge, always stored with u < v.
struct Edge {
  int u = 0;
  int v = 0;
  double w = 0.0;
};

/// Simple undirected weighted graph without self-loops or isolated vertices.
/// Immutable after construction.
class Graph {
 public:
  /// Validates the edges and sums duplicate pairs. Throws sacut::Error on a
  /// self-loop, a non-positive weight, an out-of-range endpoint, an isolated
  /// vertex, or n above `max_vertices`.
  Graph(int n, const std::vector<Edge>& edges, int max_vertices = kDefaultMaxVertices) : n_(n) {
    if (n < 1) throw Error("graph must have at least one vertex");
    if (n > max_vertices) {
      throw Error("graph has " + std::to_string(n) + " vertices, above the limit of " +
                  std::to_string(max_vertices));
    }
    std::map<std::pair<int, int>, double> merged;
    for (const Edge& e : edges) {
      if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) {
        throw Error("edge {" + std::to_string(e.u) + "," + std::to_string(e.v) + "} out of range");
      }
      if (e.u == e.v) throw Error("self-loop at vertex " + std::to_string(e.u));
      if (!(e.w > 0.0) || !std::isfinite(e.w)) {
        throw Error("edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                    "} has non-positive weight");
      }
      merged[{std::min(e.u, e.v), std::max(e.u, e.v)}] += e.w;
    }
    edges_.reserve(merged.size());
    adjacency_ = Matrix(n, n);
    degrees_.assign(n, 0.0);
    neighbors_.assign(n, {});
    for (const auto& [key, w] : merged) {
      edges_.push_back({key.first, key.second, w});
      adjacency_(key.first, key.second) = w;
      adjacency_(key.second, key.first) = w;
      degrees_[key.first] += w;
      degrees_[key.second] += w;
      neighbors_[key.first].push_back({key.second, w});
      neighbors_[key.second].push_back({key.first, w});
    }
    for (int i = 0; i < n; ++i) {
      if (degrees_[i] <= 0.0) throw Error("isolated vertex " + std::to_string(i));
    }
    volume_ = std::accumulate(degrees_.begin(), degrees_.end(), 0.0);
  }

  int num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Matrix& adjacency() const { return adjacency_; }
  const std::vector<double>& degrees() const { return degrees_; }
  double degree(int i) const { return degrees_[i]; }
  double weight(int i, int j) const { return adjacency_(i, j); }
  /// Sum of degrees, i.e. twice the total edge weight.
  double volume() const { return volume_; }
  double total_weight() const { return 0.5 * volume_; }
  const std::vector<std::pair<int, double>>& neighbors(int i) const { return neighbors_[i]; }

  /// Index of edge {i,j} in edges(), or -1.
  int edge_index(int i, int j) const {
    const int a = std::min(i, j);
    const int b = std::max(i, j);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair{a, b},
                               [](const Edge& e, std::pair<int, int> key) {
                                 return std::pair{e.u, e.v} < key;
                               });
    if (it == edges_.end() || it->u != a || it->v != b) return -1;
    return static_cast<int>(it - edges_.begin());
  }

 private:
  int n_;
  std::vector<Edge> edges_;
  Matrix adjacency_;
  std::vector<double> degrees_;
  std::vector<std::vector<std::pair<int, double>>> neighbors_;
  double volume_ = 0.0;
};

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::string_view strip_comment(std::string_view line) {
  const auto hash = line.find('#');
  return hash == std::string_view::npos ? line : line.substr(0, hash);
}

template <class T>
bool parse_number(std::string_view tok, T& out) {
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc{} && ptr == tok.data() + tok.size();
}

template <class F>
void for_each_line(std::string_view text, F&& f) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    ++line_no;
    f(line_no, text.substr(pos, nl - pos));
    pos = nl + 1;
  }
}

}  // namespace detail

/// Parses the edge-list format: lines "u v w" (0-based ids, w > 0; w may be
/// omitted and defaults to 1), '#' comments, blank lines, and an optional
/// header "n <count>". Duplicate pairs are summed.
inline Graph parse_edge_list(std::string_view text, int max_vertices = kDefaultMaxVertices) {
  std::vector<Edge> edges;
  int declared_n = -1;
  int max_id = -1;
  detail::for_each_line(text, [&](std::size_t line_no, std::string_view raw) {
    const auto toks = detail::split_ws(detail::strip_comment(raw));
    if (toks.empty()) return;
    if (toks[0] == "n") {
      if (toks.size() != 2 || !detail::parse_number(toks[1], declared_n) || declared_n < 1) {
        throw ParseError(line_no, "malformed header, expected \"n <count>\"");
      }
      if (!edges.empty()) throw ParseError(line_no, "header must precede edges");
      return;
    }
    if (toks.size() != 2 && toks.size() != 3) {
      throw ParseError(line_no, "expected \"u v w\"");
    }
    Edge e;
    if (!detail::parse_number(toks[0], e.u) || !detail::parse_number(toks[1], e.v) || e.u < 0 ||
        e.v < 0) {
      throw ParseError(line_no, "vertex ids must be non-negative integers");
    }
    e.w = 1.0;
    if (toks.size() == 3 && !detail::parse_number(toks[2], e.w)) {
      throw ParseError(line_no, "weight is not a number");
    }
    if (e.u == e.v) throw ParseError(line_no, "self-loop at vertex " + std::to_string(e.u));
    if (!(e.w > 0.0) || !std::isfinite(e.w)) throw ParseError(line_no, "weight must be positive");
    if (declared_n > 0 && std::max(e.u, e.v) >= declared_n) {
      throw ParseError(line_no, "vertex id exceeds declared count");
    }
    max_id = std::max({max_id, e.u, e.v});
    edges.push_back(e);
  });
  if (edges.empty()) throw ParseError(0, "edge list has no edges");
  const int n = declared_n > 0 ? declared_n : max_id + 1;
  try {
    return Graph(n, edges, max_vertices);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(0, e.what());
  }
}

inline std::string to_edge_list(const Graph& g) {
  std::ostringstream os;
  os.precision(17);
  os << "n " << g.num_vertices() << "\n";
  for (const Edge& e : g.edges()) os << e.u << ' ' << e.v << ' ' << e.w << "\n";
  return os.str();
}

/// N = D^{-1/2} A D^{-1/2}.
inline Matrix normalized_adjacency(const Graph& g) {
  const int n = g.num_vertices();
  Matrix m(n, n);
  for (const Edge& e : g.edges()) {
    const double x = e.w / std::sqrt(g.degree(e.u) * g.degree(e.v));
    m(e.u, e.v) = x;
    m(e.v, e.u) = x;
  }
  return m;
}

/// P = D^{-1} A.
inline Matrix walk_matrix(const Graph& g) {
  const int n = g.num_vertices();
  Matrix p(n, n);
  for (const Edge& e : g.edges()) {
    p(e.u, e.v) = e.w / g.degree(e.u);
    p(e.v, e.u) = e.w / g.degree(e.v);
  }
  return p;
}

/// Spectrum of the normalized adjacency matrix.
inline Spectrum graph_spectrum(const Graph& g) { return eigendecompose(normalized_adjacency(g)); }

/// Eigenvalues within this distance of the threshold are not counted as above it.
inline constexpr double kThresholdRankSlack = 1e-9;

inline int threshold_rank(const Spectrum& s, double tau) {
  if (!(tau > 0.0 && tau < 1.0)) throw Error("threshold rank needs 0 < tau < 1");
  int count = 0;
  for (double lam : s.eigenvalues) {
    if (lam > tau + kThresholdRankSlack) ++count;
  }
  return count;
}

/// Number of eigenvalues of N strictly above tau. Negative eigenvalues are
/// never counted, however large their magnitude.
inline int threshold_rank(const Graph& g, double tau) { return threshold_rank(graph_spectrum(g), tau); }

inline double trace_power(const Spectrum& s, int exponent) {
  if (exponent < 2 || exponent % 2 != 0) throw Error("trace_power needs an even exponent >= 2");
  double tr = 0.0;
  for (double lam : s.eigenvalues) tr += std::pow(lam, exponent);
  return tr;
}

/// Tr(N^exponent) for an even exponent.
inline double trace_power(const Graph& g, int exponent) { return trace_power(graph_spectrum(g), exponent); }

/// pi_i = deg(i) / vol(G).
inline std::vector<double> stationary_distribution(const Graph& g) {
  std::vector<double> pi(g.degrees());
  for (double& p : pi) p /= g.volume();
  return pi;
}

/// Joint law of (i, j) where i ~ pi and j ends an l-step walk from i.
struct WalkDistribution {
  int length = 0;
  Matrix pair_weights;  // (i, j) -> pi_i (P^l)_{ij}
};

inline WalkDistribution walk_distribution(const Graph& g, int length) {
  if (length < 0) throw Error("walk length must be non-negative");
  const int n = g.num_vertices();
  const auto pi = stationary_distribution(g);
  Matrix w(n, n);
  for (int i = 0; i < n; ++i) w(i, i) = pi[i];
  const Matrix p = walk_matrix(g);
  for (int step = 0; step < length; ++step) w = w * p;
  return {length, std::move(w)};
}

/// Endpoint of one simulated l-step walk from `start`.
inline int sample_walk_endpoint(const Graph& g, int start, int length, Rng& rng) {
  int cur = start;
  for (int step = 0; step < length; ++step) {
    double target = uniform01(rng) * g.degree(cur);
    const auto& nb = g.neighbors(cur);
    int next = nb.back().first;
    for (const auto& [j, w] : nb) {
      if (target < w) {
        next = j;
        break;
      }
      target -= w;
    }
    cur = next;
  }
  return cur;
}

/// Connected components of the graph on `n` vertices spanned by `edges`,
/// each sorted ascending, ordered by smallest vertex.
inline std::vector<std::vector<int>> connected_components(int n, const std::vector<Edge>& edges) {
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Edge& e : edges) {
    const int a = find(e.u);
    const int b = find(e.v);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::map<int, std::vector<int>> groups;
  for (int i = 0; i < n; ++i) groups[find(i)].push_back(i);
  std::vector<std::vector<int>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

inline std::vector<std::vector<int>> connected_components(const Graph& g) {
  return connected_components(g.num_vertices(), g.edges());
}

/// Edges of g with both endpoints in `vertices`, relabeled to positions in `vertices`.
inline std::vector<Edge> induced_edges(const Graph& g, const std::vector<int>& vertices) {
  std::vector<int> local(g.num_vertices(), -1);
  for (std::size_t k = 0; k < vertices.size(); ++k) local[vertices[k]] = static_cast<int>(k);
  std::vector<Edge> out;
  for (const Edge& e : g.edges()) {
    if (local[e.u] >= 0 && local[e.v] >= 0) out.push_back({local[e.u], local[e.v], e.w});
  }
  return out;
}

/// Induced subgraph; throws if some vertex has no edge inside `vertices`.
inline Graph induced_subgraph(const Graph& g, const std::vector<int>& vertices) {
  return Graph(static_cast<int>(vertices.size()), induced_edges(g, vertices));
}

}  // namespace sacut

#endif  // SACUT_GRAPH_HPP
