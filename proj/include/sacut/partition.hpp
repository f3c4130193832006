#ifndef SACUT_PARTITION_HPP
#define SACUT_PARTITION_HPP

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "sacut/common.hpp"
#include "sacut/graph.hpp"
#include "sacut/matrix.hpp"
#include "sacut/spectrum.hpp"

namespace sacut {

namespace detail {

// x^T A x and x^T D x for the indicator of `set`.
inline std::pair<double, double> indicator_forms(const Graph& g, const std::vector<int>& set) {
  std::vector<bool> in(g.num_vertices(), false);
  for (int v : set) in[v] = true;
  double a = 0.0;
  double d = 0.0;
  for (int v : set) d += g.degree(v);
  for (const Edge& e : g.edges()) {
    if (in[e.u] && in[e.v]) a += 2.0 * e.w;
  }
  return {a, d};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Good starting vertex

struct StartingVertex {
  int vertex = -1;
  double mu = 0.0;     // ||Pi e_i||^2
  double ratio = 0.0;  // ||Pi e_i||^2 / <v, e_i>^2
};

/// Pi projects onto the eigenvectors of N with eigenvalue above tau (same
/// strict rule as threshold_rank); v = D^{1/2} 1 / sqrt(Tr D). Returns the
/// argmax of ||Pi e_i||^2 / <v, e_i>^2, lowest index among near-ties.
inline StartingVertex good_starting_vertex(const Graph& g, const Spectrum& s, double tau, int k) {
  const int rank = threshold_rank(s, tau);
  if (rank < k) {
    throw Error("good_starting_vertex: rank_tau = " + std::to_string(rank) + " is below k = " + std::to_string(k));
  }
  const int n = g.num_vertices();
  StartingVertex best;
  for (int i = 0; i < n; ++i) {
    double mass = 0.0;
    for (int c = 0; c < rank; ++c) mass += s.eigenvectors(i, c) * s.eigenvectors(i, c);
    const double ratio = mass * g.volume() / g.degree(i);
    if (best.vertex < 0 || ratio > best.ratio * (1.0 + 1e-9)) best = {i, mass, ratio};
  }
  if (best.ratio < k - 1e-6) throw Error("good_starting_vertex: averaging bound violated");
  return best;
}

inline StartingVertex good_starting_vertex(const Graph& g, double tau, int k) {
  return good_starting_vertex(g, graph_spectrum(g), tau, k);
}

// ---------------------------------------------------------------------------
// Sparse Cheeger rounding

struct CheegerResult {
  std::vector<int> set;
  double ratio = 0.0;    // x^T A x / x^T D x of the returned indicator
  double epsilon = 0.0;  // v^T A v / v^T D v, after scaling v to max 1
  double theta = 0.0;    // ||Dv||_1 / v^T D v
  double volume_cap = 0.0;
  double bound = 0.0;    // (1 - delta^2)(eps^2 / 2 - delta^2 (Tr D / v^T D v + 1))
};

struct CheegerOptions {
  // Skip the level set equal to the whole vertex set.
  bool proper_subset = false;
};

/// Threshold rounding of a nonnegative v, derandomized: every level set
/// {i : v_i >= s} for distinct positive s is scored, those within the volume
/// cap (1/delta) * theta * v^T D v compete on x^T A x / x^T D x. Ties keep the
/// smaller set. Throws when eps = 0 or no level set fits.
inline CheegerResult sparse_cheeger_round(const Graph& g, std::vector<double> v, double delta,
                                          const CheegerOptions& opts = {}) {
  const int n = g.num_vertices();
  if (static_cast<int>(v.size()) != n) throw Error("sparse_cheeger_round: vector length differs from n");
  if (!(delta > 0.0)) throw Error("sparse_cheeger_round: delta must be positive");
  double vmax = 0.0;
  for (double x : v) {
    if (x < 0.0 || !std::isfinite(x)) throw Error("sparse_cheeger_round: vector must be nonnegative");
    vmax = std::max(vmax, x);
  }
  if (vmax == 0.0) throw Error("sparse_cheeger_round: vector is zero");
  for (double& x : v) x /= vmax;

  double vav = 0.0;
  double vdv = 0.0;
  double dv1 = 0.0;
  for (int i = 0; i < n; ++i) {
    vdv += g.degree(i) * v[i] * v[i];
    dv1 += g.degree(i) * v[i];
  }
  for (const Edge& e : g.edges()) vav += 2.0 * e.w * v[e.u] * v[e.v];

  CheegerResult out;
  out.epsilon = vav / vdv;
  if (!(out.epsilon > 0.0)) throw Error("sparse_cheeger_round: v^T A v = 0, no positive Rayleigh quotient");
  out.theta = dv1 / vdv;
  out.volume_cap = out.theta * vdv / delta;
  const double d2 = delta * delta;
  out.bound = (1.0 - d2) * (0.5 * out.epsilon * out.epsilon - d2 * (g.volume() / vdv + 1.0));

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return v[a] > v[b]; });
  std::vector<bool> in(n, false);
  double xax = 0.0;
  double xdx = 0.0;
  bool found = false;
  std::size_t best_size = 0;
  for (std::size_t k = 0; k < order.size();) {
    const double level = v[order[k]];
    if (level <= 0.0) break;
    // Add every vertex at this level.
    for (; k < order.size() && v[order[k]] == level; ++k) {
      const int i = order[k];
      in[i] = true;
      xdx += g.degree(i);
      for (const auto& [j, w] : g.neighbors(i)) {
        if (in[j]) xax += 2.0 * w;
      }
    }
    if (xdx > out.volume_cap * (1.0 + 1e-12)) continue;
    if (opts.proper_subset && k == order.size()) continue;
    const double ratio = xax / xdx;
    if (!found || ratio > out.ratio) {
      found = true;
      out.ratio = ratio;
      best_size = k;
    }
  }
  if (!found) throw Error("sparse_cheeger_round: no level set satisfies the volume cap");
  // The best admissible level set dominates the conditional expectation over all of them.
  if (!opts.proper_subset && out.ratio < out.bound - 1e-9) {
    throw Error("sparse_cheeger_round: level-set ratio fell below the rounding bound");
  }
  out.set.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(best_size));
  std::sort(out.set.begin(), out.set.end());
  return out;
}

// ---------------------------------------------------------------------------
// Nibble

struct NibbleCertificate {
  std::vector<int> parent;  // vertices of the graph that was nibbled
  int start_vertex = -1;
  double mu = 0.0;
  double start_ratio = 0.0;  // ||Pi e_i||^2 / <v, e_i>^2
  int rank_threshold = 0;    // k
  int horizon = 0;           // T
  int step = 0;              // chosen t in [1, T]
  std::vector<double> quotients;  // e^T N^{2t} e / e^T N^{2(t-1)} e, t = 1..T
  double telescoping_product = 0.0;
  double walk_mass = 0.0;        // e^T N^{2T} e
  double telescoping_floor = 0.0;  // mu * tau^{2T}
  double tau_prime = 0.0;
  double delta = 0.0;            // Cheeger parameter actually used
  int delta_halvings = 0;
  double cheeger_ratio = 0.0;
  double cheeger_bound = 0.0;
  std::vector<int> set;  // S
  double set_adjacency = 0.0;  // 1_S^T A 1_S
  double set_volume = 0.0;     // 1_S^T D 1_S
  double eta = 0.0;
  double volume_fraction = 0.0;
  bool eta_below_reference = false;  // eta < tau^{2(c+2)} / 100
};

struct NibbleOptions {
  bool proper_subset = false;
  int max_delta_halvings = 3;
};

/// Extracts a set S with 1_S^T A 1_S >= eta 1_S^T D 1_S, eta > 0, from a
/// graph with rank_tau >= k, following the walk from a good starting vertex.
inline NibbleCertificate nibble(const Graph& g, double tau, int k, double c, const NibbleOptions& opts = {}) {
  if (!(tau > 0.0 && tau < 1.0)) throw Error("nibble: tau must lie in (0, 1)");
  if (!(c > 0.0)) throw Error("nibble: c must be positive");
  const Spectrum s = graph_spectrum(g);
  const auto start = good_starting_vertex(g, s, tau, k);
  const int n = g.num_vertices();
  const Matrix N = normalized_adjacency(g);

  NibbleCertificate cert;
  cert.parent.resize(n);
  std::iota(cert.parent.begin(), cert.parent.end(), 0);
  cert.start_vertex = start.vertex;
  cert.mu = start.mu;
  cert.start_ratio = start.ratio;
  cert.rank_threshold = k;
  const double mu = std::min(start.mu, 1.0);
  cert.horizon = std::max(1, static_cast<int>(std::floor(std::log(1.0 / mu) / (c * std::log(1.0 / tau)))));

  // powers[s] = N^s e_i for s = 0..T.
  std::vector<std::vector<double>> powers(1, std::vector<double>(n, 0.0));
  powers[0][start.vertex] = 1.0;
  for (int step = 1; step <= cert.horizon; ++step) powers.push_back(N * powers.back());
  std::vector<double> mass(cert.horizon + 1);
  for (int step = 0; step <= cert.horizon; ++step) mass[step] = dot(powers[step], powers[step]);

  cert.telescoping_product = 1.0;
  double best = -1.0;
  for (int step = 1; step <= cert.horizon; ++step) {
    const double qt = mass[step] / mass[step - 1];
    cert.quotients.push_back(qt);
    cert.telescoping_product *= qt;
    if (qt > best) {
      best = qt;
      cert.step = step;
    }
  }
  cert.walk_mass = mass[cert.horizon];
  cert.telescoping_floor = start.mu * std::pow(tau, 2.0 * cert.horizon);

  const auto& z = powers[cert.step - 1];
  const auto& nz = powers[cert.step];
  std::vector<double> u(n);
  double udu = 0.0;
  for (int i = 0; i < n; ++i) {
    u[i] = std::max(0.0, z[i] + 0.5 * nz[i]) / std::sqrt(g.degree(i));
    udu += g.degree(i) * u[i] * u[i];
  }
  cert.tau_prime = std::pow(tau, 2.0 + c);
  double delta = cert.tau_prime / 9.0 * std::sqrt(udu / g.volume());

  CheegerResult round;
  for (int attempt = 0;; ++attempt) {
    try {
      round = sparse_cheeger_round(g, u, delta, {opts.proper_subset});
      break;
    } catch (const Error& e) {
      if (attempt >= opts.max_delta_halvings) {
        std::ostringstream os;
        os << "nibble failed at start vertex " << start.vertex << " (mu=" << start.mu << ", T=" << cert.horizon
           << ", t=" << cert.step << ", delta=" << delta << "): " << e.what();
        throw Error(os.str());
      }
      delta *= 0.5;
      ++cert.delta_halvings;
    }
  }
  cert.delta = delta;
  cert.cheeger_ratio = round.ratio;
  cert.cheeger_bound = round.bound;
  cert.set = round.set;
  const auto [sa, sd] = detail::indicator_forms(g, cert.set);
  cert.set_adjacency = sa;
  cert.set_volume = sd;
  cert.eta = sa / sd;
  cert.volume_fraction = sd / g.volume();
  if (!(cert.eta > 0.0)) {
    throw Error("nibble: level set at start vertex " + std::to_string(start.vertex) + " spans no edge");
  }
  cert.eta_below_reference = cert.eta < std::pow(tau, 2.0 * (c + 2.0)) * 1e-2;
  return cert;
}

// ---------------------------------------------------------------------------
// Decomposition

struct Partition {
  std::vector<std::vector<int>> components;  // sorted, ordered by smallest vertex
  std::vector<int> ranks;                    // rank_tau of each induced component
  std::vector<double> internal_weights;      // fraction of total weight inside each
  double cut_weight_fraction = 0.0;
  double max_expansion = 0.0;  // max_i w(G_i, rest) / vol(G_i)
  std::vector<NibbleCertificate> certificates;  // vertex ids global
};

class PartitionError : public Error {
 public:
  PartitionError(const std::string& what, Partition partial) : Error(what), partial_(std::move(partial)) {}
  const Partition& partial() const { return partial_; }

 private:
  Partition partial_;
};

namespace detail {

inline void finalize_partition(const Graph& g, Partition& p) {
  std::vector<std::size_t> order(p.components.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return p.components[a].front() < p.components[b].front(); });
  Partition sorted;
  for (std::size_t k : order) {
    sorted.components.push_back(p.components[k]);
    sorted.ranks.push_back(p.ranks[k]);
  }
  sorted.certificates = std::move(p.certificates);
  std::vector<int> label(g.num_vertices(), -1);
  for (std::size_t k = 0; k < sorted.components.size(); ++k)
    for (int v : sorted.components[k]) label[v] = static_cast<int>(k);
  const double total = g.total_weight();
  sorted.internal_weights.assign(sorted.components.size(), 0.0);
  std::vector<double> boundary(sorted.components.size(), 0.0);
  double cut = 0.0;
  for (const Edge& e : g.edges()) {
    if (label[e.u] < 0 || label[e.v] < 0) continue;
    if (label[e.u] == label[e.v]) {
      sorted.internal_weights[label[e.u]] += e.w / total;
    } else {
      cut += e.w;
      boundary[label[e.u]] += e.w;
      boundary[label[e.v]] += e.w;
    }
  }
  sorted.cut_weight_fraction = cut / total;
  for (std::size_t k = 0; k < sorted.components.size(); ++k) {
    double vol = 0.0;
    for (int v : sorted.components[k]) vol += g.degree(v);
    sorted.max_expansion = std::max(sorted.max_expansion, boundary[k] / vol);
  }
  p = std::move(sorted);
}

// Connected components of g restricted to `vertices`, in global ids.
inline std::vector<std::vector<int>> split_components(const Graph& g, const std::vector<int>& vertices) {
  auto local = connected_components(static_cast<int>(vertices.size()), induced_edges(g, vertices));
  for (auto& comp : local) {
    for (int& v : comp) v = vertices[v];
    std::sort(comp.begin(), comp.end());
  }
  return local;
}

}  // namespace detail

/// Nibbles every component with rank_tau > k until all components have
/// rank_tau <= k. Each nibble removes a proper, nonempty subset, and both
/// sides are re-split into connected components.
inline Partition decompose(const Graph& g, double tau, int k, double c) {
  if (k < 1) throw Error("decompose: rank target must be at least 1");
  if (!(tau > 0.0 && tau < 1.0)) throw Error("decompose: tau must lie in (0, 1)");
  Partition out;
  std::deque<std::vector<int>> queue;
  for (auto& comp : connected_components(g)) queue.push_back(std::move(comp));
  while (!queue.empty()) {
    std::vector<int> comp = std::move(queue.front());
    queue.pop_front();
    if (comp.size() == 1) {
      out.components.push_back(comp);
      out.ranks.push_back(0);
      continue;
    }
    const Graph h = induced_subgraph(g, comp);
    const int rank = threshold_rank(h, tau);
    if (rank <= k) {
      out.components.push_back(comp);
      out.ranks.push_back(rank);
      continue;
    }
    NibbleCertificate cert;
    try {
      cert = nibble(h, tau, rank, c, {.proper_subset = true});
    } catch (const Error& e) {
      out.components.push_back(comp);
      out.ranks.push_back(rank);
      for (auto& rest : queue) {
        out.components.push_back(rest);
        out.ranks.push_back(-1);
      }
      detail::finalize_partition(g, out);
      throw PartitionError(std::string("decompose: ") + e.what(), std::move(out));
    }
    cert.parent = comp;
    cert.start_vertex = comp[cert.start_vertex];
    std::vector<bool> in_s(comp.size(), false);
    for (int& v : cert.set) {
      in_s[v] = true;
      v = comp[v];
    }
    cert.volume_fraction = cert.set_volume / g.volume();
    std::vector<int> rest;
    for (std::size_t idx = 0; idx < comp.size(); ++idx)
      if (!in_s[idx]) rest.push_back(comp[idx]);
    for (auto& part : detail::split_components(g, cert.set)) queue.push_back(std::move(part));
    for (auto& part : detail::split_components(g, rest)) queue.push_back(std::move(part));
    out.certificates.push_back(std::move(cert));
  }
  detail::finalize_partition(g, out);
  return out;
}

/// "component <id>: vertices=<list> rank_tau=<r> internal_weight=<w>" lines,
/// "cut_fraction=<f>", "max_expansion=<e>", then one line per certificate.
inline std::string format_partition(const Partition& p) {
  std::ostringstream os;
  os.precision(12);
  for (std::size_t k = 0; k < p.components.size(); ++k) {
    os << "component " << k << ": vertices=";
    for (std::size_t j = 0; j < p.components[k].size(); ++j) os << (j ? "," : "") << p.components[k][j];
    os << " rank_tau=" << p.ranks[k] << " internal_weight=" << p.internal_weights[k] << '\n';
  }
  os << "cut_fraction=" << p.cut_weight_fraction << '\n';
  os << "max_expansion=" << p.max_expansion << '\n';
  for (std::size_t k = 0; k < p.certificates.size(); ++k) {
    const auto& c = p.certificates[k];
    os << "nibble " << k << ": start=" << c.start_vertex << " mu=" << c.mu << " k=" << c.rank_threshold
       << " T=" << c.horizon << " t=" << c.step << " delta=" << c.delta << " eta=" << c.eta
       << " volume_fraction=" << c.volume_fraction << " set=";
    for (std::size_t j = 0; j < c.set.size(); ++j) os << (j ? "," : "") << c.set[j];
    if (c.eta_below_reference) os << " warning=eta-below-reference";
    os << '\n';
  }
  return os.str();
}

}  // namespace sacut

#endif  // SACUT_PARTITION_HPP
