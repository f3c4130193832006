#ifndef SACUT_GENERATORS_HPP
#define SACUT_GENERATORS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sacut/common.hpp"
#include "sacut/csp.hpp"
#include "sacut/graph.hpp"

namespace sacut {

// Seeded instance generators. Every generator is a pure function of its
// arguments; graphs that must be connected are resampled from derived seeds.

inline constexpr int kGeneratorAttempts = 1000;

namespace detail {

inline void shuffle(std::vector<int>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform_index(rng, i)]);
}

inline bool is_connected(int n, const std::vector<Edge>& edges) {
  return connected_components(n, edges).size() == 1;
}

template <class Sample>
std::vector<Edge> connected_sample(const char* kind, int n, std::uint64_t seed, Sample&& sample) {
  for (int attempt = 0; attempt < kGeneratorAttempts; ++attempt) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(attempt)));
    auto edges = sample(rng);
    if (n == 1 || (!edges.empty() && is_connected(n, edges))) return edges;
  }
  throw Error(std::string(kind) + ": no connected sample in " + std::to_string(kGeneratorAttempts) +
              " attempts; raise p");
}

inline void require_probability(const char* kind, const char* name, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(std::string(kind) + ": " + name + " must lie in [0, 1]");
}

}  // namespace detail

inline Graph clique(int n) {
  if (n < 2) throw Error("clique: need n >= 2");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.push_back({i, j, 1.0});
  return Graph(n, edges);
}

/// Connected G(n, p) with unit weights.
inline Graph random_gnp(int n, double p, std::uint64_t seed) {
  if (n < 2) throw Error("random-gnp: need n >= 2");
  detail::require_probability("random-gnp", "p", p);
  return Graph(n, detail::connected_sample("random-gnp", n, seed, [&](Rng& rng) {
                 std::vector<Edge> edges;
                 for (int i = 0; i < n; ++i)
                   for (int j = i + 1; j < n; ++j)
                     if (uniform01(rng) < p) edges.push_back({i, j, 1.0});
                 return edges;
               }));
}

struct PlantedCut {
  Graph graph;
  Assignment side;  // 0 or 1; sizes differ by at most one
};

/// Connected graph on a random balanced bipartition: crossing pairs appear with
/// probability p, same-side pairs with probability p * noise.
inline PlantedCut planted_cut(int n, double p, double noise, std::uint64_t seed) {
  if (n < 2) throw Error("planted-cut: need n >= 2");
  detail::require_probability("planted-cut", "p", p);
  detail::require_probability("planted-cut", "noise", noise);
  Assignment side(n, 0);
  {
    Rng rng(derive_seed(seed, 0xc0ffee));
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    detail::shuffle(order, rng);
    for (int k = n / 2; k < n; ++k) side[order[k]] = 1;
  }
  auto edges = detail::connected_sample("planted-cut", n, seed, [&](Rng& rng) {
    std::vector<Edge> out;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (uniform01(rng) < (side[i] != side[j] ? p : p * noise)) out.push_back({i, j, 1.0});
    return out;
  });
  return {Graph(n, edges), side};
}

inline std::string to_assignment_text(const Assignment& x) {
  std::ostringstream os;
  for (std::size_t i = 0; i < x.size(); ++i) os << i << ' ' << x[i] << '\n';
  return os.str();
}

struct PlantedUniqueGames {
  CspInstance instance;
  Assignment planted;
  std::size_t corrupted = 0;  // edges whose shift disagrees with `planted`
};

/// Max-2-Lin mod q on a connected G(n, p) whose shifts agree with a random
/// planted labeling, except for exactly floor(noise * m) random edges that get
/// a different shift.
inline PlantedUniqueGames planted_ug_shift(int n, int q, double p, double noise, std::uint64_t seed) {
  if (n < 2) throw Error("planted-ug-shift: need n >= 2");
  if (q < 2) throw Error("planted-ug-shift: need q >= 2");
  detail::require_probability("planted-ug-shift", "p", p);
  detail::require_probability("planted-ug-shift", "noise", noise);
  Graph g(n, detail::connected_sample("planted-ug-shift", n, seed, [&](Rng& rng) {
            std::vector<Edge> edges;
            for (int i = 0; i < n; ++i)
              for (int j = i + 1; j < n; ++j)
                if (uniform01(rng) < p) edges.push_back({i, j, 1.0});
            return edges;
          }));
  Rng rng(derive_seed(seed, 0x5eed));
  Assignment planted(n);
  for (int& a : planted) a = static_cast<int>(uniform_index(rng, q));
  std::vector<int> shifts;
  for (const Edge& e : g.edges()) shifts.push_back(((planted[e.v] - planted[e.u]) % q + q) % q);
  const std::size_t m = shifts.size();
  const auto corrupt = static_cast<std::size_t>(std::floor(noise * static_cast<double>(m)));
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  detail::shuffle(order, rng);
  for (std::size_t k = 0; k < corrupt; ++k) {
    const int e = order[k];
    shifts[e] = (shifts[e] + 1 + static_cast<int>(uniform_index(rng, q - 1))) % q;
  }
  return {make_max_2lin(g, q, shifts), planted, corrupt};
}

/// Connected G(n, p) with an independent uniformly random bijection per edge.
inline CspInstance random_unique_games(int n, int q, double p, std::uint64_t seed) {
  if (n < 2) throw Error("random-ug: need n >= 2");
  if (q < 2) throw Error("random-ug: need q >= 2");
  detail::require_probability("random-ug", "p", p);
  Graph g(n, detail::connected_sample("random-ug", n, seed, [&](Rng& rng) {
            std::vector<Edge> edges;
            for (int i = 0; i < n; ++i)
              for (int j = i + 1; j < n; ++j)
                if (uniform01(rng) < p) edges.push_back({i, j, 1.0});
            return edges;
          }));
  Rng rng(derive_seed(seed, 0xb17));
  std::vector<std::vector<int>> sigmas;
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    std::vector<int> s(q);
    std::iota(s.begin(), s.end(), 0);
    detail::shuffle(s, rng);
    sigmas.push_back(std::move(s));
  }
  return make_unique_games(g, q, sigmas);
}

/// `blocks` disjoint connected random `degree`-regular simple graphs on
/// `size` vertices each (cliques when degree = size - 1), plus `bridges`
/// distinct random edges between different blocks. Block b holds vertices
/// b*size .. (b+1)*size - 1.
inline Graph expander_union(int blocks, int size, int degree, int bridges, std::uint64_t seed) {
  if (blocks < 1) throw Error("expander-union: need at least one block");
  if (size < 2) throw Error("expander-union: block size must be at least 2");
  if (degree < 1 || degree >= size) throw Error("expander-union: need 1 <= degree < block size");
  if ((size * degree) % 2 != 0) throw Error("expander-union: size * degree must be even");
  if (bridges < 0) throw Error("expander-union: bridges must be nonnegative");
  const long max_bridges = static_cast<long>(blocks) * (blocks - 1) / 2 * size * size;
  if (bridges > max_bridges) throw Error("expander-union: too many bridges");

  std::vector<Edge> edges;
  for (int b = 0; b < blocks; ++b) {
    const int base = b * size;
    std::vector<Edge> block;
    if (degree == size - 1) {
      for (int i = 0; i < size; ++i)
        for (int j = i + 1; j < size; ++j) block.push_back({i, j, 1.0});
    } else {
      // Pairing model, rejecting loops, repeated pairs and disconnected draws.
      block = detail::connected_sample("expander-union", size, derive_seed(seed, b + 1), [&](Rng& rng) {
        std::vector<int> stubs;
        for (int i = 0; i < size; ++i)
          for (int d = 0; d < degree; ++d) stubs.push_back(i);
        detail::shuffle(stubs, rng);
        std::set<std::pair<int, int>> seen;
        std::vector<Edge> out;
        for (std::size_t s = 0; s < stubs.size(); s += 2) {
          const int u = std::min(stubs[s], stubs[s + 1]);
          const int v = std::max(stubs[s], stubs[s + 1]);
          if (u == v || !seen.insert({u, v}).second) return std::vector<Edge>{};
          out.push_back({u, v, 1.0});
        }
        return out;
      });
    }
    for (Edge e : block) edges.push_back({e.u + base, e.v + base, 1.0});
  }
  Rng rng(derive_seed(seed, 0));
  std::set<std::pair<int, int>> added;
  const int n = blocks * size;
  while (static_cast<int>(added.size()) < bridges) {
    const int u = static_cast<int>(uniform_index(rng, n));
    const int v = static_cast<int>(uniform_index(rng, n));
    if (u / size == v / size) continue;
    if (added.insert({std::min(u, v), std::max(u, v)}).second) edges.push_back({std::min(u, v), std::max(u, v), 1.0});
  }
  return Graph(n, edges);
}

}  // namespace sacut

#endif  // SACUT_GENERATORS_HPP
