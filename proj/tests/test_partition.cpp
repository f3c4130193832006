#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "sacut/generators.hpp"
#include "sacut/partition.hpp"

using namespace sacut;

namespace {

// Oracle: e_i^T N^{2T} e_i by explicit matrix powers.
double walk_mass_by_powers(const Graph& g, int vertex, int horizon) {
  const Matrix n = normalized_adjacency(g);
  Matrix m = Matrix::identity(g.num_vertices());
  for (int k = 0; k < 2 * horizon; ++k) m = m * n;
  return m(vertex, vertex);
}

// 1_S^T A 1_S and 1_S^T D 1_S summed over ordered pairs.
std::pair<double, double> set_forms(const Graph& g, const std::vector<int>& set) {
  double a = 0.0, d = 0.0;
  for (int i : set) {
    d += g.degree(i);
    for (int j : set) a += g.weight(i, j);
  }
  return {a, d};
}

void check_certificate(const Graph& g, const NibbleCertificate& c, double tau) {
  ASSERT_FALSE(c.parent.empty());
  const Graph h = induced_subgraph(g, c.parent);
  std::vector<int> local;
  for (int v : c.set) {
    const auto it = std::find(c.parent.begin(), c.parent.end(), v);
    ASSERT_NE(it, c.parent.end());
    local.push_back(static_cast<int>(it - c.parent.begin()));
  }
  ASSERT_FALSE(local.empty());
  EXPECT_LT(local.size(), c.parent.size());
  const auto [a, d] = set_forms(h, local);
  EXPECT_NEAR(a, c.set_adjacency, 1e-9 * std::max(1.0, a));
  EXPECT_NEAR(d, c.set_volume, 1e-9 * std::max(1.0, d));
  EXPECT_GT(c.eta, 0.0);
  EXPECT_GE(a, c.eta * d * (1.0 - 1e-12));

  double product = 1.0;
  for (double qt : c.quotients) product *= qt;
  EXPECT_NEAR(product, c.telescoping_product, 1e-12 * product);
  const auto start = std::find(c.parent.begin(), c.parent.end(), c.start_vertex) - c.parent.begin();
  const double mass = walk_mass_by_powers(h, static_cast<int>(start), c.horizon);
  EXPECT_NEAR(c.walk_mass, mass, 1e-9 * mass);
  EXPECT_NEAR(c.telescoping_product, c.walk_mass, 1e-9 * c.walk_mass);
  EXPECT_GE(c.walk_mass, c.telescoping_floor * (1.0 - 1e-9));
  EXPECT_NEAR(c.telescoping_floor, c.mu * std::pow(tau, 2.0 * c.horizon), 1e-15);
}

}  // namespace

TEST(StartingVertex, MeetsTheAveragingBound) {
  const Graph g = expander_union(3, 8, 7, 3, 5);
  const Spectrum s = graph_spectrum(g);
  const int k = threshold_rank(s, 0.2);
  ASSERT_GE(k, 3);
  const auto sv = good_starting_vertex(g, s, 0.2, k);
  EXPECT_GE(sv.ratio, k - 1e-6);
  // Recompute ||Pi e_i||^2 from the eigenvectors directly.
  double mass = 0.0;
  for (int c = 0; c < k; ++c) mass += s.eigenvectors(sv.vertex, c) * s.eigenvectors(sv.vertex, c);
  EXPECT_NEAR(sv.mu, mass, 1e-12);
  EXPECT_THROW(good_starting_vertex(g, s, 0.2, k + 1), Error);
}

TEST(Cheeger, LevelSetRatioIsRecomputable) {
  const Graph g = expander_union(2, 6, 5, 1, 2);
  std::vector<double> v(12, 0.0);
  for (int i = 0; i < 6; ++i) v[i] = 1.0 - 0.01 * i;
  v[7] = 0.05;
  const auto r = sparse_cheeger_round(g, v, 0.5);
  ASSERT_FALSE(r.set.empty());
  const auto [a, d] = set_forms(g, r.set);
  EXPECT_NEAR(r.ratio, a / d, 1e-12);
  EXPECT_LE(d, r.volume_cap * (1.0 + 1e-12));
  EXPECT_GE(r.ratio, r.bound - 1e-9);
}

TEST(Cheeger, RejectsDegenerateVectors) {
  const Graph g = clique(4);
  EXPECT_THROW(sparse_cheeger_round(g, {0, 0, 0, 0}, 0.5), Error);
  EXPECT_THROW(sparse_cheeger_round(g, {1, -1, 0, 0}, 0.5), Error);
  EXPECT_THROW(sparse_cheeger_round(g, {1, 0, 0, 0}, 0.5), Error);  // v^T A v = 0
  EXPECT_THROW(sparse_cheeger_round(g, {1, 1, 1, 1}, 0.0), Error);
}

TEST(Nibble, CertificateOnBridgedCliques) {
  const Graph g = expander_union(3, 8, 7, 2, 9);
  const auto c = nibble(g, 0.2, threshold_rank(g, 0.2), 24.0, {.proper_subset = true});
  check_certificate(g, c, 0.2);
  EXPECT_GE(c.step, 1);
  EXPECT_LE(c.step, c.horizon);
  EXPECT_EQ(c.quotients.size(), static_cast<std::size_t>(c.horizon));
}

TEST(Decompose, DisjointCliquesSplitIntoBlocks) {
  const Graph g = expander_union(3, 8, 7, 0, 1);
  const auto p = decompose(g, 0.2, 1, 24.0);
  ASSERT_EQ(p.components.size(), 3u);
  for (int b = 0; b < 3; ++b) {
    std::vector<int> expected;
    for (int i = 0; i < 8; ++i) expected.push_back(8 * b + i);
    EXPECT_EQ(p.components[b], expected);
    EXPECT_EQ(p.ranks[b], 1);
    EXPECT_NEAR(p.internal_weights[b], 1.0 / 3.0, 1e-12);
  }
  EXPECT_NEAR(p.cut_weight_fraction, 0.0, 1e-15);
  EXPECT_TRUE(p.certificates.empty());
}

TEST(Decompose, BridgedBlocksReachTheRankTarget) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Graph g = expander_union(3, 10, 4, 3, seed);
    const double tau = 0.2;
    const auto p = decompose(g, tau, 1, 24.0);
    // Components partition the vertex set.
    std::set<int> seen;
    for (const auto& comp : p.components)
      for (int v : comp) EXPECT_TRUE(seen.insert(v).second);
    EXPECT_EQ(seen.size(), 30u);
    for (std::size_t k = 0; k < p.components.size(); ++k) {
      if (p.components[k].size() == 1) continue;
      const int rank = threshold_rank(graph_spectrum(induced_subgraph(g, p.components[k])), tau);
      EXPECT_EQ(rank, p.ranks[k]);
      EXPECT_LE(rank, 1);
    }
    for (const auto& c : p.certificates) check_certificate(g, c, tau);
    double internal = p.cut_weight_fraction;
    for (double w : p.internal_weights) internal += w;
    EXPECT_NEAR(internal, 1.0, 1e-12);
  }
}

TEST(Decompose, RejectsBadParameters) {
  const Graph g = clique(4);
  EXPECT_THROW(decompose(g, 0.2, 0, 24.0), Error);
  EXPECT_THROW(decompose(g, 1.0, 1, 24.0), Error);
  EXPECT_THROW(nibble(g, 0.2, 1, 0.0), Error);
}

TEST(Decompose, FormatListsComponentsAndCertificates) {
  const auto p = decompose(expander_union(3, 8, 7, 2, 9), 0.2, 1, 24.0);
  const auto text = format_partition(p);
  EXPECT_NE(text.find("component 0: vertices="), std::string::npos);
  EXPECT_NE(text.find("cut_fraction="), std::string::npos);
  if (!p.certificates.empty()) {
    EXPECT_NE(text.find("nibble 0: start="), std::string::npos);
  }
}
