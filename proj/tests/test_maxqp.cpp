#include <gtest/gtest.h>

#include <cstdint>
#include <numeric>

#include "sacut/maxqp.hpp"

using namespace sacut;

namespace {

std::int64_t choose(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Oracle: x^S = (-1)^{#minus signs in S}; count balanced vectors by how many
// of the k/2 minus signs land in S.
Rational closed_form_moment(int k, int t) {
  std::int64_t num = 0;
  for (int j = 0; j <= t; ++j) num += (j % 2 ? -1 : 1) * choose(t, j) * choose(k - t, k / 2 - j);
  return Rational::make(num, choose(k, k / 2));
}

}  // namespace

TEST(Rational, NormalizesSignAndGcd) {
  const auto r = Rational::make(6, -4);
  EXPECT_EQ(r.num, -3);
  EXPECT_EQ(r.den, 2);
  EXPECT_EQ(r.str(), "-3/2");
  EXPECT_EQ(Rational::make(8, 4).str(), "2");
  EXPECT_TRUE(Rational::make(2, 6) == Rational::make(1, 3));
}

TEST(BalancedMoments, MatchClosedForm) {
  for (int k = 2; k <= 16; k += 2) {
    const auto m = balanced_moments(k);
    ASSERT_EQ(m.c.size(), static_cast<std::size_t>(k + 1));
    for (int t = 0; t <= k; ++t) EXPECT_TRUE(m.c[t] == closed_form_moment(k, t)) << "k=" << k << " t=" << t;
    EXPECT_TRUE(m.c[2] == Rational::make(-1, k - 1));
    for (int t = 1; t <= k; t += 2) EXPECT_EQ(m.c[t].num, 0);
  }
}

TEST(BalancedMoments, RejectOddOrOutOfRangeK) {
  EXPECT_THROW(balanced_moments(3), Error);
  EXPECT_THROW(balanced_moments(0), Error);
  EXPECT_THROW(balanced_moments(22), Error);
}

TEST(BalancedMoments, AreSymmetricAndLocallyPsd) {
  for (int k = 2; k <= 12; k += 2) {
    const auto m = balanced_moments(k);
    EXPECT_TRUE(moments_are_symmetric(m));
    for (int n = k; n <= 12; ++n) {
      const auto loc = verify_k_locality(n, m);
      EXPECT_TRUE(loc.passed) << "n=" << n << " k=" << k;
      EXPECT_EQ(loc.subsets_checked, static_cast<std::size_t>(choose(n, k)));
      EXPECT_GE(loc.min_eigenvalue, -1e-9);
    }
  }
}

TEST(NegativeClique, BruteForceMatchesBalancedCount) {
  // -sum_{i != j} x_i x_j = n - (sum x)^2.
  for (int n = 2; n <= 14; ++n) EXPECT_EQ(brute_force_negative_clique(n), n % 2 == 0 ? n : n - 1);
}

TEST(Report, KnownGaps) {
  const auto r64 = maxqp_report(6, 4);
  EXPECT_TRUE(r64.sa_value == Rational::make(10, 1));
  EXPECT_EQ(r64.bruteforce_max, 6);
  EXPECT_NEAR(r64.ratio, 10.0 / 6.0, 1e-15);
  EXPECT_TRUE(r64.symmetric);
  EXPECT_TRUE(r64.locality.passed);

  const auto r88 = maxqp_report(8, 8);
  EXPECT_TRUE(r88.sa_value == Rational::make(8, 1));
  EXPECT_NEAR(r88.ratio, 1.0, 1e-15);

  for (int n = 2; n <= 14; n += 3)
    for (int k = 2; k <= n; k += 2) {
      const auto r = maxqp_report(n, k);
      EXPECT_TRUE(r.sa_value == Rational::make(static_cast<std::int64_t>(n) * (n - 1), k - 1));
    }
  EXPECT_THROW(maxqp_report(4, 6), Error);
  EXPECT_THROW(maxqp_report(21, 4), Error);
  EXPECT_THROW(maxqp_report(8, 5), Error);
  EXPECT_NE(format_maxqp(r64).find("10"), std::string::npos);
}

TEST(Extraction, RecoversTheScaledBound) {
  for (int n = 4; n <= 12; n += 2)
    for (int k = 2; k <= n; k += 2) {
      const auto m = balanced_moments(k);
      // sum_ij A_ij E_ij = -n(n-1) c_2 = n(n-1)/(k-1) for the negative clique.
      const Matrix A = negative_clique(n);
      const Matrix E = second_moments(n, m);
      const auto r = extract_assignment(A, E, k, 64, 7);
      ASSERT_TRUE(r.asserted);
      EXPECT_NEAR(r.moment_objective, static_cast<double>(n) * (n - 1) / (k - 1), 1e-9);
      EXPECT_NEAR(r.bound, k / (4.0 * n) * r.moment_objective, 1e-12);
      EXPECT_TRUE(r.holds) << "n=" << n << " k=" << k;
      EXPECT_GE(r.achieved, r.bound - 1e-9);
      // achieved is x^T A x for the reported signs.
      double v = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) v += A(i, j) * r.x[i] * r.x[j];
      EXPECT_NEAR(r.achieved, v, 1e-12);
    }
}

TEST(Extraction, NonPositiveObjectiveIsNotAsserted) {
  Matrix A = negative_clique(4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) A(i, j) = -A(i, j);
  const auto r = extract_assignment(A, second_moments(4, balanced_moments(4)), 4, 8, 1);
  EXPECT_FALSE(r.asserted);
  EXPECT_TRUE(r.holds);
}
