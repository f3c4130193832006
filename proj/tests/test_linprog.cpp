#include <gtest/gtest.h>

#include <cmath>
#include <optional>
#include <vector>

#include "sacut/common.hpp"
#include "sacut/linprog.hpp"

using namespace sacut;

namespace {

LpProblem dense_problem(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                        const std::vector<double>& c) {
  LpProblem p;
  p.num_vars = c.size();
  p.objective = c;
  for (std::size_t r = 0; r < a.size(); ++r) {
    LinearEquality row;
    for (std::size_t j = 0; j < a[r].size(); ++j)
      if (a[r][j] != 0.0) row.terms.push_back({j, a[r][j]});
    row.rhs = b[r];
    p.equalities.push_back(row);
  }
  return p;
}

// Solves the square system by Gaussian elimination with partial pivoting;
// nullopt when singular.
std::optional<std::vector<double>> gauss(std::vector<std::vector<double>> m, std::vector<double> rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    if (std::abs(m[piv][col]) < 1e-10) return std::nullopt;
    std::swap(m[piv], m[col]);
    std::swap(rhs[piv], rhs[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = m[r][col] / m[col][col];
      for (std::size_t k = col; k < n; ++k) m[r][k] -= f * m[col][k];
      rhs[r] -= f * rhs[col];
    }
  }
  for (std::size_t i = 0; i < n; ++i) rhs[i] /= m[i][i];
  return rhs;
}

// Oracle: the optimum of a bounded feasible LP with full row rank is attained
// at a basic feasible solution, so enumerating all bases finds it.
std::optional<double> best_basic_solution(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                                          const std::vector<double>& c) {
  const std::size_t m = a.size();
  const std::size_t n = c.size();
  std::optional<double> best;
  std::vector<std::size_t> pick(m);
  for (std::size_t i = 0; i < m; ++i) pick[i] = i;
  while (true) {
    std::vector<std::vector<double>> bm(m, std::vector<double>(m));
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t k = 0; k < m; ++k) bm[r][k] = a[r][pick[k]];
    if (auto xb = gauss(bm, b)) {
      bool feasible = true;
      double val = 0.0;
      for (std::size_t k = 0; k < m; ++k) {
        if ((*xb)[k] < -1e-9) feasible = false;
        val += c[pick[k]] * (*xb)[k];
      }
      if (feasible && (!best || val > *best)) best = val;
    }
    // Next m-combination of n columns.
    std::size_t i = m;
    while (i > 0 && pick[i - 1] == n - m + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t k = i; k < m; ++k) pick[k] = pick[k - 1] + 1;
  }
  return best;
}

}  // namespace

TEST(Simplex, SolvesSmallHandLp) {
  // max 3x + 2y  s.t.  x + y + s1 = 4,  x + 3y + s2 = 6.  Optimum x = 4, value 12.
  const auto p = dense_problem({{1, 1, 1, 0}, {1, 3, 0, 1}}, {4, 6}, {3, 2, 0, 0});
  const auto sol = solve(p);
  ASSERT_EQ(sol.status, LpStatus::Optimal);
  EXPECT_NEAR(sol.objective_value, 12.0, 1e-9);
  EXPECT_NEAR(sol.values[0], 4.0, 1e-9);
  EXPECT_LT(max_row_residual(p, sol.values), 1e-9);
}

TEST(Simplex, HandlesNegativeRightHandSides) {
  // -x - y = -2 is x + y = 2; max x - y gives 2.
  const auto p = dense_problem({{-1, -1}}, {-2}, {1, -1});
  const auto sol = solve(p);
  ASSERT_EQ(sol.status, LpStatus::Optimal);
  EXPECT_NEAR(sol.objective_value, 2.0, 1e-9);
}

TEST(Simplex, RedundantRowsAreTolerated) {
  const auto p = dense_problem({{1, 1, 0}, {2, 2, 0}, {0, 1, 1}}, {1, 2, 1}, {1, 2, 0});
  const auto sol = solve(p);
  ASSERT_EQ(sol.status, LpStatus::Optimal);
  EXPECT_NEAR(sol.objective_value, 2.0, 1e-9);
  EXPECT_LT(max_row_residual(p, sol.values), 1e-9);
}

TEST(Simplex, ReportsInfeasibilityWithFarkasCertificate) {
  // x + y = 1 and x + y = 3 cannot both hold.
  const auto p = dense_problem({{1, 1}, {1, 1}}, {1, 3}, {1, 0});
  const auto sol = solve(p);
  ASSERT_EQ(sol.status, LpStatus::Infeasible);
  EXPECT_TRUE(is_farkas_certificate(p, sol.farkas));

  // x - y = 1 and y - x = 1.
  const auto q = dense_problem({{1, -1}, {-1, 1}}, {1, 1}, {0, 0});
  const auto sq = solve(q);
  ASSERT_EQ(sq.status, LpStatus::Infeasible);
  EXPECT_TRUE(is_farkas_certificate(q, sq.farkas));
}

TEST(Simplex, ReportsUnboundedness) {
  const auto p = dense_problem({{1, -1}}, {1}, {0, 1});
  EXPECT_EQ(solve(p).status, LpStatus::Unbounded);
  LpProblem empty;
  empty.num_vars = 2;
  empty.objective = {0.0, 1.0};
  EXPECT_EQ(solve(empty).status, LpStatus::Unbounded);
}

TEST(Simplex, TerminatesOnBealeCyclingExample) {
  // Dantzig's rule with lowest-index ties cycles here without anti-cycling.
  const std::vector<std::vector<double>> a = {
      {1, 0, 0, 0.25, -8, -1, 9},
      {0, 1, 0, 0.5, -12, -0.5, 3},
      {0, 0, 1, 0, 0, 1, 0},
  };
  const std::vector<double> b = {0, 0, 1};
  const std::vector<double> c = {0, 0, 0, 0.75, -20, 0.5, -6};
  const auto sol = solve(dense_problem(a, b, c));
  ASSERT_EQ(sol.status, LpStatus::Optimal);
  EXPECT_NEAR(sol.objective_value, 1.25, 1e-9);
  EXPECT_NEAR(sol.objective_value, *best_basic_solution(a, b, c), 1e-9);
}

TEST(Simplex, RejectsMalformedProblems) {
  LpProblem p = dense_problem({{1, 1}}, {1}, {1, 1});
  p.equalities[0].terms.push_back({5, 1.0});
  EXPECT_THROW(solve(p), Error);
  LpProblem q = dense_problem({{1, 1}}, {1}, {1, 1});
  q.equalities[0].rhs = std::nan("");
  EXPECT_THROW(solve(q), Error);
}

TEST(Simplex, WarmStartMatchesColdStartAndBadHintsFallBack) {
  // max x + 2y s.t. x + y + s = 1; the slack column is a feasible basis.
  auto p = dense_problem({{1, 1, 1}}, {1}, {1, 2, 0});
  const auto cold = solve(p);
  p.initial_basis = {2};
  const auto warm = solve(p);
  ASSERT_EQ(warm.status, LpStatus::Optimal);
  EXPECT_NEAR(warm.objective_value, cold.objective_value, 1e-12);
  EXPECT_NEAR(warm.objective_value, 2.0, 1e-12);
  // A singular or infeasible hint must not change the answer.
  auto q = dense_problem({{1, -1, 0}, {0, 1, 1}}, {-1, 3}, {1, 0, 0});
  q.initial_basis = {0, 0};
  EXPECT_NEAR(solve(q).objective_value, 2.0, 1e-9);
  q.initial_basis = {0, 2};  // x = -1 is infeasible
  EXPECT_NEAR(solve(q).objective_value, 2.0, 1e-9);
  q.initial_basis = {7, -1};  // out-of-range column
  EXPECT_NEAR(solve(q).objective_value, 2.0, 1e-9);
}

TEST(Simplex, AgreesWithBasisEnumerationOnRandomLps) {
  Rng rng(20240611);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = 2 + uniform_index(rng, 3);
    const std::size_t n = m + 2 + uniform_index(rng, 4);
    std::vector<std::vector<double>> a(m, std::vector<double>(n + 1, 0.0));
    std::vector<double> x0(n);
    for (double& v : x0) v = uniform01(rng) < 0.4 ? 0.0 : uniform01(rng);
    std::vector<double> b(m, 0.0);
    for (std::size_t r = 0; r + 1 < m; ++r) {
      for (std::size_t j = 0; j < n; ++j) {
        // Small integers make degenerate ties common.
        a[r][j] = static_cast<double>(static_cast<int>(uniform_index(rng, 5)) - 2);
        b[r] += a[r][j] * x0[j];
      }
    }
    // Last row bounds the feasible region: sum x + slack = U.
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      a[m - 1][j] = 1.0;
      total += x0[j];
    }
    a[m - 1][n] = 1.0;
    b[m - 1] = total + 1.0;
    std::vector<double> c(n + 1, 0.0);
    for (std::size_t j = 0; j < n; ++j) c[j] = uniform01(rng) * 2.0 - 1.0;

    const auto oracle = best_basic_solution(a, b, c);
    const auto p = dense_problem(a, b, c);
    const auto sol = solve(p);
    if (!oracle) {
      // Rank-deficient constraint matrices have no square basis to enumerate.
      continue;
    }
    ASSERT_EQ(sol.status, LpStatus::Optimal) << "trial " << trial;
    EXPECT_NEAR(sol.objective_value, *oracle, 1e-7) << "trial " << trial;
    EXPECT_LT(max_row_residual(p, sol.values), 1e-7);
    for (double v : sol.values) EXPECT_GE(v, 0.0);
    ++checked;
  }
  EXPECT_GT(checked, 150);
}
