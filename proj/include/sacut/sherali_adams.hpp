#ifndef SACUT_SHERALI_ADAMS_HPP
#define SACUT_SHERALI_ADAMS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sacut/common.hpp"
#include "sacut/csp.hpp"
#include "sacut/graph.hpp"
#include "sacut/linprog.hpp"
#include "sacut/matrix.hpp"

namespace sacut {

// ---------------------------------------------------------------------------
// Subsets and tuples
//
// Size-k subsets of [n] are ranked in colexicographic order:
//   rank({s_0 < ... < s_{k-1}}) = sum_i C(s_i, i + 1).
// A tuple over a sorted subset S is indexed in mixed radix q with the
// smallest vertex of S as the most significant digit.

inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

inline std::size_t subset_rank(const std::vector<int>& sorted) {
  std::size_t r = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) r += binomial(sorted[i], static_cast<int>(i) + 1);
  return r;
}

/// Calls f(subset) for every size-k subset of [n] in colex (= rank) order.
template <class F>
void for_each_subset(int n, int k, F&& f) {
  if (k < 0 || k > n) return;
  std::vector<int> s(k);
  for (int i = 0; i < k; ++i) s[i] = i;
  for (;;) {
    f(static_cast<const std::vector<int>&>(s));
    int i = 0;
    while (i < k && (i + 1 == k ? s[i] + 1 >= n : s[i] + 1 == s[i + 1])) ++i;
    if (i == k) return;
    ++s[i];
    for (int j = 0; j < i; ++j) s[j] = j;
  }
}

inline std::size_t int_pow(int base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= static_cast<std::size_t>(base);
  return r;
}

/// `sorted` extended with the smallest indices it does not contain, up to size t.
inline std::vector<int> canonical_superset(const std::vector<int>& sorted, int t) {
  std::vector<int> out = sorted;
  for (int v = 0; static_cast<int>(out.size()) < t; ++v) {
    if (!std::binary_search(sorted.begin(), sorted.end(), v)) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Sums `table` (over sorted superset U) down to the sorted subset S of U.
inline std::vector<double> project_table(const std::vector<double>& table, const std::vector<int>& U,
                                         const std::vector<int>& S, int q) {
  std::vector<int> pos;
  pos.reserve(S.size());
  for (int v : S) pos.push_back(static_cast<int>(std::lower_bound(U.begin(), U.end(), v) - U.begin()));
  const int k = static_cast<int>(U.size());
  std::vector<double> out(int_pow(q, static_cast<int>(S.size())), 0.0);
  std::vector<int> digits(k, 0);
  for (std::size_t idx = 0; idx < table.size(); ++idx) {
    std::size_t sub = 0;
    for (int p : pos) sub = sub * q + digits[p];
    out[sub] += table[idx];
    for (int d = k - 1; d >= 0; --d) {
      if (++digits[d] < q) break;
      digits[d] = 0;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Local pseudodistribution

/// Degree-t family of marginal tables over all size-t subsets of [n].
/// Smaller marginals are read off the canonical superset.
class LocalPseudodistribution {
 public:
  LocalPseudodistribution(int n, int q, int t, std::vector<std::vector<double>> tables)
      : n_(n), q_(q), t_(t), tables_(std::move(tables)) {
    if (q < 2) throw Error("alphabet size must be at least 2");
    if (t < 1 || t > n) throw Error("degree must lie in [1, n]");
    if (tables_.size() != binomial(n, t)) throw Error("wrong number of marginal tables");
    for (const auto& tab : tables_) {
      if (tab.size() != int_pow(q, t)) throw Error("marginal table has the wrong size");
    }
  }

  int num_vertices() const { return n_; }
  int q() const { return q_; }
  int degree() const { return t_; }
  const std::vector<double>& table(std::size_t rank) const { return tables_[rank]; }
  std::size_t num_tables() const { return tables_.size(); }

  /// Marginal over the sorted subset S with |S| <= degree().
  std::vector<double> marginal(const std::vector<int>& S) const {
    if (static_cast<int>(S.size()) > t_) {
      throw Error("subset of size " + std::to_string(S.size()) + " exceeds locality " + std::to_string(t_));
    }
    const auto U = canonical_superset(S, t_);
    const auto& tab = tables_[subset_rank(U)];
    if (U.size() == S.size()) return tab;
    return project_table(tab, U, S, q_);
  }

  /// q x q joint of (X_i, X_j): row = value of X_i. i == j gives the diagonal joint.
  Matrix pair_marginal(int i, int j) const {
    Matrix m(q_, q_);
    if (i == j) {
      const auto p = singleton(i);
      for (int a = 0; a < q_; ++a) m(a, a) = p[a];
      return m;
    }
    if (t_ < 2) {
      throw Error("locality 1 cannot answer pair (" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
    const auto tab = marginal({std::min(i, j), std::max(i, j)});
    for (int a = 0; a < q_; ++a)
      for (int b = 0; b < q_; ++b) {
        const double v = tab[static_cast<std::size_t>(a) * q_ + b];
        if (i < j) m(a, b) = v;
        else m(b, a) = v;
      }
    return m;
  }

  std::vector<double> singleton(int i) const { return marginal({i}); }

  /// Pr(X_S = x_S) for sorted S.
  double probability(const std::vector<int>& S, const std::vector<int>& xs) const {
    const auto tab = marginal(S);
    std::size_t idx = 0;
    for (int a : xs) idx = idx * q_ + a;
    return tab[idx];
  }

  /// Largest deviation from the table invariants: |sum - 1|, negative mass,
  /// and disagreement between supersets on every (t-1)-subset.
  double max_consistency_error() const {
    double worst = 0.0;
    for (const auto& tab : tables_) {
      double s = 0.0;
      for (double v : tab) {
        s += v;
        worst = std::max(worst, -v);
      }
      worst = std::max(worst, std::abs(s - 1.0));
    }
    if (t_ < 2) return worst;
    for_each_subset(n_, t_ - 1, [&](const std::vector<int>& R) {
      std::vector<double> reference;
      for (int j = 0; j < n_; ++j) {
        if (std::binary_search(R.begin(), R.end(), j)) continue;
        auto S = R;
        S.insert(std::upper_bound(S.begin(), S.end(), j), j);
        const auto proj = project_table(tables_[subset_rank(S)], S, R, q_);
        if (reference.empty()) {
          reference = proj;
          continue;
        }
        for (std::size_t k = 0; k < proj.size(); ++k) worst = std::max(worst, std::abs(proj[k] - reference[k]));
      }
    });
    return worst;
  }

  /// Conditions on X_S = x_S (S sorted, distinct). Degree drops by |S|.
  LocalPseudodistribution condition(const std::vector<int>& S, const std::vector<int>& xs) const {
    if (S.size() != xs.size()) throw Error("condition: subset and values differ in length");
    if (S.empty()) return *this;
    if (static_cast<int>(S.size()) > t_ - 2) {
      throw Error("condition: |S| = " + std::to_string(S.size()) + " exceeds degree - 2 = " + std::to_string(t_ - 2));
    }
    const double p = probability(S, xs);
    if (!(p > 1e-12)) throw Error("condition: event has probability " + std::to_string(p));
    const int t2 = t_ - static_cast<int>(S.size());
    std::vector<std::vector<double>> out;
    out.reserve(binomial(n_, t2));
    for_each_subset(n_, t2, [&](const std::vector<int>& U) {
      std::vector<int> W;
      std::set_union(U.begin(), U.end(), S.begin(), S.end(), std::back_inserter(W));
      const auto m = marginal(W);
      // Position in W of every U and S element.
      std::vector<int> pos_u(U.size());
      std::vector<int> pos_s(S.size());
      for (std::size_t k = 0; k < U.size(); ++k)
        pos_u[k] = static_cast<int>(std::lower_bound(W.begin(), W.end(), U[k]) - W.begin());
      for (std::size_t k = 0; k < S.size(); ++k)
        pos_s[k] = static_cast<int>(std::lower_bound(W.begin(), W.end(), S[k]) - W.begin());
      std::vector<double> tab(int_pow(q_, t2), 0.0);
      std::vector<int> y(U.size(), 0);
      std::vector<int> w(W.size(), -1);
      for (std::size_t idx = 0; idx < tab.size(); ++idx) {
        std::fill(w.begin(), w.end(), -1);
        bool ok = true;
        for (std::size_t k = 0; k < S.size(); ++k) w[pos_s[k]] = xs[k];
        for (std::size_t k = 0; k < U.size() && ok; ++k) {
          int& slot = w[pos_u[k]];
          if (slot >= 0 && slot != y[k]) ok = false;
          slot = y[k];
        }
        if (ok) {
          std::size_t widx = 0;
          for (int a : w) widx = widx * q_ + a;
          tab[idx] = m[widx] / p;
        }
        for (int d = static_cast<int>(U.size()) - 1; d >= 0; --d) {
          if (++y[d] < q_) break;
          y[d] = 0;
        }
      }
      out.push_back(std::move(tab));
    });
    return LocalPseudodistribution(n_, q_, t2, std::move(out));
  }

  /// One line per stored subset, in rank order: "S=<i1,i2> p(<a,b>)=<v> ...".
  std::string dump() const {
    std::ostringstream os;
    os.precision(12);
    for_each_subset(n_, t_, [&](const std::vector<int>& S) {
      os << "S=<";
      for (std::size_t k = 0; k < S.size(); ++k) os << (k ? "," : "") << S[k];
      os << '>';
      const auto& tab = tables_[subset_rank(S)];
      std::vector<int> d(t_, 0);
      for (std::size_t idx = 0; idx < tab.size(); ++idx) {
        os << " p(<";
        for (int k = 0; k < t_; ++k) os << (k ? "," : "") << d[k];
        os << ">)=" << tab[idx];
        for (int k = t_ - 1; k >= 0; --k) {
          if (++d[k] < q_) break;
          d[k] = 0;
        }
      }
      os << '\n';
    });
    return os.str();
  }

  /// Marginals of a genuine distribution over [q]^n (index: vertex 0 most significant).
  static LocalPseudodistribution from_distribution(int n, int q, int t, const std::vector<double>& probs) {
    if (probs.size() != int_pow(q, n)) throw Error("distribution has the wrong size");
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    std::vector<std::vector<double>> tables;
    for_each_subset(n, t, [&](const std::vector<int>& S) { tables.push_back(project_table(probs, all, S, q)); });
    return LocalPseudodistribution(n, q, t, std::move(tables));
  }

  /// Independent variables with the given singleton marginals.
  static LocalPseudodistribution product(int q, int t, const std::vector<std::vector<double>>& marginals) {
    const int n = static_cast<int>(marginals.size());
    std::vector<std::vector<double>> tables;
    for_each_subset(n, t, [&](const std::vector<int>& S) {
      std::vector<double> tab(int_pow(q, t), 1.0);
      std::vector<int> d(t, 0);
      for (double& v : tab) {
        for (int k = 0; k < t; ++k) v *= marginals[S[k]][d[k]];
        for (int k = t - 1; k >= 0; --k) {
          if (++d[k] < q) break;
          d[k] = 0;
        }
      }
      tables.push_back(std::move(tab));
    });
    return LocalPseudodistribution(n, q, t, std::move(tables));
  }

  static LocalPseudodistribution point_mass(int q, int t, const Assignment& x) {
    std::vector<std::vector<double>> m(x.size(), std::vector<double>(q, 0.0));
    for (std::size_t i = 0; i < x.size(); ++i) m[i][x[i]] = 1.0;
    return product(q, t, m);
  }

 private:
  int n_;
  int q_;
  int t_;
  std::vector<std::vector<double>> tables_;
};

/// pE of the CSP objective: sum_e w_e Pr_{mu_e}(Pi_e = 1).
inline double pseudo_objective(const CspInstance& inst, const LocalPseudodistribution& mu) {
  double total = 0.0;
  const auto& edges = inst.graph().edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const Matrix joint = mu.pair_marginal(edges[e].u, edges[e].v);
    double sat = 0.0;
    for (int a = 0; a < inst.q(); ++a)
      for (int b = 0; b < inst.q(); ++b)
        if (inst.predicate(e)(a, b)) sat += joint(a, b);
    total += edges[e].w * sat;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Degree-t Sherali-Adams LP

inline constexpr std::size_t kDefaultMaxLpVars = 2'000'000;

/// LP variable cap; SA_CUT_MAX_LP_VARS overrides the default.
inline std::size_t sa_variable_cap() {
  if (const char* env = std::getenv("SA_CUT_MAX_LP_VARS")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultMaxLpVars;
}

struct SaLayout {
  int n = 0;
  int q = 0;
  int t = 0;
  std::size_t table_size = 0;
  std::size_t num_tables = 0;

  std::size_t var(std::size_t rank, std::size_t tuple) const { return rank * table_size + tuple; }
  std::size_t num_vars() const { return table_size * num_tables; }
};

struct SaLp {
  SaLayout layout;
  LpProblem problem;
};

/// Variables: mu_S(tuple) for every |S| = t. Rows: one normalization per
/// table; for every (t-1)-subset R, each superset R + {j} agrees on R with
/// the canonical superset of R. Chained swaps of one element imply agreement
/// of every overlapping pair of tables. One tuple per agreement block is left
/// out since normalization implies it.
inline SaLp build_sa_lp(const CspInstance& inst, int t, std::size_t max_vars = sa_variable_cap()) {
  const int n = inst.num_vertices();
  const int q = inst.q();
  if (t < 2 || t > n) throw Error("degree must lie in [2, n]; got " + std::to_string(t));
  const double count = static_cast<double>(binomial(n, t)) * std::pow(static_cast<double>(q), t);
  if (count > static_cast<double>(max_vars)) {
    std::ostringstream os;
    os.precision(0);
    os << std::fixed << "Sherali-Adams LP needs " << count << " variables, above the cap of " << max_vars;
    throw Error(os.str());
  }
  SaLp out;
  SaLayout& L = out.layout;
  L = {n, q, t, int_pow(q, t), binomial(n, t)};
  LpProblem& P = out.problem;
  P.num_vars = L.num_vars();
  P.objective.assign(P.num_vars, 0.0);

  for (std::size_t r = 0; r < L.num_tables; ++r) {
    LinearEquality row;
    row.rhs = 1.0;
    for (std::size_t k = 0; k < L.table_size; ++k) row.terms.push_back({L.var(r, k), 1.0});
    P.equalities.push_back(std::move(row));
  }

  const std::size_t sub_size = int_pow(q, t - 1);
  // Tuples of S = R + {j} (j at position p in S) whose restriction to R is `idx`.
  auto lift = [&](std::size_t idx, int p, int a) {
    const std::size_t hi = idx / int_pow(q, t - 1 - p);
    const std::size_t lo = idx % int_pow(q, t - 1 - p);
    return (hi * q + a) * int_pow(q, t - 1 - p) + lo;
  };
  for_each_subset(n, t - 1, [&](const std::vector<int>& R) {
    std::vector<int> extra;
    for (int j = 0; j < n; ++j)
      if (!std::binary_search(R.begin(), R.end(), j)) extra.push_back(j);
    auto with = [&](int j) {
      auto S = R;
      const auto it = S.insert(std::upper_bound(S.begin(), S.end(), j), j);
      return std::pair{S, static_cast<int>(it - S.begin())};
    };
    const auto [C, pc] = with(extra.front());
    const std::size_t rc = subset_rank(C);
    for (std::size_t e = 1; e < extra.size(); ++e) {
      const auto [S, ps] = with(extra[e]);
      const std::size_t rs = subset_rank(S);
      for (std::size_t idx = 0; idx + 1 < sub_size; ++idx) {
        LinearEquality row;
        for (int a = 0; a < q; ++a) {
          row.terms.push_back({L.var(rs, lift(idx, ps, a)), 1.0});
          row.terms.push_back({L.var(rc, lift(idx, pc, a)), -1.0});
        }
        P.equalities.push_back(std::move(row));
      }
    }
  });

  // The all-zeros assignment is a feasible vertex: one point-mass variable per
  // table, artificials on the agreement rows.
  P.initial_basis.assign(P.equalities.size(), -1);
  for (std::size_t r = 0; r < L.num_tables; ++r) P.initial_basis[r] = static_cast<long>(L.var(r, 0));

  const auto& edges = inst.graph().edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto U = canonical_superset({edges[e].u, edges[e].v}, t);
    const std::size_t r = subset_rank(U);
    const int pu = static_cast<int>(std::lower_bound(U.begin(), U.end(), edges[e].u) - U.begin());
    const int pv = static_cast<int>(std::lower_bound(U.begin(), U.end(), edges[e].v) - U.begin());
    std::vector<int> d(t, 0);
    for (std::size_t k = 0; k < L.table_size; ++k) {
      if (inst.predicate(e)(d[pu], d[pv])) P.objective[L.var(r, k)] += edges[e].w;
      for (int c = t - 1; c >= 0; --c) {
        if (++d[c] < q) break;
        d[c] = 0;
      }
    }
  }
  return out;
}

inline constexpr double kClipTolerance = 1e-9;
inline constexpr double kRejectTolerance = 1e-7;

/// Reads tables off an optimal SA solution. Negatives in [-1e-9, 0) become 0
/// and each table is renormalized; anything below -1e-7 is rejected.
inline LocalPseudodistribution extract_pseudodistribution(const SaLayout& L, const LpSolution& sol) {
  if (sol.status != LpStatus::Optimal) {
    throw Error(std::string("cannot extract from a solution with status ") + to_string(sol.status));
  }
  if (sol.values.size() != L.num_vars()) throw Error("solution length does not match the LP layout");
  std::vector<std::vector<double>> tables(L.num_tables, std::vector<double>(L.table_size));
  for (std::size_t r = 0; r < L.num_tables; ++r) {
    double s = 0.0;
    for (std::size_t k = 0; k < L.table_size; ++k) {
      double v = sol.values[L.var(r, k)];
      if (v < -kRejectTolerance) {
        throw Error("LP variable " + std::to_string(L.var(r, k)) + " is negative (" + std::to_string(v) + ")");
      }
      if (v < 0.0) v = 0.0;
      tables[r][k] = v;
      s += v;
    }
    if (!(s > 0.0)) throw Error("LP table " + std::to_string(r) + " has zero mass");
    for (double& v : tables[r]) v /= s;
  }
  return LocalPseudodistribution(L.n, L.q, L.t, std::move(tables));
}

inline LocalPseudodistribution extract_pseudodistribution(const CspInstance& inst, int t, const LpSolution& sol) {
  const SaLayout L{inst.num_vertices(), inst.q(), t, int_pow(inst.q(), t), binomial(inst.num_vertices(), t)};
  return extract_pseudodistribution(L, sol);
}

struct SaResult {
  double value = 0.0;  // LP optimum
  LocalPseudodistribution mu;
  long pivots = 0;
};

/// Builds, solves and extracts. Throws unless the LP solves to optimality.
inline SaResult solve_sa(const CspInstance& inst, int t, const LpTolerances& tol = {}) {
  const SaLp lp = build_sa_lp(inst, t);
  const LpSolution sol = solve(lp.problem, tol);
  if (sol.status != LpStatus::Optimal) {
    throw Error(std::string("Sherali-Adams LP did not solve: ") + to_string(sol.status));
  }
  return {sol.objective_value, extract_pseudodistribution(lp.layout, sol), sol.pivots};
}

// ---------------------------------------------------------------------------
// Pairwise measures on a q x q joint table

struct Matching {
  double value = 0.0;
  std::vector<int> assignment;  // row a -> column assignment[a]
};

/// Maximum-weight perfect matching on a square matrix (Hungarian method, O(q^3)).
inline Matching max_weight_matching(const Matrix& w) {
  if (w.rows() != w.cols()) throw Error("max_weight_matching: matrix is not square");
  for (double x : w.data()) {
    if (!std::isfinite(x)) throw Error("max_weight_matching: non-finite weight");
  }
  const int q = static_cast<int>(w.rows());
  const double inf = std::numeric_limits<double>::infinity();
  // Potentials-based shortest augmenting path on cost = -w, 1-based.
  std::vector<double> u(q + 1, 0.0), v(q + 1, 0.0);
  std::vector<int> p(q + 1, 0), way(q + 1, 0);
  for (int i = 1; i <= q; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(q + 1, inf);
    std::vector<bool> used(q + 1, false);
    do {
      used[j0] = true;
      const int i0 = p[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= q; ++j) {
        if (used[j]) continue;
        const double cur = -w(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= q; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  Matching m;
  m.assignment.assign(q, -1);
  for (int j = 1; j <= q; ++j) m.assignment[p[j] - 1] = j - 1;
  for (int a = 0; a < q; ++a) m.value += w(a, m.assignment[a]);
  return m;
}

namespace detail {

inline std::pair<std::vector<double>, std::vector<double>> joint_marginals(const Matrix& j) {
  std::vector<double> row(j.rows(), 0.0), col(j.cols(), 0.0);
  for (std::size_t a = 0; a < j.rows(); ++a)
    for (std::size_t b = 0; b < j.cols(); ++b) {
      row[a] += j(a, b);
      col[b] += j(a, b);
    }
  return {row, col};
}

inline Matrix deviation_matrix(const Matrix& j) {
  const auto [p, r] = joint_marginals(j);
  Matrix d(j.rows(), j.cols());
  for (std::size_t a = 0; a < j.rows(); ++a)
    for (std::size_t b = 0; b < j.cols(); ++b) d(a, b) = std::abs(j(a, b) - p[a] * r[b]);
  return d;
}

}  // namespace detail

/// l1 distance between the joint and the product of its marginals.
inline double cov_of(const Matrix& joint) {
  const Matrix d = detail::deviation_matrix(joint);
  double s = 0.0;
  for (double v : d.data()) s += v;
  return s;
}

/// Max over bijections pi of sum_a |P(a, pi(a)) - P(a) P(pi(a))|.
inline double cov_pi_of(const Matrix& joint) { return max_weight_matching(detail::deviation_matrix(joint)).value; }

/// I(X;Y) in nats; 0 log 0 = 0.
inline double mutual_information_of(const Matrix& joint) {
  const auto [p, r] = detail::joint_marginals(joint);
  double s = 0.0;
  for (std::size_t a = 0; a < joint.rows(); ++a)
    for (std::size_t b = 0; b < joint.cols(); ++b) {
      const double v = joint(a, b);
      if (v > 0.0 && p[a] > 0.0 && r[b] > 0.0) s += v * std::log(v / (p[a] * r[b]));
    }
  return std::max(0.0, s);
}

/// sum_a p_a (1 - p_a).
inline double variance_of(const std::vector<double>& p) {
  double s = 0.0;
  for (double v : p) s += v * (1.0 - v);
  return s;
}

inline double cov(const LocalPseudodistribution& mu, int i, int j) { return cov_of(mu.pair_marginal(i, j)); }
inline double cov_pi(const LocalPseudodistribution& mu, int i, int j) { return cov_pi_of(mu.pair_marginal(i, j)); }
inline double mutual_information(const LocalPseudodistribution& mu, int i, int j) {
  return mutual_information_of(mu.pair_marginal(i, j));
}
inline double variance(const LocalPseudodistribution& mu, int i) { return variance_of(mu.singleton(i)); }

// ---------------------------------------------------------------------------
// Aggregates

enum class PairMode { LocalEdge, GlobalPair, Walk };
enum class Measure { Cov, CovPi, MutualInfo, CovSquared, CovPiSquared };

inline const char* to_string(PairMode m) {
  switch (m) {
    case PairMode::LocalEdge: return "local-edge";
    case PairMode::GlobalPair: return "global-pair";
    case PairMode::Walk: return "walk";
  }
  return "?";
}

inline const char* to_string(Measure m) {
  switch (m) {
    case Measure::Cov: return "Cov";
    case Measure::CovPi: return "CovPi";
    case Measure::MutualInfo: return "MutualInfo";
    case Measure::CovSquared: return "CovSquared";
    case Measure::CovPiSquared: return "CovPiSquared";
  }
  return "?";
}

struct CorrelationReport {
  PairMode mode = PairMode::LocalEdge;
  Measure measure = Measure::Cov;
  int walk_length = 0;  // Walk mode only
  double value = 0.0;
};

inline double pair_measure(const Matrix& joint, Measure m) {
  switch (m) {
    case Measure::Cov: return cov_of(joint);
    case Measure::CovPi: return cov_pi_of(joint);
    case Measure::MutualInfo: return mutual_information_of(joint);
    case Measure::CovSquared: {
      const double c = cov_of(joint);
      return c * c;
    }
    case Measure::CovPiSquared: {
      const double c = cov_pi_of(joint);
      return c * c;
    }
  }
  return 0.0;
}

/// Exact weighted average of a pairwise measure. LocalEdge averages over
/// edges by weight, GlobalPair over independent (i, j) ~ pi x pi (i = j
/// included), Walk over the exact walk_distribution pair masses.
inline CorrelationReport aggregate_correlation(const LocalPseudodistribution& mu, const Graph& g, PairMode mode,
                                               Measure measure, int walk_length = 1) {
  if (mu.num_vertices() != g.num_vertices()) throw Error("pseudodistribution and graph differ in size");
  const int n = g.num_vertices();
  std::map<std::pair<int, int>, double> cache;
  auto value = [&](int i, int j) {
    const std::pair key{std::min(i, j), std::max(i, j)};
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    if (i != j && mu.degree() < 2) {
      throw Error("locality " + std::to_string(mu.degree()) + " is insufficient for pair (" + std::to_string(i) +
                  "," + std::to_string(j) + ")");
    }
    const double v = pair_measure(mu.pair_marginal(key.first, key.second), measure);
    cache.emplace(key, v);
    return v;
  };
  CorrelationReport rep{mode, measure, mode == PairMode::Walk ? walk_length : 0, 0.0};
  double total = 0.0;
  double mass = 0.0;
  switch (mode) {
    case PairMode::LocalEdge:
      for (const Edge& e : g.edges()) {
        total += e.w * value(e.u, e.v);
        mass += e.w;
      }
      break;
    case PairMode::GlobalPair: {
      const auto pi = stationary_distribution(g);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) total += pi[i] * pi[j] * value(i, j);
      mass = 1.0;
      break;
    }
    case PairMode::Walk: {
      const auto wd = walk_distribution(g, walk_length);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const double m = wd.pair_weights(i, j);
          if (m > 0.0) total += m * value(i, j);
        }
      mass = 1.0;
      break;
    }
  }
  rep.value = total / mass;
  return rep;
}

}  // namespace sacut

#endif  // SACUT_SHERALI_ADAMS_HPP
