#ifndef SACUT_LINPROG_HPP
#define SACUT_LINPROG_HPP

// Dense two-phase revised simplex for
//
//     maximize c^T x   subject to   A x = b,  x >= 0.
//
// The basis inverse is kept explicitly and rebuilt by Gauss-Jordan
// elimination whenever the primal residual drifts. Pricing is Dantzig's
// rule; after 10 * num_vars consecutive degenerate pivots the solver
// switches to Bland's rule until the objective moves again.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sacut/common.hpp"
#include "sacut/matrix.hpp"

namespace sacut {

/// One equality row, stored sparsely as (column, coefficient) terms.
struct LinearEquality {
  std::vector<std::pair<std::size_t, double>> terms;
  double rhs = 0.0;
};

struct LpProblem {
  std::size_t num_vars = 0;
  std::vector<double> objective;  // maximized
  std::vector<LinearEquality> equalities;
  // Optional starting basis: one entry per row, a column index or -1 for the
  // row's artificial. Used only if it is nonsingular and primal feasible
  // with every artificial at zero; otherwise phase 1 starts from scratch.
  std::vector<long> initial_basis;

  /// Throws if a row references a column >= num_vars or has a non-finite rhs.
  void validate() const {
    if (objective.size() != num_vars) throw Error("objective length differs from num_vars");
    for (std::size_t r = 0; r < equalities.size(); ++r) {
      const auto& row = equalities[r];
      if (!std::isfinite(row.rhs)) throw Error("row " + std::to_string(r) + " has a non-finite rhs");
      for (const auto& [j, a] : row.terms) {
        if (j >= num_vars) throw Error("row " + std::to_string(r) + " references column out of range");
        if (!std::isfinite(a)) throw Error("row " + std::to_string(r) + " has a non-finite coefficient");
      }
    }
  }

  /// Plain-text dump: "rows <m> cols <n>", the objective, then one line per
  /// row "rhs <b> : j:a j:a ...".
  std::string dump() const {
    std::ostringstream os;
    os.precision(17);
    os << "rows " << equalities.size() << " cols " << num_vars << "\nobjective";
    for (double c : objective) os << ' ' << c;
    os << '\n';
    for (const auto& row : equalities) {
      os << "rhs " << row.rhs << " :";
      for (const auto& [j, a] : row.terms) os << ' ' << j << ':' << a;
      os << '\n';
    }
    return os.str();
  }
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit, NumericalFailure };

inline const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::IterationLimit: return "iteration-limit";
    case LpStatus::NumericalFailure: return "numerical-failure";
  }
  return "unknown";
}

struct LpSolution {
  LpStatus status = LpStatus::NumericalFailure;
  std::vector<double> values;  // only for Optimal
  double objective_value = 0.0;
  // For Infeasible: y with A^T y >= 0 and b^T y < 0, in the caller's row space.
  std::vector<double> farkas;
  long pivots = 0;
};

/// Solver tolerances, all in one place.
struct LpTolerances {
  double feasibility = 1e-7;   // max row residual after row normalization
  double pivot = 1e-9;         // smallest |alpha| accepted in the ratio test
  double optimality = 1e-9;    // reduced-cost threshold
  double clip = 1e-9;          // negatives above -clip are snapped to zero
  double harris = 1e-9;        // primal slack allowed by the Harris ratio test
  long max_pivots = 1'000'000;
};

namespace detail {

class RevisedSimplex {
 public:
  RevisedSimplex(const LpProblem& p, const LpTolerances& tol) : tol_(tol), n_(p.num_vars) {
    m_ = p.equalities.size();
    row_scale_.assign(m_, 1.0);
    b_.assign(m_, 0.0);
    cols_.assign(n_ + m_, {});
    for (std::size_t r = 0; r < m_; ++r) {
      const auto& row = p.equalities[r];
      double big = 0.0;
      for (const auto& [j, a] : row.terms) big = std::max(big, std::abs(a));
      double scale = big > 0.0 ? 1.0 / big : 1.0;
      if (row.rhs * scale < 0.0) scale = -scale;
      row_scale_[r] = scale;
      b_[r] = row.rhs * scale;
      for (const auto& [j, a] : row.terms) {
        if (a != 0.0) cols_[j].push_back({r, a * scale});
      }
    }
    // Merge duplicate (row, column) terms.
    for (std::size_t j = 0; j < n_; ++j) {
      auto& c = cols_[j];
      std::sort(c.begin(), c.end());
      std::vector<std::pair<std::size_t, double>> merged;
      for (const auto& t : c) {
        if (!merged.empty() && merged.back().first == t.first) merged.back().second += t.second;
        else merged.push_back(t);
      }
      c = std::move(merged);
    }
    for (std::size_t r = 0; r < m_; ++r) cols_[n_ + r] = {{r, 1.0}};
    objective_ = p.objective;
    initial_basis_ = p.initial_basis;
  }

  LpSolution run() {
    LpSolution sol;
    // An empty row with a nonzero rhs is infeasible on its own.
    {
      std::vector<bool> touched(m_, false);
      for (std::size_t j = 0; j < n_; ++j)
        for (const auto& [r, a] : cols_[j]) touched[r] = true;
      for (std::size_t r = 0; r < m_; ++r) {
        if (!touched[r] && std::abs(b_[r]) > tol_.feasibility) {
          sol.status = LpStatus::Infeasible;
          sol.farkas.assign(m_, 0.0);
          sol.farkas[r] = -row_scale_[r];
          return sol;
        }
      }
    }

    cost_.assign(n_ + m_, 0.0);
    if (!warm_start()) {
      basis_.assign(m_, 0);
      is_basic_.assign(n_ + m_, false);
      for (std::size_t r = 0; r < m_; ++r) {
        basis_[r] = n_ + r;
        is_basic_[n_ + r] = true;
      }
      binv_ = Matrix::identity(m_);
      xb_ = b_;

      // Phase 1: maximize -sum(artificials).
      for (std::size_t r = 0; r < m_; ++r) cost_[n_ + r] = -1.0;
      auto st = iterate(/*phase=*/1);
      sol.pivots = pivots_;
      if (st != LpStatus::Optimal) {
        sol.status = st;
        return sol;
      }
      refactor();
      double infeasibility = 0.0;
      for (std::size_t r = 0; r < m_; ++r)
        if (basis_[r] >= n_) infeasibility += std::max(0.0, xb_[r]);
      if (infeasibility > tol_.feasibility) {
        sol.status = LpStatus::Infeasible;
        const auto y = duals();
        sol.farkas.resize(m_);
        // Phase-1 optimality gives A^T y >= 0 on the scaled rows, and b^T y = -infeasibility.
        for (std::size_t r = 0; r < m_; ++r) sol.farkas[r] = y[r] * row_scale_[r];
        return sol;
      }
    }
    drive_out_artificials();

    // Phase 2.
    std::fill(cost_.begin(), cost_.end(), 0.0);
    for (std::size_t j = 0; j < n_; ++j) cost_[j] = objective_[j];
    const auto st = iterate(/*phase=*/2);
    sol.pivots = pivots_;
    if (st != LpStatus::Optimal) {
      sol.status = st;
      return sol;
    }
    refactor();

    sol.values.assign(n_, 0.0);
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] < n_) sol.values[basis_[r]] = xb_[r];
    }
    for (double& v : sol.values) {
      if (v < 0.0 && v >= -tol_.clip) v = 0.0;
    }
    if (primal_residual(sol.values) > tol_.feasibility ||
        *std::min_element(sol.values.begin(), sol.values.end()) < -tol_.clip) {
      sol.status = LpStatus::NumericalFailure;
      return sol;
    }
    sol.objective_value = 0.0;
    for (std::size_t j = 0; j < n_; ++j) sol.objective_value += objective_[j] * sol.values[j];
    sol.status = LpStatus::Optimal;
    return sol;
  }

 private:
  bool warm_start() {
    if (initial_basis_.size() != m_) return false;
    basis_.assign(m_, 0);
    is_basic_.assign(n_ + m_, false);
    for (std::size_t r = 0; r < m_; ++r) {
      const long c = initial_basis_[r];
      if (c >= static_cast<long>(n_)) return false;
      const std::size_t col = c < 0 ? n_ + r : static_cast<std::size_t>(c);
      if (is_basic_[col]) return false;
      basis_[r] = col;
      is_basic_[col] = true;
    }
    binv_ = Matrix(m_, m_);
    xb_.assign(m_, 0.0);
    try {
      refactor();
    } catch (const Error&) {
      return false;
    }
    for (std::size_t r = 0; r < m_; ++r) {
      if (xb_[r] < -tol_.clip) return false;
      if (basis_[r] >= n_ && xb_[r] > tol_.clip) return false;
    }
    return current_residual() <= tol_.feasibility;
  }

  // Max scaled residual |A x - b| over rows, for structural x.
  double primal_residual(const std::vector<double>& x) const {
    std::vector<double> r(b_);
    for (std::size_t j = 0; j < n_; ++j) {
      if (x[j] == 0.0) continue;
      for (const auto& [i, a] : cols_[j]) r[i] -= a * x[j];
    }
    double worst = 0.0;
    for (double v : r) worst = std::max(worst, std::abs(v));
    return worst;
  }

  double current_residual() const {
    std::vector<double> r(b_);
    for (std::size_t k = 0; k < m_; ++k) {
      for (const auto& [i, a] : cols_[basis_[k]]) r[i] -= a * xb_[k];
    }
    double worst = 0.0;
    for (double v : r) worst = std::max(worst, std::abs(v));
    return worst;
  }

  std::vector<double> duals() const {
    std::vector<double> y(m_, 0.0);
    for (std::size_t k = 0; k < m_; ++k) {
      const double c = cost_[basis_[k]];
      if (c == 0.0) continue;
      auto row = binv_.row(k);
      for (std::size_t i = 0; i < m_; ++i) y[i] += c * row[i];
    }
    return y;
  }

  std::vector<double> ftran(std::size_t j) const {
    std::vector<double> alpha(m_, 0.0);
    for (const auto& [i, a] : cols_[j]) {
      for (std::size_t k = 0; k < m_; ++k) alpha[k] += binv_(k, i) * a;
    }
    return alpha;
  }

  // Rebuild B^{-1} from the basis columns and recompute x_B.
  void refactor() {
    Matrix aug(m_, 2 * m_);
    for (std::size_t k = 0; k < m_; ++k) {
      for (const auto& [i, a] : cols_[basis_[k]]) aug(i, k) = a;
      aug(k, m_ + k) = 1.0;
    }
    for (std::size_t c = 0; c < m_; ++c) {
      std::size_t piv = c;
      double best = std::abs(aug(c, c));
      for (std::size_t r = c + 1; r < m_; ++r) {
        if (std::abs(aug(r, c)) > best) {
          best = std::abs(aug(r, c));
          piv = r;
        }
      }
      if (best < 1e-14) throw Error("simplex basis became singular");
      if (piv != c) {
        auto a = aug.row(piv);
        auto b = aug.row(c);
        std::swap_ranges(a.begin(), a.end(), b.begin());
      }
      const double inv = 1.0 / aug(c, c);
      auto prow = aug.row(c);
      for (double& v : prow) v *= inv;
      for (std::size_t r = 0; r < m_; ++r) {
        if (r == c) continue;
        const double f = aug(r, c);
        if (f == 0.0) continue;
        auto row = aug.row(r);
        for (std::size_t k = c; k < 2 * m_; ++k) row[k] -= f * prow[k];
      }
    }
    for (std::size_t r = 0; r < m_; ++r)
      for (std::size_t k = 0; k < m_; ++k) binv_(r, k) = aug(r, m_ + k);
    for (std::size_t r = 0; r < m_; ++r) {
      double s = 0.0;
      auto row = binv_.row(r);
      for (std::size_t i = 0; i < m_; ++i) s += row[i] * b_[i];
      xb_[r] = s;
    }
    since_refactor_ = 0;
  }

  // reduced_cost is d_enter under the current duals; y moves by d_enter
  // times the new row `leave_row` of B^{-1}.
  void pivot(std::size_t leave_row, std::size_t enter, const std::vector<double>& alpha, double step,
             double reduced_cost = 0.0) {
    for (std::size_t k = 0; k < m_; ++k) xb_[k] -= step * alpha[k];
    xb_[leave_row] = step;
    const double inv = 1.0 / alpha[leave_row];
    auto prow = binv_.row(leave_row);
    for (double& v : prow) v *= inv;
    for (std::size_t k = 0; k < m_; ++k) {
      if (k == leave_row || alpha[k] == 0.0) continue;
      const double f = alpha[k];
      auto row = binv_.row(k);
      for (std::size_t i = 0; i < m_; ++i) row[i] -= f * prow[i];
    }
    if (reduced_cost != 0.0 && y_.size() == m_) {
      for (std::size_t i = 0; i < m_; ++i) y_[i] += reduced_cost * prow[i];
    }
    is_basic_[basis_[leave_row]] = false;
    basis_[leave_row] = enter;
    is_basic_[enter] = true;
    ++pivots_;
    if (++since_refactor_ >= 100) {
      if (current_residual() > 1e-10) refactor();
      else since_refactor_ = 0;
      y_ = duals();
    }
    for (double& v : xb_) {
      if (v < 0.0 && v > -tol_.clip) v = 0.0;
    }
  }

  LpStatus iterate(int phase) {
    const std::size_t degenerate_limit = 10 * std::max<std::size_t>(n_, 1);
    std::size_t degenerate_run = 0;
    bool bland = false;
    y_ = duals();
    for (;;) {
      if (pivots_ >= tol_.max_pivots) return LpStatus::IterationLimit;
      // Pricing over structural columns only; artificials never re-enter.
      std::size_t enter = n_ + m_;
      double best = tol_.optimality;
      for (std::size_t j = 0; j < n_; ++j) {
        if (is_basic_[j]) continue;
        double d = cost_[j];
        for (const auto& [i, a] : cols_[j]) d -= y_[i] * a;
        if (d > best) {
          enter = j;
          best = d;
          if (bland) break;
        }
      }
      if (enter == n_ + m_) {
        // Confirm against freshly computed duals before declaring optimality.
        const auto fresh = duals();
        bool stale = false;
        for (std::size_t i = 0; i < m_ && !stale; ++i) stale = std::abs(fresh[i] - y_[i]) > 1e-9;
        if (!stale) return LpStatus::Optimal;
        y_ = fresh;
        continue;
      }

      const auto alpha = ftran(enter);
      const std::size_t leave = choose_leaving(phase, alpha, bland);
      if (leave == m_) {
        if (phase == 1) return LpStatus::NumericalFailure;
        return LpStatus::Unbounded;
      }
      const double step = basis_[leave] >= n_ && phase == 2 ? 0.0 : std::max(0.0, xb_[leave]) / alpha[leave];
      if (step <= 1e-12) {
        if (++degenerate_run >= degenerate_limit) bland = true;
      } else {
        degenerate_run = 0;
        bland = false;
      }
      pivot(leave, enter, alpha, step, best);
    }
  }

  // Harris two-pass ratio test: pass one finds the largest step that keeps
  // every basic variable above -feasibility, pass two takes the largest pivot
  // among rows whose exact ratio fits under it. In phase 2 a basic artificial
  // sits on a redundant row at zero, so any nonzero entry there forces a
  // zero step on that row. Bland mode uses the exact minimum ratio with the
  // smallest basic index.
  std::size_t choose_leaving(int phase, const std::vector<double>& alpha, bool bland) const {
    std::size_t leave = m_;
    if (phase == 2) {
      double big = tol_.pivot;
      for (std::size_t k = 0; k < m_; ++k) {
        if (basis_[k] >= n_ && std::abs(alpha[k]) > big) {
          big = std::abs(alpha[k]);
          leave = k;
        }
      }
      if (leave != m_) return leave;
    }
    auto eligible = [&](std::size_t k) { return alpha[k] > tol_.pivot && !(phase == 2 && basis_[k] >= n_); };
    if (bland) {
      double step = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < m_; ++k) {
        if (!eligible(k)) continue;
        const double ratio = std::max(0.0, xb_[k]) / alpha[k];
        if (ratio < step - 1e-12 || (ratio <= step + 1e-12 && (leave == m_ || basis_[k] < basis_[leave]))) {
          step = std::min(step, ratio);
          leave = k;
        }
      }
      return leave;
    }
    double bound = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < m_; ++k) {
      if (eligible(k)) bound = std::min(bound, (std::max(0.0, xb_[k]) + tol_.harris) / alpha[k]);
    }
    double big = 0.0;
    for (std::size_t k = 0; k < m_; ++k) {
      if (!eligible(k)) continue;
      if (std::max(0.0, xb_[k]) / alpha[k] <= bound && alpha[k] > big) {
        big = alpha[k];
        leave = k;
      }
    }
    return leave;
  }

  // Pivot zero-level artificials out of the basis where some structural
  // column has a usable entry in their row; the rest mark redundant rows.
  void drive_out_artificials() {
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] < n_) continue;
      auto brow = binv_.row(r);
      std::size_t enter = n_;
      double best = tol_.pivot * 1e3;
      for (std::size_t j = 0; j < n_; ++j) {
        if (is_basic_[j]) continue;
        double v = 0.0;
        for (const auto& [i, a] : cols_[j]) v += brow[i] * a;
        if (std::abs(v) > best) {
          best = std::abs(v);
          enter = j;
        }
      }
      if (enter == n_) continue;
      const auto alpha = ftran(enter);
      pivot(r, enter, alpha, 0.0);
    }
    refactor();
  }

  LpTolerances tol_;
  std::size_t n_;
  std::size_t m_ = 0;
  std::vector<double> row_scale_;
  std::vector<double> b_;
  std::vector<double> objective_;
  std::vector<long> initial_basis_;
  std::vector<std::vector<std::pair<std::size_t, double>>> cols_;
  std::vector<double> cost_;
  std::vector<std::size_t> basis_;
  std::vector<bool> is_basic_;
  Matrix binv_;
  std::vector<double> xb_;
  std::vector<double> y_;
  long pivots_ = 0;
  int since_refactor_ = 0;
};

}  // namespace detail

/// Solves max c^T x s.t. A x = b, x >= 0. Pure and deterministic.
inline LpSolution solve(const LpProblem& problem, const LpTolerances& tol = {}) {
  problem.validate();
  if (problem.equalities.empty()) {
    LpSolution sol;
    for (double c : problem.objective) {
      if (c > tol.optimality) {
        sol.status = LpStatus::Unbounded;
        return sol;
      }
    }
    sol.status = LpStatus::Optimal;
    sol.values.assign(problem.num_vars, 0.0);
    return sol;
  }
  return detail::RevisedSimplex(problem, tol).run();
}

/// True when y certifies infeasibility: A^T y >= -slack componentwise and b^T y < -margin.
inline bool is_farkas_certificate(const LpProblem& p, const std::vector<double>& y, double margin = 1e-7,
                                  double slack = 1e-9) {
  if (y.size() != p.equalities.size()) return false;
  std::vector<double> aty(p.num_vars, 0.0);
  double by = 0.0;
  double scale = 0.0;
  for (std::size_t r = 0; r < y.size(); ++r) {
    by += y[r] * p.equalities[r].rhs;
    scale = std::max(scale, std::abs(y[r]));
    for (const auto& [j, a] : p.equalities[r].terms) aty[j] += y[r] * a;
  }
  if (scale == 0.0) return false;
  for (double v : aty) {
    if (v < -slack * std::max(1.0, scale)) return false;
  }
  return by < -margin;
}

/// Max over rows of |a_r x - b_r| / max|a_r|.
inline double max_row_residual(const LpProblem& p, const std::vector<double>& x) {
  double worst = 0.0;
  for (const auto& row : p.equalities) {
    double s = -row.rhs;
    double big = 0.0;
    for (const auto& [j, a] : row.terms) {
      s += a * x[j];
      big = std::max(big, std::abs(a));
    }
    worst = std::max(worst, std::abs(s) / (big > 0 ? big : 1.0));
  }
  return worst;
}

}  // namespace sacut

#endif  // SACUT_LINPROG_HPP
