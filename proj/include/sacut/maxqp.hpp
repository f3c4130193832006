#ifndef SACUT_MAXQP_HPP
#define SACUT_MAXQP_HPP

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "sacut/common.hpp"
#include "sacut/matrix.hpp"
#include "sacut/sherali_adams.hpp"
#include "sacut/spectrum.hpp"

namespace sacut {

// Max-QP: maximize x^T A x over x in {+1,-1}^n, A with zero diagonal.

/// Reduced fraction with positive denominator.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(std::int64_t num, std::int64_t den) {
    if (den == 0) throw Error("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    return {num / g, den / g};
  }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator==(const Rational&) const = default;
  std::string str() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }
};

/// Moments c_t = E x^S (|S| = t) of the uniform distribution on
/// {x in {+1,-1}^k : <x, 1> = 0}. Entry t of `c` holds c_t for t = 0..k.
struct SymmetricMoments {
  int k = 0;
  std::vector<Rational> c;
};

inline SymmetricMoments balanced_moments(int k) {
  if (k < 2 || k > 20) throw Error("balanced moments need 2 <= k <= 20, got " + std::to_string(k));
  if (k % 2 != 0) throw Error("k = " + std::to_string(k) + " is odd: no x in {+1,-1}^k has <x, 1> = 0");
  std::vector<std::int64_t> sums(k + 1, 0);
  std::int64_t count = 0;
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    if (std::popcount(mask) != k / 2) continue;  // bit set <=> x_i = -1
    ++count;
    int sign = 1;
    sums[0] += 1;
    for (int t = 1; t <= k; ++t) {
      if (mask & (1u << (t - 1))) sign = -sign;
      sums[t] += sign;
    }
  }
  SymmetricMoments m{k, {}};
  for (int t = 0; t <= k; ++t) m.c.push_back(Rational::make(sums[t], count));
  return m;
}

/// True iff, for every t, every t-subset of [k] has moment c_t under the
/// balanced distribution (exhaustive, k <= 14).
inline bool moments_are_symmetric(const SymmetricMoments& m) {
  const int k = m.k;
  if (k > 14) throw Error("symmetry check is exhaustive and limited to k <= 14");
  std::vector<std::uint32_t> support;
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask)
    if (std::popcount(mask) == k / 2) support.push_back(mask);
  const auto count = static_cast<std::int64_t>(support.size());
  for (std::uint32_t subset = 0; subset < (1u << k); ++subset) {
    std::int64_t sum = 0;
    for (std::uint32_t x : support) sum += (std::popcount(x & subset) % 2 == 0) ? 1 : -1;
    if (!(Rational::make(sum, count) == m.c[std::popcount(subset)])) return false;
  }
  return true;
}

struct LocalityCheck {
  std::size_t subsets_checked = 0;
  double min_eigenvalue = 0.0;  // over all k-subset second-moment matrices
  bool passed = false;
};

/// PSD check of the k x k second-moment matrix (1 on the diagonal, c_2 off it)
/// of every k-subset of [n].
inline LocalityCheck verify_k_locality(int n, const SymmetricMoments& m, double tolerance = 1e-9) {
  const int k = m.k;
  if (k > n) throw Error("locality check needs k <= n");
  LocalityCheck out;
  out.min_eigenvalue = std::numeric_limits<double>::infinity();
  const double c2 = m.c[2].value();
  for_each_subset(n, k, [&](const std::vector<int>& S) {
    Matrix M(S.size(), S.size());
    for (std::size_t a = 0; a < S.size(); ++a)
      for (std::size_t b = 0; b < S.size(); ++b) M(a, b) = a == b ? m.c[0].value() : c2;
    const Spectrum s = eigendecompose(M);
    out.min_eigenvalue = std::min(out.min_eigenvalue, s.eigenvalues.back());
    ++out.subsets_checked;
  });
  out.passed = out.min_eigenvalue >= -tolerance;
  return out;
}

/// max over x in {+1,-1}^n of sum_{i != j} -x_i x_j, by enumeration.
inline std::int64_t brute_force_negative_clique(int n) {
  if (n < 1 || n > 20) throw Error("brute force needs 1 <= n <= 20");
  std::int64_t best = std::numeric_limits<std::int64_t>::min();
  std::vector<int> x(n);
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    for (int i = 0; i < n; ++i) x[i] = (mask >> i) & 1u ? -1 : 1;
    std::int64_t v = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) v -= x[i] * x[j];
    best = std::max(best, v);
  }
  return best;
}

struct MaxQpReport {
  int n = 0;
  int k = 0;
  SymmetricMoments moments;
  Rational sa_value;          // sum_{i != j} -E X_i X_j
  std::int64_t bruteforce_max = 0;
  double ratio = 0.0;
  bool symmetric = false;     // only evaluated for k <= 14
  LocalityCheck locality;     // only evaluated for n <= 12
};

/// The k-local moment family of the negative clique, its SA value and the true
/// optimum. Requires even k, 2 <= k <= n <= 20.
inline MaxQpReport maxqp_report(int n, int k) {
  if (!(2 <= k && k <= n && n <= 20)) {
    throw Error("maxqp needs 2 <= k <= n <= 20, got n=" + std::to_string(n) + " k=" + std::to_string(k));
  }
  MaxQpReport r;
  r.n = n;
  r.k = k;
  r.moments = balanced_moments(k);
  const Rational c2 = r.moments.c[2];
  r.sa_value = Rational::make(-static_cast<std::int64_t>(n) * (n - 1) * c2.num, c2.den);
  r.bruteforce_max = brute_force_negative_clique(n);
  r.ratio = r.sa_value.value() / static_cast<double>(r.bruteforce_max);
  if (k <= 14) r.symmetric = moments_are_symmetric(r.moments);
  if (n <= 12) r.locality = verify_k_locality(n, r.moments);
  return r;
}

inline std::string format_maxqp(const MaxQpReport& r) {
  std::ostringstream os;
  os.precision(12);
  os << "n=" << r.n << " k=" << r.k << '\n' << "moments=";
  for (std::size_t t = 0; t < r.moments.c.size(); ++t) os << (t ? "," : "") << r.moments.c[t].str();
  os << '\n'
     << "pairwise_moment=" << r.moments.c[2].str() << '\n'
     << "sa_value=" << r.sa_value.str() << " (" << r.sa_value.value() << ")\n"
     << "bruteforce_max=" << r.bruteforce_max << '\n'
     << "ratio=" << r.ratio << '\n';
  if (r.k <= 14) os << "moments_symmetric=" << (r.symmetric ? "yes" : "no") << '\n';
  if (r.n <= 12) {
    os << "locality_subsets=" << r.locality.subsets_checked << " min_eigenvalue=" << r.locality.min_eigenvalue
       << " locality=" << (r.locality.passed ? "pass" : "fail") << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Extraction of a true assignment from k-local second moments

struct ExtractionResult {
  std::vector<int> x;             // +1 / -1
  double achieved = 0.0;          // x^T A x
  double moment_objective = 0.0;  // sum_ij A_ij E X_i X_j
  double within_moments = 0.0;    // same sum restricted to the chosen blocks
  double bound = 0.0;             // (k / (4n)) * moment_objective
  std::vector<std::vector<int>> blocks;
  bool asserted = false;          // moment_objective > 0
  bool holds = true;
};

namespace detail {

inline double quadratic_form(const Matrix& A, const std::vector<int>& x) {
  double v = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) v += A(i, j) * x[i] * x[j];
  return v;
}

// Fixes signs of the groups one at a time, each maximizing the value against
// groups already fixed. Unfixed groups contribute zero in expectation over
// random signs, so the result is at least the within-group total.
inline std::vector<int> fix_group_signs(const Matrix& A, const std::vector<std::vector<int>>& groups,
                                        const std::vector<int>& z) {
  std::vector<int> x(z.size(), 0);
  for (const auto& grp : groups) {
    double gain = 0.0;
    for (int i : grp)
      for (std::size_t j = 0; j < x.size(); ++j) gain += (A(i, j) + A(j, i)) * z[i] * x[j];
    const int sign = gain >= 0.0 ? 1 : -1;
    for (int i : grp) x[i] = sign * z[i];
  }
  return x;
}

}  // namespace detail

/// Given second moments E (n x n, unit diagonal) of k-local +1/-1 variables,
/// finds x with x^T A x >= sum_{blocks} sum_{ij in block} A_ij E_ij: the best
/// of `trials` random partitions into blocks of size k, brute force per block,
/// then block signs by conditional expectation. Block brute force costs 2^k.
inline ExtractionResult extract_assignment(const Matrix& A, const Matrix& E, int k, int trials, std::uint64_t seed) {
  const std::size_t n = A.rows();
  if (A.cols() != n || E.rows() != n || E.cols() != n) throw Error("extract_assignment: dimension mismatch");
  if (k < 1 || k > 20 || static_cast<std::size_t>(k) > n) throw Error("extract_assignment: need 1 <= k <= min(n, 20)");
  for (std::size_t i = 0; i < n; ++i)
    if (A(i, i) != 0.0) throw Error("extract_assignment: A must have zero diagonal");

  ExtractionResult out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.moment_objective += A(i, j) * E(i, j);
  out.bound = static_cast<double>(k) / (4.0 * static_cast<double>(n)) * out.moment_objective;
  out.asserted = out.moment_objective > 0.0;

  std::vector<int> z(n, 1);
  if (!out.asserted) {
    std::vector<std::vector<int>> singles(n);
    for (std::size_t i = 0; i < n; ++i) singles[i] = {static_cast<int>(i)};
    out.blocks = singles;
    out.x = detail::fix_group_signs(A, singles, z);
    out.achieved = detail::quadratic_form(A, out.x);
    out.holds = out.achieved >= 0.0;
    return out;
  }

  Rng rng(seed);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double best = -std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < std::max(1, trials); ++trial) {
    for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[uniform_index(rng, i)]);
    std::vector<std::vector<int>> blocks;
    for (std::size_t s = 0; s < n; s += k) blocks.emplace_back(perm.begin() + s, perm.begin() + std::min(n, s + k));
    double within = 0.0;
    for (const auto& b : blocks)
      for (int i : b)
        for (int j : b) within += A(i, j) * E(i, j);
    if (within > best) {
      best = within;
      out.blocks = blocks;
    }
  }
  out.within_moments = best;
  for (auto& b : out.blocks) std::sort(b.begin(), b.end());

  for (const auto& b : out.blocks) {
    double block_best = -std::numeric_limits<double>::infinity();
    std::uint32_t arg = 0;
    for (std::uint32_t mask = 0; mask < (1u << b.size()); ++mask) {
      double v = 0.0;
      for (std::size_t p = 0; p < b.size(); ++p)
        for (std::size_t r = 0; r < b.size(); ++r) {
          const int sp = (mask >> p) & 1u ? -1 : 1;
          const int sr = (mask >> r) & 1u ? -1 : 1;
          v += A(b[p], b[r]) * sp * sr;
        }
      if (v > block_best) {
        block_best = v;
        arg = mask;
      }
    }
    for (std::size_t p = 0; p < b.size(); ++p) z[b[p]] = (arg >> p) & 1u ? -1 : 1;
  }
  out.x = detail::fix_group_signs(A, out.blocks, z);
  out.achieved = detail::quadratic_form(A, out.x);
  out.holds = out.achieved >= out.bound;
  return out;
}

/// n x n second-moment matrix of the symmetric family (unit diagonal, c_2 off it).
inline Matrix second_moments(int n, const SymmetricMoments& m) {
  Matrix E(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) E(i, j) = i == j ? 1.0 : m.c[2].value();
  return E;
}

/// The all-pairs matrix with -1 off the diagonal.
inline Matrix negative_clique(int n) {
  Matrix A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = i == j ? 0.0 : -1.0;
  return A;
}

}  // namespace sacut

#endif  // SACUT_MAXQP_HPP
