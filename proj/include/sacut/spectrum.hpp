#ifndef SACUT_SPECTRUM_HPP
#define SACUT_SPECTRUM_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "sacut/common.hpp"
#include "sacut/matrix.hpp"

namespace sacut {

struct JacobiOptions {
  // Sweeps stop once the off-diagonal Frobenius norm falls below
  // tolerance * max(1, ||M||_F).
  double tolerance = 1e-12;
  int max_sweeps = 100;
  // Input is rejected when max |m_ij - m_ji| exceeds this (scaled by max(1, max|m|)).
  double symmetry_tolerance = 1e-10;
};

/// Eigenpairs of a real symmetric matrix. Eigenvalues are sorted descending;
/// column k of `eigenvectors` belongs to `eigenvalues[k]`.
struct Spectrum {
  std::vector<double> eigenvalues;
  Matrix eigenvectors;

  std::size_t size() const { return eigenvalues.size(); }

  /// Sum_k lambda_k v_k v_k^T.
  Matrix reconstruct() const {
    const std::size_t n = size();
    Matrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) {
      const double lam = eigenvalues[k];
      for (std::size_t i = 0; i < n; ++i) {
        const double vi = lam * eigenvectors(i, k);
        if (vi == 0.0) continue;
        for (std::size_t j = 0; j < n; ++j) m(i, j) += vi * eigenvectors(j, k);
      }
    }
    return m;
  }
};

inline bool is_symmetric(const Matrix& m, double tolerance) {
  if (m.rows() != m.cols()) return false;
  const double scale = std::max(1.0, max_abs(m));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      if (std::abs(m(i, j) - m(j, i)) > tolerance * scale) return false;
  return true;
}

/// Cyclic Jacobi eigendecomposition. Deterministic for a fixed input.
inline Spectrum eigendecompose(const Matrix& input, const JacobiOptions& opts = {}) {
  if (!is_symmetric(input, opts.symmetry_tolerance)) {
    throw Error("eigendecompose: matrix is not symmetric");
  }
  const std::size_t n = input.rows();
  Matrix a = input;
  // Symmetrize exactly so rotations act on a truly symmetric matrix.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) a(i, j) = a(j, i) = 0.5 * (a(i, j) + a(j, i));
  Matrix v = Matrix::identity(n);

  double frob = 0.0;
  for (double x : a.data()) frob += x * x;
  const double threshold = opts.tolerance * std::max(1.0, std::sqrt(frob));

  for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (std::sqrt(2.0 * off) <= threshold) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // A <- J^T A J with J_pp = J_qq = c, J_pq = s, J_qp = -s.
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });

  Spectrum out;
  out.eigenvalues.resize(n);
  out.eigenvectors = Matrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
  }
  return out;
}

}  // namespace sacut

#endif  // SACUT_SPECTRUM_HPP
