#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SVD>

#include "contactred/dual.hpp"

namespace contactred {

template <class T>
using VecT = Eigen::Matrix<T, Eigen::Dynamic, 1>;
template <class T>
using MatT = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Default singular-value cutoff used for every numerical rank decision.
inline constexpr double kRankCutoff = 1e-8;

template <class T>
T dot(const VecT<T>& a, const VecT<T>& b) {
  T s(0.0);
  for (Eigen::Index i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

template <class T>
T norm(const VecT<T>& a) {
  using std::sqrt;
  return sqrt(dot(a, a));
}

template <class T>
VecT<T> lift_scalar(const Vec& v) {
  return v.template cast<T>();
}

template <class T>
Vec values(const VecT<T>& v) {
  Vec out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = value_of(v[i]);
  return out;
}

/// Derivative part of a first-order dual vector.
inline Vec derivatives(const VecT<D1>& v) {
  Vec out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = v[i].der;
  return out;
}

/// Dense Gaussian elimination with partial pivoting on the real part; works
/// for any scalar that `value_of` understands.
template <class T>
VecT<T> solve_square(MatT<T> a, VecT<T> b) {
  using std::abs;
  const Eigen::Index n = a.rows();
  if (a.cols() != n || b.size() != n) throw std::invalid_argument("solve_square: shape mismatch");
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index piv = k;
    double best = std::abs(value_of(a(k, k)));
    for (Eigen::Index i = k + 1; i < n; ++i) {
      const double cand = std::abs(value_of(a(i, k)));
      if (cand > best) {
        best = cand;
        piv = i;
      }
    }
    if (best < 1e-14) throw std::runtime_error("solve_square: singular matrix");
    if (piv != k) {
      a.row(k).swap(a.row(piv));
      std::swap(b[k], b[piv]);
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      const T factor = a(i, k) / a(k, k);
      for (Eigen::Index j = k; j < n; ++j) a(i, j) -= factor * a(k, j);
      b[i] -= factor * b[k];
    }
  }
  VecT<T> x(n);
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    T s = b[i];
    for (Eigen::Index j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
    x[i] = s / a(i, i);
  }
  return x;
}

/// Numerical rank by SVD with an absolute cutoff on singular values.
inline int numerical_rank(const Mat& m, double cutoff = kRankCutoff) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(m);
  int r = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > cutoff) ++r;
  return r;
}

/// Orthonormal basis (columns) of the column span of `m`, by pivoted
/// Gram-Schmidt. The column with the largest remaining norm is taken first;
/// ties go to the lower index so the result is deterministic.
inline Mat orthonormal_span(const Mat& m, double cutoff = kRankCutoff) {
  std::vector<Vec> residual;
  residual.reserve(m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j) residual.emplace_back(m.col(j));
  std::vector<bool> used(residual.size(), false);
  std::vector<Vec> basis;
  for (;;) {
    int best = -1;
    double best_norm = cutoff;
    for (std::size_t j = 0; j < residual.size(); ++j) {
      if (used[j]) continue;
      const double nj = residual[j].norm();
      if (nj > best_norm * (1.0 + 1e-12)) {
        best_norm = nj;
        best = static_cast<int>(j);
      }
    }
    if (best < 0) break;
    used[best] = true;
    Vec e = residual[best] / best_norm;
    // A second pass keeps orthogonality at machine precision.
    for (const Vec& b : basis) e -= b.dot(e) * b;
    e.normalize();
    basis.push_back(e);
    for (std::size_t j = 0; j < residual.size(); ++j)
      if (!used[j]) residual[j] -= e.dot(residual[j]) * e;
  }
  Mat out(m.rows(), static_cast<Eigen::Index>(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = basis[j];
  return out;
}

/// Largest principal angle between the column spans of two orthonormal bases.
inline double max_principal_angle(const Mat& a, const Mat& b) {
  if (a.cols() != b.cols()) return M_PI / 2;
  if (a.cols() == 0) return 0.0;
  // sin of the largest angle is the spectral norm of (I - A A^T) B; this
  // stays accurate for small angles where acos of a cosine does not.
  const Mat residual = b - a * (a.transpose() * b);
  Eigen::JacobiSVD<Mat> svd(residual);
  return std::asin(std::min(1.0, svd.singularValues().maxCoeff()));
}

/// Orthonormal basis of the null space of `m` (columns), via SVD.
inline Mat null_space(const Mat& m, double cutoff = kRankCutoff) {
  const Eigen::Index n = m.cols();
  if (m.rows() == 0) return Mat::Identity(n, n);
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  int r = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > cutoff) ++r;
  return svd.matrixV().rightCols(n - r);
}

}  // namespace contactred
