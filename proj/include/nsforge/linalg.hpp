#pragma once

// Field-generic Gauss-Jordan elimination. Exact fields (Rational,
// GaussianRational) pivot on the first nonzero entry; float fields pivot on the
// largest magnitude and treat entries below a relative threshold as zero.

#include "nsforge/error.hpp"
#include "nsforge/types.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace nsforge {

template <class F>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
  static constexpr bool exact = true;
  static bool is_zero(const Rational& x, double) { return x == 0; }
  static double magnitude(const Rational& x) { return std::abs(x.convert_to<double>()); }
};

template <>
struct FieldTraits<GaussianRational> {
  static constexpr bool exact = true;
  static bool is_zero(const GaussianRational& x, double) { return x.is_zero(); }
  static double magnitude(const GaussianRational& x) {
    return std::sqrt(x.norm().convert_to<double>());
  }
};

template <>
struct FieldTraits<double> {
  static constexpr bool exact = false;
  static bool is_zero(double x, double tol) { return std::abs(x) <= tol; }
  static double magnitude(double x) { return std::abs(x); }
};

template <>
struct FieldTraits<FloatComplex> {
  static constexpr bool exact = false;
  static bool is_zero(const FloatComplex& x, double tol) { return std::abs(x) <= tol; }
  static double magnitude(const FloatComplex& x) { return std::abs(x); }
};

template <class F>
struct Echelon {
  Mat<F> reduced;
  std::vector<Eigen::Index> pivots;  // pivot column of each nonzero row
  Eigen::Index rank() const { return static_cast<Eigen::Index>(pivots.size()); }
};

/// Reduced row echelon form. `rel_tol` only matters for float fields, where it
/// is scaled by the largest entry of the input.
template <class F>
Echelon<F> rref(Mat<F> a, double rel_tol = 1e-10) {
  using T = FieldTraits<F>;
  double scale = 0.0;
  if constexpr (!T::exact) {
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      for (Eigen::Index j = 0; j < a.cols(); ++j) scale = std::max(scale, T::magnitude(a(i, j)));
  }
  const double tol = rel_tol * (scale > 0 ? scale : 1.0);

  Echelon<F> out;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < a.cols() && row < a.rows(); ++col) {
    Eigen::Index piv = -1;
    if constexpr (T::exact) {
      for (Eigen::Index r = row; r < a.rows(); ++r)
        if (!T::is_zero(a(r, col), tol)) {
          piv = r;
          break;
        }
    } else {
      double best = tol;
      for (Eigen::Index r = row; r < a.rows(); ++r)
        if (T::magnitude(a(r, col)) > best) {
          best = T::magnitude(a(r, col));
          piv = r;
        }
    }
    if (piv < 0) continue;
    if (piv != row) a.row(piv).swap(a.row(row));
    const F inv = F(1) / a(row, col);
    for (Eigen::Index j = 0; j < a.cols(); ++j) a(row, j) = a(row, j) * inv;
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
      if (r == row || T::is_zero(a(r, col), 0.0)) continue;
      const F f = a(r, col);
      for (Eigen::Index j = 0; j < a.cols(); ++j) a(r, j) = a(r, j) - f * a(row, j);
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.reduced = std::move(a);
  return out;
}

template <class F>
Eigen::Index rank(const Mat<F>& a, double rel_tol = 1e-10) {
  return rref<F>(a, rel_tol).rank();
}

/// Column basis of the right null space, one basis vector per free column.
template <class F>
Mat<F> nullspace(const Mat<F>& a, double rel_tol = 1e-10) {
  const Echelon<F> e = rref<F>(a, rel_tol);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Eigen::Index> free;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    if (!is_pivot[j]) free.push_back(j);
  Mat<F> basis(a.cols(), static_cast<Eigen::Index>(free.size()));
  for (Eigen::Index k = 0; k < basis.cols(); ++k) {
    for (Eigen::Index i = 0; i < basis.rows(); ++i) basis(i, k) = F(0);
    basis(free[k], k) = F(1);
    for (Eigen::Index r = 0; r < e.rank(); ++r) basis(e.pivots[r], k) = -e.reduced(r, free[k]);
  }
  return basis;
}

template <class F>
Mat<F> inverse(const Mat<F>& a) {
  if (a.rows() != a.cols()) fail(ErrorCode::DimensionMismatch, "inverse of a non-square matrix");
  const Eigen::Index k = a.rows();
  Mat<F> aug(k, 2 * k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) {
      aug(i, j) = a(i, j);
      aug(i, k + j) = (i == j) ? F(1) : F(0);
    }
  const Echelon<F> e = rref<F>(aug);
  if (e.rank() < k || e.pivots[k - 1] != k - 1) fail(ErrorCode::Degenerate, "matrix is singular");
  return e.reduced.rightCols(k);
}

/// Exact determinant by fraction-free (Bareiss) elimination.
BigInt determinant(IntMatrix a);

/// Exact rank of an integer matrix.
Eigen::Index rank(const IntMatrix& a);

}  // namespace nsforge
