#include "nsforge/linalg.hpp"

namespace nsforge {

BigInt determinant(IntMatrix a) {
  if (a.rows() != a.cols()) fail(ErrorCode::DimensionMismatch, "determinant of a non-square matrix");
  const Eigen::Index k = a.rows();
  if (k == 0) return 1;
  BigInt sign = 1;
  BigInt prev = 1;
  for (Eigen::Index p = 0; p < k; ++p) {
    if (a(p, p) == 0) {
      Eigen::Index r = p + 1;
      while (r < k && a(r, p) == 0) ++r;
      if (r == k) return 0;
      a.row(p).swap(a.row(r));
      sign = -sign;
    }
    for (Eigen::Index i = p + 1; i < k; ++i) {
      for (Eigen::Index j = p + 1; j < k; ++j) a(i, j) = (a(i, j) * a(p, p) - a(i, p) * a(p, j)) / prev;
      a(i, p) = 0;
    }
    prev = a(p, p);
  }
  return sign * a(k - 1, k - 1);
}

Eigen::Index rank(const IntMatrix& m) {
  IntMatrix a = m;
  Eigen::Index row = 0;
  BigInt prev = 1;
  for (Eigen::Index col = 0; col < a.cols() && row < a.rows(); ++col) {
    Eigen::Index piv = row;
    while (piv < a.rows() && a(piv, col) == 0) ++piv;
    if (piv == a.rows()) continue;
    a.row(piv).swap(a.row(row));
    for (Eigen::Index i = row + 1; i < a.rows(); ++i) {
      for (Eigen::Index j = col + 1; j < a.cols(); ++j)
        a(i, j) = (a(i, j) * a(row, col) - a(i, col) * a(row, j)) / prev;
      a(i, col) = 0;
    }
    prev = a(row, col);
    ++row;
  }
  return row;
}

}  // namespace nsforge
