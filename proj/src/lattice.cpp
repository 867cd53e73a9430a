#include "nsforge/lattice.hpp"

#include "nsforge/error.hpp"
#include "nsforge/linalg.hpp"

namespace nsforge {

namespace {

// Extended gcd: u a + v b = g with g >= 0.
void xgcd(const BigInt& a, const BigInt& b, BigInt& g, BigInt& u, BigInt& v) {
  BigInt r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    const BigInt q = floor_div(r0, r1);
    BigInt tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = s0 - q * s1;
    s0 = s1;
    s1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (r0 < 0) {
    r0 = -r0;
    s0 = -s0;
    t0 = -t0;
  }
  g = r0;
  u = s0;
  v = t0;
}

void swap_rows(IntMatrix& m, Eigen::Index i, Eigen::Index j) {
  if (i != j) m.row(i).swap(m.row(j));
}

}  // namespace

HermiteForm row_hermite(const IntMatrix& a) {
  HermiteForm out{a, identity_int(a.rows()), 0};
  IntMatrix& h = out.h;
  IntMatrix& q = out.q;
  const Eigen::Index rows = h.rows();
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < h.cols() && r < rows; ++c) {
    Eigen::Index first = -1;
    for (Eigen::Index i = r; i < rows; ++i)
      if (h(i, c) != 0) {
        first = i;
        break;
      }
    if (first < 0) continue;
    swap_rows(h, r, first);
    swap_rows(q, r, first);
    for (Eigen::Index i = r + 1; i < rows; ++i) {
      if (h(i, c) == 0) continue;
      BigInt g, x, y;
      xgcd(h(r, c), h(i, c), g, x, y);
      const BigInt p = h(r, c) / g;
      const BigInt s = h(i, c) / g;
      // [x y; -s p] has determinant 1
      const IntMatrix hr = h.row(r), hi = h.row(i);
      h.row(r) = hr * x + hi * y;
      h.row(i) = hi * p - hr * s;
      const IntMatrix qr = q.row(r), qi = q.row(i);
      q.row(r) = qr * x + qi * y;
      q.row(i) = qi * p - qr * s;
    }
    if (h(r, c) < 0) {
      h.row(r) = -h.row(r);
      q.row(r) = -q.row(r);
    }
    for (Eigen::Index i = 0; i < r; ++i) {
      const BigInt f = floor_div(h(i, c), h(r, c));
      if (f != 0) {
        h.row(i) -= h.row(r) * f;
        q.row(i) -= q.row(r) * f;
      }
    }
    ++r;
  }
  out.rank = r;
  return out;
}

IntMatrix integer_kernel(const IntMatrix& a) {
  const HermiteForm hf = row_hermite(a.transpose());
  const Eigen::Index k = a.cols() - hf.rank;
  if (k == 0) return IntMatrix(a.cols(), 0);
  return column_basis(hf.q.bottomRows(k).transpose());
}

IntMatrix column_basis(const IntMatrix& a) {
  const HermiteForm hf = row_hermite(a.transpose());
  return hf.h.topRows(hf.rank).transpose();
}

DivisorList smith_invariants(IntMatrix a) {
  DivisorList out;
  const Eigen::Index rows = a.rows(), cols = a.cols();
  for (Eigen::Index t = 0; t < std::min(rows, cols); ++t) {
    bool settled = false;
    while (!settled) {
      Eigen::Index pi = -1, pj = -1;
      for (Eigen::Index i = t; i < rows; ++i)
        for (Eigen::Index j = t; j < cols; ++j)
          if (a(i, j) != 0 && (pi < 0 || abs(a(i, j)) < abs(a(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi < 0) return out;
      swap_rows(a, t, pi);
      if (pj != t) a.col(t).swap(a.col(pj));
      bool clean = true;
      for (Eigen::Index i = t + 1; i < rows; ++i) {
        const BigInt f = floor_div(a(i, t), a(t, t));
        if (f != 0) a.row(i) -= a.row(t) * f;
        if (a(i, t) != 0) clean = false;
      }
      for (Eigen::Index j = t + 1; j < cols; ++j) {
        const BigInt f = floor_div(a(t, j), a(t, t));
        if (f != 0) a.col(j) -= a.col(t) * f;
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      settled = true;
      for (Eigen::Index i = t + 1; i < rows && settled; ++i)
        for (Eigen::Index j = t + 1; j < cols; ++j)
          if (a(i, j) % a(t, t) != 0) {
            a.row(t) += a.row(i);
            settled = false;
            break;
          }
    }
    out.push_back(abs(a(t, t)));
  }
  return out;
}

std::vector<BigInt> characteristic_polynomial(const IntMatrix& a) {
  // Faddeev-LeVerrier; every division is exact over Z.
  const Eigen::Index k = a.rows();
  std::vector<BigInt> c(static_cast<std::size_t>(k + 1), 0);
  c[k] = 1;
  IntMatrix m = IntMatrix::Zero(k, k);
  for (Eigen::Index step = 1; step <= k; ++step) {
    m = a * m;
    for (Eigen::Index i = 0; i < k; ++i) m(i, i) += c[k - step + 1];
    const IntMatrix am = a * m;
    BigInt tr = 0;
    for (Eigen::Index i = 0; i < k; ++i) tr += am(i, i);
    if (tr % step != 0) fail(ErrorCode::InternalError, "characteristic polynomial division");
    c[k - step] = -tr / step;
  }
  return c;
}

BigInt lattice_index(const IntMatrix& basis) {
  if (basis.rows() != basis.cols()) fail(ErrorCode::DimensionMismatch, "basis is not square");
  return abs(determinant(basis));
}

}  // namespace nsforge
