#include "nsforge/symplectic.hpp"

#include "nsforge/error.hpp"
#include "nsforge/lattice.hpp"
#include "nsforge/linalg.hpp"

#include <random>

namespace nsforge {

bool is_symplectic(const IntMatrix& s) {
  if (s.rows() != s.cols()) fail(ErrorCode::DimensionMismatch, "matrix is not square");
  if (s.rows() % 2 != 0) fail(ErrorCode::OddDimension, "matrix size must be even");
  const IntMatrix j = standard_J(static_cast<int>(s.rows() / 2));
  return IntMatrix(s * j * s.transpose()) == j;
}

TwoForm act(const IntMatrix& s, const TwoForm& eta) {
  if (s.rows() != eta.dim() || s.cols() != eta.dim())
    fail(ErrorCode::DimensionMismatch, "symplectic matrix and form differ in size");
  if (!is_symplectic(s)) fail(ErrorCode::NotSymplectic, "matrix is not symplectic");
  return TwoForm(eta.n(), s * eta.matrix() * s.transpose());
}

IntMatrix random_symplectic(int n, std::uint64_t seed, int word_length) {
  if (n < 1) fail(ErrorCode::RangeError, "n must be positive");
  if (word_length < 0) fail(ErrorCode::RangeError, "word length must be non-negative");
  const int dim = 2 * n;
  const IntMatrix j = standard_J(n);
  std::vector<IntVector> directions;
  for (int i = 0; i < dim; ++i) {
    IntVector v = IntVector::Zero(dim);
    v(i) = 1;
    directions.push_back(v);
  }
  for (int i = 0; i < dim; ++i)
    for (int k = i + 1; k < dim; ++k) {
      IntVector v = IntVector::Zero(dim);
      v(i) = 1;
      v(k) = 1;
      directions.push_back(v);
    }
  const std::uint64_t choices = 2 * directions.size() + 1;
  std::mt19937_64 rng(seed);
  IntMatrix s = identity_int(dim);
  for (int step = 0; step < word_length; ++step) {
    const std::uint64_t pick = rng() % choices;
    if (pick == choices - 1) {
      s = IntMatrix(s * j);
      continue;
    }
    const IntVector& v = directions[pick / 2];
    const IntMatrix vvj = v * (v.transpose() * j);
    const IntMatrix t = (pick % 2 == 0) ? IntMatrix(identity_int(dim) - vvj) : IntMatrix(identity_int(dim) + vvj);
    s = IntMatrix(s * t);
  }
  return s;
}

IntegerLattice saturate(const IntMatrix& vectors) {
  if (vectors.cols() == 0 || is_zero_matrix(vectors)) fail(ErrorCode::ZeroInput, "no nonzero vectors");
  const IntMatrix orth = integer_kernel(vectors.transpose());
  IntegerLattice out;
  out.ambient = static_cast<int>(vectors.rows());
  if (orth.cols() == 0)
    out.basis = identity_int(vectors.rows());
  else
    out.basis = integer_kernel(orth.transpose());
  return out;
}

IntMatrix standard_gram(const IntMatrix& basis) {
  const IntMatrix j = standard_J(static_cast<int>(basis.rows() / 2));
  return basis.transpose() * j * basis;
}

FrobeniusData frobenius_basis(const IntMatrix& g0) {
  const Eigen::Index size = g0.rows();
  if (g0.cols() != size) fail(ErrorCode::NotAlternating, "Gram matrix is not square");
  for (Eigen::Index i = 0; i < size; ++i)
    for (Eigen::Index k = i; k < size; ++k)
      if (g0(i, k) != -g0(k, i)) fail(ErrorCode::NotAlternating, "Gram matrix is not alternating");
  if (size % 2 != 0 || determinant(g0) == 0) fail(ErrorCode::Degenerate, "pairing is degenerate");

  IntMatrix b = identity_int(size);
  DivisorList divisors;
  for (Eigen::Index s = 0; s < size; s += 2) {
    while (true) {
      const IntMatrix g = b.transpose() * g0 * b;
      Eigen::Index pi = -1, pj = -1;
      for (Eigen::Index i = s; i < size; ++i)
        for (Eigen::Index k = i + 1; k < size; ++k)
          if (g(i, k) != 0 && (pi < 0 || abs(g(i, k)) < abs(g(pi, pj)))) {
            pi = i;
            pj = k;
          }
      if (pi < 0) fail(ErrorCode::Degenerate, "pairing is degenerate");
      if (pi != s) b.col(pi).swap(b.col(s));
      // pj may have been the column just moved out of slot s
      const Eigen::Index partner = (pj == s) ? pi : pj;
      if (partner != s + 1) b.col(partner).swap(b.col(s + 1));
      IntMatrix cur = b.transpose() * g0 * b;
      if (cur(s, s + 1) < 0) {
        b.col(s + 1) = -b.col(s + 1);
        cur = b.transpose() * g0 * b;
      }
      const BigInt p = cur(s, s + 1);
      bool clean = true;
      for (Eigen::Index t = s + 2; t < size; ++t) {
        const BigInt qa = floor_div(cur(s, t), p);
        const BigInt qb = floor_div(cur(s + 1, t), p);
        if (qa != 0) b.col(t) -= b.col(s + 1) * qa;
        if (qb != 0) b.col(t) += b.col(s) * qb;
        if (cur(s, t) - qa * p != 0 || cur(s + 1, t) - qb * p != 0) clean = false;
      }
      if (!clean) continue;
      const IntMatrix red = b.transpose() * g0 * b;
      Eigen::Index bad = -1;
      for (Eigen::Index i = s + 2; i < size && bad < 0; ++i)
        for (Eigen::Index k = i + 1; k < size; ++k)
          if (red(i, k) % p != 0) {
            bad = i;
            break;
          }
      if (bad >= 0) {
        b.col(s) += b.col(bad);
        continue;
      }
      divisors.push_back(p);
      break;
    }
  }
  const Eigen::Index k = size / 2;
  FrobeniusData out{IntMatrix(size, size), divisors};
  for (Eigen::Index i = 0; i < k; ++i) {
    out.u.col(i) = b.col(2 * i);
    out.u.col(k + i) = b.col(2 * i + 1);
  }
  return out;
}

}  // namespace nsforge
