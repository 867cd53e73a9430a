#include <doctest.h>

#include "fixtures.hpp"

#include "nsforge/error.hpp"
#include "nsforge/lattice.hpp"
#include "nsforge/linalg.hpp"
#include "nsforge/symplectic.hpp"

using namespace nsforge;
using fixtures::eta0;

namespace {

IntMatrix cols(int rows, std::initializer_list<std::initializer_list<int>> columns) {
  IntMatrix m = IntMatrix::Zero(rows, static_cast<Eigen::Index>(columns.size()));
  Eigen::Index c = 0;
  for (auto col : columns) {
    Eigen::Index r = 0;
    for (int x : col) m(r++, c) = x;
    ++c;
  }
  return m;
}

IntMatrix block_form(const FrobeniusData& f) {
  const auto k = static_cast<Eigen::Index>(f.divisors.size());
  IntMatrix m = IntMatrix::Zero(2 * k, 2 * k);
  for (Eigen::Index i = 0; i < k; ++i) {
    m(i, k + i) = f.divisors[i];
    m(k + i, i) = -f.divisors[i];
  }
  return m;
}

}  // namespace

TEST_CASE("is_symplectic") {
  CHECK(is_symplectic(identity_int(4)));
  CHECK(is_symplectic(standard_J(3)));
  CHECK_FALSE(is_symplectic(IntMatrix(identity_int(4) * BigInt(2))));
  CHECK_THROWS_AS(is_symplectic(identity_int(3)), Error);
}

TEST_CASE("random_symplectic") {
  CHECK(random_symplectic(3, 7, 0) == identity_int(6));
  for (int n = 1; n <= 4; ++n)
    for (std::uint64_t seed = 0; seed < 10; ++seed) CHECK(is_symplectic(random_symplectic(n, seed, 20)));
  CHECK(random_symplectic(3, 99, 15) == random_symplectic(3, 99, 15));
  CHECK(random_symplectic(3, 99, 15) != random_symplectic(3, 100, 15));
}

TEST_CASE("act") {
  const TwoForm e = eta0();
  CHECK(act(identity_int(8), e) == e);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const IntMatrix s1 = random_symplectic(4, seed, 12);
    const IntMatrix s2 = random_symplectic(4, seed + 50, 12);
    CHECK(act(s1, theta(4)) == theta(4));
    CHECK(act(IntMatrix(s1 * s2), e) == act(s1, act(s2, e)));
    CHECK(intersection_profile(act(s1, e)) == intersection_profile(e));
  }
  CHECK_THROWS_AS(act(identity_int(4), e), Error);
}

TEST_CASE("hermite and kernel") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    IntMatrix a(3, 5);
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      for (Eigen::Index j = 0; j < a.cols(); ++j) a(i, j) = static_cast<int>(rng() % 7) - 3;
    if (trial % 4 == 0) a.row(2) = a.row(0) * BigInt(2) - a.row(1);
    const HermiteForm hf = row_hermite(a);
    CHECK(IntMatrix(hf.q * a) == hf.h);
    CHECK(abs(determinant(hf.q)) == 1);
    const IntMatrix k = integer_kernel(a);
    CHECK(k.cols() == a.cols() - rank(a));
    CHECK(is_zero_matrix(IntMatrix(a * k)));
  }
}

TEST_CASE("smith invariants and characteristic polynomial") {
  IntMatrix a(2, 2);
  a << 2, 4, 6, 8;
  CHECK(smith_invariants(a) == DivisorList{2, 4});
  const auto c = characteristic_polynomial(identity_int(3));
  CHECK(c == std::vector<BigInt>{-1, 3, -3, 1});
}

TEST_CASE("saturate") {
  CHECK(saturate(cols(2, {{2, 0}})).basis == cols(2, {{1, 0}}));
  const IntMatrix n0 = standard_J(4) * eta0().matrix();
  const IntegerLattice sat = saturate(n0);
  CHECK(sat.rank() == 4);
  CHECK(sat.basis == cols(8, {{1, -1, 0, 0, 0, 0, 0, 0},
                              {0, 0, 1, -1, 0, 0, 0, 0},
                              {0, 0, 0, 0, 1, -1, 0, 0},
                              {0, 0, 0, 0, 0, 0, 1, -1}}));
  CHECK(saturate(random_symplectic(2, 1, 9)).basis == identity_int(4));
  CHECK(smith_invariants(sat.basis) == DivisorList(4, 1));
  CHECK_THROWS_AS(saturate(IntMatrix::Zero(4, 2)), Error);
}

TEST_CASE("frobenius basis") {
  IntMatrix g(2, 2);
  g << 0, 1, -1, 0;
  CHECK(frobenius_basis(g).divisors == DivisorList{1});
  g << 0, 2, -2, 0;
  CHECK(frobenius_basis(g).divisors == DivisorList{2});

  const IntMatrix lam = saturate(IntMatrix(standard_J(4) * eta0().matrix())).basis;
  const IntMatrix gram = standard_gram(lam);
  const FrobeniusData f = frobenius_basis(gram);
  CHECK(f.divisors == DivisorList{2, 2});
  CHECK(IntMatrix(f.u.transpose() * gram * f.u) == block_form(f));
  CHECK(frobenius_basis(IntMatrix(-gram)).divisors == f.divisors);

  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const int k = 1 + trial % 3;
    IntMatrix m = IntMatrix::Zero(2 * k, 2 * k);
    for (int i = 0; i < 2 * k; ++i)
      for (int j = i + 1; j < 2 * k; ++j) {
        m(i, j) = static_cast<int>(rng() % 13) - 6;
        m(j, i) = -m(i, j);
      }
    if (determinant(m) == 0) continue;
    const FrobeniusData fd = frobenius_basis(m);
    CHECK(IntMatrix(fd.u.transpose() * m * fd.u) == block_form(fd));
    CHECK(abs(determinant(fd.u)) == 1);
    for (std::size_t i = 0; i + 1 < fd.divisors.size(); ++i) CHECK(fd.divisors[i + 1] % fd.divisors[i] == 0);
    const DivisorList sn = smith_invariants(m);
    for (int i = 0; i < k; ++i) CHECK(sn[2 * i] == fd.divisors[i]);
  }
  CHECK_THROWS_AS(frobenius_basis(IntMatrix::Zero(2, 2)), Error);
  IntMatrix sym(2, 2);
  sym << 0, 1, 1, 0;
  CHECK_THROWS_AS(frobenius_basis(sym), Error);
}
