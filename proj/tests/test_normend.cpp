#include <doctest.h>

#include "fixtures.hpp"

#include "nsforge/error.hpp"
#include "nsforge/humbert.hpp"
#include "nsforge/lattice.hpp"
#include "nsforge/linalg.hpp"
#include "nsforge/normend.hpp"

using namespace nsforge;
using fixtures::eta0;
using fixtures::form;

namespace {

IntMatrix eta0_norm() {
  IntMatrix n = IntMatrix::Zero(8, 8);
  for (int b = 0; b < 4; ++b) {
    n(2 * b, 2 * b) = 1;
    n(2 * b, 2 * b + 1) = -1;
    n(2 * b + 1, 2 * b) = -1;
    n(2 * b + 1, 2 * b + 1) = 1;
  }
  return n;
}

// E1 x E2 x E3 with product polarization: the classes of the factors
TwoForm factor_class(int n, std::initializer_list<int> factors) {
  IntMatrix m = IntMatrix::Zero(2 * n, 2 * n);
  for (int f : factors) {
    m(f, n + f) = -1;
    m(n + f, f) = 1;
  }
  return TwoForm(n, m);
}

}  // namespace

TEST_CASE("norm_from_class") {
  const NormMatrix t = norm_from_class(theta(3));
  CHECK(t.N == identity_int(6));
  CHECK(t.u == 3);
  CHECK(t.d == 1);

  const NormMatrix e = norm_from_class(eta0());
  CHECK(e.N == eta0_norm());
  CHECK(e.u == 2);
  CHECK(e.d == 2);

  for (int m = 1; m <= 4; ++m) {
    const NormMatrix em = norm_from_class(elliptic_class(m, 3));
    CHECK(em.u == 1);
    CHECK(em.d == m);
    CHECK(rank(em.N) == 2);
  }
  // rank 4 and trace 4, yet N is not a multiple of a projection
  CHECK_THROWS_WITH_AS(norm_from_class(form(2, {{1, 3, -1}, {2, 4, -1}, {1, 2, 1}})), doctest::Contains("N^2"),
                       Error);
}

TEST_CASE("class_from_norm round trip") {
  CHECK(class_from_norm(NormMatrix{3, identity_int(6), 3, 1}) == theta(3));
  CHECK(class_from_norm(NormMatrix{4, eta0_norm(), 2, 2}) == eta0());
  IntMatrix bad = IntMatrix::Zero(4, 4);
  bad(0, 1) = 1;
  CHECK_THROWS_AS(class_from_norm(NormMatrix{2, bad, 1, 1}), Error);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const TwoForm x = act(random_symplectic(4, seed, 10), eta0());
    CHECK(class_from_norm(norm_from_class(x)) == x);
  }
}

TEST_CASE("analyze eta0 and theta") {
  const SubvarietyReport r = analyze(eta0());
  CHECK(r.u == 2);
  CHECK(r.d == 2);
  CHECK(r.type == DivisorList{2, 2});
  CHECK(r.image.rank() == 4);
  CHECK(r.kernel.rank() == 4);
  CHECK(r.complement == TwoForm(4, PrincipalClass{4}.matrix() * BigInt(2) - eta0().matrix()));
  CHECK(r.complement_type == DivisorList{2, 2});

  const SubvarietyReport t = analyze(theta(3));
  CHECK(t.type == DivisorList{1, 1, 1});
  CHECK(t.image.basis == identity_int(6));
  CHECK(t.kernel.rank() == 0);
  CHECK(t.complement.is_zero());
}

TEST_CASE("type is an orbit invariant and independent of the sign of J") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const IntMatrix s = random_symplectic(4, seed, 15);
    const SubvarietyReport r = analyze(act(s, eta0()));
    CHECK(r.type == DivisorList{2, 2});
    CHECK(r.u == 2);
    CHECK(r.d == 2);
    CHECK(frobenius_basis(IntMatrix(-standard_gram(r.image.basis))).divisors == r.type);
  }
}

TEST_CASE("complementary class") {
  CHECK(complementary_class(theta(3)).is_zero());
  const TwoForm c = complementary_class(eta0());
  CHECK(check_class(c) == ClassInvariants{2, 2});
  CHECK(complementary_class(c) == eta0());
  const TwoForm e = elliptic_class(2, 3);
  CHECK(complementary_class(complementary_class(e)) == e);
  // Bauer identity
  const BigInt d = 2;
  CHECK(IntMatrix(PrincipalClass{4}.matrix() * (d * d) - eta0().matrix() * d) == IntMatrix(c.matrix() * d));
}

TEST_CASE("polynomial certificates") {
  const auto t = polynomial_certificate(NormMatrix{3, identity_int(6), 3, 1});
  CHECK(t.char_ok);
  CHECK(t.min_ok);
  const auto e = polynomial_certificate(norm_from_class(eta0()));
  CHECK(e.char_ok);
  CHECK(e.min_ok);
  CHECK(characteristic_polynomial(eta0_norm()) == std::vector<BigInt>{0, 0, 0, 0, 16, -32, 24, -8, 1});
  IntMatrix bad = eta0_norm();
  bad(0, 0) = 2;
  CHECK_FALSE(polynomial_certificate(NormMatrix{4, bad, 2, 2}).min_ok);
}

TEST_CASE("elliptic in divisor on a product of three elliptic curves") {
  const TwoForm e1 = factor_class(3, {0});
  const TwoForm e3 = factor_class(3, {2});
  const TwoForm z12 = factor_class(3, {0, 1});
  CHECK(elliptic_in_divisor(e1, z12));
  CHECK_FALSE(elliptic_in_divisor(e3, z12));
  const TwoForm e1b = factor_class(4, {0});
  CHECK(elliptic_in_divisor(e1b, factor_class(4, {0, 1, 2})));
  CHECK_FALSE(elliptic_in_divisor(factor_class(4, {3}), factor_class(4, {0, 1, 2})));
  CHECK_THROWS_AS(elliptic_in_divisor(z12, e1), Error);
  CHECK_THROWS_AS(elliptic_in_divisor(factor_class(2, {0}), factor_class(2, {1})), Error);
}
