#include <doctest.h>

#include "fixtures.hpp"

#include "nsforge/error.hpp"
#include "nsforge/humbert.hpp"

using namespace nsforge;
using fixtures::form;

namespace {

SingularDatum datum(long a, long b, long c, long d, long e, long m) { return {a, b, c, d, e, m}; }

}  // namespace

TEST_CASE("eta_from_singular") {
  for (int m = 1; m <= 5; ++m) {
    const TwoForm e = eta_from_singular(datum(1, m, 0, 0, 0, m));
    CHECK(e == form(2, {{1, 3, -m}, {2, 3, 1}}));
    CHECK(e == elliptic_class(m, 2));
    CHECK(check_class(e) == ClassInvariants{1, m});
  }
  const TwoForm e = eta_from_singular(datum(0, 1, 0, 0, 0, 1));
  CHECK(e == form(2, {{1, 3, -1}}));
  CHECK(check_class(e) == ClassInvariants{1, 1});
  CHECK_THROWS_AS(eta_from_singular(datum(0, 2, 0, 1, -1, 2)), Error);
  CHECK_THROWS_AS(eta_from_singular(datum(0, 1, 0, 0, 0, 2)), Error);
  CHECK_THROWS_AS(eta_from_singular(datum(0, 2, 0, 0, 0, 2)), Error);
}

TEST_CASE("singular_from_eta") {
  CHECK(singular_from_eta(form(2, {{1, 3, -3}, {2, 3, 1}})) == datum(1, 3, 0, 0, 0, 3));
  CHECK_THROWS_AS(singular_from_eta(theta(2)), Error);
  CHECK_THROWS_AS(singular_from_eta(theta(3)), Error);
  std::mt19937_64 rng(17);
  int tested = 0;
  while (tested < 100) {
    auto r = [&] { return static_cast<long>(rng() % 13) - 6; };
    const long a = r(), b = r(), c = r(), d = r(), e = r();
    const BigInt disc = BigInt(b * b - 4 * (a * c + d * e));
    if (disc <= 0) continue;
    const BigInt m = sqrt(disc);
    if (m * m != disc || m > 10) continue;
    if (gcd(gcd(gcd(BigInt(a), BigInt(b)), gcd(BigInt(c), BigInt(d))), BigInt(e)) != 1) continue;
    const SingularDatum s{a, b, c, d, e, m};
    const TwoForm eta = eta_from_singular(s);
    CHECK(singular_from_eta(eta) == s);
    const auto p = intersection_profile(eta);
    CHECK(p.at(1) == m);
    CHECK(p.at(2) == 0);
    ++tested;
  }
}

TEST_CASE("elliptic classes") {
  CHECK(elliptic_class(1, 2) == form(2, {{1, 3, -1}, {2, 3, 1}}));
  CHECK(check_class(elliptic_class(3, 4)) == ClassInvariants{1, 3});
  CHECK(is_primitive(elliptic_class(4, 3)));
  CHECK_THROWS_AS(elliptic_class(0, 3), Error);
  CHECK_THROWS_AS(elliptic_class(1, 1), Error);
}

TEST_CASE("humbert relation matches the classical polynomial") {
  std::mt19937_64 rng(5);
  for (long a = -2; a <= 2; ++a)
    for (long b = -2; b <= 2; ++b)
      for (long d = -2; d <= 2; ++d) {
        const long c = 1, e = 1;
        const long disc = b * b - 4 * (a * c + d * e);
        if (disc <= 0) continue;
        const long m = static_cast<long>(std::lround(std::sqrt(static_cast<double>(disc))));
        if (m * m != disc) continue;
        const SingularDatum s = datum(a, b, c, d, e, m);
        const RelationSet rs = humbert_relation(s);
        REQUIRE(rs.polynomials.size() == 1);
        const Polynomial& p = rs.polynomials[0];
        CHECK((p == humbert_polynomial(s) || p == -humbert_polynomial(s)));
        // wedge test and polynomial agree on and off the locus
        const bool on = p.evaluate(fixtures::random_exact_tau(2, rng)).is_zero();
        CHECK_FALSE(on);
      }
}

TEST_CASE("wedge test agrees with the Humbert polynomial on its locus") {
  // s = (1, m, 0, 0, 0): tau_11 + m tau_12 = 0
  for (int m = 1; m <= 4; ++m) {
    ExactTau t(2, 2);
    t << GaussianRational(Rational(m), Rational(m)), GaussianRational(Rational(-1), Rational(-1)),
        GaussianRational(Rational(-1), Rational(-1)), GaussianRational(Rational(0), Rational(3));
    const SingularDatum s = datum(1, m, 0, 0, 0, m);
    CHECK(humbert_polynomial(s).evaluate(t).is_zero());
    CHECK(wedge_vanishes(eta_from_singular(s), t));
    t(1, 1) = GaussianRational(Rational(1), Rational(3));
    CHECK(wedge_vanishes(eta_from_singular(s), t));
    t(0, 0) = GaussianRational(Rational(m + 1), Rational(m));
    CHECK_FALSE(wedge_vanishes(eta_from_singular(s), t));
  }
}
