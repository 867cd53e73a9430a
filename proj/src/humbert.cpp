#include "nsforge/humbert.hpp"

#include "nsforge/error.hpp"

namespace nsforge {

void validate(const SingularDatum& s) {
  if (s.m < 1) fail(ErrorCode::RangeError, "m must be positive");
  BigInt g = gcd(gcd(gcd(s.a, s.b), gcd(s.c, s.d)), s.e);
  if (g != 1) fail(ErrorCode::NotPrimitive, "singular datum is not primitive");
  if ((s.b - s.m) % 2 != 0) fail(ErrorCode::ParityError, "b and m have different parity");
  if (s.b * s.b - 4 * (s.a * s.c + s.d * s.e) != s.m * s.m)
    fail(ErrorCode::DiscriminantError, "discriminant differs from m^2");
}

TwoForm eta_from_singular(const SingularDatum& s) {
  validate(s);
  IntMatrix m = IntMatrix::Zero(4, 4);
  auto set = [&m](int i, int j, const BigInt& v) {
    m(i - 1, j - 1) = v;
    m(j - 1, i - 1) = -v;
  };
  set(1, 2, s.e);
  set(1, 3, -(s.b + s.m) / 2);
  set(1, 4, -s.c);
  set(2, 3, s.a);
  set(2, 4, (s.b - s.m) / 2);
  set(3, 4, -s.d);
  return TwoForm(2, m);
}

SingularDatum singular_from_eta(const TwoForm& eta) {
  if (eta.n() != 2) fail(ErrorCode::NotEllipticClass, "singular data exist for n = 2 only");
  const auto cls = check_class(eta);
  if (!cls || cls->u != 1) fail(ErrorCode::NotEllipticClass, "form is not the class of an elliptic curve");
  const IntMatrix& x = eta.matrix();
  SingularDatum s{x(1, 2), x(1, 3) - x(0, 2), -x(0, 3), -x(2, 3), x(0, 1), cls->d};
  if (s.b * s.b - 4 * (s.a * s.c + s.d * s.e) != s.m * s.m)
    fail(ErrorCode::InternalError, "recovered discriminant disagrees with the exponent");
  return s;
}

TwoForm elliptic_class(int m, int n) {
  if (m < 1 || n < 2) fail(ErrorCode::RangeError, "needs m >= 1 and n >= 2");
  IntMatrix x = IntMatrix::Zero(2 * n, 2 * n);
  x(0, n) = -m;
  x(n, 0) = m;
  x(1, n) = 1;
  x(n, 1) = -1;
  return TwoForm(n, x);
}

RelationSet humbert_relation(const SingularDatum& s) { return symbolic_relations(eta_from_singular(s)); }

Polynomial humbert_polynomial(const SingularDatum& s) {
  Polynomial p;
  p.terms = {{{{1, 1}}, s.a},
             {{{1, 2}}, s.b},
             {{{2, 2}}, s.c},
             {{{1, 2}, {1, 2}}, s.d},
             {{{1, 1}, {2, 2}}, -s.d},
             {{}, s.e}};
  p.canonicalize();
  return p;
}

}  // namespace nsforge
