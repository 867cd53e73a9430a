#pragma once

// Singular relations on abelian surfaces and the standard elliptic classes.

#include "nsforge/exterior.hpp"
#include "nsforge/riemann.hpp"

namespace nsforge {

/// Integer datum (a, b, c, d, e) of discriminant b^2 - 4(ac + de) = m^2.
/// The entry `d` here is unrelated to the exponent of a subvariety.
struct SingularDatum {
  BigInt a, b, c, d, e;
  BigInt m;
  friend bool operator==(const SingularDatum&, const SingularDatum&) = default;
};

/// Throws NotPrimitive, RangeError, ParityError, DiscriminantError.
void validate(const SingularDatum& s);

/// e dx12 - (b+m)/2 dx13 - c dx14 + a dx23 + (b-m)/2 dx24 - d dx34.
TwoForm eta_from_singular(const SingularDatum& s);

/// Inverse of eta_from_singular. Throws NotEllipticClass.
SingularDatum singular_from_eta(const TwoForm& eta);

/// -m dx_1 ^ dx_{n+1} + dx_2 ^ dx_{n+1}. Throws RangeError.
TwoForm elliptic_class(int m, int n);

/// Relation set of eta_from_singular(s).
RelationSet humbert_relation(const SingularDatum& s);

/// a t11 + b t12 + c t22 + d (t12^2 - t11 t22) + e.
Polynomial humbert_polynomial(const SingularDatum& s);

}  // namespace nsforge
