#pragma once

// Norm endomorphisms N = J M_eta and the certificates built on them.

#include "nsforge/exterior.hpp"
#include "nsforge/symplectic.hpp"

namespace nsforge {

struct NormMatrix {
  int n = 0;
  IntMatrix N;
  int u = 0;
  BigInt d;
};

/// N = J M with rank, trace and N^2 = dN verified; (u, d) cross-checked
/// against check_class. Throws NotIdempotent / RankMismatch / TraceMismatch
/// and whatever check_class throws.
NormMatrix norm_from_class(const TwoForm& eta);

/// Validates a normalized matrix against its stated invariants.
void validate_norm(const NormMatrix& nm);

/// M = -J N. Throws NotSymmetricForJ.
TwoForm class_from_norm(const NormMatrix& nm);

struct SubvarietyReport {
  TwoForm eta;
  int u = 0;
  BigInt d;
  DivisorList type;             // (d_1, ..., d_u)
  IntegerLattice image;         // rank 2u
  IntegerLattice kernel;        // rank 2n - 2u
  DivisorList complement_type;  // elementary divisors on the kernel lattice
  TwoForm complement;
};

/// Throws TypeExponentMismatch plus anything from norm_from_class.
SubvarietyReport analyze(const TwoForm& eta);

/// d M_theta - M_eta with (n - u, d) asserted.
TwoForm complementary_class(const TwoForm& eta);

struct PolynomialCertificate {
  bool char_ok = false;
  bool min_ok = false;
};

PolynomialCertificate polynomial_certificate(const NormMatrix& nm);

/// (delta_E . delta_Z . theta^{n-2}) = d_E d_Z (n-2)! (n-2).
/// Throws WrongDimensions, RangeError (n < 3).
bool elliptic_in_divisor(const TwoForm& delta_e, const TwoForm& delta_z);

}  // namespace nsforge
