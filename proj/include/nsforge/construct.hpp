#pragma once

// Gluing of polarized factors into principally polarized abelian varieties and
// realizability witnesses for abstract classes.
//
// A factor of dimension k and type D has lattice columns (tau | diag(D)) and
// the pairing [[0, D], [-D, 0]]. The kernel group K(D) = (Z/d_1 x ... x Z/d_k)^2
// is represented on its standard generators; markings are integer matrices
// reduced row-wise modulo D.

#include "nsforge/exterior.hpp"
#include "nsforge/riemann.hpp"
#include "nsforge/types.hpp"

#include <optional>
#include <string>

namespace nsforge {

struct PolarizationType {
  DivisorList divisors;  // d_1 | d_2 | ... | d_k, all positive

  /// Throws RangeError.
  static PolarizationType from(DivisorList d);
  static PolarizationType principal(int k) { return {DivisorList(static_cast<std::size_t>(k), 1)}; }

  int size() const { return static_cast<int>(divisors.size()); }
  const BigInt& exponent() const { return divisors.back(); }
  BigInt product() const;
  /// (1, ..., 1, d_1, ..., d_k) of length `dim`. Throws RangeError.
  PolarizationType complementary(int dim) const;
  /// [[0, D], [-D, 0]].
  IntMatrix gram() const;
  friend bool operator==(const PolarizationType&, const PolarizationType&) = default;
};

struct PolarizedFactor {
  PolarizationType type;
  PeriodMatrix tau;
  int dim() const { return tau.n(); }
};

struct GluingSpec {
  IntMatrix f;  // marking of K(X)
  IntMatrix g;  // marking of K(Y)
  static GluingSpec identity(int u);
};

/// [[0, I], [I, 0]] on K(D).
IntMatrix kd_swap(int u);

/// h is well defined on K(D) and preserves its pairing. Throws SizeMismatch.
bool check_kd_symplectic(const IntMatrix& h, const PolarizationType& type);

struct GluedVariety {
  PeriodMatrix tau;
  TwoForm eta;
  RatMatrix basis;  // symplectic basis of the glued lattice in X + Y coordinates
  bool flipped = false;
};

/// Throws NotPrincipal, NotInSiegel, TypeMismatch, SizeMismatch.
GluedVariety glue(const PolarizedFactor& x, const PolarizedFactor& y, const GluingSpec& spec);

/// Factors i*I, identity markings. Throws RangeError plus whatever glue throws.
GluedVariety standard_witness(int n, int u, const PolarizationType& type);

enum class RealizabilityTag { Realized, ProfileFail, IdempotenceFail, TypeFail };

std::string_view tag_name(RealizabilityTag tag);

struct Realizability {
  std::optional<PeriodMatrix> tau;
  RealizabilityTag tag = RealizabilityTag::Realized;
  std::string detail;
  explicit operator bool() const { return tau.has_value(); }
};

Realizability is_realizable(const TwoForm& eta);

}  // namespace nsforge
