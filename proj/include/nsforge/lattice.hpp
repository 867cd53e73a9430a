#pragma once

// Integer lattice toolkit: Hermite and Smith forms, integer kernels,
// saturation. Everything is exact.

#include "nsforge/types.hpp"

#include <vector>

namespace nsforge {

struct HermiteForm {
  IntMatrix h;  // row Hermite normal form, zero rows last
  IntMatrix q;  // unimodular transform with q * a = h
  Eigen::Index rank = 0;
};

HermiteForm row_hermite(const IntMatrix& a);

/// Columns form a Z-basis of {x in Z^k : a x = 0}, in Hermite-canonical shape.
IntMatrix integer_kernel(const IntMatrix& a);

/// Canonical column basis of the lattice spanned by the columns of `a`.
IntMatrix column_basis(const IntMatrix& a);

/// Nonzero Smith invariants s_1 | s_2 | ... of `a`, all positive.
DivisorList smith_invariants(IntMatrix a);

/// Coefficients c_0..c_k of det(t I - a), c_k = 1.
std::vector<BigInt> characteristic_polynomial(const IntMatrix& a);

/// |det| of a square integer basis matrix.
BigInt lattice_index(const IntMatrix& basis);

}  // namespace nsforge
