#pragma once

// Sp(2n, Z), its action on 2-forms, saturation and Frobenius normal form.

#include "nsforge/exterior.hpp"
#include "nsforge/types.hpp"

#include <cstdint>

namespace nsforge {

/// Throws OddDimension.
bool is_symplectic(const IntMatrix& s);

/// S * M * S^T. Throws DimensionMismatch / NotSymplectic.
TwoForm act(const IntMatrix& s, const TwoForm& eta);

/// Deterministic word of `word_length` generators drawn from transvections
/// along e_i and e_i + e_j (and their inverses) and J.
IntMatrix random_symplectic(int n, std::uint64_t seed, int word_length);

struct IntegerLattice {
  int ambient = 0;
  IntMatrix basis;  // columns
  Eigen::Index rank() const { return basis.cols(); }
};

/// span_Q(columns) intersected with Z^k, in canonical Hermite shape.
/// Throws ZeroInput.
IntegerLattice saturate(const IntMatrix& vectors);

struct FrobeniusData {
  IntMatrix u;           // columns (p_1..p_k, q_1..q_k)
  DivisorList divisors;  // d_1 | ... | d_k
};

/// U^T G U = [[0, D], [-D, 0]]. Throws NotAlternating / Degenerate.
FrobeniusData frobenius_basis(const IntMatrix& g);

/// Gram matrix B^T J B of the standard pairing on the columns of B.
IntMatrix standard_gram(const IntMatrix& basis);

}  // namespace nsforge
