#pragma once

// Exact arithmetic on integer 2-forms in the exterior square of Z^{2n}.
//
// A form eta = sum_{i<j} a_ij dx_i ^ dx_j is stored through its antisymmetric
// coefficient matrix M (M(i,j) = a_ij, M(j,i) = -a_ij). Top-degree products are
// reported in units of
//
//   omega_0 = (-1)^n dx_1 ^ dx_{n+1} ^ dx_2 ^ dx_{n+2} ^ ... ^ dx_n ^ dx_{2n},
//
// which makes theta^n = n! omega_0 for the principal class theta.

#include "nsforge/types.hpp"

#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

namespace nsforge {

class TwoForm {
 public:
  /// Validates antisymmetry; throws OddDimension / NotAntisymmetric.
  TwoForm(int n, IntMatrix matrix);

  static TwoForm zero(int n);
  /// Coefficients in the canonical order (1,2), (1,3), ..., (1,2n), (2,3), ...
  static TwoForm from_coefficients(int n, std::span<const BigInt> coefficients);

  int n() const { return n_; }
  int dim() const { return 2 * n_; }
  const IntMatrix& matrix() const { return m_; }
  /// 0-based access to a_ij.
  const BigInt& coeff(int i, int j) const { return m_(i, j); }

  std::vector<BigInt> coefficients() const;
  bool is_zero() const;

  TwoForm& operator+=(const TwoForm& o);
  TwoForm& operator-=(const TwoForm& o);
  friend TwoForm operator+(TwoForm a, const TwoForm& b) { return a += b; }
  friend TwoForm operator-(TwoForm a, const TwoForm& b) { return a -= b; }
  friend TwoForm operator*(const BigInt& k, const TwoForm& a);
  friend TwoForm operator-(const TwoForm& a);
  friend bool operator==(const TwoForm& a, const TwoForm& b);
  friend bool operator!=(const TwoForm& a, const TwoForm& b) { return !(a == b); }
  /// Lexicographic on the canonical coefficient vector.
  friend bool operator<(const TwoForm& a, const TwoForm& b);

 private:
  int n_;
  IntMatrix m_;
};

/// The polarization class theta = -sum_i dx_i ^ dx_{i+n}; its matrix is -J.
struct PrincipalClass {
  int n;
  IntMatrix matrix() const;
  TwoForm form() const { return TwoForm(n, matrix()); }
};

inline TwoForm theta(int n) { return PrincipalClass{n}.form(); }

/// J = [[0, I], [-I, 0]].
IntMatrix standard_J(int n);

/// Sign s_n with dx_1 ^ ... ^ dx_{2n} = s_n * omega_0.
int volume_sign(int n);

/// Pfaffian by memoized perfect-matching expansion along the lowest index.
template <class Scalar>
Scalar pfaffian(const Mat<Scalar>& m);

BigInt pfaffian(const IntMatrix& m);

struct WedgeFactor {
  TwoForm form;
  int power;
};

/// I with eta_1^{r_1} ^ ... ^ eta_k^{r_k} = I * omega_0, sum r_i = n.
BigInt mixed_intersection(std::span<const WedgeFactor> factors);

struct IntersectionProfile {
  int n;
  std::vector<BigInt> values;  // values[r-1] = (eta^r . theta^{n-r})
  const BigInt& at(int r) const { return values.at(r - 1); }
  friend bool operator==(const IntersectionProfile&, const IntersectionProfile&) = default;
};

IntersectionProfile intersection_profile(const TwoForm& eta);

/// gcd of all coefficients equals 1. Throws ZeroForm.
bool is_primitive(const TwoForm& eta);

struct ClassInvariants {
  int u;     // dimension of the subvariety
  BigInt d;  // exponent
  friend bool operator==(const ClassInvariants&, const ClassInvariants&) = default;
};

/// The intersection numbers an abelian subvariety of dimension u and exponent
/// d must have: (n-r)! r! C(u,r) d^r for r <= u, zero above.
IntersectionProfile expected_profile(int n, int u, const BigInt& d);

/// Reads (u, d) off a profile, or nothing if no pair reproduces it exactly.
std::optional<ClassInvariants> match_profile(const IntersectionProfile& profile);

/// Numerical class test. Throws ZeroForm / NotPrimitive.
std::optional<ClassInvariants> check_class(const TwoForm& eta);

/// n! eta - (eta . theta^{n-1}) theta.
TwoForm natural_class(const TwoForm& eta);

/// q_r(eta) = -((eta^nat)^r . theta^{n-r}) / ((r-1) n!), 2 <= r <= n.
Rational q_form(const TwoForm& eta, int r);
/// All q_r for r = 2..n (index r-2).
std::vector<Rational> q_forms(const TwoForm& eta);

/// Closed form f(u, r) for dimension-n ppavs.
Rational f_formula(int u, int r, int n);

/// Image of eta in the quotient by Z.theta is primitive.
bool is_primitive_mod_L(const TwoForm& eta);

struct ModLCheck {
  bool congruence;  // (eta . theta^{n-1}) = (n-1)! u d  (mod n!)
  bool q_forms;     // q_r(eta) = f(u, r) d^r for all 2 <= r <= n
  bool holds() const { return congruence && q_forms; }
};

/// Throws NotPrimitiveModL, RangeError.
ModLCheck check_class_mod_L(const TwoForm& eta, int u, const BigInt& d);

// ---------------------------------------------------------------------------

template <class Scalar>
Scalar pfaffian(const Mat<Scalar>& m) {
  const Eigen::Index size = m.rows();
  if (size == 0) return Scalar(1);
  if (size > 30) throw std::length_error("pfaffian: matrix too large for matching expansion");
  using Mask = std::uint32_t;
  std::unordered_map<Mask, Scalar> memo;
  auto rec = [&](auto&& self, Mask remaining) -> Scalar {
    if (remaining == 0) return Scalar(1);
    if (auto it = memo.find(remaining); it != memo.end()) return it->second;
    const int i = __builtin_ctz(remaining);
    const Mask rest = remaining & (remaining - 1);
    Scalar total(0);
    int position = 0;
    for (Mask scan = rest; scan != 0; scan &= scan - 1) {
      const int j = __builtin_ctz(scan);
      const Scalar& a = m(i, j);
      if (a != Scalar(0)) {
        Scalar sub = self(self, rest & ~(Mask(1) << j));
        if (position % 2 == 0)
          total += a * sub;
        else
          total -= a * sub;
      }
      ++position;
    }
    memo.emplace(remaining, total);
    return total;
  };
  return rec(rec, (size >= 32) ? ~Mask(0) : ((Mask(1) << size) - 1));
}

}  // namespace nsforge
