#pragma once

// Period matrices, the (1,1) condition and period-lattice data.
//
// Coordinates follow z = (tau | I) x. Two scalar backends share one code path:
// GaussianRational for exact certificates and std::complex<double> for scans.

#include "nsforge/exterior.hpp"
#include "nsforge/normend.hpp"
#include "nsforge/types.hpp"

#include <cmath>
#include <map>
#include <utility>
#include <variant>
#include <vector>

namespace nsforge {

enum class Backend { Exact, Float };

using ExactTau = Mat<GaussianRational>;
using FloatTau = Mat<FloatComplex>;

template <class C>
struct ComplexTraits;

template <>
struct ComplexTraits<GaussianRational> {
  static constexpr bool exact = true;
  static GaussianRational from_int(const BigInt& x) { return GaussianRational(Rational(x)); }
  static double magnitude(const GaussianRational& z) { return std::sqrt(z.norm().convert_to<double>()); }
  static bool is_zero(const GaussianRational& z, double) { return z.is_zero(); }
  static FloatComplex to_float(const GaussianRational& z) {
    return {z.real().convert_to<double>(), z.imag().convert_to<double>()};
  }
};

template <>
struct ComplexTraits<FloatComplex> {
  static constexpr bool exact = false;
  static FloatComplex from_int(const BigInt& x) { return {x.convert_to<double>(), 0.0}; }
  static double magnitude(const FloatComplex& z) { return std::abs(z); }
  static bool is_zero(const FloatComplex& z, double tol) { return std::abs(z) <= tol; }
  static FloatComplex to_float(const FloatComplex& z) { return z; }
};

template <class C>
Mat<C> complexify(const IntMatrix& m) {
  Mat<C> out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = ComplexTraits<C>::from_int(m(i, j));
  return out;
}

/// Symmetric with positive definite imaginary part (exact minors / Cholesky).
bool in_siegel(const ExactTau& tau);
bool in_siegel(const FloatTau& tau);

class PeriodMatrix {
 public:
  /// Both throw NotInSiegel.
  static PeriodMatrix exact(ExactTau tau);
  static PeriodMatrix floating(FloatTau tau);

  int n() const;
  Backend backend() const { return data_.index() == 0 ? Backend::Exact : Backend::Float; }
  const ExactTau& exact_entries() const;
  FloatTau float_entries() const;

  template <class F>
  decltype(auto) visit(F&& f) const {
    return std::visit(std::forward<F>(f), data_);
  }

 private:
  explicit PeriodMatrix(std::variant<ExactTau, FloatTau> d) : data_(std::move(d)) {}
  std::variant<ExactTau, FloatTau> data_;
};

inline constexpr double kDefaultTolerance = 1e-9;

/// Coefficients of eta ^ dz_1 ^ ... ^ dz_n in the basis dx_T, |T| = n + 2,
/// keyed by bitmask.
template <class C>
std::map<std::uint32_t, C> wedge_coefficients(const TwoForm& eta, const Mat<C>& tau);

template <class C>
bool wedge_vanishes(const TwoForm& eta, const Mat<C>& tau, double tol = kDefaultTolerance);
bool wedge_vanishes(const TwoForm& eta, const PeriodMatrix& tau, double tol = kDefaultTolerance);

/// R = (Pi J) M (Pi J)^T with Pi = (tau | I); R = 0 iff the (1,1) condition holds.
template <class C>
Mat<C> residual_matrix(const TwoForm& eta, const Mat<C>& tau);

template <class C>
bool residual_vanishes(const TwoForm& eta, const Mat<C>& tau, double tol = kDefaultTolerance);

/// Variables tau_kl with 1 <= k <= l <= n.
using Monomial = std::vector<std::pair<int, int>>;

struct Polynomial {
  std::vector<std::pair<Monomial, BigInt>> terms;  // canonical order, nonzero

  /// Sorts (degree descending, then variables ascending) and merges.
  void canonicalize();
  bool is_zero() const { return terms.empty(); }
  int degree() const;
  Polynomial operator-() const;
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  template <class C>
  C evaluate(const Mat<C>& tau) const {
    C total(0);
    for (const auto& [mono, c] : terms) {
      C t = ComplexTraits<C>::from_int(c);
      for (auto [k, l] : mono) t = t * tau(k - 1, l - 1);
      total = total + t;
    }
    return total;
  }
};

std::string to_string(const Polynomial& p);

struct ResidualEntry {
  int p, q;  // 1-based, p < q
  Polynomial value;
};

struct RelationSet {
  int n = 0;
  /// Distinct relations, each divided by its content with a positive
  /// leading coefficient.
  std::vector<Polynomial> polynomials;
  /// The nonzero strict upper entries of the residual, unnormalized.
  std::vector<ResidualEntry> entries;
};

/// Strict upper entries of the residual as integer polynomials in tau.
RelationSet symbolic_relations(const TwoForm& eta);

template <class C>
struct TangentData {
  Mat<C> tangent;  // n x u, reduced column-echelon basis of the tangent space
  Mat<C> lattice;  // n x 2u, periods of the image lattice basis
};

/// Throws NotAnalytic and whatever analyze throws.
template <class C>
TangentData<C> tangent_and_lattice(const TwoForm& eta, const Mat<C>& tau, double tol = kDefaultTolerance);

/// (alpha tau + beta)(gamma tau + delta)^{-1}. Throws NotSymplectic / Degenerate.
ExactTau mobius(const IntMatrix& s, const ExactTau& tau);

struct ScanOptions {
  double tol = kDefaultTolerance;
  int jobs = 1;
  std::uint64_t budget = 0;  // 0 = environment NSFORGE_BUDGET or built-in ceiling
};

/// Leaf ceiling used when no explicit budget is given.
std::uint64_t default_budget();

/// All classes with |coefficients| <= bound on the given ppav, with reports,
/// in lexicographic order of coefficient vectors.
std::vector<SubvarietyReport> scan_ppav(const PeriodMatrix& tau, int u, const BigInt& d, int bound,
                                        const ScanOptions& opts = {});

}  // namespace nsforge
