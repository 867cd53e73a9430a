#pragma once

// Scalar and dense-matrix vocabulary shared by every module.
//
// Integers and rationals are GMP-backed Boost.Multiprecision numbers with
// expression templates disabled so they compose cleanly with Eigen's own
// expression machinery. GaussianRational is the exact complex backend
// (components in Q, values in Q(i)); std::complex<double> is the float one.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <Eigen/Core>

#include <complex>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace nsforge {

using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(int re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rational re) : re_(std::move(re)) {}  // NOLINT
  GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  const Rational& real() const { return re_; }
  const Rational& imag() const { return im_; }

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  GaussianRational conj() const { return {re_, -im_}; }
  Rational norm() const { return re_ * re_ + im_ * im_; }
  bool is_zero() const { return re_ == 0 && im_ == 0; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    Rational re = re_ * o.re_ - im_ * o.im_;
    im_ = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) {
    const Rational n = o.norm();
    *this *= o.conj();
    re_ /= n;
    im_ /= n;
    return *this;
  }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re_, -a.im_}; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

  friend std::ostream& operator<<(std::ostream& os, const GaussianRational& z) {
    return os << z.re_ << (z.im_ < 0 ? "-" : "+") << abs(z.im_) << "i";
  }

 private:
  Rational re_{0};
  Rational im_{0};
};

using FloatComplex = std::complex<double>;

template <class Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Mat<BigInt>;
using IntVector = Vec<BigInt>;
using RatMatrix = Mat<Rational>;
using RatVector = Vec<Rational>;

/// Integer divisor list such as a polarization type (d_1 | d_2 | ...).
using DivisorList = std::vector<BigInt>;

inline BigInt factorial(int k) {
  BigInt r = 1;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

inline BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline BigInt gcd(const BigInt& a, const BigInt& b) {
  return boost::multiprecision::gcd(a, b);
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
  if (a == 0 || b == 0) return 0;
  return boost::multiprecision::lcm(a, b);
}

/// Floor division for signed integers.
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

inline IntMatrix identity_int(Eigen::Index k) {
  IntMatrix m = IntMatrix::Zero(k, k);
  for (Eigen::Index i = 0; i < k; ++i) m(i, i) = 1;
  return m;
}

inline BigInt gcd_of(const IntMatrix& m) {
  BigInt g = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) g = gcd(g, m(i, j));
  return g;
}

inline bool is_zero_matrix(const IntMatrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) return false;
  return true;
}

inline RatMatrix to_rational(const IntMatrix& m) { return m.cast<Rational>(); }

std::string to_string(const Rational& q);
Rational parse_rational(const std::string& text);

}  // namespace nsforge

namespace Eigen {

template <>
struct NumTraits<nsforge::GaussianRational> : GenericNumTraits<nsforge::GaussianRational> {
  using Real = nsforge::GaussianRational;
  using NonInteger = nsforge::GaussianRational;
  using Literal = nsforge::GaussianRational;
  using Nested = nsforge::GaussianRational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 8,
    MulCost = 32,
  };
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
