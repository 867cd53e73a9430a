#pragma once

#include "nsforge/exterior.hpp"
#include "nsforge/riemann.hpp"

#include <array>
#include <random>
#include <tuple>

namespace fixtures {

using nsforge::BigInt;
using nsforge::IntMatrix;
using nsforge::TwoForm;

/// Form from 1-based (i, j, a) triples.
inline TwoForm form(int n, std::initializer_list<std::tuple<int, int, int>> coeffs) {
  IntMatrix m = IntMatrix::Zero(2 * n, 2 * n);
  for (auto [i, j, a] : coeffs) {
    m(i - 1, j - 1) += a;
    m(j - 1, i - 1) -= a;
  }
  return TwoForm(n, m);
}

inline TwoForm eta0() {
  return form(4, {{3, 8, 1}, {3, 7, -1}, {2, 5, 1}, {2, 6, -1}, {1, 6, 1}, {4, 7, 1}, {1, 5, -1}, {4, 8, -1}});
}

inline TwoForm random_form(int n, int bound, std::mt19937_64& rng) {
  IntMatrix m = IntMatrix::Zero(2 * n, 2 * n);
  const auto span = static_cast<std::uint64_t>(2 * bound + 1);
  for (int i = 0; i < 2 * n; ++i)
    for (int j = i + 1; j < 2 * n; ++j) {
      const int a = static_cast<int>(rng() % span) - bound;
      m(i, j) = a;
      m(j, i) = -a;
    }
  return TwoForm(n, m);
}

using nsforge::ExactTau;
using nsforge::GaussianRational;
using nsforge::Rational;

inline GaussianRational gq(long re_num, long re_den, long im_num, long im_den) {
  return {Rational(re_num) / re_den, Rational(im_num) / im_den};
}

/// The six-parameter family cut out by eta0.
inline ExactTau eta0_shape(const std::array<GaussianRational, 6>& t) {
  ExactTau tau(4, 4);
  tau << t[0], t[1], t[2], t[3],
         t[1], t[0], t[3], t[2],
         t[2], t[3], t[4], t[5],
         t[3], t[2], t[5], t[4];
  return tau;
}

inline ExactTau eta0_shape() {
  return eta0_shape({gq(1, 2, 3, 1), gq(1, 3, 1, 2), gq(-1, 4, 1, 3), gq(1, 5, 1, 4), gq(2, 3, 4, 1), gq(1, 7, 1, 2)});
}

/// Random exact point of the Siegel space: symmetric rational real part,
/// imaginary part diagonally dominant.
inline ExactTau random_exact_tau(int n, std::mt19937_64& rng) {
  ExactTau tau(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const Rational re = Rational(static_cast<long>(rng() % 9) - 4) / Rational(static_cast<long>(1 + rng() % 5));
      Rational im = Rational(static_cast<long>(rng() % 5) - 2) / Rational(static_cast<long>(2 + rng() % 4));
      if (i == j) im = Rational(n * 2 + static_cast<long>(rng() % 3));
      tau(i, j) = GaussianRational(re, im);
      tau(j, i) = tau(i, j);
    }
  return tau;
}

inline nsforge::FloatTau random_float_tau(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  nsforge::FloatTau tau(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      tau(i, j) = {u(rng), (i == j) ? 2.0 * n + u(rng) : 0.4 * u(rng)};
      tau(j, i) = tau(i, j);
    }
  return tau;
}

}  // namespace fixtures
