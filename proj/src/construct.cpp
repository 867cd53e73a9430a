#include "nsforge/construct.hpp"

#include "nsforge/error.hpp"
#include "nsforge/lattice.hpp"
#include "nsforge/linalg.hpp"
#include "nsforge/normend.hpp"
#include "nsforge/symplectic.hpp"

namespace nsforge {

// ---------------------------------------------------------------- types

PolarizationType PolarizationType::from(DivisorList d) {
  if (d.empty()) fail(ErrorCode::RangeError, "polarization type is empty");
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] < 1) fail(ErrorCode::RangeError, "polarization type entries must be positive");
    if (i > 0 && d[i] % d[i - 1] != 0) fail(ErrorCode::RangeError, "polarization type violates d_i | d_{i+1}");
  }
  return {std::move(d)};
}

BigInt PolarizationType::product() const {
  BigInt p = 1;
  for (const auto& x : divisors) p *= x;
  return p;
}

PolarizationType PolarizationType::complementary(int dim) const {
  if (dim < size()) fail(ErrorCode::RangeError, "complementary type is longer than its dimension");
  DivisorList out(static_cast<std::size_t>(dim - size()), 1);
  out.insert(out.end(), divisors.begin(), divisors.end());
  return {out};
}

IntMatrix PolarizationType::gram() const {
  const int k = size();
  IntMatrix g = IntMatrix::Zero(2 * k, 2 * k);
  for (int i = 0; i < k; ++i) {
    g(i, k + i) = divisors[static_cast<std::size_t>(i)];
    g(k + i, i) = -divisors[static_cast<std::size_t>(i)];
  }
  return g;
}

GluingSpec GluingSpec::identity(int u) { return {identity_int(2 * u), identity_int(2 * u)}; }

IntMatrix kd_swap(int u) {
  IntMatrix s = IntMatrix::Zero(2 * u, 2 * u);
  for (int i = 0; i < u; ++i) {
    s(i, u + i) = 1;
    s(u + i, i) = 1;
  }
  return s;
}

// ---------------------------------------------------------------- K(D)

namespace {

BigInt mod(const BigInt& a, const BigInt& m) {
  BigInt r = a % m;
  if (r < 0) r += m;
  return r;
}

const BigInt& order(const PolarizationType& t, Eigen::Index k) {
  return t.divisors[static_cast<std::size_t>(k % t.size())];
}

IntMatrix reduce(IntMatrix h, const PolarizationType& t) {
  for (Eigen::Index j = 0; j < h.rows(); ++j)
    for (Eigen::Index k = 0; k < h.cols(); ++k) h(j, k) = mod(h(j, k), order(t, j));
  return h;
}

// The pairing on K(D) as a rational matrix, meaningful modulo Z.
RatMatrix kd_pairing(const PolarizationType& t) {
  const int k = t.size();
  RatMatrix w = RatMatrix::Zero(2 * k, 2 * k);
  for (int i = 0; i < k; ++i) {
    w(i, k + i) = Rational(1) / Rational(t.divisors[static_cast<std::size_t>(i)]);
    w(k + i, i) = -w(i, k + i);
  }
  return w;
}

// Inverse of a symplectic automorphism of K(D): W^{-1} g^T W.
IntMatrix kd_inverse(const IntMatrix& g, const PolarizationType& t) {
  const RatMatrix w = kd_pairing(t);
  const Eigen::Index k = t.size();
  RatMatrix winv = RatMatrix::Zero(2 * k, 2 * k);
  for (Eigen::Index i = 0; i < k; ++i) {
    winv(i, k + i) = -Rational(order(t, i));
    winv(k + i, i) = Rational(order(t, i));
  }
  const RatMatrix r = winv * to_rational(g).transpose() * w;
  IntMatrix out(r.rows(), r.cols());
  for (Eigen::Index i = 0; i < r.rows(); ++i)
    for (Eigen::Index j = 0; j < r.cols(); ++j) {
      if (!is_integer(r(i, j))) fail(ErrorCode::InternalError, "inverse marking is not integral");
      out(i, j) = numerator(r(i, j));
    }
  return reduce(out, t);
}

template <class C>
C from_rational(const Rational& q) {
  if constexpr (std::is_same_v<C, GaussianRational>) {
    return GaussianRational(q);
  } else {
    return C(q.convert_to<double>(), 0.0);
  }
}

template <class C>
Mat<C> cast_rational(const RatMatrix& m) {
  Mat<C> out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = from_rational<C>(m(i, j));
  return out;
}

// Period map of a product of factors (tau_k | diag(D_k)), coordinates ordered
// lambda_1, mu_1, lambda_2, mu_2.
template <class C>
Mat<C> block_periods(const std::vector<std::pair<Mat<C>, DivisorList>>& factors) {
  Eigen::Index n = 0;
  for (const auto& f : factors) n += f.first.rows();
  Mat<C> p = Mat<C>::Constant(n, 2 * n, C(0));
  Eigen::Index row = 0;
  for (const auto& [tau, d] : factors) {
    const Eigen::Index k = tau.rows();
    for (Eigen::Index i = 0; i < k; ++i) {
      for (Eigen::Index j = 0; j < k; ++j) p(row + i, 2 * row + j) = tau(i, j);
      p(row + i, 2 * row + k + i) = ComplexTraits<C>::from_int(d[static_cast<std::size_t>(i)]);
    }
    row += k;
  }
  return p;
}

// (Pi_1 | Pi_2) -> Pi_2^{-1} Pi_1, symmetrized for floats.
template <class C>
std::optional<Mat<C>> normalize(const Mat<C>& pi) {
  const Eigen::Index n = pi.rows();
  Mat<C> tau = inverse<C>(Mat<C>(pi.rightCols(n))) * Mat<C>(pi.leftCols(n));
  if constexpr (!ComplexTraits<C>::exact) {
    double scale = 1.0, asym = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) {
        scale = std::max(scale, std::abs(tau(i, j)));
        asym = std::max(asym, std::abs(tau(i, j) - tau(j, i)));
      }
    if (asym > 1e-8 * scale) return std::nullopt;
    tau = (0.5 * (tau + tau.transpose())).eval();
  }
  if (!in_siegel(tau)) return std::nullopt;
  return tau;
}

PeriodMatrix wrap(const ExactTau& t) { return PeriodMatrix::exact(t); }
PeriodMatrix wrap(const FloatTau& t) { return PeriodMatrix::floating(t); }

struct Analytic {
  PeriodMatrix tau;
  bool flipped;
};

template <class C>
Analytic glued_periods(const Mat<C>& tx, const PolarizationType& dx, const Mat<C>& ty, const PolarizationType& dy,
                       const RatMatrix& basis) {
  const Mat<C> pi = block_periods<C>({{tx, dx.divisors}, {ty, dy.divisors}}) * cast_rational<C>(basis);
  if (auto tau = normalize<C>(pi)) return {wrap(*tau), false};
  const Eigen::Index n = pi.rows();
  Mat<C> flipped = pi;
  flipped.rightCols(n) = (-pi.rightCols(n)).eval();
  if (auto tau = normalize<C>(flipped)) return {wrap(*tau), true};
  fail(ErrorCode::NotInSiegel, "glued period matrix is not in the Siegel upper half space");
}

}  // namespace

bool check_kd_symplectic(const IntMatrix& h, const PolarizationType& t) {
  const Eigen::Index k = 2 * t.size();
  if (h.rows() != k || h.cols() != k) fail(ErrorCode::SizeMismatch, "marking must be 2u x 2u");
  for (Eigen::Index j = 0; j < k; ++j)
    for (Eigen::Index c = 0; c < k; ++c)
      if ((order(t, c) * h(j, c)) % order(t, j) != 0) return false;
  const RatMatrix w = kd_pairing(t);
  const RatMatrix diff = to_rational(h).transpose() * w * to_rational(h) - w;
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j)
      if (!is_integer(diff(i, j))) return false;
  return true;
}

// ---------------------------------------------------------------- glue

GluedVariety glue(const PolarizedFactor& x, const PolarizedFactor& y, const GluingSpec& spec) {
  const int u = x.type.size();
  const int v = y.type.size();
  if (x.dim() != u || y.dim() != v) fail(ErrorCode::SizeMismatch, "factor period matrix and type differ in size");
  if (v < u) fail(ErrorCode::TypeMismatch, "second factor must have dimension at least u");
  if (!(y.type == x.type.complementary(v)))
    fail(ErrorCode::TypeMismatch, "second factor type is not complementary to the first");
  if (!check_kd_symplectic(spec.f, x.type) || !check_kd_symplectic(spec.g, x.type))
    fail(ErrorCode::NotPrincipal, "marking does not preserve the pairing on K(D)");
  const int n = u + v;
  const BigInt& d = x.type.exponent();

  // graph of g^{-1} eps f
  const IntMatrix h = reduce(kd_inverse(spec.g, x.type) * kd_swap(u) * spec.f, x.type);
  if (reduce(spec.g * h, x.type) != reduce(kd_swap(u) * spec.f, x.type))
    fail(ErrorCode::InternalError, "marking inverse check failed");

  auto ypos = [&](Eigen::Index j) { return 2 * u + (j < u ? v - u + j : 2 * v - 2 * u + j); };
  IntMatrix gens = IntMatrix::Zero(2 * n, 2 * n + 2 * u);
  for (int i = 0; i < 2 * n; ++i) gens(i, i) = d;
  for (Eigen::Index k = 0; k < 2 * u; ++k) {
    gens(k, 2 * n + k) = d / order(x.type, k);
    for (Eigen::Index j = 0; j < 2 * u; ++j) gens(ypos(j), 2 * n + k) = h(j, k) * d / order(x.type, j);
  }
  const IntMatrix scaled = column_basis(gens);
  if (scaled.cols() != 2 * n) fail(ErrorCode::InternalError, "glued lattice has the wrong rank");
  const RatMatrix b = to_rational(scaled) / Rational(d);

  const BigInt prod = x.type.product();
  if (lattice_index(scaled) * prod * prod != pow(d, 2 * n))
    fail(ErrorCode::InternalError, "glued lattice index is not (d_1...d_u)^2");

  IntMatrix g = IntMatrix::Zero(2 * n, 2 * n);
  g.topLeftCorner(2 * u, 2 * u) = x.type.gram();
  g.bottomRightCorner(2 * v, 2 * v) = y.type.gram();
  const RatMatrix ga = b.transpose() * to_rational(g) * b;
  IntMatrix gi(2 * n, 2 * n);
  for (Eigen::Index i = 0; i < ga.rows(); ++i)
    for (Eigen::Index j = 0; j < ga.cols(); ++j) {
      if (!is_integer(ga(i, j))) fail(ErrorCode::NotPrincipal, "pairing is not integral on the glued lattice");
      gi(i, j) = numerator(ga(i, j));
    }
  if (determinant(gi) != 1) fail(ErrorCode::NotPrincipal, "pairing on the glued lattice is not principal");

  RatMatrix c = b * to_rational(frobenius_basis(gi).u);

  const bool exact = x.tau.backend() == Backend::Exact && y.tau.backend() == Backend::Exact;
  Analytic an = exact ? glued_periods<GaussianRational>(x.tau.exact_entries(), x.type, y.tau.exact_entries(), y.type, c)
                      : glued_periods<FloatComplex>(x.tau.float_entries(), x.type, y.tau.float_entries(), y.type, c);
  if (an.flipped) c.rightCols(n) = (-c.rightCols(n)).eval();

  RatMatrix proj = RatMatrix::Zero(2 * n, 2 * n);
  for (int i = 0; i < 2 * u; ++i) proj(i, i) = Rational(d);
  const RatMatrix nr = inverse<Rational>(c) * proj * c;
  IntMatrix nm(2 * n, 2 * n);
  for (Eigen::Index i = 0; i < nr.rows(); ++i)
    for (Eigen::Index j = 0; j < nr.cols(); ++j) {
      if (!is_integer(nr(i, j))) fail(ErrorCode::InternalError, "norm endomorphism is not integral");
      nm(i, j) = numerator(nr(i, j));
    }
  const TwoForm eta = class_from_norm(NormMatrix{n, nm, u, d});

  const SubvarietyReport rep = analyze(eta);
  if (rep.u != u || rep.d != d || rep.type != x.type.divisors)
    fail(ErrorCode::TypeMismatch, "glued class does not reproduce the factor type");
  if (!wedge_vanishes(eta, an.tau)) fail(ErrorCode::InternalError, "glued class is not of type (1,1)");
  return {an.tau, eta, c, an.flipped};
}

GluedVariety standard_witness(int n, int u, const PolarizationType& type) {
  if (u < 1 || 2 * u > n) fail(ErrorCode::RangeError, "standard witness needs 1 <= u <= n/2");
  if (type.size() != u) fail(ErrorCode::RangeError, "polarization type must have length u");
  auto itau = [](int k) {
    ExactTau t = ExactTau::Constant(k, k, GaussianRational(0));
    for (int i = 0; i < k; ++i) t(i, i) = GaussianRational::i();
    return PeriodMatrix::exact(t);
  };
  const PolarizedFactor x{type, itau(u)};
  const PolarizedFactor y{type.complementary(n - u), itau(n - u)};
  return glue(x, y, GluingSpec::identity(u));
}

// ---------------------------------------------------------------- realizability

std::string_view tag_name(RealizabilityTag tag) {
  switch (tag) {
    case RealizabilityTag::Realized: return "Realized";
    case RealizabilityTag::ProfileFail: return "ProfileFail";
    case RealizabilityTag::IdempotenceFail: return "IdempotenceFail";
    case RealizabilityTag::TypeFail: return "TypeFail";
  }
  return "Unknown";
}

Realizability is_realizable(const TwoForm& eta) {
  Realizability out;
  try {
    if (!check_class(eta)) {
      out.tag = RealizabilityTag::ProfileFail;
      out.detail = "intersection profile does not match any (u, d)";
      return out;
    }
  } catch (const Error& e) {
    out.tag = RealizabilityTag::ProfileFail;
    out.detail = e.what();
    return out;
  }
  try {
    norm_from_class(eta);
  } catch (const Error& e) {
    out.tag = RealizabilityTag::IdempotenceFail;
    out.detail = e.what();
    return out;
  }
  std::optional<SubvarietyReport> rep;
  try {
    rep = analyze(eta);
  } catch (const Error& e) {
    out.tag = RealizabilityTag::TypeFail;
    out.detail = e.what();
    return out;
  }

  const int n = eta.n();
  const IntMatrix j = standard_J(n);
  std::vector<std::pair<ExactTau, DivisorList>> factors;
  IntMatrix p(2 * n, 0);
  for (const IntegerLattice* lat : {&rep->image, &rep->kernel}) {
    if (lat->rank() == 0) continue;
    const FrobeniusData fb = frobenius_basis(IntMatrix(lat->basis.transpose() * j * lat->basis));
    const IntMatrix basis = lat->basis * fb.u;
    IntMatrix grown(2 * n, p.cols() + basis.cols());
    grown << p, basis;
    p = grown;
    const Eigen::Index k = static_cast<Eigen::Index>(fb.divisors.size());
    ExactTau t = ExactTau::Constant(k, k, GaussianRational(0));
    for (Eigen::Index i = 0; i < k; ++i) t(i, i) = GaussianRational::i();
    factors.emplace_back(t, fb.divisors);
  }
  if (factors.front().second != rep->type) fail(ErrorCode::InternalError, "Frobenius type disagrees with analyze");

  const RatMatrix pinv = inverse<Rational>(to_rational(p));
  ExactTau pi = block_periods<GaussianRational>(factors) * cast_rational<GaussianRational>(pinv);
  std::optional<ExactTau> tau = normalize<GaussianRational>(pi);
  if (!tau) {
    pi = pi.unaryExpr([](const GaussianRational& z) { return z.conj(); }).eval();
    tau = normalize<GaussianRational>(pi);
  }
  if (!tau) fail(ErrorCode::InternalError, "witness period matrix is not in the Siegel upper half space");
  if (!wedge_vanishes(eta, *tau)) fail(ErrorCode::InternalError, "witness does not satisfy the (1,1) condition");
  out.tau = PeriodMatrix::exact(*tau);
  return out;
}

}  // namespace nsforge
