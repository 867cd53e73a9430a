#include "nsforge/normend.hpp"

#include "nsforge/error.hpp"
#include "nsforge/lattice.hpp"
#include "nsforge/linalg.hpp"

namespace nsforge {

namespace {

BigInt trace(const IntMatrix& m) {
  BigInt t = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

}  // namespace

void validate_norm(const NormMatrix& nm) {
  const Eigen::Index dim = 2 * nm.n;
  if (nm.N.rows() != dim || nm.N.cols() != dim) fail(ErrorCode::DimensionMismatch, "norm matrix must be 2n x 2n");
  if (rank(nm.N) != 2 * nm.u) fail(ErrorCode::RankMismatch, "rank N differs from 2u");
  if (trace(nm.N) != 2 * nm.u * nm.d) fail(ErrorCode::TraceMismatch, "trace N differs from 2ud");
  if (IntMatrix(nm.N * nm.N) != IntMatrix(nm.N * nm.d)) fail(ErrorCode::NotIdempotent, "N^2 differs from dN");
}

NormMatrix norm_from_class(const TwoForm& eta) {
  const int n = eta.n();
  const auto cls = check_class(eta);
  NormMatrix nm;
  nm.n = n;
  nm.N = standard_J(n) * eta.matrix();
  const Eigen::Index r = rank(nm.N);
  nm.u = static_cast<int>(r / 2);
  BigInt diag = 0;
  for (int i = 0; i < n; ++i) diag += eta.coeff(i, n + i);
  if (nm.u == 0 || diag % nm.u != 0 || -diag / nm.u < 1)
    fail(ErrorCode::TraceMismatch, "trace does not give a positive integral exponent");
  nm.d = -diag / nm.u;
  if (IntMatrix(nm.N * nm.N) != IntMatrix(nm.N * nm.d)) fail(ErrorCode::NotIdempotent, "N^2 differs from dN");
  if (cls) {
    if (cls->u != nm.u) fail(ErrorCode::RankMismatch, "rank disagrees with the intersection profile");
    if (cls->d != nm.d) fail(ErrorCode::TraceMismatch, "trace disagrees with the intersection profile");
  }
  return nm;
}

TwoForm class_from_norm(const NormMatrix& nm) {
  const Eigen::Index dim = 2 * nm.n;
  if (nm.N.rows() != dim || nm.N.cols() != dim) fail(ErrorCode::DimensionMismatch, "norm matrix must be 2n x 2n");
  const IntMatrix m = -standard_J(nm.n) * nm.N;
  if (m != IntMatrix(-m.transpose())) fail(ErrorCode::NotSymmetricForJ, "N is not symmetric for the polarization");
  return TwoForm(nm.n, m);
}

SubvarietyReport analyze(const TwoForm& eta) {
  const NormMatrix nm = norm_from_class(eta);
  const int n = eta.n();
  SubvarietyReport rep{eta, nm.u, nm.d, {}, {}, {}, {}, TwoForm::zero(n)};
  rep.image = saturate(nm.N);
  const IntMatrix ker = integer_kernel(nm.N);
  rep.kernel.ambient = 2 * n;
  rep.kernel.basis = (ker.cols() == 0) ? IntMatrix(2 * n, 0) : saturate(ker).basis;

  rep.type = frobenius_basis(standard_gram(rep.image.basis)).divisors;
  if (rep.type.back() != nm.d) fail(ErrorCode::TypeExponentMismatch, "largest elementary divisor differs from d");
  if (rep.kernel.rank() > 0) rep.complement_type = frobenius_basis(standard_gram(rep.kernel.basis)).divisors;

  rep.complement = TwoForm(n, PrincipalClass{n}.matrix() * nm.d - eta.matrix());

  IntMatrix both(2 * n, 2 * n);
  both << rep.image.basis, rep.kernel.basis;
  BigInt prod = 1;
  for (const auto& x : rep.type) prod *= x;
  if (lattice_index(both) != prod * prod) fail(ErrorCode::InternalError, "index of image plus kernel is not (d_1...d_u)^2");
  return rep;
}

TwoForm complementary_class(const TwoForm& eta) {
  const int n = eta.n();
  const auto cls = check_class(eta);
  if (!cls) fail(ErrorCode::ProfileMismatch, "form does not have the numerical profile of a subvariety");
  const TwoForm comp(n, PrincipalClass{n}.matrix() * cls->d - eta.matrix());
  if (cls->u == n) return comp;
  std::optional<ClassInvariants> back;
  try {
    back = check_class(comp);
  } catch (const Error&) {
    fail(ErrorCode::InternalError, "complementary class is not primitive");
  }
  if (!back || back->u != n - cls->u || back->d != cls->d)
    fail(ErrorCode::InternalError, "complementary class does not have invariants (n - u, d)");
  return comp;
}

PolynomialCertificate polynomial_certificate(const NormMatrix& nm) {
  const int dim = 2 * nm.n;
  const int k = 2 * nm.u;
  // t^{dim - k} (t - d)^k
  std::vector<BigInt> expected(static_cast<std::size_t>(dim + 1), 0);
  for (int m = 0; m <= k; ++m) {
    BigInt c = binomial(k, m) * pow(nm.d, m);
    if (m % 2 != 0) c = -c;
    expected[static_cast<std::size_t>(dim - m)] = c;
  }
  PolynomialCertificate out;
  out.char_ok = characteristic_polynomial(nm.N) == expected;
  const bool idem = IntMatrix(nm.N * nm.N) == IntMatrix(nm.N * nm.d);
  const bool zero = is_zero_matrix(nm.N);
  const bool scalar = nm.N == IntMatrix(identity_int(dim) * nm.d);
  out.min_ok = idem && (nm.u == 0 ? zero : !zero) && (nm.u == nm.n ? scalar : !scalar);
  return out;
}

bool elliptic_in_divisor(const TwoForm& delta_e, const TwoForm& delta_z) {
  const int n = delta_e.n();
  if (delta_z.n() != n) fail(ErrorCode::DimensionMismatch, "classes live in different dimensions");
  if (n < 3) fail(ErrorCode::RangeError, "needs n >= 3");
  const auto ce = check_class(delta_e);
  const auto cz = check_class(delta_z);
  if (!ce || ce->u != 1) fail(ErrorCode::WrongDimensions, "first class is not elliptic");
  if (!cz || cz->u != n - 1) fail(ErrorCode::WrongDimensions, "second class is not of dimension n - 1");
  const std::vector<WedgeFactor> fs{{delta_e, 1}, {delta_z, 1}, {theta(n), n - 2}};
  return mixed_intersection(fs) == ce->d * cz->d * factorial(n - 2) * (n - 2);
}

}  // namespace nsforge
