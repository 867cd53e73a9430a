#include "nsforge/exterior.hpp"

#include "nsforge/error.hpp"
#include "nsforge/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace nsforge {

namespace {

void validate_antisymmetric(const IntMatrix& m) {
  if (m.rows() != m.cols()) fail(ErrorCode::DimensionMismatch, "coefficient matrix is not square");
  if (m.rows() % 2 != 0) fail(ErrorCode::OddDimension, "matrix size must be even");
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = i; j < m.cols(); ++j)
      if (m(i, j) != -m(j, i)) fail(ErrorCode::NotAntisymmetric, "matrix is not antisymmetric");
}

// W with coefficient vector = W * (values at t = 0..deg).
RatMatrix compute_vandermonde_inverse(int deg) {
  RatMatrix v(deg + 1, deg + 1);
  for (int g = 0; g <= deg; ++g) {
    Rational p = 1;
    for (int r = 0; r <= deg; ++r) {
      v(g, r) = p;
      p *= g;
    }
  }
  return inverse<Rational>(v);
}

const RatMatrix& vandermonde_inverse(int deg) {
  thread_local std::map<int, RatMatrix> cache;
  auto it = cache.find(deg);
  if (it == cache.end()) it = cache.emplace(deg, compute_vandermonde_inverse(deg)).first;
  return it->second;
}

BigInt to_integer(const Rational& q) {
  if (!is_integer(q)) fail(ErrorCode::InternalError, "non-integral Pfaffian coefficient");
  return numerator(q);
}

using i128 = __int128;

struct SmallPfaffian {
  const std::vector<long long>& a;
  int size;
  std::vector<i128>& memo;
  std::vector<std::uint32_t>& stamp;
  std::uint32_t gen;

  i128 operator()(std::uint32_t remaining) const {
    if (remaining == 0) return 1;
    if (stamp[remaining] == gen) return memo[remaining];
    const int i = __builtin_ctz(remaining);
    const std::uint32_t rest = remaining & (remaining - 1);
    i128 total = 0;
    int position = 0;
    for (std::uint32_t scan = rest; scan != 0; scan &= scan - 1) {
      const int j = __builtin_ctz(scan);
      if (const long long x = a[static_cast<std::size_t>(i * size + j)]; x != 0) {
        const i128 sub = (*this)(rest & ~(std::uint32_t(1) << j));
        total += (position % 2 == 0) ? x * sub : -(x * sub);
      }
      ++position;
    }
    stamp[remaining] = gen;
    memo[remaining] = total;
    return total;
  }
};

BigInt to_big(i128 v) {
  const bool neg = v < 0;
  if (neg) v = -v;
  BigInt out = static_cast<unsigned long long>(v >> 64);
  out <<= 64;
  out += static_cast<unsigned long long>(v & ~static_cast<unsigned long long>(0));
  return neg ? BigInt(-out) : out;
}

// Row-major copy of m when every entry is below 2^20 in magnitude.
bool small_entries(const IntMatrix& m, std::vector<long long>& out, long long& max_abs) {
  static const BigInt limit = BigInt(1) << 20;
  out.resize(static_cast<std::size_t>(m.rows() * m.cols()));
  max_abs = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (abs(m(i, j)) >= limit) return false;
      const long long x = m(i, j).convert_to<long long>();
      out[static_cast<std::size_t>(i * m.cols() + j)] = x;
      max_abs = std::max(max_abs, x < 0 ? -x : x);
    }
  return true;
}

// True when (size-1)!! max_abs^(size/2) stays below 2^120.
bool fits_128(int size, long long max_abs) {
  double bits = (size / 2) * std::log2(static_cast<double>(max_abs) + 1.0);
  for (int k = size - 1; k > 1; k -= 2) bits += std::log2(static_cast<double>(k));
  return size <= 16 && bits <= 120;
}

i128 small_pfaffian(const std::vector<long long>& a, int size) {
  if (size == 0) return 1;
  thread_local std::vector<i128> memo;
  thread_local std::vector<std::uint32_t> stamp;
  thread_local std::uint32_t gen = 0;
  const std::size_t states = std::size_t(1) << size;
  if (memo.size() < states) {
    memo.assign(states, 0);
    stamp.assign(states, 0);
  }
  if (++gen == 0) {
    std::fill(stamp.begin(), stamp.end(), 0);
    gen = 1;
  }
  const SmallPfaffian pf{a, size, memo, stamp, gen};
  return pf((std::uint32_t(1) << size) - 1);
}

BigInt integer_pfaffian(const IntMatrix& m) {
  const int size = static_cast<int>(m.rows());
  thread_local std::vector<long long> a;
  long long mx = 0;
  if (size <= 16 && small_entries(m, a, mx) && fits_128(size, mx)) return to_big(small_pfaffian(a, size));
  return pfaffian<BigInt>(m);
}

}  // namespace

TwoForm::TwoForm(int n, IntMatrix matrix) : n_(n), m_(std::move(matrix)) {
  if (n < 1) fail(ErrorCode::RangeError, "n must be positive");
  validate_antisymmetric(m_);
  if (m_.rows() != 2 * n) fail(ErrorCode::DimensionMismatch, "matrix size must be 2n");
}

TwoForm TwoForm::zero(int n) { return TwoForm(n, IntMatrix::Zero(2 * n, 2 * n)); }

TwoForm TwoForm::from_coefficients(int n, std::span<const BigInt> c) {
  const int dim = 2 * n;
  if (c.size() != static_cast<std::size_t>(n * (dim - 1)))
    fail(ErrorCode::DimensionMismatch, "wrong number of coefficients");
  IntMatrix m = IntMatrix::Zero(dim, dim);
  std::size_t k = 0;
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) {
      m(i, j) = c[k];
      m(j, i) = -c[k];
      ++k;
    }
  return TwoForm(n, std::move(m));
}

std::vector<BigInt> TwoForm::coefficients() const {
  std::vector<BigInt> out;
  out.reserve(static_cast<std::size_t>(n_ * (2 * n_ - 1)));
  for (int i = 0; i < dim(); ++i)
    for (int j = i + 1; j < dim(); ++j) out.push_back(m_(i, j));
  return out;
}

bool TwoForm::is_zero() const { return is_zero_matrix(m_); }

TwoForm& TwoForm::operator+=(const TwoForm& o) {
  if (o.n_ != n_) fail(ErrorCode::DimensionMismatch, "forms of different dimension");
  m_ += o.m_;
  return *this;
}

TwoForm& TwoForm::operator-=(const TwoForm& o) {
  if (o.n_ != n_) fail(ErrorCode::DimensionMismatch, "forms of different dimension");
  m_ -= o.m_;
  return *this;
}

TwoForm operator*(const BigInt& k, const TwoForm& a) { return TwoForm(a.n_, a.m_ * k); }

TwoForm operator-(const TwoForm& a) { return TwoForm(a.n_, -a.m_); }

bool operator==(const TwoForm& a, const TwoForm& b) { return a.n_ == b.n_ && a.m_ == b.m_; }

bool operator<(const TwoForm& a, const TwoForm& b) {
  if (a.n_ != b.n_) return a.n_ < b.n_;
  const auto ca = a.coefficients();
  const auto cb = b.coefficients();
  return std::lexicographical_compare(ca.begin(), ca.end(), cb.begin(), cb.end());
}

IntMatrix standard_J(int n) {
  IntMatrix j = IntMatrix::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    j(i, n + i) = 1;
    j(n + i, i) = -1;
  }
  return j;
}

IntMatrix PrincipalClass::matrix() const { return -standard_J(n); }

int volume_sign(int n) {
  const int e = n + n * (n - 1) / 2;
  return (e % 2 == 0) ? 1 : -1;
}

BigInt pfaffian(const IntMatrix& m) {
  validate_antisymmetric(m);
  return integer_pfaffian(m);
}

BigInt mixed_intersection(std::span<const WedgeFactor> factors) {
  if (factors.empty()) fail(ErrorCode::MultiplicitySumMismatch, "no factors");
  const int n = factors.front().form.n();
  int total = 0;
  std::vector<const WedgeFactor*> active;
  for (const auto& f : factors) {
    if (f.form.n() != n) fail(ErrorCode::DimensionMismatch, "factors have different n");
    if (f.power < 0) fail(ErrorCode::MultiplicitySumMismatch, "negative multiplicity");
    total += f.power;
    if (f.power > 0) active.push_back(&f);
  }
  if (total != n) fail(ErrorCode::MultiplicitySumMismatch, "multiplicities must sum to n");

  BigInt scale = volume_sign(n);
  for (const auto* f : active) scale *= factorial(f->power);

  const std::size_t k = active.size();
  if (k == 1) return scale * integer_pfaffian(active[0]->form.matrix());

  // Dehomogenize at s_k = 1 and interpolate on the grid {0..n}^{k-1}.
  const RatMatrix& w = vandermonde_inverse(n);
  const std::size_t free = k - 1;
  std::vector<int> g(free, 0);
  Rational coeff = 0;
  while (true) {
    Rational weight = 1;
    for (std::size_t i = 0; i < free && weight != 0; ++i) weight *= w(active[i]->power, g[i]);
    if (weight != 0) {
      IntMatrix sum = active[free]->form.matrix();
      for (std::size_t i = 0; i < free; ++i)
        if (g[i] != 0) sum += active[i]->form.matrix() * BigInt(g[i]);
      coeff += weight * Rational(integer_pfaffian(sum));
    }
    std::size_t pos = 0;
    while (pos < free && ++g[pos] > n) g[pos++] = 0;
    if (pos == free) break;
  }
  return scale * to_integer(coeff);
}

IntersectionProfile intersection_profile(const TwoForm& eta) {
  const int n = eta.n();
  const IntMatrix mt = PrincipalClass{n}.matrix();
  const RatMatrix& w = vandermonde_inverse(n);
  RatVector values(n + 1);
  const int dim = 2 * n;
  thread_local std::vector<long long> a, shifted;
  long long mx = 0;
  if (dim <= 16 && small_entries(eta.matrix(), a, mx) && fits_128(dim, 1 + n * mx)) {
    shifted.resize(a.size());
    for (int t = 0; t <= n; ++t) {
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
          const std::size_t k = static_cast<std::size_t>(i * dim + j);
          shifted[k] = t * a[k] + ((i < n && j == n + i) ? -1 : (j < n && i == n + j) ? 1 : 0);
        }
      values(t) = Rational(to_big(small_pfaffian(shifted, dim)));
    }
  } else {
    for (int t = 0; t <= n; ++t) values(t) = Rational(integer_pfaffian(mt + eta.matrix() * BigInt(t)));
  }
  const RatVector c = w * values;
  IntersectionProfile p{n, {}};
  p.values.reserve(n);
  for (int r = 1; r <= n; ++r)
    p.values.push_back(volume_sign(n) * factorial(r) * factorial(n - r) * to_integer(c(r)));
  return p;
}

bool is_primitive(const TwoForm& eta) {
  const BigInt g = gcd_of(eta.matrix());
  if (g == 0) fail(ErrorCode::ZeroForm, "zero form");
  return g == 1;
}

IntersectionProfile expected_profile(int n, int u, const BigInt& d) {
  IntersectionProfile p{n, {}};
  for (int r = 1; r <= n; ++r) {
    if (r > u)
      p.values.push_back(0);
    else
      p.values.push_back(factorial(n - r) * factorial(r) * binomial(u, r) * pow(d, r));
  }
  return p;
}

std::optional<ClassInvariants> match_profile(const IntersectionProfile& p) {
  const int n = p.n;
  int u = 0;
  for (int r = n; r >= 1; --r)
    if (p.at(r) != 0) {
      u = r;
      break;
    }
  if (u == 0) return std::nullopt;
  const BigInt denom = factorial(n - 1) * u;
  if (p.at(1) <= 0 || p.at(1) % denom != 0) return std::nullopt;
  const BigInt d = p.at(1) / denom;
  if (expected_profile(n, u, d) != p) return std::nullopt;
  return ClassInvariants{u, d};
}

std::optional<ClassInvariants> check_class(const TwoForm& eta) {
  if (!is_primitive(eta)) fail(ErrorCode::NotPrimitive, "form is not primitive");
  return match_profile(intersection_profile(eta));
}

TwoForm natural_class(const TwoForm& eta) {
  const int n = eta.n();
  const BigInt i1 = intersection_profile(eta).at(1);
  return TwoForm(n, eta.matrix() * factorial(n) - PrincipalClass{n}.matrix() * i1);
}

std::vector<Rational> q_forms(const TwoForm& eta) {
  const int n = eta.n();
  const IntersectionProfile p = intersection_profile(natural_class(eta));
  std::vector<Rational> out;
  for (int r = 2; r <= n; ++r) out.push_back(-Rational(p.at(r)) / Rational((r - 1) * factorial(n)));
  return out;
}

Rational q_form(const TwoForm& eta, int r) {
  if (r < 2 || r > eta.n()) fail(ErrorCode::RangeError, "q_r needs 2 <= r <= n");
  return q_forms(eta)[static_cast<std::size_t>(r - 2)];
}

Rational f_formula(int u, int r, int n) {
  if (r < 2 || r > n) fail(ErrorCode::RangeError, "f(u, r) needs 2 <= r <= n");
  if (u < 1 || u > n) fail(ErrorCode::RangeError, "f(u, r) needs 1 <= u <= n");
  const Rational nf(factorial(n));
  const BigInt n1f = factorial(n - 1);
  Rational sum = 0;
  for (int m = 0; m <= std::min(r, u); ++m) {
    Rational term(binomial(r, m) * binomial(u, m));
    term *= (m == 0) ? Rational(1) / nf : Rational(pow(factorial(n), m - 1));
    term *= Rational(pow(n1f, r - m) * factorial(n - m) * factorial(m) * pow(BigInt(u), r - m));
    if ((r - m + 1) % 2 != 0) term = -term;
    sum += term;
  }
  return sum / Rational(r - 1);
}

bool is_primitive_mod_L(const TwoForm& eta) {
  const int n = eta.n();
  const IntMatrix& m = eta.matrix();
  BigInt g = 0;
  for (int i = 0; i < 2 * n; ++i)
    for (int j = i + 1; j < 2 * n; ++j)
      if (!(i < n && j == n + i)) g = gcd(g, m(i, j));
  for (int i = 1; i < n; ++i) g = gcd(g, m(i, n + i) - m(0, n));
  return g == 1;
}

ModLCheck check_class_mod_L(const TwoForm& eta, int u, const BigInt& d) {
  const int n = eta.n();
  if (u < 1 || u > n) fail(ErrorCode::RangeError, "u out of range");
  if (d < 1) fail(ErrorCode::RangeError, "d must be positive");
  if (!is_primitive_mod_L(eta)) fail(ErrorCode::NotPrimitiveModL, "form is not primitive modulo theta");
  ModLCheck out{};
  const BigInt i1 = intersection_profile(eta).at(1);
  BigInt diff = (i1 - factorial(n - 1) * u * d) % factorial(n);
  out.congruence = diff == 0;
  out.q_forms = true;
  const auto q = q_forms(eta);
  for (int r = 2; r <= n; ++r)
    if (q[static_cast<std::size_t>(r - 2)] != f_formula(u, r, n) * Rational(pow(d, r))) out.q_forms = false;
  return out;
}

}  // namespace nsforge
