#include "nsforge/riemann.hpp"

#include "nsforge/error.hpp"
#include "nsforge/linalg.hpp"
#include "nsforge/symplectic.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <sstream>
#include <thread>

namespace nsforge {

// ---------------------------------------------------------------- Siegel space

bool in_siegel(const ExactTau& tau) {
  const Eigen::Index n = tau.rows();
  if (tau.cols() != n || n == 0) return false;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      if (tau(i, j) != tau(j, i)) return false;
  RatMatrix im(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) im(i, j) = tau(i, j).imag();
  // Gaussian elimination without pivoting: all pivots positive iff positive definite.
  for (Eigen::Index k = 0; k < n; ++k) {
    if (im(k, k) <= 0) return false;
    for (Eigen::Index i = k + 1; i < n; ++i) {
      const Rational f = im(i, k) / im(k, k);
      for (Eigen::Index j = k; j < n; ++j) im(i, j) -= f * im(k, j);
    }
  }
  return true;
}

bool in_siegel(const FloatTau& tau) {
  const Eigen::Index n = tau.rows();
  if (tau.cols() != n || n == 0) return false;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!std::isfinite(tau(i, j).real()) || !std::isfinite(tau(i, j).imag())) return false;
      if (tau(i, j) != tau(j, i)) return false;
    }
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double s = tau(j, j).imag();
    for (Eigen::Index k = 0; k < j; ++k) s -= l(j, k) * l(j, k);
    if (s <= 1e-12) return false;
    l(j, j) = std::sqrt(s);
    for (Eigen::Index i = j + 1; i < n; ++i) {
      double t = tau(i, j).imag();
      for (Eigen::Index k = 0; k < j; ++k) t -= l(i, k) * l(j, k);
      l(i, j) = t / l(j, j);
    }
  }
  return true;
}

PeriodMatrix PeriodMatrix::exact(ExactTau tau) {
  if (!in_siegel(tau)) fail(ErrorCode::NotInSiegel, "tau is not in the Siegel upper half space");
  return PeriodMatrix(std::move(tau));
}

PeriodMatrix PeriodMatrix::floating(FloatTau tau) {
  if (!in_siegel(tau)) fail(ErrorCode::NotInSiegel, "tau is not in the Siegel upper half space");
  return PeriodMatrix(std::move(tau));
}

int PeriodMatrix::n() const {
  return static_cast<int>(std::visit([](const auto& t) { return t.rows(); }, data_));
}

const ExactTau& PeriodMatrix::exact_entries() const {
  if (backend() != Backend::Exact) fail(ErrorCode::UsageError, "period matrix uses the float backend");
  return std::get<ExactTau>(data_);
}

FloatTau PeriodMatrix::float_entries() const {
  if (backend() == Backend::Float) return std::get<FloatTau>(data_);
  const ExactTau& t = std::get<ExactTau>(data_);
  FloatTau out(t.rows(), t.cols());
  for (Eigen::Index i = 0; i < t.rows(); ++i)
    for (Eigen::Index j = 0; j < t.cols(); ++j) out(i, j) = ComplexTraits<GaussianRational>::to_float(t(i, j));
  return out;
}

// ---------------------------------------------------------------- helpers

namespace {

template <class C>
double max_abs(const Mat<C>& tau) {
  double m = 0;
  for (Eigen::Index i = 0; i < tau.rows(); ++i)
    for (Eigen::Index j = 0; j < tau.cols(); ++j) m = std::max(m, ComplexTraits<C>::magnitude(tau(i, j)));
  return m;
}

template <class C>
void check_shapes(const TwoForm& eta, const Mat<C>& tau) {
  if (tau.rows() != eta.n() || tau.cols() != eta.n())
    fail(ErrorCode::DimensionMismatch, "period matrix and form differ in dimension");
  if (!in_siegel(tau)) fail(ErrorCode::NotInSiegel, "tau is not in the Siegel upper half space");
}

template <class C>
Mat<C> period_map(const Mat<C>& tau) {
  const Eigen::Index n = tau.rows();
  Mat<C> pi(n, 2 * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      pi(i, j) = tau(i, j);
      pi(i, n + j) = (i == j) ? C(1) : C(0);
    }
  return pi;
}

template <class C>
C det(Mat<C> a) {
  const Eigen::Index n = a.rows();
  C result(1);
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index piv = -1;
    if constexpr (ComplexTraits<C>::exact) {
      for (Eigen::Index i = k; i < n; ++i)
        if (!ComplexTraits<C>::is_zero(a(i, k), 0)) {
          piv = i;
          break;
        }
    } else {
      double best = 0;
      for (Eigen::Index i = k; i < n; ++i)
        if (ComplexTraits<C>::magnitude(a(i, k)) > best) {
          best = ComplexTraits<C>::magnitude(a(i, k));
          piv = i;
        }
    }
    if (piv < 0) return C(0);
    if (piv != k) {
      a.row(piv).swap(a.row(k));
      result = -result;
    }
    result = result * a(k, k);
    for (Eigen::Index i = k + 1; i < n; ++i) {
      const C f = a(i, k) / a(k, k);
      for (Eigen::Index j = k; j < n; ++j) a(i, j) = a(i, j) - f * a(k, j);
    }
  }
  return result;
}

}  // namespace

// ---------------------------------------------------------------- condition (a)

template <class C>
std::map<std::uint32_t, C> wedge_coefficients(const TwoForm& eta, const Mat<C>& tau) {
  check_shapes(eta, tau);
  const int n = eta.n();
  const int dim = 2 * n;
  const Mat<C> pi = period_map(tau);
  const std::uint32_t full = (1u << dim) - 1;

  std::map<std::uint32_t, C> omega;  // dz_1 ^ ... ^ dz_n
  for (std::uint32_t s = 0; s <= full; ++s) {
    if (__builtin_popcount(s) != n) continue;
    Mat<C> minor(n, n);
    int c = 0;
    for (int j = 0; j < dim; ++j)
      if ((s >> j) & 1u) {
        for (int i = 0; i < n; ++i) minor(i, c) = pi(i, j);
        ++c;
      }
    omega.emplace(s, det(minor));
  }
  const Mat<C> m = complexify<C>(eta.matrix());
  std::map<std::uint32_t, C> out;
  for (std::uint32_t t = 0; t <= full; ++t) {
    if (__builtin_popcount(t) != n + 2) continue;
    C total(0);
    for (int i = 0; i < dim; ++i) {
      if (!((t >> i) & 1u)) continue;
      for (int j = i + 1; j < dim; ++j) {
        if (!((t >> j) & 1u) || eta.coeff(i, j) == 0) continue;
        const std::uint32_t s = t & ~(1u << i) & ~(1u << j);
        const int below = __builtin_popcount(s & ((1u << i) - 1)) + __builtin_popcount(s & ((1u << j) - 1));
        const C term = m(i, j) * omega.at(s);
        total = (below % 2 == 0) ? total + term : total - term;
      }
    }
    out.emplace(t, total);
  }
  return out;
}

template <class C>
bool wedge_vanishes(const TwoForm& eta, const Mat<C>& tau, double tol) {
  const auto coeffs = wedge_coefficients(eta, tau);
  const double bound = tol * std::pow(1.0 + max_abs(tau), eta.n());
  for (const auto& [mask, c] : coeffs)
    if (!ComplexTraits<C>::is_zero(c, bound)) return false;
  return true;
}

bool wedge_vanishes(const TwoForm& eta, const PeriodMatrix& tau, double tol) {
  return tau.visit([&](const auto& t) { return wedge_vanishes(eta, t, tol); });
}

template <class C>
Mat<C> residual_matrix(const TwoForm& eta, const Mat<C>& tau) {
  check_shapes(eta, tau);
  const Eigen::Index n = eta.n();
  // Pi J = (-I | tau)
  Mat<C> p(n, 2 * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      p(i, j) = (i == j) ? C(-1) : C(0);
      p(i, n + j) = tau(i, j);
    }
  const Mat<C> m = complexify<C>(eta.matrix());
  return p * m * p.transpose();
}

template <class C>
bool residual_vanishes(const TwoForm& eta, const Mat<C>& tau, double tol) {
  const Mat<C> r = residual_matrix(eta, tau);
  const double bound = tol * std::pow(1.0 + max_abs(tau), 2);
  for (Eigen::Index i = 0; i < r.rows(); ++i)
    for (Eigen::Index j = i + 1; j < r.cols(); ++j)
      if (!ComplexTraits<C>::is_zero(r(i, j), bound)) return false;
  return true;
}

// ---------------------------------------------------------------- relations

void Polynomial::canonicalize() {
  for (auto& [mono, c] : terms) std::sort(mono.begin(), mono.end());
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() > b.first.size();
    return a.first < b.first;
  });
  std::vector<std::pair<Monomial, BigInt>> merged;
  for (auto& t : terms) {
    if (!merged.empty() && merged.back().first == t.first)
      merged.back().second += t.second;
    else
      merged.push_back(std::move(t));
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(), [](const auto& t) { return t.second == 0; }),
               merged.end());
  terms = std::move(merged);
}

int Polynomial::degree() const {
  int d = 0;
  for (const auto& t : terms) d = std::max(d, static_cast<int>(t.first.size()));
  return d;
}

Polynomial Polynomial::operator-() const {
  Polynomial p = *this;
  for (auto& t : p.terms) t.second = -t.second;
  return p;
}

std::string to_string(const Polynomial& p) {
  if (p.terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [mono, c] : p.terms) {
    const BigInt mag = abs(c);
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    first = false;
    if (mono.empty() || mag != 1) os << mag;
    for (std::size_t i = 0; i < mono.size(); ++i) {
      if (i > 0 || mag != 1) os << "*";
      os << "t" << mono[i].first << mono[i].second;
    }
  }
  return os.str();
}

RelationSet symbolic_relations(const TwoForm& eta) {
  const int n = eta.n();
  const IntMatrix& m = eta.matrix();
  auto var = [](int a, int b) { return std::make_pair(std::min(a, b) + 1, std::max(a, b) + 1); };
  RelationSet out{n, {}};
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q) {
      Polynomial poly;
      // rows of (Pi J): -e_p on the first block, tau_p on the second
      if (m(p, q) != 0) poly.terms.push_back({{}, m(p, q)});
      for (int b = 0; b < n; ++b) {
        if (m(p, n + b) != 0) poly.terms.push_back({{var(q, b)}, -m(p, n + b)});
        if (m(n + b, q) != 0) poly.terms.push_back({{var(p, b)}, -m(n + b, q)});
      }
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          if (m(n + a, n + b) != 0) poly.terms.push_back({{var(p, a), var(q, b)}, m(n + a, n + b)});
      poly.canonicalize();
      if (poly.is_zero()) continue;
      out.entries.push_back({p + 1, q + 1, poly});
      BigInt content = 0;
      for (const auto& t : poly.terms) content = gcd(content, t.second);
      if (poly.terms.front().second < 0) content = -content;
      for (auto& t : poly.terms) t.second /= content;
      if (std::find(out.polynomials.begin(), out.polynomials.end(), poly) == out.polynomials.end())
        out.polynomials.push_back(std::move(poly));
    }
  return out;
}

// ---------------------------------------------------------------- tangent data

template <class C>
TangentData<C> tangent_and_lattice(const TwoForm& eta, const Mat<C>& tau, double tol) {
  if (!wedge_vanishes(eta, tau, tol)) fail(ErrorCode::NotAnalytic, "condition (a) fails for this period matrix");
  const SubvarietyReport rep = analyze(eta);
  TangentData<C> out;
  out.lattice = period_map(tau) * complexify<C>(rep.image.basis);
  const Echelon<C> e = rref<C>(Mat<C>(out.lattice.transpose()));
  out.tangent = e.reduced.topRows(e.rank()).transpose();
  if (e.rank() != rep.u) fail(ErrorCode::InternalError, "tangent space has the wrong dimension");
  return out;
}

ExactTau mobius(const IntMatrix& s, const ExactTau& tau) {
  const Eigen::Index n = tau.rows();
  if (s.rows() != 2 * n || s.cols() != 2 * n) fail(ErrorCode::DimensionMismatch, "matrix size must be 2n");
  if (!is_symplectic(s)) fail(ErrorCode::NotSymplectic, "matrix is not symplectic");
  const ExactTau c = complexify<GaussianRational>(s);
  const ExactTau num = c.topLeftCorner(n, n) * tau + c.topRightCorner(n, n);
  const ExactTau den = c.bottomLeftCorner(n, n) * tau + c.bottomRightCorner(n, n);
  return num * inverse<GaussianRational>(den);
}

// ---------------------------------------------------------------- scan

std::uint64_t default_budget() {
  if (const char* env = std::getenv("NSFORGE_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return 2'000'000'000ULL;
}

namespace {

struct Coefficient {
  int i, j;
};

std::vector<Coefficient> coefficient_layout(int n) {
  std::vector<Coefficient> out;
  for (int i = 0; i < 2 * n; ++i)
    for (int j = i + 1; j < 2 * n; ++j) out.push_back({i, j});
  return out;
}

// Cheap integral tests on a small coefficient vector: primitive, N^2 = dN.
bool cheap_filters(int n, const std::vector<long long>& x, long long d) {
  long long g = 0;
  for (long long v : x) g = std::gcd(g, v);
  if (g != 1) return false;
  const int dim = 2 * n;
  std::vector<long long> m(static_cast<std::size_t>(dim * dim), 0);
  std::size_t k = 0;
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) {
      m[i * dim + j] = x[k];
      m[j * dim + i] = -x[k];
      ++k;
    }
  // N = J M: rows i < n are rows n + i of M, rows n + i are -(row i of M).
  std::vector<long long> nm(static_cast<std::size_t>(dim * dim));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < dim; ++j) {
      nm[i * dim + j] = m[(n + i) * dim + j];
      nm[(n + i) * dim + j] = -m[i * dim + j];
    }
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      __int128 s = 0;
      for (int l = 0; l < dim; ++l) s += static_cast<__int128>(nm[i * dim + l]) * nm[l * dim + j];
      if (s != static_cast<__int128>(d) * nm[i * dim + j]) return false;
    }
  return true;
}

// Affine family x_pivot = (B - sum_f C_f x_f) / L of integer pivot values,
// enumerated over the free coordinates in [-bound, bound].
struct ExactFamily {
  std::vector<int> free, pivots;
  std::vector<BigInt> l, b;
  std::vector<std::vector<BigInt>> c;  // [row][free]
};

struct FloatFamily {
  std::vector<int> free, pivots;
  std::vector<double> b;
  std::vector<std::vector<double>> c;
};

// Odometer over free coordinates with the first restricted to [lo, hi].
// `step(f, delta)` is invoked whenever free coordinate f changes by delta.
template <class Step, class Leaf>
void odometer(std::vector<long long>& xs, int bound, long long lo, long long hi, Step&& step, Leaf&& leaf) {
  const std::size_t k = xs.size();
  if (k == 0) {
    leaf();
    return;
  }
  for (std::size_t f = 0; f < k; ++f) {
    const long long start = (f == 0) ? lo : -bound;
    step(f, start - xs[f]);
    xs[f] = start;
  }
  while (true) {
    leaf();
    std::size_t f = k;
    while (f > 0) {
      --f;
      const long long top = (f == 0) ? hi : bound;
      if (xs[f] < top) {
        step(f, 1);
        ++xs[f];
        break;
      }
      if (f == 0) return;
      step(f, -2LL * bound);
      xs[f] = -bound;
    }
  }
}

template <class Int>
Int to_int(const BigInt& v) {
  if constexpr (std::is_same_v<Int, BigInt>)
    return v;
  else
    return static_cast<Int>(v.convert_to<long long>());
}

template <class Int>
std::vector<std::vector<long long>> run_exact_block(const ExactFamily& fam, std::size_t total, int n, int bound,
                                                     long long d, long long lo, long long hi) {
  const std::size_t rows = fam.pivots.size();
  std::vector<Int> l(rows), num(rows);
  std::vector<std::vector<Int>> c(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    l[r] = to_int<Int>(fam.l[r]);
    num[r] = to_int<Int>(fam.b[r]);
    for (const auto& v : fam.c[r]) c[r].push_back(to_int<Int>(v));
  }
  std::vector<long long> xs(fam.free.size(), 0), x(total, 0);
  std::vector<std::vector<long long>> found;
  auto step = [&](std::size_t f, long long delta) {
    if (delta == 0) return;
    const Int dl = static_cast<Int>(delta);
    for (std::size_t r = 0; r < rows; ++r)
      if (c[r][f] != 0) num[r] -= c[r][f] * dl;
  };
  auto leaf = [&] {
    for (std::size_t r = 0; r < rows; ++r) {
      if (num[r] % l[r] != 0) return;
      const Int v = num[r] / l[r];
      if (v > bound || v < -bound) return;
    }
    for (std::size_t f = 0; f < xs.size(); ++f) x[fam.free[f]] = xs[f];
    for (std::size_t r = 0; r < rows; ++r) x[fam.pivots[r]] = static_cast<long long>(num[r] / l[r]);
    if (cheap_filters(n, x, d)) found.push_back(x);
  };
  odometer(xs, bound, lo, hi, step, leaf);
  return found;
}

std::vector<std::vector<long long>> run_float_block(const FloatFamily& fam, std::size_t total, int n, int bound,
                                                     long long d, long long lo, long long hi) {
  const std::size_t rows = fam.pivots.size();
  std::vector<long long> xs(fam.free.size(), 0), x(total, 0);
  std::vector<std::vector<long long>> found;
  auto leaf = [&] {
    for (std::size_t r = 0; r < rows; ++r) {
      double v = fam.b[r];
      for (std::size_t f = 0; f < xs.size(); ++f) v -= fam.c[r][f] * static_cast<double>(xs[f]);
      const double rv = std::round(v);
      if (std::abs(v - rv) > 1e-6 || std::abs(rv) > bound) return;
      x[fam.pivots[r]] = static_cast<long long>(rv);
    }
    for (std::size_t f = 0; f < xs.size(); ++f) x[fam.free[f]] = xs[f];
    if (cheap_filters(n, x, d)) found.push_back(x);
  };
  odometer(xs, bound, lo, hi, [](std::size_t, long long) {}, leaf);
  return found;
}

// Splits [-bound, bound] into `jobs` contiguous blocks and runs them.
template <class Block>
std::vector<std::vector<long long>> run_partitioned(int bound, int jobs, bool has_free, Block&& block) {
  if (!has_free || jobs <= 1) return block(-bound, bound);
  const long long width = 2LL * bound + 1;
  const long long parts = std::min<long long>(jobs, width);
  std::vector<std::vector<std::vector<long long>>> results(static_cast<std::size_t>(parts));
  std::vector<std::thread> workers;
  for (long long p = 0; p < parts; ++p) {
    const long long lo = -bound + (width * p) / parts;
    const long long hi = -bound + (width * (p + 1)) / parts - 1;
    workers.emplace_back([&, p, lo, hi] { results[static_cast<std::size_t>(p)] = block(lo, hi); });
  }
  for (auto& w : workers) w.join();
  std::vector<std::vector<long long>> out;
  for (auto& r : results) out.insert(out.end(), r.begin(), r.end());
  return out;
}

void check_budget(std::size_t free_count, int bound, std::uint64_t budget) {
  const double leaves = std::pow(2.0 * bound + 1.0, static_cast<double>(free_count));
  if (leaves > static_cast<double>(budget))
    fail(ErrorCode::BudgetExceeded, "search space of " + std::to_string(leaves) + " leaves exceeds the budget");
}

}  // namespace

std::vector<SubvarietyReport> scan_ppav(const PeriodMatrix& tau, int u, const BigInt& d, int bound,
                                        const ScanOptions& opts) {
  const int n = tau.n();
  if (u < 1 || u > n) fail(ErrorCode::RangeError, "u out of range");
  if (d < 1) fail(ErrorCode::RangeError, "d must be positive");
  if (bound < 1) fail(ErrorCode::RangeError, "bound must be at least 1");
  const std::uint64_t budget = opts.budget ? opts.budget : default_budget();
  const auto layout = coefficient_layout(n);
  const std::size_t total = layout.size();
  // every trace entry is bounded, so a larger exponent has no candidates
  if (d * u > BigInt(n) * bound) return {};
  const long long dd = d.convert_to<long long>();
  const long long rhs_trace = -static_cast<long long>(u) * dd;

  std::vector<std::vector<long long>> candidates;
  if (tau.backend() == Backend::Exact) {
    const ExactTau& t = tau.exact_entries();
    std::vector<std::vector<Rational>> rows;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        std::vector<Rational> re(total + 1, 0), im(total + 1, 0);
        for (std::size_t k = 0; k < total; ++k) {
          const auto [i, j] = layout[k];
          auto entry = [&](int row, int col) -> GaussianRational {
            if (col < n) return (row == col) ? GaussianRational(-1) : GaussianRational(0);
            return t(row, col - n);
          };
          const GaussianRational c = entry(p, i) * entry(q, j) - entry(p, j) * entry(q, i);
          re[k] = c.real();
          im[k] = c.imag();
        }
        rows.push_back(re);
        rows.push_back(im);
      }
    std::vector<Rational> tr(total + 1, 0);
    for (std::size_t k = 0; k < total; ++k)
      if (layout[k].j == layout[k].i + n) tr[k] = 1;
    tr[total] = rhs_trace;
    rows.push_back(tr);

    RatMatrix a(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(total + 1));
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t k = 0; k <= total; ++k) a(r, k) = rows[r][k];
    const Echelon<Rational> e = rref<Rational>(a);
    if (!e.pivots.empty() && e.pivots.back() == static_cast<Eigen::Index>(total)) return {};

    ExactFamily fam;
    std::vector<bool> is_pivot(total, false);
    for (auto p : e.pivots) is_pivot[p] = true;
    for (std::size_t k = 0; k < total; ++k)
      if (!is_pivot[k]) fam.free.push_back(static_cast<int>(k));
    check_budget(fam.free.size(), bound, budget);
    bool small = true;
    for (Eigen::Index r = 0; r < e.rank(); ++r) {
      fam.pivots.push_back(static_cast<int>(e.pivots[r]));
      BigInt l = denominator(e.reduced(r, total));
      for (int f : fam.free) l = lcm(l, denominator(e.reduced(r, f)));
      const BigInt b = numerator(e.reduced(r, total) * l);
      BigInt mag = abs(b);
      std::vector<BigInt> row;
      for (int f : fam.free) {
        row.push_back(numerator(e.reduced(r, f) * l));
        mag += abs(row.back()) * bound * 2;
      }
      if (mag > BigInt(std::numeric_limits<long long>::max() / 4)) small = false;
      fam.l.push_back(l);
      fam.b.push_back(b);
      fam.c.push_back(std::move(row));
    }
    candidates = run_partitioned(bound, opts.jobs, !fam.free.empty(), [&](long long lo, long long hi) {
      return small ? run_exact_block<long long>(fam, total, n, bound, dd, lo, hi)
                   : run_exact_block<BigInt>(fam, total, n, bound, dd, lo, hi);
    });
  } else {
    const FloatTau t = tau.float_entries();
    std::vector<std::vector<double>> rows;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        std::vector<double> re(total + 1, 0), im(total + 1, 0);
        for (std::size_t k = 0; k < total; ++k) {
          const auto [i, j] = layout[k];
          auto entry = [&](int row, int col) -> FloatComplex {
            if (col < n) return (row == col) ? FloatComplex(-1) : FloatComplex(0);
            return t(row, col - n);
          };
          const FloatComplex c = entry(p, i) * entry(q, j) - entry(p, j) * entry(q, i);
          re[k] = c.real();
          im[k] = c.imag();
        }
        rows.push_back(re);
        rows.push_back(im);
      }
    std::vector<double> tr(total + 1, 0);
    for (std::size_t k = 0; k < total; ++k)
      if (layout[k].j == layout[k].i + n) tr[k] = 1;
    tr[total] = static_cast<double>(rhs_trace);
    rows.push_back(tr);

    Eigen::MatrixXd a(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(total + 1));
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t k = 0; k <= total; ++k) a(r, k) = rows[r][k];
    const Echelon<double> e = rref<double>(a, 1e-10);
    if (!e.pivots.empty() && e.pivots.back() == static_cast<Eigen::Index>(total)) return {};
    FloatFamily fam;
    std::vector<bool> is_pivot(total, false);
    for (auto p : e.pivots) is_pivot[p] = true;
    for (std::size_t k = 0; k < total; ++k)
      if (!is_pivot[k]) fam.free.push_back(static_cast<int>(k));
    check_budget(fam.free.size(), bound, budget);
    for (Eigen::Index r = 0; r < e.rank(); ++r) {
      fam.pivots.push_back(static_cast<int>(e.pivots[r]));
      fam.b.push_back(e.reduced(r, total));
      std::vector<double> row;
      for (int f : fam.free) row.push_back(e.reduced(r, f));
      fam.c.push_back(std::move(row));
    }
    candidates = run_partitioned(bound, opts.jobs, !fam.free.empty(), [&](long long lo, long long hi) {
      return run_float_block(fam, total, n, bound, dd, lo, hi);
    });
  }

  std::sort(candidates.begin(), candidates.end());
  std::vector<SubvarietyReport> out;
  for (const auto& x : candidates) {
    std::vector<BigInt> coeffs(x.begin(), x.end());
    const TwoForm eta = TwoForm::from_coefficients(n, coeffs);
    const auto cls = check_class(eta);
    if (!cls || cls->u != u || cls->d != d) continue;
    if (!wedge_vanishes(eta, tau, opts.tol)) continue;
    try {
      out.push_back(analyze(eta));
    } catch (const Error&) {
      continue;
    }
  }
  return out;
}

template std::map<std::uint32_t, GaussianRational> wedge_coefficients(const TwoForm&, const ExactTau&);
template std::map<std::uint32_t, FloatComplex> wedge_coefficients(const TwoForm&, const FloatTau&);
template bool wedge_vanishes(const TwoForm&, const ExactTau&, double);
template bool wedge_vanishes(const TwoForm&, const FloatTau&, double);
template ExactTau residual_matrix(const TwoForm&, const ExactTau&);
template FloatTau residual_matrix(const TwoForm&, const FloatTau&);
template bool residual_vanishes(const TwoForm&, const ExactTau&, double);
template bool residual_vanishes(const TwoForm&, const FloatTau&, double);
template TangentData<GaussianRational> tangent_and_lattice(const TwoForm&, const ExactTau&, double);
template TangentData<FloatComplex> tangent_and_lattice(const TwoForm&, const FloatTau&, double);

}  // namespace nsforge
