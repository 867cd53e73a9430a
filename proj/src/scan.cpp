#include "nsforge/scan.hpp"

#include "nsforge/error.hpp"
#include "nsforge/normend.hpp"
#include "nsforge/riemann.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

namespace nsforge {

namespace {

using i128 = __int128;

// Fraction-free rank of the first `rows` rows of a dim x dim matrix.
int small_rank(const std::vector<long long>& m, int rows, int dim) {
  std::vector<i128> a(m.begin(), m.begin() + static_cast<std::ptrdiff_t>(rows) * dim);
  int r = 0;
  i128 prev = 1;
  for (int c = 0; c < dim && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (a[i * dim + c] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < dim; ++j) std::swap(a[piv * dim + j], a[r * dim + j]);
    for (int i = r + 1; i < rows; ++i) {
      for (int j = c + 1; j < dim; ++j) a[i * dim + j] = (a[r * dim + c] * a[i * dim + j] - a[i * dim + c] * a[r * dim + j]) / prev;
      a[i * dim + c] = 0;
    }
    prev = a[r * dim + c];
    ++r;
  }
  return r;
}

struct Search {
  const EnumerationSpec& spec;
  int n, dim;
  long long b, d, trace_target;
  std::vector<std::pair<int, int>> vars;
  std::vector<int> row_start;
  std::uint64_t budget;
  std::atomic<std::uint64_t>& nodes;
  std::atomic<bool>& exceeded;

  struct RowData {
    std::vector<std::vector<long long>> coef;  // coef[i][j] = omega(r_i, e_j)
    std::vector<std::vector<long long>> rem;   // b * sum_{j' >= j} |coef[i][j']| over free columns
    std::vector<long long> target;
  };

  struct Worker {
    std::vector<long long> m;
    std::vector<RowData> rows;
    std::vector<std::vector<long long>> partial;  // per depth, one sum per constraint
    std::vector<int> prefix;
    std::vector<TwoForm> found;
    std::uint64_t local = 0;
  };

  long long omega(const std::vector<long long>& m, int i, int j) const {
    // omega(r_i, e_j) with omega(x, y) = sum_a x_a y_{n+a} - x_{n+a} y_a
    return j >= n ? m[i * dim + (j - n)] : -m[i * dim + (j + n)];
  }

  void enter_row(Worker& w, int k) const {
    RowData& rd = w.rows[k];
    rd.coef.assign(k, std::vector<long long>(dim, 0));
    rd.rem.assign(k, std::vector<long long>(dim + 1, 0));
    rd.target.assign(k, 0);
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < dim; ++j) rd.coef[i][j] = omega(w.m, i, j);
      for (int j = dim - 1; j >= 0; --j) rd.rem[i][j] = rd.rem[i][j + 1] + (j > k ? b * std::llabs(rd.coef[i][j]) : 0);
      rd.target[i] = -d * w.m[i * dim + k];
    }
  }

  void tick(Worker& w) const {
    if (++w.local % 4096 == 0) {
      if (nodes.fetch_add(4096) + 4096 > budget) exceeded = true;
    }
  }

  bool leaf_ok(const std::vector<long long>& m) const {
    long long g = 0;
    for (const auto& [i, j] : vars) g = std::gcd(g, m[i * dim + j]);
    if (g != 1) return false;
    if (spec.prefilters && small_rank(m, dim, dim) != 2 * spec.u) return false;
    if (spec.require_idempotent) {
      for (int i = 0; i < dim; ++i)
        for (int k = 0; k < dim; ++k) {
          long long s = 0;
          for (int a = 0; a < n; ++a) s += m[i * dim + a] * m[k * dim + n + a] - m[i * dim + n + a] * m[k * dim + a];
          if (s != -d * m[i * dim + k]) return false;
        }
    }
    return true;
  }

  void accept(Worker& w) const {
    if (!leaf_ok(w.m)) return;
    IntMatrix x(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) x(i, j) = w.m[i * dim + j];
    const TwoForm eta(n, x);
    try {
      if (spec.require_type) {
        const SubvarietyReport rep = analyze(eta);
        if (rep.u != spec.u || rep.d != spec.d || rep.type != *spec.require_type) return;
      } else {
        const auto cls = check_class(eta);
        if (!cls || cls->u != spec.u || cls->d != spec.d) return;
      }
    } catch (const Error&) {
      return;
    }
    w.found.push_back(eta);
  }

  void dfs(Worker& w, std::size_t v, long long trace) const {
    if (exceeded) return;
    if (v == vars.size()) {
      accept(w);
      return;
    }
    const auto [k, j] = vars[v];
    if (static_cast<int>(v) == row_start[k] && spec.require_idempotent) {
      enter_row(w, k);
      auto& s = w.partial[v];
      s.assign(k, 0);
      for (int i = 0; i < k; ++i)
        for (int c = 0; c < k; ++c) s[i] += w.rows[k].coef[i][c] * w.m[k * dim + c];
    }
    const bool is_trace = k < n && j == k + n;
    const long long lo = v < w.prefix.size() ? w.prefix[v] : -b;
    const long long hi = v < w.prefix.size() ? w.prefix[v] : b;
    for (long long val = lo; val <= hi; ++val) {
      tick(w);
      w.m[k * dim + j] = val;
      w.m[j * dim + k] = -val;
      if (spec.prefilters && is_trace) {
        const long long left = static_cast<long long>(n - 1 - k) * b;
        if (std::llabs(trace_target - trace - val) > left) continue;
      }
      if (spec.require_idempotent) {
        const RowData& rd = w.rows[k];
        const auto& cur = w.partial[v];
        auto& nxt = w.partial[v + 1];
        nxt.resize(static_cast<std::size_t>(k));
        bool ok = true;
        for (int i = 0; i < k && ok; ++i) {
          nxt[i] = cur[i] + rd.coef[i][j] * val;
          ok = std::llabs(rd.target[i] - nxt[i]) <= rd.rem[i][j + 1];
        }
        if (!ok) continue;
      }
      const bool row_done = j == dim - 1;
      if (row_done && spec.prefilters && small_rank(w.m, k + 1, dim) > 2 * spec.u) continue;
      dfs(w, v + 1, is_trace ? trace + val : trace);
    }
    w.m[k * dim + j] = 0;
    w.m[j * dim + k] = 0;
  }
};

}  // namespace

std::vector<TwoForm> enumerate_classes(const EnumerationSpec& spec, const EnumerationOptions& opts) {
  if (spec.n < 1) fail(ErrorCode::RangeError, "n must be positive");
  if (spec.u < 1 || spec.u > spec.n) fail(ErrorCode::RangeError, "u must satisfy 1 <= u <= n");
  if (spec.d < 1) fail(ErrorCode::RangeError, "d must be positive");
  if (spec.bound < 1) fail(ErrorCode::RangeError, "bound must be at least 1");
  if (!spec.allow_large && (spec.n > 4 || spec.bound > 3))
    fail(ErrorCode::RangeError, "enumeration beyond n <= 4, bound <= 3 needs the override flag");
  if (opts.jobs < 1) fail(ErrorCode::RangeError, "jobs must be positive");

  const int n = spec.n;
  const int dim = 2 * n;
  const std::uint64_t budget = opts.budget ? opts.budget : default_budget();
  std::vector<std::pair<int, int>> vars;
  std::vector<int> row_start(static_cast<std::size_t>(dim), 0);
  for (int i = 0; i < dim; ++i) {
    row_start[static_cast<std::size_t>(i)] = static_cast<int>(vars.size());
    for (int j = i + 1; j < dim; ++j) vars.emplace_back(i, j);
  }
  const long long b = spec.bound;
  if (!spec.require_idempotent) {
    const double exponent = static_cast<double>(vars.size()) - (spec.prefilters ? 1.0 : 0.0);
    const double leaves = std::pow(static_cast<double>(2 * b + 1), exponent);
    if (leaves > static_cast<double>(budget))
      fail(ErrorCode::BudgetExceeded, "estimated candidate count exceeds the budget");
  }
  if (spec.d > BigInt(1) << 40) return {};

  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> exceeded{false};
  const long long d = spec.d.convert_to<long long>();
  Search search{spec, n, dim, b, d, -static_cast<long long>(spec.u) * d, vars, row_start, budget, nodes, exceeded};

  const std::size_t depth = std::min<std::size_t>(2, vars.size());
  std::size_t blocks = 1;
  for (std::size_t i = 0; i < depth; ++i) blocks *= static_cast<std::size_t>(2 * b + 1);
  std::vector<std::vector<TwoForm>> results(blocks);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto work = [&] {
    Search::Worker w;
    w.m.assign(static_cast<std::size_t>(dim * dim), 0);
    w.rows.resize(static_cast<std::size_t>(dim));
    w.partial.resize(vars.size() + 1);
    try {
      for (std::size_t blk = next++; blk < blocks; blk = next++) {
        w.prefix.assign(depth, 0);
        std::size_t rest = blk;
        for (std::size_t i = depth; i-- > 0;) {
          w.prefix[i] = static_cast<int>(rest % static_cast<std::size_t>(2 * b + 1)) - static_cast<int>(b);
          rest /= static_cast<std::size_t>(2 * b + 1);
        }
        w.found.clear();
        search.dfs(w, 0, 0);
        results[blk] = std::move(w.found);
      }
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
    }
    if (nodes.fetch_add(w.local % 4096) + w.local % 4096 > budget) exceeded = true;
  };

  const int jobs = std::min<int>(opts.jobs, static_cast<int>(blocks));
  if (jobs <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
  if (exceeded) fail(ErrorCode::BudgetExceeded, "enumeration visited more candidates than the budget allows");

  std::vector<TwoForm> out;
  for (auto& r : results) out.insert(out.end(), std::make_move_iterator(r.begin()), std::make_move_iterator(r.end()));
  return out;
}

bool orbit_equivalent(const TwoForm& eta, const TwoForm& omega) {
  if (eta.n() != omega.n()) return false;
  const SubvarietyReport a = analyze(eta);
  const SubvarietyReport b = analyze(omega);
  return a.u == b.u && a.d == b.d && a.type == b.type;
}

}  // namespace nsforge
