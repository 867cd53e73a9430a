#include "nsforge/io.hpp"

#include "nsforge/error.hpp"

#include <charconv>
#include <cstdlib>
#include <limits>

namespace nsforge::io {

namespace {

[[noreturn]] void bad(const std::string& what) { fail(ErrorCode::ParseError, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

int small_int(const Json& j, const char* what) {
  const BigInt v = big_from_json(j);
  if (abs(v) > 1'000'000) bad(std::string(what) + " out of range");
  return v.convert_to<int>();
}

std::string double_string(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
  if (s.find('/') != std::string::npos) return parse_rational(s).convert_to<double>();
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0') bad("bad number \"" + s + "\"");
  return v;
}

std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  if (j.is_number()) return double_string(j.get<double>());
  bad("expected a number or numeric string");
}

}  // namespace

Json to_json(const BigInt& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
    return x.convert_to<std::int64_t>();
  return x.str();
}

BigInt big_from_json(const Json& j) {
  if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
  if (j.is_number_float()) {
    const double v = j.get<double>();
    if (v != static_cast<double>(static_cast<std::int64_t>(v))) bad("expected an integer");
    return BigInt(static_cast<std::int64_t>(v));
  }
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    const std::size_t start = !s.empty() && (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos)
      bad("bad integer \"" + s + "\"");
    return BigInt(s[0] == '+' ? s.substr(1) : s);
  }
  bad("expected an integer");
}

Json to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

IntMatrix matrix_from_json(const Json& j) {
  if (!j.is_array()) bad("matrix must be an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows ? static_cast<Eigen::Index>(j[0].size()) : 0;
  IntMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) bad("ragged matrix");
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = big_from_json(row[static_cast<std::size_t>(k)]);
  }
  return m;
}

Json columns_to_json(const IntMatrix& basis) { return to_json(IntMatrix(basis.transpose())); }

Json to_json(const DivisorList& d) {
  Json a = Json::array();
  for (const auto& x : d) a.push_back(to_json(x));
  return a;
}

DivisorList divisors_from_json(const Json& j) {
  if (!j.is_array()) bad("divisor list must be an array");
  DivisorList d;
  for (const auto& x : j) d.push_back(big_from_json(x));
  return d;
}

Json to_json(const TwoForm& eta) {
  Json coeffs = Json::array();
  for (int i = 0; i < eta.dim(); ++i)
    for (int k = i + 1; k < eta.dim(); ++k)
      if (eta.coeff(i, k) != 0) coeffs.push_back({{"i", i + 1}, {"j", k + 1}, {"a", to_json(eta.coeff(i, k))}});
  return {{"n", eta.n()}, {"coeffs", coeffs}};
}

TwoForm two_form_from_json(const Json& j) {
  const int n = small_int(field(j, "n"), "n");
  if (n < 1 || n > 16) bad("n must lie in 1..16");
  const int dim = 2 * n;
  std::optional<IntMatrix> from_coeffs;
  if (j.contains("coeffs")) {
    IntMatrix m = IntMatrix::Zero(dim, dim);
    for (const auto& c : j.at("coeffs")) {
      const int a = small_int(field(c, "i"), "i");
      const int b = small_int(field(c, "j"), "j");
      if (a < 1 || b > dim || a >= b) bad("coefficient indices must satisfy 1 <= i < j <= 2n");
      const BigInt v = big_from_json(field(c, "a"));
      m(a - 1, b - 1) += v;
      m(b - 1, a - 1) -= v;
    }
    from_coeffs = m;
  }
  if (j.contains("matrix")) {
    IntMatrix m = matrix_from_json(j.at("matrix"));
    if (m.rows() != dim || m.cols() != dim) fail(ErrorCode::DimensionMismatch, "matrix must be 2n x 2n");
    TwoForm eta(n, m);
    if (from_coeffs && TwoForm(n, *from_coeffs) != eta) bad("\"matrix\" and \"coeffs\" disagree");
    return eta;
  }
  if (!from_coeffs) bad("two-form needs \"coeffs\" or \"matrix\"");
  return TwoForm(n, *from_coeffs);
}

std::string rational_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

Rational parse_rational(const std::string& s) {
  if (const auto slash = s.find('/'); slash != std::string::npos) {
    const BigInt den = big_from_json(s.substr(slash + 1));
    if (den == 0) bad("zero denominator in \"" + s + "\"");
    return Rational(big_from_json(s.substr(0, slash))) / Rational(den);
  }
  std::string mant = s;
  long exp10 = 0;
  if (const auto e = s.find_first_of("eE"); e != std::string::npos) {
    mant = s.substr(0, e);
    exp10 = static_cast<long>(small_int(Json(s.substr(e + 1)), "exponent"));
  }
  std::string digits = mant;
  if (const auto dot = mant.find('.'); dot != std::string::npos) {
    digits = mant.substr(0, dot) + mant.substr(dot + 1);
    exp10 -= static_cast<long>(mant.size() - dot - 1);
    if (digits.empty() || digits == "-" || digits == "+") bad("bad number \"" + s + "\"");
  }
  Rational v(big_from_json(Json(digits)));
  const Rational ten(10);
  for (long k = 0; k < std::labs(exp10); ++k) v = exp10 > 0 ? v * ten : v / ten;
  return v;
}

Json to_json(const PeriodMatrix& tau) {
  const int n = tau.n();
  Json rows = Json::array();
  if (tau.backend() == Backend::Exact) {
    const ExactTau& t = tau.exact_entries();
    for (int i = 0; i < n; ++i) {
      Json row = Json::array();
      for (int k = 0; k < n; ++k) row.push_back({rational_string(t(i, k).real()), rational_string(t(i, k).imag())});
      rows.push_back(std::move(row));
    }
  } else {
    const FloatTau t = tau.float_entries();
    for (int i = 0; i < n; ++i) {
      Json row = Json::array();
      for (int k = 0; k < n; ++k) row.push_back({double_string(t(i, k).real()), double_string(t(i, k).imag())});
      rows.push_back(std::move(row));
    }
  }
  return {{"n", n}, {"backend", tau.backend() == Backend::Exact ? "exact" : "float"}, {"entries", rows}};
}

PeriodMatrix period_matrix_from_json(const Json& j) {
  const int n = small_int(field(j, "n"), "n");
  const std::string backend = j.value("backend", std::string("exact"));
  if (backend != "exact" && backend != "float") bad("backend must be \"exact\" or \"float\"");
  const Json& e = field(j, "entries");
  if (n < 1 || !e.is_array() || static_cast<int>(e.size()) != n) bad("entries must be n x n");
  auto entry = [&](int i, int k) -> std::pair<std::string, std::string> {
    const Json& row = e[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != n) bad("entries must be n x n");
    const Json& z = row[static_cast<std::size_t>(k)];
    if (!z.is_array() || z.size() != 2) bad("each entry must be [re, im]");
    return {scalar_text(z[0]), scalar_text(z[1])};
  };
  if (backend == "exact") {
    ExactTau t(n, n);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        const auto [re, im] = entry(i, k);
        t(i, k) = GaussianRational(parse_rational(re), parse_rational(im));
      }
    return PeriodMatrix::exact(std::move(t));
  }
  FloatTau t(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const auto [re, im] = entry(i, k);
      t(i, k) = FloatComplex(parse_double(re), parse_double(im));
    }
  return PeriodMatrix::floating(std::move(t));
}

Json to_json(const Polynomial& p) {
  Json monos = Json::array();
  for (const auto& [mono, c] : p.terms) {
    Json vars = Json::array();
    for (const auto& [k, l] : mono) vars.push_back({k, l});
    monos.push_back({{"vars", vars}, {"c", to_json(c)}});
  }
  return {{"monomials", monos}, {"text", to_string(p)}};
}

Json to_json(const RelationSet& r) {
  Json polys = Json::array();
  for (const auto& p : r.polynomials) polys.push_back(to_json(p));
  Json entries = Json::array();
  for (const auto& e : r.entries) entries.push_back({{"p", e.p}, {"q", e.q}, {"value", to_json(e.value)}});
  return {{"n", r.n}, {"polynomials", polys}, {"entries", entries}};
}

Json to_json(const IntersectionProfile& p) {
  Json v = Json::array();
  for (const auto& x : p.values) v.push_back(to_json(x));
  return {{"n", p.n}, {"values", v}};
}

Json to_json(const NormMatrix& nm) {
  return {{"n", nm.n}, {"u", nm.u}, {"d", to_json(nm.d)}, {"N", to_json(nm.N)}};
}

Json to_json(const SubvarietyReport& r) {
  return {{"class", to_json(r.eta)},
          {"u", r.u},
          {"d", to_json(r.d)},
          {"type", to_json(r.type)},
          {"image_basis", columns_to_json(r.image.basis)},
          {"kernel_basis", columns_to_json(r.kernel.basis)},
          {"complement_type", to_json(r.complement_type)},
          {"complement", to_json(r.complement)}};
}

Json to_json(const SingularDatum& s) {
  return {{"a", to_json(s.a)}, {"b", to_json(s.b)}, {"c", to_json(s.c)},
          {"d", to_json(s.d)}, {"e", to_json(s.e)}, {"m", to_json(s.m)}};
}

SingularDatum singular_from_json(const Json& j) {
  SingularDatum s{big_from_json(field(j, "a")), big_from_json(field(j, "b")), big_from_json(field(j, "c")),
                  big_from_json(field(j, "d")), big_from_json(field(j, "e")), 0};
  if (j.contains("m")) {
    s.m = big_from_json(j.at("m"));
  } else {
    const BigInt disc = s.b * s.b - 4 * (s.a * s.c + s.d * s.e);
    s.m = disc >= 0 ? BigInt(sqrt(disc)) : BigInt(-1);
  }
  return s;
}

Json to_json(const EnumerationSpec& s) {
  Json j = {{"n", s.n}, {"u", s.u}, {"d", to_json(s.d)}, {"bound", s.bound},
            {"require_idempotent", s.require_idempotent}};
  if (s.require_type) j["require_type"] = to_json(*s.require_type);
  j["prefilters"] = s.prefilters;
  return j;
}

EnumerationSpec enumeration_spec_from_json(const Json& j) {
  EnumerationSpec s;
  if (j.contains("n")) s.n = small_int(j.at("n"), "n");
  if (j.contains("u")) s.u = small_int(j.at("u"), "u");
  if (j.contains("d")) s.d = big_from_json(j.at("d"));
  if (j.contains("bound")) s.bound = small_int(j.at("bound"), "bound");
  s.require_idempotent = j.value("require_idempotent", false);
  if (j.contains("require_type")) s.require_type = divisors_from_json(j.at("require_type"));
  s.prefilters = j.value("prefilters", true);
  s.allow_large = j.value("allow_large", false);
  return s;
}

GlueInput glue_input_from_json(const Json& j) {
  const PolarizationType type = PolarizationType::from(divisors_from_json(field(j, "type")));
  if (j.contains("u") && small_int(j.at("u"), "u") != type.size())
    fail(ErrorCode::SizeMismatch, "\"u\" must equal the length of \"type\"");
  const int u = type.size();
  PeriodMatrix tx = period_matrix_from_json(field(j, "tauX"));
  PeriodMatrix ty = period_matrix_from_json(field(j, "tauY"));
  GluingSpec spec = GluingSpec::identity(u);
  if (j.contains("f")) spec.f = matrix_from_json(j.at("f"));
  if (j.contains("g")) spec.g = matrix_from_json(j.at("g"));
  const int ny = ty.n();
  return {PolarizedFactor{type, std::move(tx)}, PolarizedFactor{type.complementary(ny), std::move(ty)}, spec};
}

Json to_json(const GluedVariety& g) {
  Json basis = Json::array();
  for (Eigen::Index i = 0; i < g.basis.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < g.basis.cols(); ++k) row.push_back(rational_string(g.basis(i, k)));
    basis.push_back(std::move(row));
  }
  return {{"tau", to_json(g.tau)}, {"class", to_json(g.eta)}, {"basis", basis}, {"flipped", g.flipped}};
}

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(); }

}  // namespace nsforge::io
