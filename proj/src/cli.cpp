#include "nsforge/cli.hpp"

#include "nsforge/error.hpp"
#include "nsforge/symplectic.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>

namespace nsforge::cli {

namespace {

using io::Json;

struct Flags {
  int n = 0;
  int u = 1;
  std::string d = "1";
  int bound = 1;
  double tol = kDefaultTolerance;
  std::string backend;
  std::uint64_t seed = 0;
  int word = 20;
  int jobs = 1;
  std::string in, out, tau, matrix, type;
  bool idempotent = false;
  bool no_prefilter = false;
  bool allow_large = false;
};

[[noreturn]] void usage(const std::string& what) { fail(ErrorCode::UsageError, what); }

std::string read_text(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream f(path, std::ios::binary);
  if (!f) usage("cannot read " + path);
  return {std::istreambuf_iterator<char>(f), {}};
}

Json read_json(const std::string& path, const char* flag) {
  if (path.empty()) usage(std::string(flag) + " FILE is required");
  return io::parse(read_text(path));
}

/// A bare form or any document carrying one under "class".
TwoForm read_form(const Flags& fl) {
  const Json j = read_json(fl.in, "--in");
  return io::two_form_from_json(j.contains("class") && !j.contains("n") ? j.at("class") : j);
}

BigInt parse_d(const Flags& fl) {
  try {
    return io::big_from_json(Json(fl.d));
  } catch (const Error&) {
    usage("--d must be an integer");
  }
}

DivisorList parse_type(const std::string& text) {
  DivisorList out;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ',');) {
    try {
      out.push_back(io::big_from_json(Json(part)));
    } catch (const Error&) {
      usage("--type must be a comma separated list of integers");
    }
  }
  return out;
}

PeriodMatrix with_backend(PeriodMatrix tau, const std::string& backend) {
  if (backend.empty() || (backend == "exact") == (tau.backend() == Backend::Exact)) return tau;
  if (backend == "exact") usage("a float period matrix cannot be used with --backend exact");
  const ExactTau& t = tau.exact_entries();
  FloatTau f(t.rows(), t.cols());
  for (Eigen::Index i = 0; i < t.rows(); ++i)
    for (Eigen::Index k = 0; k < t.cols(); ++k)
      f(i, k) = {t(i, k).real().convert_to<double>(), t(i, k).imag().convert_to<double>()};
  return PeriodMatrix::floating(std::move(f));
}

PeriodMatrix read_tau(const Flags& fl) {
  return with_backend(io::period_matrix_from_json(read_json(fl.tau, "--tau")), fl.backend);
}

template <class C>
Json complex_matrix(const Mat<C>& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      if constexpr (std::is_same_v<C, GaussianRational>)
        row.push_back({io::rational_string(m(i, k).real()), io::rational_string(m(i, k).imag())});
      else
        row.push_back({m(i, k).real(), m(i, k).imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

CommandResult ok(Json payload) { return {Status::Ok, std::move(payload), {}}; }
CommandResult negative(Json payload) { return {Status::Negative, std::move(payload), {}}; }

CommandResult cmd_profile(const Flags& fl) {
  const TwoForm eta = read_form(fl);
  Json p = io::to_json(intersection_profile(eta));
  if (const auto m = match_profile(intersection_profile(eta))) {
    p["u"] = m->u;
    p["d"] = io::to_json(m->d);
  }
  return ok(p);
}

CommandResult cmd_check(const Flags& fl) {
  const TwoForm eta = read_form(fl);
  const auto cls = check_class(eta);
  if (!cls) return negative({{"profile", io::to_json(intersection_profile(eta))}});
  Json p = {{"u", cls->u}, {"d", io::to_json(cls->d)}};
  CommandResult r = ok(p);
  try {
    const ModLCheck m = check_class_mod_L(eta, cls->u, cls->d);
    r.payload["mod_L"] = {{"congruence", m.congruence}, {"q_forms", m.q_forms}};
  } catch (const Error& e) {
    r.diagnostics.push_back(std::string(e.name()) + ": " + e.what());
  }
  return r;
}

bool is_negative_norm(ErrorCode c) {
  return c == ErrorCode::NotIdempotent || c == ErrorCode::ProfileMismatch || c == ErrorCode::RankMismatch ||
         c == ErrorCode::TraceMismatch;
}

template <class F>
CommandResult norm_like(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (!is_negative_norm(e.code())) throw;
    return negative({{"reason", std::string(e.name())}, {"message", e.what()}});
  }
}

CommandResult cmd_norm(const Flags& fl) {
  const TwoForm eta = read_form(fl);
  return norm_like([&] {
    const NormMatrix nm = norm_from_class(eta);
    Json p = io::to_json(nm);
    const PolynomialCertificate c = polynomial_certificate(nm);
    p["certificate"] = {{"characteristic", c.char_ok}, {"minimal", c.min_ok}};
    return ok(p);
  });
}

CommandResult cmd_analyze(const Flags& fl) {
  const TwoForm eta = read_form(fl);
  return norm_like([&] { return ok(io::to_json(analyze(eta))); });
}

CommandResult cmd_analytic(const Flags& fl) {
  const TwoForm eta = read_form(fl);
  const PeriodMatrix tau = read_tau(fl);
  return tau.visit([&](const auto& t) {
    const bool wedge = wedge_vanishes(eta, t, fl.tol);
    const bool residual = residual_vanishes(eta, t, fl.tol);
    Json p = {{"backend", tau.backend() == Backend::Exact ? "exact" : "float"},
              {"wedge_vanishes", wedge},
              {"residual_vanishes", residual}};
    CommandResult r = wedge ? ok(p) : negative(p);
    if (wedge != residual) r.diagnostics.push_back("wedge and residual tests disagree");
    if (wedge) {
      try {
        const auto td = tangent_and_lattice(eta, t, fl.tol);
        r.payload["tangent"] = complex_matrix(td.tangent);
        r.payload["lattice_periods"] = complex_matrix(td.lattice);
      } catch (const Error& e) {
        r.diagnostics.push_back(std::string(e.name()) + ": " + e.what());
      }
    }
    return r;
  });
}

CommandResult cmd_relations(const Flags& fl) { return ok(io::to_json(symbolic_relations(read_form(fl)))); }

CommandResult cmd_glue(const Flags& fl) {
  const io::GlueInput g = io::glue_input_from_json(read_json(fl.in, "--in"));
  return ok(io::to_json(glue(g.x, g.y, g.spec)));
}

CommandResult cmd_witness(const Flags& fl) {
  if (!fl.in.empty()) {
    const Realizability r = is_realizable(read_form(fl));
    Json p = {{"tag", std::string(tag_name(r.tag))}};
    if (!r) {
      p["detail"] = r.detail;
      return negative(p);
    }
    p["tau"] = io::to_json(*r.tau);
    return ok(p);
  }
  if (fl.n < 1) usage("witness needs --in FILE or --n");
  DivisorList type = fl.type.empty() ? DivisorList(static_cast<std::size_t>(fl.u), parse_d(fl)) : parse_type(fl.type);
  return ok(io::to_json(standard_witness(fl.n, fl.u, PolarizationType::from(type))));
}

CommandResult cmd_scan(const Flags& fl) {
  const PeriodMatrix tau = read_tau(fl);
  ScanOptions opts;
  opts.tol = fl.tol;
  opts.jobs = fl.jobs;
  const auto reports = scan_ppav(tau, fl.u, parse_d(fl), fl.bound, opts);
  Json list = Json::array();
  for (const auto& r : reports) list.push_back(io::to_json(r));
  return ok({{"u", fl.u}, {"d", io::to_json(parse_d(fl))}, {"bound", fl.bound}, {"count", reports.size()},
             {"classes", list}});
}

CommandResult cmd_enum(const Flags& fl, const CLI::App& sub) {
  EnumerationSpec s;
  if (!fl.in.empty()) s = io::enumeration_spec_from_json(read_json(fl.in, "--in"));
  if (sub.count("--n")) s.n = fl.n;
  if (sub.count("--u")) s.u = fl.u;
  if (sub.count("--d")) s.d = parse_d(fl);
  if (sub.count("--bound")) s.bound = fl.bound;
  if (fl.idempotent) s.require_idempotent = true;
  if (!fl.type.empty()) s.require_type = parse_type(fl.type);
  if (fl.no_prefilter) s.prefilters = false;
  if (fl.allow_large) s.allow_large = true;
  const auto forms = enumerate_classes(s, {fl.jobs, 0});
  Json list = Json::array();
  for (const auto& f : forms) list.push_back(io::to_json(f));
  return ok({{"spec", io::to_json(s)}, {"count", forms.size()}, {"classes", list}});
}

CommandResult cmd_humbert(const Flags& fl) {
  const Json j = read_json(fl.in, "--in");
  SingularDatum s;
  TwoForm eta = TwoForm::zero(2);
  if (j.contains("n") || j.contains("class")) {
    eta = io::two_form_from_json(j.contains("n") ? j : j.at("class"));
    s = singular_from_eta(eta);
  } else {
    s = io::singular_from_json(j);
    validate(s);
    eta = eta_from_singular(s);
  }
  return ok({{"datum", io::to_json(s)},
             {"class", io::to_json(eta)},
             {"polynomial", io::to_json(humbert_polynomial(s))},
             {"relations", io::to_json(humbert_relation(s))}});
}

CommandResult cmd_act(const Flags& fl) {
  const TwoForm eta = read_form(fl);
  IntMatrix s;
  if (!fl.matrix.empty()) {
    s = io::matrix_from_json(read_json(fl.matrix, "--matrix"));
    if (!is_symplectic(s)) fail(ErrorCode::NotSymplectic, "matrix is not in Sp(2n, Z)");
  } else {
    s = random_symplectic(eta.n(), fl.seed, fl.word);
  }
  return ok({{"matrix", io::to_json(s)}, {"class", io::to_json(act(s, eta))}});
}

CommandResult cmd_tau(const Flags& fl) {
  if (fl.n < 1) usage("tau needs --n");
  std::mt19937_64 rng(fl.seed);
  const int n = fl.n;
  const auto small = [&](int span) { return static_cast<long>(rng() % static_cast<std::uint64_t>(span)); };
  if (fl.backend == "float") {
    FloatTau t(n, n);
    for (int i = 0; i < n; ++i)
      for (int k = i; k < n; ++k) {
        const double re = static_cast<double>(small(2001) - 1000) / 1000.0;
        const double im = i == k ? 2.0 * n + static_cast<double>(small(1001)) / 1000.0
                                 : static_cast<double>(small(801) - 400) / 1000.0;
        t(i, k) = t(k, i) = FloatComplex(re, im);
      }
    return ok(io::to_json(PeriodMatrix::floating(t)));
  }
  ExactTau t(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = i; k < n; ++k) {
      const Rational re = Rational(small(9) - 4) / Rational(1 + small(5));
      const Rational im = i == k ? Rational(2 * n + small(3)) : Rational(small(5) - 2) / Rational(2 + small(4));
      t(i, k) = t(k, i) = GaussianRational(re, im);
    }
  return ok(io::to_json(PeriodMatrix::exact(t)));
}

Json error_json(std::string_view code, const std::string& message) {
  return {{"error", {{"code", std::string(code)}, {"message", message}}}};
}

CommandResult error_result(std::string_view code, const std::string& message) {
  return {Status::Error, error_json(code, message), {}};
}

}  // namespace

std::string CommandResult::render() const {
  Json doc;
  if (status == Status::Error) {
    doc = payload;
  } else {
    doc["status"] = status == Status::Ok ? "ok" : "negative";
    for (const auto& [k, v] : payload.items()) doc[k] = v;
  }
  if (!diagnostics.empty()) doc["diagnostics"] = diagnostics;
  return io::dump(doc) + "\n";
}

CommandResult run(const std::vector<std::string>& argv) {
  CLI::App app{"abelian subvarieties of principally polarized abelian varieties", "nsforge"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");
  Flags fl;

  struct Entry {
    const char* name;
    const char* help;
  };
  const std::vector<Entry> entries = {
      {"profile", "intersection profile of a form"},
      {"check", "numerical class test"},
      {"norm", "norm endomorphism of a class"},
      {"analyze", "dimension, exponent, type and complement"},
      {"analytic", "(1,1) test against a period matrix"},
      {"relations", "symbolic relations on tau"},
      {"glue", "glue two polarized factors"},
      {"witness", "standard witness or realizability of a class"},
      {"scan", "classes on a given period matrix"},
      {"enum", "period-free enumeration of candidate classes"},
      {"humbert", "singular datum, elliptic class and Humbert relation"},
      {"act", "action of Sp(2n, Z) on a form"},
      {"tau", "random period matrix"},
  };
  for (const auto& e : entries) {
    CLI::App* s = app.add_subcommand(e.name, e.help);
    s->add_option("--n", fl.n, "genus");
    s->add_option("--u", fl.u, "subvariety dimension");
    s->add_option("--d", fl.d, "exponent");
    s->add_option("--bound", fl.bound, "coefficient bound");
    s->add_option("--tol", fl.tol, "float tolerance");
    s->add_option("--backend", fl.backend, "exact or float")->check(CLI::IsMember({"exact", "float"}));
    s->add_option("--seed", fl.seed, "random seed");
    s->add_option("--jobs", fl.jobs, "worker threads")->check(CLI::PositiveNumber);
    s->add_option("--in", fl.in, "input JSON file, - for stdin");
    s->add_option("--out", fl.out, "output file");
    s->add_option("--tau", fl.tau, "period matrix JSON file");
    if (std::string(e.name) == "act") {
      s->add_option("--matrix", fl.matrix, "symplectic matrix JSON file");
      s->add_option("--word", fl.word, "word length of the random matrix");
    }
    if (std::string(e.name) == "enum" || std::string(e.name) == "witness")
      s->add_option("--type", fl.type, "comma separated divisors");
    if (std::string(e.name) == "enum") {
      s->add_flag("--idempotent", fl.idempotent, "keep only forms with N^2 = dN");
      s->add_flag("--no-prefilter", fl.no_prefilter, "disable trace and rank pruning");
      s->add_flag("--allow-large", fl.allow_large, "lift the desk-scale limits");
    }
  }

  std::vector<const char*> raw;
  for (const auto& a : argv) raw.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(raw.size()), raw.data());
  } catch (const CLI::CallForHelp&) {
    return ok({{"usage", app.help()}});
  } catch (const CLI::CallForAllHelp&) {
    return ok({{"usage", app.help("", CLI::AppFormatMode::All)}});
  } catch (const CLI::ParseError& e) {
    return error_result("UsageError", e.what());
  }

  CommandResult result;
  try {
    const CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    if (name == "profile") result = cmd_profile(fl);
    else if (name == "check") result = cmd_check(fl);
    else if (name == "norm") result = cmd_norm(fl);
    else if (name == "analyze") result = cmd_analyze(fl);
    else if (name == "analytic") result = cmd_analytic(fl);
    else if (name == "relations") result = cmd_relations(fl);
    else if (name == "glue") result = cmd_glue(fl);
    else if (name == "witness") result = cmd_witness(fl);
    else if (name == "scan") result = cmd_scan(fl);
    else if (name == "enum") result = cmd_enum(fl, *sub);
    else if (name == "humbert") result = cmd_humbert(fl);
    else if (name == "act") result = cmd_act(fl);
    else result = cmd_tau(fl);
  } catch (const Error& e) {
    result = error_result(e.name(), e.what());
  } catch (const std::exception& e) {
    result = error_result("InternalError", e.what());
  }

  if (!fl.out.empty() && result.status != Status::Error) {
    std::ofstream f(fl.out, std::ios::binary);
    if (!f) return error_result("UsageError", "cannot write " + fl.out);
    f << result.render();
    result.written = true;
  }
  return result;
}

}  // namespace nsforge::cli
