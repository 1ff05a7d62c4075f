#include "expstar/cli/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "expstar/error.hpp"
#include "expstar/fps/functions.hpp"
#include "expstar/fps/records.hpp"
#include "expstar/kcalc/kcalc.hpp"
#include "expstar/numeric/numeric.hpp"
#include "expstar/realization/realization.hpp"
#include "expstar/weyl/weyl.hpp"

namespace expstar::cli {

namespace {

using fps::SeriesVector;
using fps::TruncatedSeries;
using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string spec;
  std::string builtin;
  int order = 6;
  std::string kappa;
  std::string format = "table";
  std::string out;
};

void add_common(CLI::App* sub, Common& c, bool needs_realization) {
  auto* spec = sub->add_option("--spec", c.spec, "realization spec file");
  auto* builtin = sub->add_option("--builtin", c.builtin, "builtin realization (abelian, su2_fl, su2_sym)");
  spec->excludes(builtin);
  if (!needs_realization) {
    spec->group("");
    builtin->group("");
  }
  sub->add_option("--order", c.order, "truncation order (>= 2)")->capture_default_str();
  sub->add_option("--kappa", c.kappa, "deformation parameter as an exact rational, e.g. 1/2");
  sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"table", "records"}))->capture_default_str();
  sub->add_option("--out", c.out, "write output to this file instead of stdout");
}

mpq_class parse_exact(const std::string& text, const char* what) {
  try {
    return fps::parse_rational(text);
  } catch (const std::exception&) {
    throw UsageError(std::string(what) + ": '" + text + "' is not a rational or finite decimal");
  }
}

std::vector<double> parse_vector(const std::string& text, const char* what) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(parse_exact(item, what).get_d());
  if (v.empty()) throw UsageError(std::string(what) + ": empty vector");
  return v;
}

std::optional<mpq_class> kappa_of(const Common& c) {
  if (c.kappa.empty()) return std::nullopt;
  return parse_exact(c.kappa, "--kappa");
}

void check_order(const Common& c) {
  if (c.order < 2) throw UsageError("--order must be at least 2");
}

realization::Realization load(const Common& c, int order) {
  check_order(c);
  if (c.spec.empty() == c.builtin.empty()) throw UsageError("exactly one of --spec or --builtin is required");
  const auto kappa = kappa_of(c);
  if (!c.builtin.empty()) {
    const auto& names = realization::builtin_names();
    if (std::find(names.begin(), names.end(), c.builtin) == names.end()) {
      throw UsageError("unknown builtin '" + c.builtin + "'");
    }
    return realization::builtin_realization(c.builtin, std::max(order, 2), kappa.value_or(1));
  }
  std::ifstream in(c.spec, std::ios::binary);
  if (!in) throw UsageError("cannot read spec file '" + c.spec + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  std::string name = c.spec;
  if (auto slash = name.find_last_of('/'); slash != std::string::npos) name = name.substr(slash + 1);
  if (auto dot = name.find_last_of('.'); dot != std::string::npos && dot > 0) name = name.substr(0, dot);
  return realization::load_realization_spec(buf.str(), std::max(order, 2), kappa, name);
}

json header(const std::string& command, const std::string& mode, const std::vector<std::string>& vars,
            const realization::Realization& r, int order) {
  return {{"record", "header"},
          {"command", command},
          {"mode", mode},
          {"variables", vars},
          {"realization", r.name},
          {"hash", r.hash()},
          {"kappa", {{"re", fps::rational_to_json(r.kappa.re())}, {"im", fps::rational_to_json(r.kappa.im())}}},
          {"order", order}};
}

void emit_records(std::ostream& os, json head, const std::vector<std::pair<std::string, TruncatedSeries>>& comps) {
  json names = json::array();
  for (const auto& [label, s] : comps) names.push_back(label);
  head["components"] = names;
  os << head.dump() << "\n";
  for (std::size_t c = 0; c < comps.size(); ++c) {
    for (json term : fps::term_records(comps[c].second)) {
      term["component"] = comps[c].first;
      os << term.dump() << "\n";
    }
  }
}

void emit_table(std::ostream& os, const std::string& title, const std::vector<std::string>& vars,
                const std::vector<std::pair<std::string, TruncatedSeries>>& comps) {
  os << title << "\n";
  for (const auto& [label, s] : comps) os << label << " = " << s.str(vars) << "\n";
}

// Output sink honouring --out.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw UsageError("cannot write '" + path + "'");
      os_ = &file_;
    }
  }
  std::ostream& stream() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

std::string describe(const realization::Realization& r, int order) {
  std::ostringstream s;
  s << r.name << " (n = " << r.n << ", kappa = " << r.kappa.str() << ", order " << order << ", hash " << r.hash() << ")";
  return s.str();
}

int cmd_validate(const Common& c, std::ostream& out) {
  const auto r = load(c, c.order);
  const auto phi = realization::validate_phi_system(r);
  const auto hom = weyl::check_lie_homomorphism(r, c.order);
  Sink sink(c.out, out);
  auto& os = sink.stream();
  if (c.format == "records") {
    json h = header("validate", "realization", {}, r, c.order);
    h["phi_system"] = {{"pass", phi.pass}, {"summary", phi.summary()}};
    h["lie_homomorphism"] = {{"pass", hom.pass}, {"summary", hom.summary()}};
    os << h.dump() << "\n";
  } else {
    os << "realization " << describe(r, c.order) << "\n";
    os << "phi system:       " << (phi.pass ? "PASS " : "FAIL ") << phi.summary() << "\n";
    os << "lie homomorphism: " << (hom.pass ? "PASS " : "FAIL ") << hom.summary() << "\n";
  }
  return phi.pass && hom.pass ? ok : validation_failure;
}

int cmd_kseries(const Common& c, std::ostream& out) {
  const auto r = load(c, c.order - 1);
  const auto K = kcalc::k_series_realization(r, c.order);
  std::vector<std::pair<std::string, TruncatedSeries>> comps;
  for (int a = 0; a < r.n; ++a) comps.emplace_back("K" + std::to_string(a + 1), K.components[static_cast<std::size_t>(a)]);
  Sink sink(c.out, out);
  if (c.format == "records") {
    emit_records(sink.stream(), header("kseries", "realization", K.variables, r, K.order), comps);
  } else {
    emit_table(sink.stream(), "K(k, q) for " + describe(r, K.order), K.variables, comps);
  }
  return ok;
}

int cmd_dseries(const Common& c, std::ostream& out) {
  const auto r = load(c, c.order - 1);
  const auto d = kcalc::star_exponentials(r, c.order);
  std::vector<std::pair<std::string, TruncatedSeries>> comps;
  for (int a = 0; a < r.n; ++a) comps.emplace_back("D" + std::to_string(a + 1), d.components[static_cast<std::size_t>(a)]);
  Sink sink(c.out, out);
  if (c.format == "records") {
    emit_records(sink.stream(), header("dseries", "realization", d.variables, r, d.order), comps);
  } else {
    auto& os = sink.stream();
    emit_table(os, "D(k, q) for " + describe(r, d.order), d.variables, comps);
    const auto k_names = fps::block_names({{"k", r.n}});
    for (int a = 0; a < r.n; ++a) {
      os << "K0_" << a + 1 << " = " << d.k0[static_cast<std::size_t>(a)].str(k_names) << "\n";
    }
  }
  return ok;
}

int cmd_coproduct(const Common& c, int component, std::ostream& out) {
  const auto r = load(c, c.order - 1);
  if (component < 0 || component > r.n) throw UsageError("--component must be between 1 and " + std::to_string(r.n));
  const auto d = kcalc::d_series(r, c.order);
  const auto uv = kcalc::doubled_names(r.n, "u", "v");
  std::vector<std::pair<std::string, TruncatedSeries>> comps;
  std::string dictionary;
  for (int j = 0; j < r.n; ++j) {
    if (component != 0 && j != component - 1) continue;
    const auto cp = kcalc::coproduct_momenta(d, j);
    dictionary = cp.dictionary;
    comps.emplace_back("Delta(d" + std::to_string(j + 1) + ")", cp.explicit_form);
  }
  Sink sink(c.out, out);
  if (c.format == "records") {
    json h = header("coproduct", "coproduct", uv, r, d.order);
    h["dictionary"] = dictionary;
    emit_records(sink.stream(), h, comps);
  } else {
    emit_table(sink.stream(), "coproduct for " + describe(r, d.order) + "\n" + dictionary, uv, comps);
  }
  return ok;
}

int cmd_ode(const Common& c, const std::string& k_text, const std::string& q_text, int steps, double lambda_end,
            std::ostream& out) {
  if (steps < 1) throw UsageError("--steps must be at least 1");
  const auto r = load(c, c.order);
  const auto k = parse_vector(k_text, "--k");
  const auto q = parse_vector(q_text, "--q");
  if (static_cast<int>(k.size()) != r.n || static_cast<int>(q.size()) != r.n) {
    throw UsageError("--k and --q need " + std::to_string(r.n) + " comma-separated entries");
  }
  auto p = numeric::realization_problem(r, k, q, steps, lambda_end);
  const auto res = numeric::k_ode_integrate(p);
  Sink sink(c.out, out);
  auto& os = sink.stream();
  os << std::setprecision(15);
  if (c.format == "records") {
    json h = header("ode", "numeric", {}, r, c.order);
    h["steps"] = steps;
    h["lambda_end"] = lambda_end;
    os << h.dump() << "\n";
    os << json{{"record", "ode"}, {"k", k}, {"q", q}, {"K", res.real()}, {"imag_max", res.max_imag()},
               {"tail_bound", res.tail_bound}}
              .dump()
       << "\n";
  } else {
    os << "RK4 for " << describe(r, c.order) << ", " << steps << " steps to lambda = " << lambda_end << "\n";
    os << "K =";
    for (double v : res.real()) os << " " << v;
    os << "\ntruncation tail bound " << res.tail_bound << "\n";
  }
  return ok;
}

int cmd_crosscheck(const Common& c, int samples, double bound, unsigned seed, int steps, std::ostream& out) {
  if (samples < 1) throw UsageError("--samples must be at least 1");
  const auto r = load(c, c.order);
  numeric::CrossCheckOptions opt;
  opt.jet_order = c.order;
  opt.steps = steps;
  const auto rep = numeric::cross_check(r, numeric::default_samples(samples, r.n, bound, seed), opt);
  Sink sink(c.out, out);
  sink.stream() << (c.format == "records" ? rep.records() : rep.table());
  return rep.pass ? ok : validation_failure;
}

int cmd_example_dl(const Common& c, int l, bool quote, std::ostream& out) {
  check_order(c);
  if (l < 0) throw UsageError("--l must be non-negative");
  if (l == 1) throw UsageError("--l 1 has no finite closed form at lambda = 1 (K = e*k); use l = 0 or l >= 2");
  const int N = c.order;
  const SeriesVector F{TruncatedSeries::monomial(1, N, fps::MultiIndex{l})};
  const TruncatedSeries computed = kcalc::k_series_unit_lambda(F, N).front();
  TruncatedSeries closed(1, N);
  const TruncatedSeries k = TruncatedSeries::variable(1, N, 0);
  if (l == 0) {
    closed = k + TruncatedSeries::constant(1, N, 1);
  } else {
    TruncatedSeries base = TruncatedSeries::constant(1, N, 1) - fps::power(k, l - 1) * fps::GaussRational(l - 1);
    closed = k * fps::ts_analytic(fps::AnalyticKind::pow_rational, base, mpq_class(-1, l - 1));
  }
  const bool match = computed == closed;
  Sink sink(c.out, out);
  auto& os = sink.stream();
  const std::vector<std::string> names{"k"};
  if (c.format == "records") {
    json h = {{"record", "header"}, {"command", "example-dl"}, {"mode", "generic"}, {"variables", names},
              {"l", l}, {"order", N}, {"match", match}, {"components", {"a_sequence", "closed_form"}}};
    os << h.dump() << "\n";
    for (const auto& [label, s] : {std::pair{std::string("a_sequence"), computed}, std::pair{std::string("closed_form"), closed}}) {
      for (json term : fps::term_records(s)) {
        term["component"] = label;
        os << term.dump() << "\n";
      }
    }
  } else {
    os << "F = d^" << l << ", lambda = 1, order " << N << "\n";
    if (quote) os << "closed form: K = k/(1 - (l-1) k^(l-1))^(1/(l-1))\n";
    os << "a_sequence:  " << computed.str(names) << "\n";
    os << "closed form: " << closed.str(names) << "\n";
    os << (match ? "MATCH" : "MISMATCH") << "\n";
  }
  return match ? ok : validation_failure;
}

int cmd_export(const Common& c, std::ostream& out) {
  if (!c.spec.empty()) throw UsageError("export takes --builtin, not --spec");
  if (c.builtin.empty()) throw UsageError("export needs --builtin");
  check_order(c);
  const auto& names = realization::builtin_names();
  if (std::find(names.begin(), names.end(), c.builtin) == names.end()) {
    throw UsageError("unknown builtin '" + c.builtin + "'");
  }
  const auto kappa = kappa_of(c).value_or(1);
  // Validate before writing so that an exported file is known to be consistent.
  (void)realization::builtin_realization(c.builtin, c.order, kappa);
  Sink sink(c.out, out);
  sink.stream() << realization::builtin_spec_text(c.builtin, kappa);
  return ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"expstar: exact normal-ordered exponentials, star products and coproducts"};
  app.name("expstar");
  app.require_subcommand(1);

  Common c;
  auto* validate = app.add_subcommand("validate", "check the phi system and the Lie homomorphism");
  auto* kseries = app.add_subcommand("kseries", "K(k, q) series");
  auto* dseries = app.add_subcommand("dseries", "D(k, q) series of the star product of exponentials");
  auto* coproduct = app.add_subcommand("coproduct", "coproduct of the momenta");
  auto* ode = app.add_subcommand("ode", "RK4 integration of the characteristic flow");
  auto* crosscheck = app.add_subcommand("crosscheck", "ODE, closed form and series jets side by side");
  auto* example = app.add_subcommand("example-dl", "K for F = d^l at lambda = 1 against its closed form");
  auto* exporter = app.add_subcommand("export", "write a builtin realization as a spec file");
  for (auto* sub : {validate, kseries, dseries, coproduct, ode, crosscheck, exporter}) add_common(sub, c, true);
  add_common(example, c, false);

  int component = 0;
  coproduct->add_option("--component", component, "generator index (1-based); all when omitted");
  std::string k_text, q_text;
  int steps = 10000;
  double lambda_end = 1;
  ode->add_option("--k", k_text, "comma-separated decimals")->required();
  ode->add_option("--q", q_text, "comma-separated decimals")->required();
  ode->add_option("--steps", steps)->capture_default_str();
  ode->add_option("--lambda-end", lambda_end)->capture_default_str();
  int samples = 5;
  double bound = 0.1;
  unsigned seed = 1;
  int cc_steps = 10000;
  crosscheck->add_option("--samples", samples)->capture_default_str();
  crosscheck->add_option("--bound", bound, "coordinates drawn from [-bound, bound]")->capture_default_str();
  crosscheck->add_option("--seed", seed)->capture_default_str();
  crosscheck->add_option("--steps", cc_steps)->capture_default_str();
  int l = 2;
  bool quote = false;
  example->add_option("--l", l)->required();
  example->add_flag("--quote-paper", quote, "print the closed form being checked");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return usage_error;
  }

  try {
    if (validate->parsed()) return cmd_validate(c, out);
    if (kseries->parsed()) return cmd_kseries(c, out);
    if (dseries->parsed()) return cmd_dseries(c, out);
    if (coproduct->parsed()) return cmd_coproduct(c, component, out);
    if (ode->parsed()) return cmd_ode(c, k_text, q_text, steps, lambda_end, out);
    if (crosscheck->parsed()) return cmd_crosscheck(c, samples, bound, seed, cc_steps, out);
    if (example->parsed()) return cmd_example_dl(c, l, quote, out);
    if (exporter->parsed()) return cmd_export(c, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return usage_error;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return usage_error;
  } catch (const InvalidArgumentError& e) {
    err << "usage error: " << e.what() << "\n";
    return usage_error;
  } catch (const ValidationError& e) {
    err << "validation failure: " << e.what() << "\n";
    return validation_failure;
  } catch (const Error& e) {
    err << "computation error: " << e.what() << "\n";
    return computation_error;
  }
  err << "usage error: no command\n";
  return usage_error;
}

}  // namespace expstar::cli
