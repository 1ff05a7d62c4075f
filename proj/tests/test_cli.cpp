#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "expstar/cli/cli.hpp"
#include "expstar/fps/records.hpp"
#include "expstar/kcalc/kcalc.hpp"
#include "test_support.hpp"

using namespace expstar;
using fps::TruncatedSeries;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("expstar_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

// Components of a records stream, keyed by component label.
std::map<std::string, TruncatedSeries> read_records(const std::string& text, nlohmann::json& head) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  head = nlohmann::json::parse(line);
  const int n_vars = static_cast<int>(head["variables"].size());
  const int order = head["order"];
  std::map<std::string, nlohmann::json> grouped;
  for (const auto& label : head["components"]) grouped[label.get<std::string>()] = nlohmann::json::array();
  while (std::getline(in, line)) {
    auto j = nlohmann::json::parse(line);
    grouped[j["component"].get<std::string>()].push_back(j);
  }
  std::map<std::string, TruncatedSeries> out;
  for (const auto& [label, recs] : grouped) out.emplace(label, fps::series_from_records(recs, n_vars, order));
  return out;
}

}  // namespace

TEST_CASE("documented invocations") {
  const Result v = run({"validate", "--builtin", "su2_fl", "--order", "8"});
  CHECK(v.code == 0);
  const Result ex = run({"example-dl", "--l", "2", "--order", "8"});
  CHECK(ex.code == 0);
  const std::string jet = "k + k^2 + k^3 + k^4 + k^5 + k^6 + k^7 + k^8 + O(9)";
  CHECK(ex.out.find("a_sequence:  " + jet) != std::string::npos);
  CHECK(ex.out.find("closed form: " + jet) != std::string::npos);
  CHECK(run({"example-dl", "--l", "3", "--order", "10", "--quote-paper"}).code == 0);
  CHECK(run({"example-dl", "--l", "0", "--order", "4"}).code == 0);

  nlohmann::json head;
  const Result ks = run({"kseries", "--builtin", "abelian", "--order", "4", "--format", "records"});
  CHECK(ks.code == 0);
  const auto comps = read_records(ks.out, head);
  CHECK(head["mode"] == "realization");
  CHECK(head["realization"] == "abelian");
  for (int a = 0; a < 3; ++a) {
    CHECK(comps.at("K" + std::to_string(a + 1)) == TruncatedSeries::variable(6, 4, a) + TruncatedSeries::variable(6, 4, 3 + a));
  }
}

TEST_CASE("records round-trip and output is reproducible") {
  const std::vector<std::string> args{"dseries", "--builtin", "su2_sym", "--order", "4", "--kappa", "1/2", "--format", "records"};
  const Result a = run(args);
  const Result b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  nlohmann::json head;
  const auto comps = read_records(a.out, head);
  const auto d = kcalc::d_series(realization::builtin_realization("su2_sym", 3, mpq_class(1, 2)), 4);
  for (int j = 0; j < 3; ++j) CHECK(comps.at("D" + std::to_string(j + 1)) == d.components[j]);

  const Result cp = run({"coproduct", "--builtin", "abelian", "--order", "3", "--component", "2", "--format", "records"});
  CHECK(cp.code == 0);
  const auto cps = read_records(cp.out, head);
  CHECK(head["dictionary"].get<std::string>().find("v2 = 1 (x) d2") != std::string::npos);
  CHECK(cps.at("Delta(d2)") == TruncatedSeries::variable(6, 3, 1) + TruncatedSeries::variable(6, 3, 4));
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 2);
  CHECK(run({"validate"}).code == 2);
  CHECK(run({"validate", "--builtin", "su2_fl", "--spec", "x.spec"}).code == 2);
  CHECK(run({"validate", "--builtin", "su2_fl", "--order", "1"}).code == 2);
  CHECK(run({"kseries", "--builtin", "abelian", "--format", "xml"}).code == 2);
  CHECK(run({"validate", "--spec", "/nonexistent/file.spec"}).code == 2);
  CHECK(run({"example-dl", "--l", "1"}).code == 2);

  const Result grammar = run({"validate", "--spec", write_temp("grammar.spec", "dim = 2\nphi 1 1 = 1 +\n")});
  CHECK(grammar.code == 2);
  CHECK(grammar.err.find("offset") != std::string::npos);

  const Result origin = run({"validate", "--spec", write_temp("origin.spec", "dim = 2\nphi 1 1 = d1\n")});
  CHECK(origin.code == 1);

  // su2_fl with the epsilon sign of one entry flipped.
  std::string text = realization::builtin_spec_text("su2_fl");
  const std::string entry = "phi 1 2 = -i*kappa*d3";
  REQUIRE(text.find(entry) != std::string::npos);
  text.replace(text.find(entry), entry.size(), "phi 1 2 = i*kappa*d3");
  const Result flipped = run({"validate", "--spec", write_temp("flipped.spec", text), "--order", "5"});
  CHECK(flipped.code == 1);
  CHECK(flipped.out.find("FAIL") != std::string::npos);

  const Result precision = run({"ode", "--builtin", "su2_fl", "--order", "4", "--k", "0.5,0.5,0.5", "--q", "0.5,0,0",
                                "--steps", "10"});
  CHECK(precision.code == 3);
  CHECK(run({"ode", "--builtin", "su2_fl", "--k", "0.1,0.1", "--q", "0,0,0"}).code == 2);
  CHECK(run({"ode", "--builtin", "su2_fl", "--k", "a,b,c", "--q", "0,0,0"}).code == 2);
}

TEST_CASE("export writes a loadable spec") {
  const std::string path = (std::filesystem::temp_directory_path() / "expstar_test_export.spec").string();
  CHECK(run({"export", "--builtin", "su2_sym", "--kappa", "1/2", "--out", path}).code == 0);
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  const auto loaded = realization::load_realization_spec(buf.str(), 5);
  CHECK(realization::same_realization(loaded, realization::builtin_realization("su2_sym", 5, mpq_class(1, 2))));
  CHECK(run({"validate", "--spec", path, "--order", "5"}).code == 0);
}

TEST_CASE("numeric commands") {
  const Result ode = run({"ode", "--builtin", "abelian", "--k", "0.1,0.2,0.3", "--q", "1,2,3", "--steps", "10"});
  CHECK(ode.code == 0);
  CHECK(ode.out.find("K = 1.1 2.2 3.3") != std::string::npos);
  const Result cc = run({"crosscheck", "--builtin", "su2_fl", "--order", "6", "--samples", "2"});
  CHECK(cc.code == 0);
  CHECK(cc.out.find("D jet vs fl_D_symmetric_variant") != std::string::npos);
  const Result ccr = run({"crosscheck", "--builtin", "abelian", "--samples", "2", "--format", "records"});
  CHECK(ccr.code == 0);
  CHECK(std::count(ccr.out.begin(), ccr.out.end(), '\n') == 3);
}
