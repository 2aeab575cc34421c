#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "besov/error.hpp"
#include "besov/suite.hpp"

using namespace besov;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("besov_unit_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("config defaults, overrides and hash") {
  const auto a = SuiteConfig::from_json(json::object());
  CHECK(a.suite == "all");
  CHECK(a.corpus.size() == default_corpus_specs().size());
  CHECK(a.euclidean.p == std::vector<double>{1.0, 2.0});
  CHECK(a.gaussian.t.size() == 16);
  CHECK(a.gaussian.t.front() == doctest::Approx(0.01));
  CHECK(std::isinf(a.euclidean.besov[1].theta));
  CHECK(a.hash().size() == 16);

  const auto b = SuiteConfig::from_json(json{{"output_dir", "elsewhere"}});
  CHECK(b.output_dir == "elsewhere");
  CHECK(a.hash() == b.hash());

  const auto c = SuiteConfig::from_json(json::object(), std::string("chaos"));
  CHECK(c.suite == "chaos");
  CHECK(c.hash() != a.hash());

  const auto d = SuiteConfig::from_json(json{{"euclidean", {{"p", {1.5}}}}, {"corpus", {"zero_1d", "g_h1"}}});
  CHECK(d.euclidean.p == std::vector<double>{1.5});
  CHECK(d.euclidean.budget == 60);
  CHECK(d.corpus.size() == 2);
  CHECK(d.hash() != a.hash());
}

TEST_CASE("malformed configs are usage errors") {
  CHECK_THROWS_AS(SuiteConfig::from_json(json::array()), UsageError);
  CHECK_THROWS_AS(SuiteConfig::from_json(json{{"colour", 1}}), UsageError);
  CHECK_THROWS_AS(SuiteConfig::from_json(json{{"euclidean", {{"colour", 1}}}}), UsageError);
  CHECK_THROWS_AS(SuiteConfig::from_json(json{{"euclidean", {{"p", {0.5}}}}}), UsageError);
  CHECK_THROWS_AS(SuiteConfig::from_json(json{{"euclidean", {{"p", json::array()}}}}), UsageError);
  CHECK_THROWS_AS(SuiteConfig::from_json(json{{"gaussian", {{"t", {{"lo", 1.0}, {"hi", 0.5}, {"count", 4}}}}}}),
                  UsageError);
  CHECK_THROWS_AS(SuiteConfig::from_json(json{{"gaussian", {{"besov", {{{"alpha", 1.5}}}}}}}), UsageError);
  CHECK_THROWS_AS(SuiteConfig::from_json(json{{"gaussian", {{"besov", {{{"theta", "infinity"}}}}}}}), UsageError);
  CHECK_THROWS_AS(SuiteConfig::from_json(json{{"tolerances", {{"shape", -1.0}}}}), UsageError);
  CHECK_THROWS_AS(SuiteConfig::from_json(json{{"corpus", {"no_such_entry"}}}), UsageError);
  CHECK_THROWS_AS(SuiteConfig::from_json(json{{"corpus", {"zero_1d", "zero_1d"}}}), UsageError);
  CHECK_THROWS_AS(SuiteConfig::from_json(json{{"corpus", {{{"name", "z"}, {"constructor", "nope"}}}}}), UsageError);
  CHECK_THROWS_AS(SuiteConfig::from_json(json::object(), std::string("everything")), UsageError);
  CHECK_THROWS_AS(SuiteConfig::from_file("/nonexistent/besov.json"), UsageError);

  const auto dir = scratch("bad_json");
  fs::create_directories(dir);
  std::ofstream(dir / "c.json") << "{ \"suite\": ";
  CHECK_THROWS_AS(SuiteConfig::from_file(dir / "c.json"), UsageError);
  fs::remove_all(dir);
}

TEST_CASE("curve files round-trip bitwise") {
  const auto dir = scratch("curves");
  fs::create_directories(dir);

  ModulusCurve empty;
  emit_curve_data(empty, dir / "empty.csv");
  CHECK(slurp(dir / "empty.csv") == "eps,value,bound,kind\n");
  CHECK(read_curve_data(dir / "empty.csv").size() == 0);

  ModulusCurve c;
  c.kind = ModulusKind::SigmaGamma;
  c.bound = BoundType::Upper;
  c.eps = {0.3, 0.1, 1.0 / 3.0, 7.25e-9};
  c.values = {std::sqrt(2.0), 0.1 + 0.2, std::nextafter(1.0, 2.0), 5e-324};
  emit_curve_data(c, dir / "c.csv");
  const auto r = read_curve_data(dir / "c.csv");
  REQUIRE(r.size() == 4);
  CHECK(r.kind == ModulusKind::SigmaGamma);
  CHECK(r.bound == BoundType::Upper);
  CHECK(std::is_sorted(r.eps.begin(), r.eps.end()));
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto k = static_cast<std::size_t>(std::find(r.eps.begin(), r.eps.end(), c.eps[i]) - r.eps.begin());
    REQUIRE(k < r.size());
    CHECK(same_bits(r.eps[k], c.eps[i]));
    CHECK(same_bits(r.values[k], c.values[i]));
  }
  fs::remove_all(dir);
}

TEST_CASE("moduli suite on the zero function") {
  auto cfg = SuiteConfig::from_json(json{{"corpus", {"zero_1d"}}}, std::string("moduli"));
  const auto res = run_suite(cfg);
  CHECK(res.count(Verdict::Fail) == 0);
  CHECK(res.count(Verdict::Error) == 0);
  CHECK(res.exit_code(true) == 0);
  CHECK_FALSE(res.checks.empty());

  const auto dir = scratch("zero");
  write_outputs(res, dir);
  const auto report = json::parse(slurp(dir / "report.json"));
  CHECK(report.at("suite") == "moduli");
  CHECK(report.at("config_hash") == cfg.hash());
  CHECK(report.at("checks").size() == res.checks.size());
  for (const auto& c : report.at("checks")) {
    CHECK(c.contains("paper_ref"));
  }
  CHECK(slurp(dir / "summary.csv").rfind("suite,entry,id,paper_ref,lhs,rhs,slack,verdict\n", 0) == 0);
  CHECK(fs::exists(dir / "curves"));
  fs::remove_all(dir);
}

TEST_CASE("indicator omega curve emitted by the moduli suite") {
  auto cfg = SuiteConfig::from_json(json{{"corpus", {"indicator_1d"}}, {"euclidean", {{"p", {1.0}}}}},
                                    std::string("moduli"));
  const auto res = run_suite(cfg);
  const auto it = std::find_if(res.curves.begin(), res.curves.end(),
                               [](const SuiteCurve& c) { return c.name == "moduli_indicator_1d_p1_omega"; });
  REQUIRE(it != res.curves.end());
  const auto dir = scratch("indicator");
  fs::create_directories(dir);
  emit_curve_data(it->curve, dir / "omega.csv");
  const auto r = read_curve_data(dir / "omega.csv");
  const double h = cfg.euclidean.spacing[0];
  REQUIRE(r.size() == 16);
  for (std::size_t k = 0; k < r.size(); ++k) CHECK(std::fabs(r.values[k] - std::min(2.0 * r.eps[k], 2.0)) <= 2.0 * h);
  fs::remove_all(dir);
}

TEST_CASE("exit codes follow the verdicts") {
  SuiteResult r;
  CHECK(r.exit_code(false) == 0);
  CheckReport c;
  c.verdict = Verdict::Inconclusive;
  r.checks.push_back({"x", "-", c});
  CHECK(r.exit_code(false) == 0);
  CHECK(r.exit_code(true) == 1);
  c.verdict = Verdict::Fail;
  r.checks.push_back({"x", "-", c});
  CHECK(r.exit_code(false) == 1);
}

TEST_CASE("non-finite numbers are written as strings") {
  SuiteResult r;
  auto c = inequality_report("x", "ref", 1.0, std::numeric_limits<double>::infinity(), 0.0);
  r.checks.push_back({"s", "e", c});
  const auto j = r.to_json();
  CHECK(j.at("checks")[0].at("rhs") == "inf");
  CHECK(j.at("checks")[0].at("slack") == "inf");
  CHECK(j.at("counts").at("pass") == 1);
}
