#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "besov/corpus.hpp"
#include "besov/grid_function.hpp"
#include "besov/report.hpp"

namespace besov {

/// Bad command line, malformed config, unknown suite or corpus id.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExponentPair {
  double alpha = 0.5;
  double theta = 2.0;
};

struct LogSobolevCase {
  double p = 2.0;
  double theta = 2.0;
  double alpha = 0.5;
  double beta = 0.25;
};

struct EuclideanSettings {
  std::vector<double> spacing;  // per dimension 1..3
  std::vector<double> p;
  int eps_points = 16;
  double eps_min_cells = 2.0;
  double eps_max_diameters = 1.0;
  int budget = 60;
  std::vector<ExponentPair> besov;
  std::string refinement_entry;
  std::vector<double> refinement_eps;
};

struct EmbeddingSettings {
  std::vector<double> p;
  std::vector<double> tail_t;
  double lu_N = 1.0;
  double u_N = 0.01;
  std::vector<double> power_weights;
};

struct GaussianSettings {
  std::vector<double> p;
  std::vector<double> t;
  std::vector<double> eps;
  int K = 12;
  int budget = 200;
  std::vector<ExponentPair> besov;
  std::vector<std::pair<double, double>> semigroup_pairs;
  std::vector<double> semigroup_points;
  std::vector<double> hyper_p;
  std::vector<double> hyper_t;
  std::vector<double> via_sigma_t;
  std::vector<double> lipschitz_t;
  std::vector<LogSobolevCase> log_sobolev;
};

struct ChaosSettings {
  int K = 63;
  int N_max = 64;
  int beta_N_max = 10000;
  int gradient_K = 64;
};

struct Tolerances {
  double shape = 1e-6;
  double sandwich = 1e-6;
  double constructive = 1e-8;
  double closed_form = 1e-8;
  double constants = 1e-10;
  double semigroup = 1e-8;
  double parseval = 1e-8;
  double change_of_variables = 1e-6;
  double refinement = 0.05;
};

struct SuiteConfig {
  std::string suite = "all";
  std::string output_dir;
  std::vector<CorpusEntry> corpus;
  EuclideanSettings euclidean;
  EmbeddingSettings embedding;
  GaussianSettings gaussian;
  ChaosSettings chaos;
  Tolerances tol;
  nlohmann::json effective;  // defaults merged with the document, output_dir removed

  /// Defaults for every key; a config document may override any subset.
  static nlohmann::json defaults();
  /// Validates the document and resolves the corpus. Throws UsageError.
  static SuiteConfig from_json(const nlohmann::json& doc, const std::optional<std::string>& suite_override = {});
  static SuiteConfig from_file(const std::filesystem::path& path,
                               const std::optional<std::string>& suite_override = {});

  /// FNV-1a (64 bit) of the effective config, as 16 hex digits.
  std::string hash() const;
};

bool is_suite_id(const std::string& s);

struct SuiteCheck {
  std::string suite;
  std::string entry;  // "-" for corpus-independent checks
  CheckReport report;
};

struct SuiteCurve {
  std::string name;  // file stem
  ModulusCurve curve;
};

struct SuiteResult {
  std::string suite;
  std::string config_hash;
  std::vector<SuiteCheck> checks;
  std::vector<SuiteCurve> curves;
  nlohmann::json corpus = nlohmann::json::array();

  std::size_t count(Verdict v) const;
  /// 0 when nothing failed (inconclusive counts as failure under strict), else 1.
  int exit_code(bool strict) const;
  nlohmann::json to_json() const;
  std::string summary_csv() const;
};

SuiteResult run_suite(const SuiteConfig& config);

/// Writes report.json, summary.csv and curves/<name>.csv under `dir`.
void write_outputs(const SuiteResult& result, const std::filesystem::path& dir);

/// CSV with columns eps,value,bound,kind, rows sorted lexicographically.
void emit_curve_data(const ModulusCurve& curve, const std::filesystem::path& path);
/// Reads a file written by emit_curve_data; values round-trip bitwise.
ModulusCurve read_curve_data(const std::filesystem::path& path);

}  // namespace besov
