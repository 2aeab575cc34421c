#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "besov/report.hpp"
#include "besov/suite.hpp"

namespace {

constexpr int kUsage = 2;

std::filesystem::path output_dir(const std::string& flag, const besov::SuiteConfig& cfg) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("BESOV_LAB_OUT"); env && *env) return env;
  if (!cfg.output_dir.empty()) return cfg.output_dir;
  return "besov-lab-out";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks for Besov-type moduli in Euclidean and Gaussian space", "besov-lab"};
  std::string suite, config, out;
  bool strict = false;
  app.add_option("suite", suite, "moduli, sandwich, embedding, gaussian, chaos or all")->required();
  app.add_option("--config", config, "JSON config file")->required();
  app.add_flag("--strict", strict, "treat inconclusive checks as failures");
  app.add_option("--out", out, "output directory (overrides BESOV_LAB_OUT and the config)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  besov::SuiteConfig cfg;
  try {
    if (!besov::is_suite_id(suite)) throw besov::UsageError("unknown suite '" + suite + "'");
    cfg = besov::SuiteConfig::from_file(config, suite);
  } catch (const besov::UsageError& e) {
    std::cerr << "besov-lab: " << e.what() << '\n';
    return kUsage;
  }

  const auto dir = output_dir(out, cfg);
  besov::SuiteResult result;
  try {
    result = besov::run_suite(cfg);
    besov::write_outputs(result, dir);
  } catch (const std::exception& e) {
    std::cerr << "besov-lab: " << e.what() << '\n';
    return 1;
  }

  std::cout << "suite " << result.suite << "  config " << result.config_hash << "  checks " << result.checks.size()
            << "  pass " << result.count(besov::Verdict::Pass) << "  fail " << result.count(besov::Verdict::Fail)
            << "  inconclusive " << result.count(besov::Verdict::Inconclusive) << "  error "
            << result.count(besov::Verdict::Error) << '\n';
  for (const auto& c : result.checks)
    if (c.report.verdict == besov::Verdict::Fail || c.report.verdict == besov::Verdict::Error)
      std::cout << "  " << besov::to_string(c.report.verdict) << "  " << c.suite << '/' << c.entry << '/'
                << c.report.id << "  lhs " << c.report.lhs << "  rhs " << c.report.rhs << '\n';
  std::cout << "wrote " << dir.string() << '\n';
  return result.exit_code(strict);
}
