#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace besov {

enum class Verdict { Pass, Fail, Inconclusive, Error };

const char* to_string(Verdict v);

/// Outcome of one machine-checked inequality `lhs <= rhs`.
struct CheckReport {
  std::string id;
  std::string reference;  // which stated result is being checked
  nlohmann::json inputs = nlohmann::json::object();
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  Verdict verdict = Verdict::Pass;
  std::vector<std::string> tail_flags;
  nlohmann::json details = nlohmann::json::object();

  bool pass() const { return verdict == Verdict::Pass; }
  nlohmann::json to_json() const;
};

/// Builds a report for `lhs <= rhs` with relative tolerance `rel_tol`
/// (scaled by max(1, |rhs|)).
CheckReport inequality_report(std::string id, std::string reference, double lhs, double rhs,
                              double rel_tol);

}  // namespace besov
