#include "besov/report.hpp"

#include <algorithm>
#include <cmath>

namespace besov {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
    case Verdict::Error: return "error";
  }
  return "error";
}

nlohmann::json CheckReport::to_json() const {
  nlohmann::json j;
  j["id"] = id;
  j["paper_ref"] = reference;
  j["inputs"] = inputs;
  j["lhs"] = lhs;
  j["rhs"] = rhs;
  j["slack"] = slack;
  j["pass"] = pass();
  j["verdict"] = to_string(verdict);
  j["tail_flags"] = tail_flags;
  if (!details.empty()) j["details"] = details;
  return j;
}

CheckReport inequality_report(std::string id, std::string reference, double lhs, double rhs, double rel_tol) {
  CheckReport r;
  r.id = std::move(id);
  r.reference = std::move(reference);
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = rhs - lhs;
  if (!std::isfinite(lhs) || std::isnan(rhs)) {
    r.verdict = Verdict::Error;
  } else {
    const double allowance = std::isinf(rhs) ? 0.0 : rel_tol * std::max(1.0, std::fabs(rhs));
    r.verdict = lhs <= rhs + allowance ? Verdict::Pass : Verdict::Fail;
  }
  return r;
}

}  // namespace besov
