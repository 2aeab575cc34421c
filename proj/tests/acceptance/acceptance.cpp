// Acceptance run: executes the CLI on the default config and prints one
// pass/fail line per criterion. Usage: acceptance <besov-lab> <config> <workdir>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "besov/embedding.hpp"
#include "besov/gaussian.hpp"
#include "besov/grid_function.hpp"
#include "besov/hermite.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Tolerances pinned here, independent of the config.
constexpr double kSandwichRel = 1e-6;
constexpr double kConstructiveAbs = 1e-8;
constexpr double kConstantsAbs = 1e-10;
constexpr double kAGammaAbs = 1e-8;
constexpr double kCovRel = 1e-6;
constexpr double kSlackRounding = 1e-12;  // equality cases (e.g. T = N) land on either side of 0
constexpr double kRefinementRel = 0.05;
constexpr double kSandwichSeconds = 300.0;
constexpr int kEpsPoints = 16;
constexpr int kJacksonNMax = 64;
constexpr int kBetaNMax = 10000;

struct Outcome {
  bool ok = true;
  std::vector<std::string> notes;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (notes.size() < 6) notes.push_back(what);
    }
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double num(const json& v) {
  if (v.is_number()) return v.get<double>();
  const auto s = v.get<std::string>();
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  return NAN;
}

std::string label(const json& c) {
  return c.at("suite").get<std::string>() + "/" + c.at("entry").get<std::string>() + "/" + c.at("id").get<std::string>() +
         " " + c.at("inputs").dump();
}

bool has_flag(const json& c, const std::string& needle) {
  if (!c.contains("tail_flags")) return false;
  for (const auto& f : c.at("tail_flags"))
    if (f.get<std::string>().find(needle) != std::string::npos) return true;
  return false;
}

int run_cli(const std::string& exe, const std::string& suite, const std::string& config, const fs::path& out,
            double* seconds = nullptr) {
  fs::remove_all(out);
  const std::string cmd = "\"" + exe + "\" " + suite + " --config \"" + config + "\" --out \"" + out.string() +
                          "\" > \"" + out.string() + ".log\" 2>&1";
  const auto t0 = std::chrono::steady_clock::now();
  const int rc = std::system(cmd.c_str());
  if (seconds) *seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

class Report {
 public:
  explicit Report(const json& j) : j_(j) {}
  std::vector<json> select(const std::string& suite, const std::string& id) const {
    std::vector<json> out;
    for (const auto& c : j_.at("checks"))
      if (c.at("suite") == suite && c.at("id") == id) out.push_back(c);
    return out;
  }
  const json& corpus() const { return j_.at("corpus"); }

 private:
  const json& j_;
};

void print(int n, const std::string& what, const Outcome& o) {
  std::printf("criterion %d: %s  %s\n", n, o.ok ? "PASS" : "FAIL", what.c_str());
  for (const auto& s : o.notes) std::printf("    %s\n", s.c_str());
}

void all_pass(Outcome& o, const std::vector<json>& checks, const std::string& what, std::size_t min_count = 1) {
  o.require(checks.size() >= min_count, what + ": expected at least " + std::to_string(min_count) + " checks, found " +
                                            std::to_string(checks.size()));
  for (const auto& c : checks) o.require(c.at("verdict") == "pass", "not passing: " + label(c));
}

double p_of(const json& c) { return c.at("inputs").contains("p") ? num(c.at("inputs").at("p")) : NAN; }

}  // namespace

int main(int argc, char** argv) {
  if (argc != 4) {
    std::fprintf(stderr, "usage: acceptance <besov-lab> <config> <workdir>\n");
    return 2;
  }
  const std::string exe = argv[1], config = argv[2];
  const fs::path work = argv[3];
  fs::create_directories(work);

  double sandwich_seconds = 0.0;
  const int rc_sandwich = run_cli(exe, "sandwich", config, work / "sandwich", &sandwich_seconds);
  const int rc1 = run_cli(exe, "all", config, work / "run1");
  const int rc2 = run_cli(exe, "all", config, work / "run2");
  const std::string text1 = slurp(work / "run1" / "report.json");
  const std::string text2 = slurp(work / "run2" / "report.json");
  if (text1.empty()) {
    std::printf("cannot read %s (exit %d)\n", (work / "run1" / "report.json").c_str(), rc1);
    return 1;
  }
  const json j = json::parse(text1);
  const Report R(j);
  std::map<std::string, json> corpus;
  for (const auto& e : R.corpus()) corpus[e.at("name").get<std::string>()] = e;
  bool all_ok = true;

  {  // 1. sandwich
    Outcome o;
    o.require(rc_sandwich == 0, "sandwich run exited with " + std::to_string(rc_sandwich));
    o.require(sandwich_seconds < kSandwichSeconds, "sandwich run took " + std::to_string(sandwich_seconds) + " s");
    const auto up = R.select("sandwich", "sandwich_upper");
    const auto cons = R.select("sandwich", "sandwich_constructive");
    std::set<std::string> entries;
    std::set<int> dims;
    std::map<std::string, int> per_curve;
    for (const auto& c : up) {
      const auto e = c.at("entry").get<std::string>();
      entries.insert(e);
      dims.insert(corpus.at(e).at("n").get<int>());
      per_curve[e + "/" + std::to_string(p_of(c))]++;
      const double sigma = num(c.at("details").at("variational"));
      const double cf = num(c.at("details").at("constructive"));
      const double w = num(c.at("details").at("omega"));
      const int n = corpus.at(e).at("n").get<int>();
      const double Cn = 2.0 * (1.0 + std::sqrt(static_cast<double>(n)) + n);
      o.require(std::max(sigma, cf) <= Cn * w * (1.0 + kSandwichRel), "upper bound violated: " + label(c));
    }
    for (const auto& c : cons) {
      const double half = num(c.at("details").at("half_shift_norm"));
      o.require(half - kConstructiveAbs <= num(c.at("rhs")), "constructive bound violated: " + label(c));
    }
    o.require(entries.size() >= 6, "only " + std::to_string(entries.size()) + " Euclidean entries");
    o.require(dims.count(1) && dims.count(2), "corpus must cover n = 1 and n = 2");
    for (const auto& [k, v] : per_curve) o.require(v == kEpsPoints, k + " has " + std::to_string(v) + " scales");
    o.require(cons.size() == up.size(), "constructive and upper checks differ in number");
    char buf[160];
    std::snprintf(buf, sizeof buf, "sandwich bounds on %zu entries, %zu scale checks, %.1f s", entries.size(), up.size(),
                  sandwich_seconds);
    print(1, buf, o);
    all_ok &= o.ok;
  }

  {  // 2. modulus structure
    Outcome o;
    const auto s = R.select("moduli", "sigma_shape");
    const auto a = R.select("moduli", "adjoint_shape");
    all_pass(o, s, "sigma_shape", 2);
    all_pass(o, a, "adjoint_shape", 2);
    for (const auto& c : s) o.require(num(c.at("rhs")) <= 1e-6, "shape tolerance above 1e-6: " + label(c));
    print(2, "sigma curves monotone, concave, subadditive; adjoints concave and monotone (" +
                 std::to_string(s.size() + a.size()) + " checks)",
          o);
    all_ok &= o.ok;
  }

  {  // 3. closed-form oracles, recomputed here
    Outcome o;
    const double h = 1.0 / 64;
    const auto g = besov::GridFunction::sample([](std::span<const double>) { return 1.0; }, besov::Box{{0.0}, {1.0}},
                                               {h}, {3.0});
    besov::ShiftProfile prof(g, 1.0);
    for (double eps : {0.03125, 0.1, 0.25, 0.5, 0.9, 1.0, 1.7, 2.5}) {
      const double got = prof.omega(eps).value, want = std::min(2.0 * eps, 2.0);
      o.require(std::fabs(got - want) <= 2.0 * h, "omega_1 of [0,1] at " + std::to_string(eps));
    }
    for (double t : {1e-4, 0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 20.0}) {
      const double want = M_PI / 2.0 - std::asin(std::exp(-t));
      o.require(std::fabs(besov::c_t(t) - want) <= kConstantsAbs, "c_t at t = " + std::to_string(t));
    }
    o.require(std::fabs(besov::gauss_constant(2.0) - 1.0) <= kConstantsAbs, "C(2)");
    o.require(std::fabs(besov::gauss_constant(1.0) - std::sqrt(2.0 / M_PI)) <= kConstantsAbs, "C(1)");
    o.require(std::fabs(besov::gauss_constant(4.0) - std::pow(3.0, 0.25)) <= kConstantsAbs, "C(4)");
    o.require(besov::nu_n(2) == 2.0 * M_PI, "nu_2");
    o.require(besov::nu_n(3) == 4.0 * M_PI, "nu_3");
    all_pass(o, R.select("moduli", "omega_closed_form"), "omega_closed_form");
    all_pass(o, R.select("gaussian", "c_t"), "c_t");
    all_pass(o, R.select("gaussian", "gauss_constant"), "gauss_constant");
    all_pass(o, R.select("embedding", "nu_n"), "nu_n", 3);
    print(3, "omega_1(1_[0,1]) = min(2 eps, 2), c_t, C(1), C(2), C(4), nu_2, nu_3", o);
    all_ok &= o.ok;
  }

  {  // 4. embedding
    Outcome o;
    std::size_t pass = 0, hypothesis = 0;
    std::vector<json> all;
    for (const auto& c : j.at("checks"))
      if (c.at("suite") == "embedding") all.push_back(c);
    for (const auto& c : all) {
      const auto v = c.at("verdict").get<std::string>();
      if (v == "pass") {
        ++pass;
        const double slack = num(c.at("slack"));
        o.require(slack >= -kSlackRounding * std::max(1.0, std::fabs(num(c.at("rhs")))), "negative slack: " + label(c));
      } else if (v == "inconclusive" && has_flag(c, "small-scale growth hypothesis")) {
        // n = p = 1 and t^{-1} sigma(t) stays bounded: the hypothesis of the statement fails
        ++hypothesis;
      } else {
        o.require(false, v + ": " + label(c));
      }
    }
    const auto cov = R.select("embedding", "change_of_variables");
    all_pass(o, cov, "change_of_variables");
    for (const auto& c : cov) o.require(num(c.at("lhs")) <= kCovRel, "change of variables gap: " + label(c));
    for (const char* id : {"newtonian_feasibility", "local_energy", "tail_measure", "ulyanov_LU", "ulyanov_U"})
      o.require(!R.select("embedding", id).empty(), std::string("no ") + id + " checks");
    print(4, std::to_string(pass) + " embedding checks pass with nonnegative slack (up to rounding); " + std::to_string(hypothesis) +
                 " inconclusive where the n = p = 1 growth hypothesis fails",
          o);
    all_ok &= o.ok;
  }

  {  // 5. gaussian
    Outcome o;
    all_pass(o, R.select("gaussian", "ou_semigroup_law"), "ou_semigroup_law");
    all_pass(o, R.select("gaussian", "ou_contraction"), "ou_contraction");
    for (const auto& c : R.select("gaussian", "ou_semigroup_law"))
      o.require(num(c.at("rhs")) <= 1e-8, "semigroup tolerance above 1e-8");
    const auto hc = R.select("gaussian", "hypercontractivity");
    all_pass(o, hc, "hypercontractivity");
    std::set<std::pair<double, double>> grid;
    for (const auto& c : hc) grid.insert({p_of(c), num(c.at("inputs").at("t"))});
    for (double p : {1.5, 2.0, 3.0})
      for (double t : {0.1, 0.5, 1.0}) o.require(grid.count({p, t}), "hypercontractivity missing p, t");

    // a_gamma(H_1, 2, t) against sqrt(2 (1 - e^{-t})), computed here by quadrature
    const besov::HermiteFunction h1(1, [](std::span<const double> x) { return x[0]; });
    for (double t : {0.01, 0.1, 0.5, 1.0, 3.0}) {
      const double got = besov::a_gamma(h1, 2.0, t);
      o.require(std::fabs(got - std::sqrt(2.0 * (1.0 - std::exp(-t)))) <= kAGammaAbs,
                "a_gamma(H_1, 2, " + std::to_string(t) + ")");
    }
    // sandwich and equivalence only apply for p > 1; p = 1 is reported inconclusive
    for (const char* id : {"sigma_gamma_sandwich", "a_gamma_via_sigma", "A_le_V", "V_le_A"}) {
      std::vector<json> sel;
      for (const auto& c : R.select("gaussian", id))
        if (p_of(c) > 1.0) sel.push_back(c);
        else o.require(c.at("verdict") != "fail" && c.at("verdict") != "error", "p = 1 check failed: " + label(c));
      all_pass(o, sel, id);
    }
    const auto ls = R.select("gaussian", "log_sobolev");
    all_pass(o, ls, "log_sobolev");
    std::set<std::vector<double>> cases;
    for (const auto& c : ls) {
      const auto& in = c.at("inputs");
      cases.insert({num(in.at("p")), num(in.at("theta")), num(in.at("alpha")), num(in.at("beta"))});
    }
    for (const auto& want : std::vector<std::vector<double>>{{2, 2, 0.8, 0.4}, {2, INFINITY, 0.5, 0.25}, {3, 1, 0.9, 0.3}})
      o.require(cases.count(want), "log-Sobolev case missing");
    print(5, "OU semigroup and contraction, hypercontractivity, a_gamma(H_1), sigma/a sandwich, V/A, log-Sobolev", o);
    all_ok &= o.ok;
  }

  {  // 6. chaos
    Outcome o;
    const auto par = R.select("chaos", "parseval");
    all_pass(o, par, "parseval");
    for (const auto& c : par) o.require(num(c.at("rhs")) <= 1e-8 * std::max(1.0, num(c.at("details").at("norm_squared"))),
                                        "parseval tolerance");
    all_pass(o, R.select("chaos", "bessel"), "bessel", 0);
    all_pass(o, R.select("chaos", "best_approx_monotone"), "best_approx_monotone");
    const auto js = R.select("chaos", "jackson_stechkin");
    all_pass(o, js, "jackson_stechkin");
    std::map<std::string, std::set<int>> Ns;
    for (const auto& c : js) Ns[c.at("entry").get<std::string>()].insert(static_cast<int>(num(c.at("inputs").at("N"))));
    std::size_t gaussian_entries = 0;
    for (const auto& [name, e] : corpus)
      if (e.at("space") == "gaussian") {
        ++gaussian_entries;
        o.require(Ns[name].size() == kJacksonNMax && *Ns[name].rbegin() == kJacksonNMax,
                  name + ": jackson_stechkin does not cover N = 1.." + std::to_string(kJacksonNMax));
      }
    const auto beta = R.select("chaos", "beta_bound");
    all_pass(o, beta, "beta_bound");
    for (const auto& c : beta)
      o.require(static_cast<int>(num(c.at("inputs").at("N_max"))) >= kBetaNMax, "beta bound range below 1e4");
    print(6, "Parseval, E_N monotone, Jackson-Stechkin N <= 64 on " + std::to_string(gaussian_entries) +
                 " entries, Beta bound N <= 10^4",
          o);
    all_ok &= o.ok;
  }

  {  // 7. determinism
    Outcome o;
    o.require(rc1 == rc2, "exit codes differ");
    o.require(!text2.empty() && text1 == text2, "report.json differs between runs");
    print(7, "two runs of 'all' give byte-identical report.json (" + std::to_string(text1.size()) + " bytes)", o);
    all_ok &= o.ok;
  }

  {  // 8. refinement
    Outcome o;
    const auto ref = R.select("moduli", "refinement");
    all_pass(o, ref, "refinement");
    double worst = 0.0;
    for (const auto& c : ref) worst = std::max(worst, num(c.at("lhs")));
    o.require(worst < kRefinementRel, "relative change " + std::to_string(worst));
    char buf[160];
    std::snprintf(buf, sizeof buf, "halving the spacing changes %zu bump quantities by at most %.3g%%", ref.size(),
                  100.0 * worst);
    print(8, buf, o);
    all_ok &= o.ok;
  }

  std::printf("overall: %s (report exit code %d)\n", all_ok ? "PASS" : "FAIL", rc1);
  return all_ok ? 0 : 1;
}
