#include "besov/suite.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "besov/chaos.hpp"
#include "besov/embedding.hpp"
#include "besov/error.hpp"
#include "besov/gaussian.hpp"
#include "besov/sigma.hpp"

namespace besov {

namespace {

constexpr const char* kSuiteIds[] = {"moduli", "sandwich", "embedding", "gaussian", "chaos"};

using J = nlohmann::json;

// ---------------------------------------------------------------------------
// config parsing

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

// Overlays `doc` on `base`; keys must already exist in `base`.
void overlay(J& base, const J& doc, const std::string& path) {
  for (const auto& [key, value] : doc.items()) {
    if (!base.contains(key)) throw UsageError("unknown config key '" + join(path, key) + "'");
    J& slot = base[key];
    if (slot.is_object() && value.is_object() && !slot.contains("lo")) overlay(slot, value, join(path, key));
    else slot = value;
  }
}

double num(const J& v, const std::string& path) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string() && v.get<std::string>() == "inf") return kInf;
  throw UsageError("config key '" + path + "' must be a number");
}

double positive(const J& v, const std::string& path) {
  const double x = num(v, path);
  if (!(x > 0.0) || !std::isfinite(x)) throw UsageError("config key '" + path + "' must be positive and finite");
  return x;
}

int integer(const J& v, const std::string& path, int lo, int hi) {
  if (!v.is_number_integer() || v.get<long long>() < lo || v.get<long long>() > hi)
    throw UsageError("config key '" + path + "' must be an integer in [" + std::to_string(lo) + ", " +
                     std::to_string(hi) + "]");
  return v.get<int>();
}

std::vector<double> list(const J& v, const std::string& path, bool exponent = false) {
  if (!v.is_array() || v.empty()) throw UsageError("config key '" + path + "' must be a nonempty array");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    const double x = positive(v[i], p);
    if (exponent && x < 1.0) throw UsageError("config key '" + p + "' must be >= 1");
    out.push_back(x);
  }
  return out;
}

// explicit array or {lo, hi, count} (log spaced)
std::vector<double> grid(const J& v, const std::string& path) {
  if (v.is_array()) {
    auto out = list(v, path);
    if (!std::is_sorted(out.begin(), out.end()) || std::adjacent_find(out.begin(), out.end()) != out.end())
      throw UsageError("config key '" + path + "' must be strictly increasing");
    return out;
  }
  if (!v.is_object()) throw UsageError("config key '" + path + "' must be an array or {lo, hi, count}");
  for (const auto& [key, _] : v.items())
    if (key != "lo" && key != "hi" && key != "count") throw UsageError("unknown config key '" + join(path, key) + "'");
  if (!v.contains("lo") || !v.contains("hi") || !v.contains("count"))
    throw UsageError("config key '" + path + "' needs lo, hi and count");
  const double lo = positive(v.at("lo"), path + ".lo"), hi = positive(v.at("hi"), path + ".hi");
  const int count = integer(v.at("count"), path + ".count", 2, 10000);
  if (!(hi > lo)) throw UsageError("config key '" + path + "' needs hi > lo");
  return log_spaced(lo, hi, static_cast<std::size_t>(count));
}

double theta_value(const J& v, const std::string& path) {
  const double th = num(v, path);
  if (!(th >= 1.0)) throw UsageError("config key '" + path + "' must be >= 1 or \"inf\"");
  return th;
}

std::vector<ExponentPair> exponent_pairs(const J& v, const std::string& path) {
  if (!v.is_array() || v.empty()) throw UsageError("config key '" + path + "' must be a nonempty array");
  std::vector<ExponentPair> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    if (!v[i].is_object()) throw UsageError("config key '" + p + "' must be an object {alpha, theta}");
    for (const auto& [key, _] : v[i].items())
      if (key != "alpha" && key != "theta") throw UsageError("unknown config key '" + join(p, key) + "'");
    ExponentPair e;
    e.alpha = num(v[i].value("alpha", J(0.5)), p + ".alpha");
    if (!(e.alpha > 0.0 && e.alpha < 1.0)) throw UsageError("config key '" + p + ".alpha' must lie in (0, 1)");
    e.theta = theta_value(v[i].value("theta", J(2.0)), p + ".theta");
    out.push_back(e);
  }
  return out;
}

std::string fmt(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

std::string exact(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

J number_json(double x) {
  if (std::isfinite(x)) return x;
  return exact(x);
}

J theta_json(double th) { return std::isinf(th) ? J("inf") : J(th); }

// ---------------------------------------------------------------------------
// running

class Runner {
 public:
  Runner(const SuiteConfig& cfg, SuiteResult& res) : cfg_(cfg), res_(res) {}

  const SuiteConfig& cfg() const { return cfg_; }

  void add(const std::string& suite, const std::string& entry, CheckReport rep) {
    res_.checks.push_back({suite, entry, std::move(rep)});
  }

  void curve(const std::string& name, ModulusCurve c) { res_.curves.push_back({name, std::move(c)}); }

  // Runs `fn`; a library error becomes a check with verdict error (or
  // inconclusive when the check does not apply).
  template <class F>
  void guard(const std::string& suite, const std::string& entry, const std::string& id, const J& inputs, F&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      CheckReport r;
      r.id = id;
      r.reference = "not evaluated";
      r.inputs = inputs;
      r.lhs = r.rhs = r.slack = std::nan("");
      r.verdict = e.kind() == ErrorKind::NotApplicable ? Verdict::Inconclusive : Verdict::Error;
      r.details["error"] = e.what();
      add(suite, entry, std::move(r));
    } catch (const std::exception& e) {
      CheckReport r;
      r.id = id;
      r.reference = "not evaluated";
      r.inputs = inputs;
      r.lhs = r.rhs = r.slack = std::nan("");
      r.verdict = Verdict::Error;
      r.details["error"] = e.what();
      add(suite, entry, std::move(r));
    }
  }

 private:
  const SuiteConfig& cfg_;
  SuiteResult& res_;
};

CheckReport with_inputs(CheckReport r, const J& inputs) {
  for (const auto& [k, v] : inputs.items()) r.inputs[k] = v;
  return r;
}

CheckReport shape_report(std::string id, std::string ref, const ShapeCheck& s, double tol, bool need_subadditive) {
  CheckReport r;
  r.id = std::move(id);
  r.reference = std::move(ref);
  r.lhs = s.worst_violation;
  r.rhs = tol;
  r.slack = tol - s.worst_violation;
  const bool ok = s.nondecreasing && s.concave && (!need_subadditive || s.subadditive);
  r.verdict = ok ? Verdict::Pass : Verdict::Fail;
  r.details = {{"nondecreasing", s.nondecreasing}, {"concave", s.concave}, {"subadditive", s.subadditive}};
  return r;
}

double rel_change(double a, double b) {
  if (a == b) return 0.0;
  return std::fabs(b - a) / std::max(std::fabs(a), 1e-300);
}

std::vector<double> sandwich_eps(const GridFunction& g, const EuclideanSettings& E) {
  const double lo = E.eps_min_cells * g.max_spacing();
  const double hi = std::max(E.eps_max_diameters * g.support().diameter(), 2.0 * lo);
  return log_spaced(lo, hi, static_cast<std::size_t>(E.eps_points));
}

// Degree of the single chaos containing the entry, or -1.
int single_chaos_degree(const CorpusEntry& e) {
  if (!e.closed.hermite) return -1;
  int deg = -1;
  for (const auto& t : e.closed.hermite->terms) {
    if (t.coeff == 0.0) continue;
    const int d = std::accumulate(t.index.begin(), t.index.end(), 0);
    if (deg >= 0 && d != deg) return -1;
    deg = d;
  }
  return deg;
}

// Sign changes of a 1-D function on [-12, 12]; these are the kinks of |f|.
std::vector<double> sign_changes(const HermiteFunction& f) {
  std::vector<double> out;
  if (f.dim() != 1) return out;
  constexpr int kScan = 4096;
  double x0 = -12.0, v0 = f.at(x0);
  for (int i = 1; i <= kScan; ++i) {
    const double x1 = -12.0 + 24.0 * i / kScan, v1 = f.at(x1);
    if (v0 != 0.0 && v1 != 0.0 && (v0 < 0.0) != (v1 < 0.0)) {
      double lo = x0, hi = x1;
      for (int it = 0; it < 80 && hi - lo > 1e-14; ++it) {
        const double mid = 0.5 * (lo + hi);
        if ((f.at(mid) < 0.0) == (v0 < 0.0)) lo = mid;
        else hi = mid;
      }
      out.push_back(0.5 * (lo + hi));
    }
    x0 = x1;
    v0 = v1;
  }
  return out;
}

// inf <= inf holds; the library reports it as an error since lhs is not finite
CheckReport both_infinite(CheckReport r) {
  if (r.verdict == Verdict::Error && std::isinf(r.lhs) && r.lhs > 0 && std::isinf(r.rhs) && r.rhs > 0) {
    r.verdict = Verdict::Pass;
    r.tail_flags.push_back("both functionals diverge");
  }
  return r;
}

// ---------------------------------------------------------------------------
// moduli

std::vector<std::pair<std::string, double>> refinement_quantities(const GridFunction& g, double p,
                                                                  const SuiteConfig& cfg) {
  const auto& E = cfg.euclidean;
  std::vector<std::pair<std::string, double>> q;
  q.push_back({"norm", lp_norm(g, p)});
  ShiftProfile prof(g, p, E.refinement_eps.back());
  for (double eps : E.refinement_eps) {
    const double w = prof.omega(eps).value;
    q.push_back({"omega@" + fmt(eps), w});
    q.push_back({"sigma_upper@" + fmt(eps), sigma_upper_constant(g.dim()) * w});
    q.push_back({"sigma_lower@" + fmt(eps), sigma_variational(g, p, eps, E.budget).value});
  }
  const auto S = default_scale_grid(g);
  const auto w = omega_curve(g, p, S);
  const auto s = sigma_curve_variational(g, p, S, E.budget);
  for (const auto& ab : E.besov) {
    const BesovParams params{ab.alpha, p, ab.theta};
    const std::string tag = "(" + fmt(ab.alpha) + "," + fmt(ab.theta) + ")";
    q.push_back({"besov_seminorm" + tag, besov_seminorm(g, params, w).value});
    q.push_back({"V_lower" + tag, V_functional(s, params).lower});
  }
  return q;
}

void run_moduli(Runner& R, const CorpusEntry& e) {
  const auto& cfg = R.cfg();
  const auto& E = cfg.euclidean;
  const double h = E.spacing[static_cast<std::size_t>(e.n - 1)];
  const auto g = e.sample(h);
  const auto eps = sandwich_eps(g, E);
  const double Cn = sigma_upper_constant(e.n);

  for (double p : E.p) {
    const J in = {{"p", p}, {"spacing", h}};
    const std::string tag = e.name + "_p" + fmt(p);
    R.guard("moduli", e.name, "omega", in, [&] {
      const auto w = omega_curve(g, p, eps);
      R.curve("moduli_" + tag + "_omega", w);
      const auto shape = check_curve_shape(w.eps, w.values, cfg.tol.shape);
      auto mono = inequality_report("omega_monotone", "monotone shift modulus", shape.nondecreasing ? 0.0 : 1.0, 0.0, 0.0);
      R.add("moduli", e.name, with_inputs(mono, in));
      if (e.closed.omega) {
        double worst = 0.0;
        for (std::size_t k = 0; k < w.size(); ++k)
          worst = std::max(worst, std::fabs(std::pow(w.values[k], p) - std::pow(e.closed.omega(p, w.eps[k]), p)));
        auto r = inequality_report("omega_closed_form", "shift modulus of an interval indicator", worst, 2.0 * h, 0.0);
        r.details["measure"] = "max |omega^p - 2 min(eps, L)| over the eps grid";
        R.add("moduli", e.name, with_inputs(r, in));
      }
    });

    R.guard("moduli", e.name, "sigma_shape", in, [&] {
      const auto s = sigma_curve_variational(g, p, eps, E.budget);
      R.curve("moduli_" + tag + "_sigma_lower", s);
      R.add("moduli", e.name,
            with_inputs(shape_report("sigma_shape", "monotone concave subadditive sigma modulus",
                                     check_curve_shape(s.eps, s.values, cfg.tol.shape), cfg.tol.shape, true),
                        in));
      const bool all_zero = std::all_of(s.values.begin(), s.values.end(), [](double v) { return v == 0.0; });
      if (all_zero) {
        auto r = inequality_report("adjoint_shape", "concave nondecreasing adjoint function", 0.0, cfg.tol.shape, 0.0);
        r.tail_flags.push_back("sigma vanishes on the grid; the adjoint is identically zero");
        R.add("moduli", e.name, with_inputs(r, in));
      } else {
        const auto a = adjoint_transform(s, cfg.tol.shape);
        R.add("moduli", e.name,
              with_inputs(shape_report("adjoint_shape", "concave nondecreasing adjoint function", a.shape,
                                       cfg.tol.shape, false),
                          in));
      }
    });

    R.guard("moduli", e.name, "besov_functionals", in, [&] {
      const auto S = default_scale_grid(g);
      const auto w = omega_curve(g, p, S);
      const auto s = sigma_curve_variational(g, p, S, E.budget);
      const auto u = sigma_upper_curve(g, p, w);
      for (const auto& ab : E.besov) {
        const BesovParams params{ab.alpha, p, ab.theta};
        const J pin = {{"p", p}, {"alpha", ab.alpha}, {"theta", theta_json(ab.theta)}};
        const auto B = besov_seminorm(g, params, w);
        // rigorous brackets: lower end for the lower curve, upper end for the upper curve
        const auto Vl = V_functional(s, params).lower;
        const auto Vu = V_functional(u, params).upper;
        auto r1 = inequality_report("V_bracket", "sigma sandwich carried to the V functional", Vl, Vu, 1e-9);
        r1.details = {{"V_lower", number_json(Vl)}, {"V_upper", number_json(Vu)}};
        if (std::isinf(Vu)) r1.tail_flags.push_back("upper functional diverges");
        R.add("moduli", e.name, with_inputs(r1, pin));
        auto r2 = inequality_report("V_le_besov", "V functional against the Besov seminorm", Vl, Cn * B.upper, 1e-9);
        r2.details = {{"besov_seminorm", number_json(B.value)},
                      {"besov_lower", number_json(B.lower)},
                      {"besov_upper", number_json(B.upper)},
                      {"constant", Cn}};
        if (std::isinf(B.upper)) r2.tail_flags.push_back("Besov seminorm not bounded from the sampled scales");
        R.add("moduli", e.name, with_inputs(r2, pin));
      }
    });

    if (e.name == E.refinement_entry) {
      R.guard("moduli", e.name, "refinement", in, [&] {
        const auto coarse = refinement_quantities(g, p, cfg);
        const auto fine = refinement_quantities(e.sample(0.5 * h), p, cfg);
        for (std::size_t i = 0; i < coarse.size(); ++i) {
          auto r = inequality_report("refinement", "grid convergence under halved spacing",
                                     rel_change(coarse[i].second, fine[i].second), cfg.tol.refinement, 0.0);
          r.inputs = {{"p", p}, {"quantity", coarse[i].first}, {"spacing", h}};
          r.details = {{"coarse", number_json(coarse[i].second)}, {"fine", number_json(fine[i].second)}};
          R.add("moduli", e.name, std::move(r));
        }
      });
    }
  }
}

// ---------------------------------------------------------------------------
// sandwich

void run_sandwich(Runner& R, const CorpusEntry& e) {
  const auto& cfg = R.cfg();
  const auto& E = cfg.euclidean;
  const double h = E.spacing[static_cast<std::size_t>(e.n - 1)];
  // shifts up to 2 eps_max must stay inside the grid
  const auto eps = sandwich_eps(e.sample(h), E);
  const auto g = e.sample(h, 2.0 * eps.back() + 4.0 * h);
  const double Cn = sigma_upper_constant(e.n);

  for (double p : E.p) {
    const std::string tag = e.name + "_p" + fmt(p);
    R.guard("sandwich", e.name, "sandwich", {{"p", p}}, [&] {
      ShiftProfile prof(g, p, 2.0 * eps.back());
      ModulusCurve cw, cs, cc, cu;
      cw.kind = ModulusKind::Omega;
      cw.bound = BoundType::Lower;
      cs.kind = cc.kind = ModulusKind::Sigma;
      cs.bound = cc.bound = BoundType::Lower;
      cu.kind = ModulusKind::Sigma;
      cu.bound = BoundType::Upper;
      for (double x : eps) {
        const J in = {{"p", p}, {"eps", x}};
        const double w = prof.omega(x).value;
        const double w2 = prof.omega(2.0 * x).value;
        const double sv = sigma_variational(g, p, x, E.budget).value;
        auto hc = prof.argmax(x);
        if (hc.empty()) {
          hc.assign(static_cast<std::size_t>(e.n), 0);
          hc[0] = std::max<std::ptrdiff_t>(1, static_cast<std::ptrdiff_t>(std::floor(x / g.spacing()[0] + 1e-9)));
        }
        const auto cf = constructive_field(g, p, hc);
        const double upper = Cn * w;

        auto r1 = inequality_report("sandwich_upper", "upper estimate of sigma by omega", std::max(sv, cf.value),
                                    upper * (1.0 + cfg.tol.sandwich), 0.0);
        r1.details = {{"variational", sv}, {"constructive", cf.value}, {"omega", w}, {"constant", Cn}};
        R.add("sandwich", e.name, with_inputs(r1, in));

        auto r2 = inequality_report("sandwich_constructive", "constructive lower estimate of sigma",
                                    cf.half_shift_norm - cfg.tol.constructive, cf.value, 0.0);
        r2.details = {{"shift_cells", hc}, {"shift_length", cf.length}, {"half_shift_norm", cf.half_shift_norm}};
        R.add("sandwich", e.name, with_inputs(r2, in));

        auto r3 = inequality_report("sandwich_half_omega", "half shift modulus at twice the scale", 0.5 * w2, upper,
                                    1e-12);
        R.add("sandwich", e.name, with_inputs(r3, in));

        cw.eps.push_back(x);
        cw.values.push_back(w);
        cs.eps.push_back(x);
        cs.values.push_back(sv);
        cc.eps.push_back(x);
        cc.values.push_back(cf.value);
        cu.eps.push_back(x);
        cu.values.push_back(upper);
      }
      R.curve("sandwich_" + tag + "_omega", cw);
      R.curve("sandwich_" + tag + "_sigma_variational", cs);
      R.curve("sandwich_" + tag + "_sigma_constructive", cc);
      R.curve("sandwich_" + tag + "_sigma_upper", cu);
    });
  }
}

// ---------------------------------------------------------------------------
// embedding

MonotoneWeight power_weight(double e) {
  MonotoneWeight U;
  U.name = "t^" + fmt(e);
  U.fn = [e](double t) { return std::pow(t, e); };
  U.strictly_increasing = true;
  U.zero_at_origin = true;
  U.growth = {{1.0, 1.0}};
  return U;
}

void run_embedding_constants(Runner& R) {
  const double oracle[] = {2.0, 2.0 * kPi, 4.0 * kPi};
  for (int n = 1; n <= 3; ++n) {
    auto r = inequality_report("nu_n", "surface area of the unit sphere", std::fabs(nu_n(n) - oracle[n - 1]), 0.0, 0.0);
    r.inputs = {{"n", n}};
    r.details = {{"value", nu_n(n)}};
    R.add("embedding", "-", std::move(r));
  }
  for (int n = 2; n <= 3; ++n) {
    const double want = 1.0 + 1.0 / oracle[n - 1];  // p = 1
    auto r = inequality_report("embedding_constant", "embedding constant C(n, 1)",
                               std::fabs(embedding_constant(n, 1.0).value - want), 1e-12, 0.0);
    r.inputs = {{"n", n}, {"p", 1.0}};
    R.add("embedding", "-", std::move(r));
  }
}

void run_embedding(Runner& R, const CorpusEntry& e) {
  const auto& cfg = R.cfg();
  const auto& M = cfg.embedding;
  const double h = cfg.euclidean.spacing[static_cast<std::size_t>(e.n - 1)];
  const auto g = e.sample(h);
  for (double p : M.p) {
    const bool in_range = (e.n == 1 && p == 1.0) || (e.n >= 2 && p < e.n);
    if (!in_range) continue;
    const J in = {{"p", p}};
    R.guard("embedding", e.name, "embedding", in, [&] {
      const auto eps = geometric_grid(g.max_spacing(), 4.0 * g.support().diameter(), std::pow(2.0, 0.25));
      const auto curve = sigma_upper_curve(g, p, omega_curve(g, p, eps));
      R.curve("embedding_" + e.name + "_p" + fmt(p) + "_sigma_upper", curve);

      double mx = 0.0;
      for (double v : g.values()) mx = std::max(mx, std::fabs(v));
      std::vector<double> u(g.size(), 0.0), u_half(g.size(), 0.0);
      std::vector<char> support(g.size(), 0), half(g.size(), 0);
      for (std::size_t y = 0; y < g.size(); ++y) {
        const double v = g.values()[y];
        if (v != 0.0) {
          u[y] = v > 0.0 ? 1.0 : -1.0;
          support[y] = 1;
        }
        if (v != 0.0 && std::fabs(v) >= 0.5 * mx) {
          u_half[y] = u[y];
          half[y] = 1;
        }
      }
      auto r = newtonian_feasibility_check(g, g.with_values(u), p, curve);
      r.inputs["test_function"] = "sign on the support";
      R.add("embedding", e.name, with_inputs(r, in));
      r = newtonian_feasibility_check(g, g.with_values(u_half), p, curve);
      r.inputs["test_function"] = "sign on the half-maximum superlevel set";
      R.add("embedding", e.name, with_inputs(r, in));
      r = local_energy_check(g, support, p, curve);
      r.inputs["set"] = "support";
      R.add("embedding", e.name, with_inputs(r, in));
      r = local_energy_check(g, half, p, curve);
      r.inputs["set"] = "half-maximum superlevel set";
      R.add("embedding", e.name, with_inputs(r, in));
      R.add("embedding", e.name, with_inputs(tail_measure_check(g, p, M.tail_t, curve), in));

      MonotoneWeight logw;
      logw.name = "log1p";
      logw.fn = [](double t) { return std::log1p(t); };
      logw.strictly_increasing = logw.zero_at_origin = true;
      auto lu = ulyanov_LU_check(g, p, logw, M.lu_N, curve);
      lu.inputs["weight"] = logw.name;
      R.add("embedding", e.name, with_inputs(lu, in));

      for (double ex : M.power_weights) {
        if (ex < p) continue;  // growth U(t) <= t^p near 0 needs ex >= p
        const auto U = power_weight(ex);
        auto ru = ulyanov_U_check(g, p, U, M.u_N, curve);
        ru.inputs["weight"] = U.name;
        const bool has_gap = ru.details.contains("change_of_variables_gap");
        const double gap = has_gap ? ru.details.at("change_of_variables_gap").get<double>() : 0.0;
        R.add("embedding", e.name, with_inputs(ru, in));
        if (has_gap) {
          auto rc = inequality_report("change_of_variables", "substitution identity for the Ulyanov integral", gap,
                                      cfg.tol.change_of_variables, 0.0);
          rc.inputs = {{"p", p}, {"weight", U.name}};
          R.add("embedding", e.name, std::move(rc));
        }
      }
    });
  }
}

// ---------------------------------------------------------------------------
// gaussian

std::vector<std::vector<double>> sample_points(int n, const std::vector<double>& xs) {
  std::vector<std::vector<double>> pts;
  for (double x : xs) {
    std::vector<double> pt(static_cast<std::size_t>(n), x);
    if (n > 1) pt[1] = 0.5 - x;
    pts.push_back(pt);
  }
  return pts;
}

void run_gaussian_constants(Runner& R) {
  const auto& cfg = R.cfg();
  const struct {
    double p;
    double value;
  } known[] = {{1.0, std::sqrt(2.0 / kPi)}, {2.0, 1.0}, {4.0, std::pow(3.0, 0.25)}};
  for (const auto& k : known) {
    auto r = inequality_report("gauss_constant", "Gaussian moment constant C(p)", std::fabs(gauss_constant(k.p) - k.value),
                               cfg.tol.constants, 0.0);
    r.inputs = {{"p", k.p}, {"oracle", "closed form"}};
    R.add("gaussian", "-", std::move(r));
  }
  for (double p : {1.0, 1.5, 2.0, 3.0, 4.0}) {
    const double c = gauss_constant(p), q = gauss_constant_quadrature(p);
    auto r = inequality_report("gauss_constant", "Gaussian moment constant C(p)", std::fabs(c - q), cfg.tol.constants, 0.0);
    r.inputs = {{"p", p}, {"oracle", "quadrature"}};
    R.add("gaussian", "-", std::move(r));
  }
  for (double t : cfg.gaussian.t) {
    const double want = kPi / 2.0 - std::asin(std::exp(-t));
    const double err = std::max(std::fabs(c_t(t) - want), std::fabs(c_t_quadrature(t) - want));
    auto r = inequality_report("c_t", "OU gradient constant c_t", err, cfg.tol.constants, 0.0);
    r.inputs = {{"t", t}};
    R.add("gaussian", "-", std::move(r));
  }
}

void run_gaussian(Runner& R, const CorpusEntry& e) {
  const auto& cfg = R.cfg();
  const auto& G = cfg.gaussian;
  const auto f = e.hermite();
  const auto points = sample_points(e.n, G.semigroup_points);

  for (const auto& [s, t] : G.semigroup_pairs) {
    const J in = {{"s", s}, {"t", t}};
    R.guard("gaussian", e.name, "ou_semigroup_law", in, [&] {
      const auto Tt = ou_semigroup(f, t);
      const auto Tst = ou_semigroup(Tt, s);
      const auto Tsum = ou_semigroup(f, s + t);
      double worst = 0.0;
      for (const auto& x : points) {
        const double a = Tst(x), b = Tsum(x);
        worst = std::max(worst, std::fabs(a - b) / std::max(1.0, std::fabs(b)));
      }
      R.add("gaussian", e.name,
            with_inputs(inequality_report("ou_semigroup_law", "OU semigroup property", worst, cfg.tol.semigroup, 0.0), in));
    });
  }

  for (double p : G.hyper_p)
    for (double t : G.hyper_t) {
      const J in = {{"p", p}, {"t", t}};
      R.guard("gaussian", e.name, "ou_contraction", in, [&] {
        const double lhs = gaussian_lp_norm(ou_semigroup(f, t), p), rhs = gaussian_lp_norm(f, p);
        R.add("gaussian", e.name,
              with_inputs(inequality_report("ou_contraction", "OU contraction in L^p", lhs, rhs, cfg.tol.semigroup), in));
      });
      R.guard("gaussian", e.name, "hypercontractivity", in,
              [&] { R.add("gaussian", e.name, with_inputs(hypercontractivity_check(f, p, t), in)); });
    }

  const auto roots = sign_changes(f);
  std::map<double, ModulusCurve> a_curves;
  std::map<double, double> norms;
  auto a_curve = [&](double p) -> const ModulusCurve& {
    auto it = a_curves.find(p);
    if (it == a_curves.end()) {
      it = a_curves.emplace(p, a_gamma_curve(f, p, G.t)).first;
      norms[p] = gaussian_lp_norm(f, p);
      R.curve("gaussian_" + e.name + "_p" + fmt(p) + "_a_gamma", it->second);
    }
    return it->second;
  };
  SigmaGammaOptions opts;
  opts.K = G.K;
  opts.budget = G.budget;
  std::map<double, ModulusCurve> lower_curves;

  for (double p : G.p) {
    const J in = {{"p", p}};
    R.guard("gaussian", e.name, "a_gamma", in, [&] {
      const auto& ac = a_curve(p);
      double mx = 0.0, drop = 0.0;
      for (std::size_t k = 0; k < ac.size(); ++k) {
        mx = std::max(mx, ac.values[k]);
        if (k > 0) drop = std::max(drop, ac.values[k - 1] - ac.values[k]);
      }
      R.add("gaussian", e.name,
            with_inputs(inequality_report("a_gamma_bound", "OU modulus at most twice the norm", mx, 2.0 * norms[p], 1e-9),
                        in));
      // a_gamma of a chaos element is monotone in t for p = 2 and for linear f
      const int deg = single_chaos_degree(e);
      if (deg == 1 || (deg > 1 && p == 2.0)) {
        auto r = inequality_report("a_gamma_monotone", "OU modulus of an eigenfunction is nondecreasing", drop, 0.0, 1e-10);
        R.add("gaussian", e.name, with_inputs(r, in));
      }
      if (e.closed.a_gamma && !std::isnan(e.closed.a_gamma(p, ac.eps.front()))) {
        double worst = 0.0;
        for (std::size_t k = 0; k < ac.size(); ++k) {
          const double want = e.closed.a_gamma(p, ac.eps[k]);
          worst = std::max(worst, std::fabs(ac.values[k] - want) / std::max(1.0, want));
        }
        R.add("gaussian", e.name,
              with_inputs(inequality_report("a_gamma_closed_form", "OU modulus against its closed form", worst,
                                            cfg.tol.closed_form, 0.0),
                          in));
      }
    });

    R.guard("gaussian", e.name, "sigma_gamma_sandwich", in, [&] {
      auto lower = concave_envelope(sigma_gamma_lower_curve(f, p, G.eps, opts));
      lower.saturation = gaussian_lp_norm(f, p);
      R.curve("gaussian_" + e.name + "_p" + fmt(p) + "_sigma_gamma_lower", lower);
      R.add("gaussian", e.name,
            with_inputs(shape_report("sigma_gamma_shape", "monotone concave subadditive Gaussian sigma modulus",
                                     check_curve_shape(lower.eps, lower.values, cfg.tol.shape), cfg.tol.shape, true),
                        in));
      ModulusCurve upper;
      upper.kind = ModulusKind::SigmaGamma;
      upper.bound = BoundType::Upper;
      for (std::size_t k = 0; k < lower.size(); ++k) {
        const double up = sigma_gamma_upper(f, p, lower.eps[k]);
        upper.eps.push_back(lower.eps[k]);
        upper.values.push_back(up);
        auto r = inequality_report("sigma_gamma_sandwich", "Gaussian sigma modulus below its OU upper estimate",
                                   lower.values[k], up, 1e-9);
        R.add("gaussian", e.name, with_inputs(r, {{"p", p}, {"eps", lower.eps[k]}}));
      }
      R.curve("gaussian_" + e.name + "_p" + fmt(p) + "_sigma_gamma_upper", upper);
      lower_curves.emplace(p, std::move(lower));
    });

    const ModulusCurve* lower = lower_curves.count(p) ? &lower_curves.at(p) : nullptr;
    for (double t : G.via_sigma_t)
      R.guard("gaussian", e.name, "a_gamma_via_sigma", {{"p", p}, {"t", t}}, [&] {
        R.add("gaussian", e.name, a_gamma_upper_via_sigma(f, p, t, lower));
      });

    for (const auto& ab : G.besov) {
      const BesovParams params{ab.alpha, p, ab.theta};
      const J pin = {{"p", p}, {"alpha", ab.alpha}, {"theta", theta_json(ab.theta)}};
      R.guard("gaussian", e.name, "besov_functionals", pin, [&] {
        const auto fun = gaussian_besov_functionals(a_curve(p), norms[p], params, lower);
        for (const auto& c : fun.checks) R.add("gaussian", e.name, both_infinite(c));
        for (double t : G.lipschitz_t) {
          if (!std::isfinite(fun.V_upper.value)) continue;
          auto r = lipschitz_composition_check(f, [](double v) { return std::fabs(v); }, 1.0, roots, params, t,
                                               fun.V_upper.value);
          r.inputs["u"] = "abs";
          R.add("gaussian", e.name, std::move(r));
        }
      });
    }
  }

  for (const auto& c : G.log_sobolev) {
    const J in = {{"p", c.p}, {"theta", theta_json(c.theta)}, {"alpha", c.alpha}, {"beta", c.beta}};
    R.guard("gaussian", e.name, "log_sobolev", in, [&] {
      const BesovParams params{c.alpha, c.p, c.theta};
      const auto fun = gaussian_besov_functionals(a_curve(c.p), norms[c.p], params);
      auto r = log_sobolev_embedding_check(f, params, c.beta, fun.V_upper.value);
      r.details["V"] = "upper surrogate";
      R.add("gaussian", e.name, std::move(r));
    });
  }
}

// ---------------------------------------------------------------------------
// chaos

void run_chaos_constants(Runner& R) {
  const auto& C = R.cfg().chaos;
  R.guard("chaos", "-", "beta_bound", {{"N_max", C.beta_N_max}},
          [&] { R.add("chaos", "-", beta_bound_check(C.beta_N_max)); });
  R.guard("chaos", "-", "gradient_bound", {{"K", C.gradient_K}}, [&] {
    const auto tg = log_spaced(1e-3, 10.0, 50);
    R.add("chaos", "-", gradient_bound_check(C.gradient_K, tg));
  });
}

void run_chaos(Runner& R, const CorpusEntry& e) {
  const auto& cfg = R.cfg();
  const auto& C = cfg.chaos;
  const auto f = e.hermite();
  R.guard("chaos", e.name, "chaos", {{"K", C.K}}, [&] {
    const auto d = chaos_decompose(f, C.K);
    const double scale = cfg.tol.parseval * std::max(1.0, d.norm_squared);
    const J in = {{"K", C.K}, {"method", d.method}};
    if (d.finite) {
      auto r = inequality_report("parseval", "Parseval identity for the chaos decomposition", std::fabs(d.parseval_defect),
                                 scale, 0.0);
      r.details = {{"norm_squared", d.norm_squared}};
      R.add("chaos", e.name, with_inputs(r, in));
    } else {
      auto r = inequality_report("bessel", "chaos energies below the squared norm", -d.parseval_defect, scale, 0.0);
      r.tail_flags.push_back("energy beyond degree K; Parseval not checkable at finite K");
      r.details = {{"norm_squared", d.norm_squared}, {"tail_energy", d.parseval_defect}};
      R.add("chaos", e.name, with_inputs(r, in));
    }
    if (e.closed.hermite) {
      std::map<std::vector<int>, double> exact_coeffs;
      for (const auto& t : e.closed.hermite->terms) exact_coeffs[t.index] += t.coeff;
      double worst = 0.0;
      for (std::size_t i = 0; i < d.indices.size(); ++i) {
        auto it = exact_coeffs.find(d.indices[i]);
        worst = std::max(worst, std::fabs(d.coefficients[i] - (it == exact_coeffs.end() ? 0.0 : it->second)));
      }
      R.add("chaos", e.name,
            with_inputs(inequality_report("hermite_coefficients", "chaos coefficients against the known expansion", worst,
                                          1e-10, 0.0),
                        in));
    }
    double rise = 0.0, prev = kInf;
    for (int N = 0; N <= C.K + 1; ++N) {
      const double v = best_approx(d, N).value;
      if (std::isfinite(prev)) rise = std::max(rise, v - prev);
      prev = v;
    }
    R.add("chaos", e.name,
          with_inputs(inequality_report("best_approx_monotone", "best approximation is nonincreasing in N", rise, 0.0, 1e-12),
                      in));
    for (int N = 1; N <= std::min(C.N_max, C.K + 1); ++N) R.add("chaos", e.name, jackson_stechkin_check(d, N));
  });
}

// ---------------------------------------------------------------------------
// output helpers

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

bool is_suite_id(const std::string& s) {
  if (s == "all") return true;
  return std::find_if(std::begin(kSuiteIds), std::end(kSuiteIds), [&](const char* x) { return s == x; }) !=
         std::end(kSuiteIds);
}

nlohmann::json SuiteConfig::defaults() {
  return J{
      {"suite", "all"},
      {"output_dir", "besov-lab-out"},
      {"corpus", "default"},
      {"euclidean",
       {{"spacing", {1.0 / 64, 1.0 / 16, 1.0 / 4}},
        {"p", {1.0, 2.0}},
        {"eps_points", 16},
        {"eps_min_cells", 2.0},
        {"eps_max_diameters", 1.0},
        {"budget", 60},
        {"besov", {{{"alpha", 0.5}, {"theta", 2.0}}, {{"alpha", 0.25}, {"theta", "inf"}}}},
        {"refinement_entry", "bump_1d"},
        {"refinement_eps", {0.125, 0.25, 0.5}}}},
      {"embedding",
       {{"p", {1.0}},
        {"tail_t", {{"lo", 0.5}, {"hi", 50.0}, {"count", 12}}},
        {"lu_N", 1.0},
        {"u_N", 0.01},
        {"power_weights", {1.0, 1.25, 1.5}}}},
      {"gaussian",
       {{"p", {1.0, 1.5, 2.0, 3.0}},
        {"t", {{"lo", 0.01}, {"hi", 4.0}, {"count", 16}}},
        {"eps", {{"lo", 0.05}, {"hi", 2.0}, {"count", 12}}},
        {"K", 12},
        {"budget", 200},
        {"besov", {{{"alpha", 0.5}, {"theta", 2.0}}, {{"alpha", 0.5}, {"theta", "inf"}}}},
        {"semigroup_pairs", {{0.1, 0.2}, {0.5, 0.5}}},
        {"semigroup_points", {-1.5, -0.3, 0.7, 2.0}},
        {"hypercontractivity", {{"p", {1.5, 2.0, 3.0}}, {"t", {0.1, 0.5, 1.0}}}},
        {"via_sigma_t", {0.1, 0.5, 1.0, 2.0}},
        {"lipschitz_t", {0.1, 1.0}},
        {"log_sobolev",
         {{{"p", 2.0}, {"theta", 2.0}, {"alpha", 0.8}, {"beta", 0.4}},
          {{"p", 2.0}, {"theta", "inf"}, {"alpha", 0.5}, {"beta", 0.25}},
          {{"p", 3.0}, {"theta", 1.0}, {"alpha", 0.9}, {"beta", 0.3}}}}}},
      {"chaos", {{"K", 63}, {"N_max", 64}, {"beta_N_max", 10000}, {"gradient_K", 64}}},
      {"tolerances",
       {{"shape", 1e-6},
        {"sandwich", 1e-6},
        {"constructive", 1e-8},
        {"closed_form", 1e-8},
        {"constants", 1e-10},
        {"semigroup", 1e-8},
        {"parseval", 1e-8},
        {"change_of_variables", 1e-6},
        {"refinement", 0.05}}},
  };
}

SuiteConfig SuiteConfig::from_json(const nlohmann::json& doc, const std::optional<std::string>& suite_override) {
  if (!doc.is_object()) throw UsageError("config must be a JSON object");
  J eff = defaults();
  overlay(eff, doc, "");

  SuiteConfig c;
  if (!eff.at("suite").is_string()) throw UsageError("config key 'suite' must be a string");
  c.suite = suite_override.value_or(eff.at("suite").get<std::string>());
  if (!is_suite_id(c.suite)) throw UsageError("unknown suite '" + c.suite + "'");
  eff["suite"] = c.suite;
  if (!eff.at("output_dir").is_string()) throw UsageError("config key 'output_dir' must be a string");
  c.output_dir = eff.at("output_dir").get<std::string>();

  // corpus
  std::vector<J> specs;
  const auto builtin = default_corpus_specs();
  const J& cj = eff.at("corpus");
  if (cj.is_string() && cj.get<std::string>() == "default") {
    specs = builtin;
  } else if (cj.is_array() && !cj.empty()) {
    for (const auto& item : cj) {
      if (item.is_string()) {
        const auto name = item.get<std::string>();
        auto it = std::find_if(builtin.begin(), builtin.end(), [&](const J& s) { return s.at("name") == name; });
        if (it == builtin.end()) throw UsageError("unknown corpus id '" + name + "'");
        specs.push_back(*it);
      } else {
        specs.push_back(item);
      }
    }
  } else {
    throw UsageError("config key 'corpus' must be \"default\" or a nonempty array");
  }
  std::set<std::string> names;
  for (const auto& s : specs) {
    try {
      c.corpus.push_back(make_corpus_entry(s));
    } catch (const Error& e) {
      throw UsageError(std::string("invalid corpus entry: ") + e.what());
    }
    if (!names.insert(c.corpus.back().name).second)
      throw UsageError("duplicate corpus id '" + c.corpus.back().name + "'");
  }

  const J& E = eff.at("euclidean");
  c.euclidean.spacing = list(E.at("spacing"), "euclidean.spacing");
  if (c.euclidean.spacing.size() != 3) throw UsageError("config key 'euclidean.spacing' needs one value per dimension 1..3");
  c.euclidean.p = list(E.at("p"), "euclidean.p", true);
  c.euclidean.eps_points = integer(E.at("eps_points"), "euclidean.eps_points", 2, 1000);
  c.euclidean.eps_min_cells = positive(E.at("eps_min_cells"), "euclidean.eps_min_cells");
  c.euclidean.eps_max_diameters = positive(E.at("eps_max_diameters"), "euclidean.eps_max_diameters");
  c.euclidean.budget = integer(E.at("budget"), "euclidean.budget", 1, 100000);
  c.euclidean.besov = exponent_pairs(E.at("besov"), "euclidean.besov");
  if (!E.at("refinement_entry").is_string()) throw UsageError("config key 'euclidean.refinement_entry' must be a string");
  c.euclidean.refinement_entry = E.at("refinement_entry").get<std::string>();
  c.euclidean.refinement_eps = grid(E.at("refinement_eps"), "euclidean.refinement_eps");

  const J& M = eff.at("embedding");
  c.embedding.p = list(M.at("p"), "embedding.p", true);
  c.embedding.tail_t = grid(M.at("tail_t"), "embedding.tail_t");
  c.embedding.lu_N = positive(M.at("lu_N"), "embedding.lu_N");
  c.embedding.u_N = positive(M.at("u_N"), "embedding.u_N");
  c.embedding.power_weights = list(M.at("power_weights"), "embedding.power_weights");

  const J& G = eff.at("gaussian");
  c.gaussian.p = list(G.at("p"), "gaussian.p", true);
  c.gaussian.t = grid(G.at("t"), "gaussian.t");
  c.gaussian.eps = grid(G.at("eps"), "gaussian.eps");
  c.gaussian.K = integer(G.at("K"), "gaussian.K", 1, 40);
  c.gaussian.budget = integer(G.at("budget"), "gaussian.budget", 1, 100000);
  c.gaussian.besov = exponent_pairs(G.at("besov"), "gaussian.besov");
  const J& pairs = G.at("semigroup_pairs");
  if (!pairs.is_array() || pairs.empty()) throw UsageError("config key 'gaussian.semigroup_pairs' must be a nonempty array");
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto v = list(pairs[i], "gaussian.semigroup_pairs[" + std::to_string(i) + "]");
    if (v.size() != 2) throw UsageError("config key 'gaussian.semigroup_pairs' needs pairs [s, t]");
    c.gaussian.semigroup_pairs.push_back({v[0], v[1]});
  }
  const J& pts = G.at("semigroup_points");
  if (!pts.is_array() || pts.empty()) throw UsageError("config key 'gaussian.semigroup_points' must be a nonempty array");
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double x = num(pts[i], "gaussian.semigroup_points[" + std::to_string(i) + "]");
    if (!std::isfinite(x)) throw UsageError("config key 'gaussian.semigroup_points' must be finite");
    c.gaussian.semigroup_points.push_back(x);
  }
  const J& H = G.at("hypercontractivity");
  if (!H.is_object()) throw UsageError("config key 'gaussian.hypercontractivity' must be an object");
  c.gaussian.hyper_p = list(H.at("p"), "gaussian.hypercontractivity.p", true);
  c.gaussian.hyper_t = list(H.at("t"), "gaussian.hypercontractivity.t");
  c.gaussian.via_sigma_t = list(G.at("via_sigma_t"), "gaussian.via_sigma_t");
  c.gaussian.lipschitz_t = list(G.at("lipschitz_t"), "gaussian.lipschitz_t");
  const J& ls = G.at("log_sobolev");
  if (!ls.is_array() || ls.empty()) throw UsageError("config key 'gaussian.log_sobolev' must be a nonempty array");
  for (std::size_t i = 0; i < ls.size(); ++i) {
    const std::string p = "gaussian.log_sobolev[" + std::to_string(i) + "]";
    if (!ls[i].is_object()) throw UsageError("config key '" + p + "' must be an object");
    for (const auto& [key, _] : ls[i].items())
      if (key != "p" && key != "theta" && key != "alpha" && key != "beta")
        throw UsageError("unknown config key '" + join(p, key) + "'");
    LogSobolevCase lc;
    lc.p = num(ls[i].value("p", J(2.0)), p + ".p");
    lc.theta = theta_value(ls[i].value("theta", J(2.0)), p + ".theta");
    lc.alpha = num(ls[i].value("alpha", J(0.5)), p + ".alpha");
    lc.beta = num(ls[i].value("beta", J(0.25)), p + ".beta");
    if (!(lc.p > 1.0) || !std::isfinite(lc.p)) throw UsageError("config key '" + p + ".p' must be finite and > 1");
    if (!(lc.alpha > 0.0 && lc.alpha < 1.0)) throw UsageError("config key '" + p + ".alpha' must lie in (0, 1)");
    if (!(lc.beta > 0.0 && lc.beta < lc.alpha)) throw UsageError("config key '" + p + ".beta' must lie in (0, alpha)");
    c.gaussian.log_sobolev.push_back(lc);
  }

  const J& C = eff.at("chaos");
  c.chaos.K = integer(C.at("K"), "chaos.K", 0, 200);
  c.chaos.N_max = integer(C.at("N_max"), "chaos.N_max", 1, c.chaos.K + 1);
  c.chaos.beta_N_max = integer(C.at("beta_N_max"), "chaos.beta_N_max", 1, 100000000);
  c.chaos.gradient_K = integer(C.at("gradient_K"), "chaos.gradient_K", 1, 100000);

  const J& T = eff.at("tolerances");
  c.tol.shape = positive(T.at("shape"), "tolerances.shape");
  c.tol.sandwich = positive(T.at("sandwich"), "tolerances.sandwich");
  c.tol.constructive = positive(T.at("constructive"), "tolerances.constructive");
  c.tol.closed_form = positive(T.at("closed_form"), "tolerances.closed_form");
  c.tol.constants = positive(T.at("constants"), "tolerances.constants");
  c.tol.semigroup = positive(T.at("semigroup"), "tolerances.semigroup");
  c.tol.parseval = positive(T.at("parseval"), "tolerances.parseval");
  c.tol.change_of_variables = positive(T.at("change_of_variables"), "tolerances.change_of_variables");
  c.tol.refinement = positive(T.at("refinement"), "tolerances.refinement");

  eff.erase("output_dir");
  c.effective = std::move(eff);
  return c;
}

SuiteConfig SuiteConfig::from_file(const std::filesystem::path& path, const std::optional<std::string>& suite_override) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path.string() + "'");
  J doc;
  try {
    doc = J::parse(in);
  } catch (const J::parse_error& e) {
    throw UsageError("malformed config '" + path.string() + "': " + e.what());
  }
  return from_json(doc, suite_override);
}

std::string SuiteConfig::hash() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, fnv1a(effective.dump()));
  return buf;
}

std::size_t SuiteResult::count(Verdict v) const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [v](const SuiteCheck& c) { return c.report.verdict == v; }));
}

int SuiteResult::exit_code(bool strict) const {
  if (count(Verdict::Fail) > 0 || count(Verdict::Error) > 0) return 1;
  if (strict && count(Verdict::Inconclusive) > 0) return 1;
  return 0;
}

nlohmann::json SuiteResult::to_json() const {
  J j;
  j["suite"] = suite;
  j["config_hash"] = config_hash;
  j["corpus"] = corpus;
  j["counts"] = {{"pass", count(Verdict::Pass)},
                 {"fail", count(Verdict::Fail)},
                 {"inconclusive", count(Verdict::Inconclusive)},
                 {"error", count(Verdict::Error)}};
  auto arr = J::array();
  for (const auto& c : checks) {
    const auto& r = c.report;
    J x;
    x["suite"] = c.suite;
    x["entry"] = c.entry;
    x["id"] = r.id;
    x["paper_ref"] = r.reference;
    x["inputs"] = r.inputs;
    x["lhs"] = number_json(r.lhs);
    x["rhs"] = number_json(r.rhs);
    x["slack"] = number_json(r.slack);
    x["verdict"] = to_string(r.verdict);
    if (!r.tail_flags.empty()) x["tail_flags"] = r.tail_flags;
    if (!r.details.empty()) x["details"] = r.details;
    arr.push_back(std::move(x));
  }
  j["checks"] = std::move(arr);
  return j;
}

std::string SuiteResult::summary_csv() const {
  std::ostringstream out;
  out << "suite,entry,id,paper_ref,lhs,rhs,slack,verdict\n";
  for (const auto& c : checks) {
    const auto& r = c.report;
    out << csv_field(c.suite) << ',' << csv_field(c.entry) << ',' << csv_field(r.id) << ',' << csv_field(r.reference)
        << ',' << exact(r.lhs) << ',' << exact(r.rhs) << ',' << exact(r.slack) << ',' << to_string(r.verdict) << '\n';
  }
  return out.str();
}

SuiteResult run_suite(const SuiteConfig& cfg) {
  SuiteResult res;
  res.suite = cfg.suite;
  res.config_hash = cfg.hash();
  for (const auto& e : cfg.corpus) res.corpus.push_back(e.to_json());
  Runner R(cfg, res);

  auto wants = [&](const char* s) { return cfg.suite == "all" || cfg.suite == s; };

  // closed forms are checked once, before any suite uses them
  for (const auto& e : cfg.corpus) {
    const bool used = e.space == Space::Euclidean ? (wants("moduli") || wants("sandwich") || wants("embedding"))
                                                  : (wants("gaussian") || wants("chaos"));
    if (!used) continue;
    R.guard("corpus", e.name, "closed_forms", J::object(), [&] {
      validate_closed_forms(e, cfg.euclidean.spacing[static_cast<std::size_t>(e.n - 1)]);
      auto r = inequality_report("closed_forms", "closed-form registry agrees with quadrature", 0.0, 0.0, 0.0);
      r.details["forms"] = e.to_json().at("closed_forms");
      R.add("corpus", e.name, std::move(r));
    });
  }

  if (wants("moduli"))
    for (const auto& e : cfg.corpus)
      if (e.space == Space::Euclidean) run_moduli(R, e);
  if (wants("sandwich"))
    for (const auto& e : cfg.corpus)
      if (e.space == Space::Euclidean) run_sandwich(R, e);
  if (wants("embedding")) {
    run_embedding_constants(R);
    for (const auto& e : cfg.corpus)
      if (e.space == Space::Euclidean) run_embedding(R, e);
  }
  if (wants("gaussian")) {
    run_gaussian_constants(R);
    for (const auto& e : cfg.corpus)
      if (e.space == Space::Gaussian) run_gaussian(R, e);
  }
  if (wants("chaos")) {
    run_chaos_constants(R);
    for (const auto& e : cfg.corpus)
      if (e.space == Space::Gaussian) run_chaos(R, e);
  }
  return res;
}

void emit_curve_data(const ModulusCurve& curve, const std::filesystem::path& path) {
  std::vector<std::pair<double, double>> rows;
  for (std::size_t k = 0; k < curve.size(); ++k) rows.push_back({curve.eps[k], curve.values[k]});
  std::sort(rows.begin(), rows.end());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidInput, "cannot write '" + path.string() + "'");
  out << "eps,value,bound,kind\n";
  for (const auto& [e, v] : rows)
    out << exact(e) << ',' << exact(v) << ',' << to_string(curve.bound) << ',' << to_string(curve.kind) << '\n';
  if (!out) throw Error(ErrorKind::InvalidInput, "failed writing '" + path.string() + "'");
}

ModulusCurve read_curve_data(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot read '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line) || line != "eps,value,bound,kind")
    throw Error(ErrorKind::InvalidInput, "'" + path.string() + "' is not a curve file");
  ModulusCurve c;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cols.push_back(cell);
    if (cols.size() != 4) throw Error(ErrorKind::InvalidInput, "malformed curve row: " + line);
    c.eps.push_back(std::strtod(cols[0].c_str(), nullptr));
    c.values.push_back(std::strtod(cols[1].c_str(), nullptr));
    if (first) {
      c.bound = bound_type_from_string(cols[2]);
      c.kind = modulus_kind_from_string(cols[3]);
      first = false;
    }
  }
  return c;
}

void write_outputs(const SuiteResult& result, const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir / "curves");
  {
    std::ofstream out(dir / "report.json", std::ios::binary);
    out << result.to_json().dump(2) << '\n';
    if (!out) throw Error(ErrorKind::InvalidInput, "failed writing report.json");
  }
  {
    std::ofstream out(dir / "summary.csv", std::ios::binary);
    out << result.summary_csv();
    if (!out) throw Error(ErrorKind::InvalidInput, "failed writing summary.csv");
  }
  for (const auto& c : result.curves) emit_curve_data(c.curve, dir / "curves" / (c.name + ".csv"));
}

}  // namespace besov
