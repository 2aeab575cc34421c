#include "besov/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "besov/error.hpp"
#include "besov/gaussian.hpp"
#include "besov/numeric.hpp"

namespace besov {

const char* to_string(Space s) { return s == Space::Euclidean ? "euclidean" : "gaussian"; }

namespace {

[[noreturn]] void bad(const std::string& name, const std::string& what) {
  throw Error(ErrorKind::InvalidInput, "corpus entry '" + name + "': " + what);
}

double number(const nlohmann::json& v, const std::string& name) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  bad(name, "expected a number, \"inf\" or \"-inf\"");
}

double param(const CorpusEntry& e, const char* key, std::optional<double> fallback = {}) {
  if (!e.params.contains(key)) {
    if (fallback) return *fallback;
    bad(e.name, std::string("missing parameter '") + key + "'");
  }
  return number(e.params.at(key), e.name);
}

std::vector<double> vec_param(const CorpusEntry& e, const nlohmann::json& v, const char* key) {
  if (!v.is_array() || static_cast<int>(v.size()) != e.n)
    bad(e.name, std::string("parameter '") + key + "' must be an array of length n");
  std::vector<double> out;
  for (const auto& x : v) out.push_back(number(x, e.name));
  return out;
}

std::vector<double> vec_param(const CorpusEntry& e, const char* key, std::optional<double> fill = {}) {
  if (!e.params.contains(key)) {
    if (fill) return std::vector<double>(static_cast<std::size_t>(e.n), *fill);
    bad(e.name, std::string("missing parameter '") + key + "'");
  }
  return vec_param(e, e.params.at(key), key);
}

// hypot keeps tiny radii from underflowing to zero near a cusp
double norm2(std::span<const double> x) {
  switch (x.size()) {
    case 1: return std::fabs(x[0]);
    case 2: return std::hypot(x[0], x[1]);
    default: return std::hypot(x[0], x[1], x[2]);
  }
}

bool inside(std::span<const double> x, const std::vector<double>& lo, const std::vector<double>& hi) {
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] < lo[i] || x[i] > hi[i]) return false;
  return true;
}

double gauss_cdf(double x) {
  if (x == kInf) return 1.0;
  if (x == -kInf) return 0.0;
  return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

// gamma_n of a box, or Lebesgue measure
double box_measure(Space space, const std::vector<double>& lo, const std::vector<double>& hi) {
  double m = 1.0;
  for (std::size_t i = 0; i < lo.size(); ++i)
    m *= space == Space::Gaussian ? gauss_cdf(hi[i]) - gauss_cdf(lo[i]) : hi[i] - lo[i];
  return m;
}

// int_lo^hi |x|^a dx for a > -1
double power_integral(double lo, double hi, double a) {
  auto F = [a](double x) { return std::copysign(std::pow(std::fabs(x), a + 1.0), x) / (a + 1.0); };
  return F(hi) - F(lo);
}

void check_box(const CorpusEntry& e, const std::vector<double>& lo, const std::vector<double>& hi) {
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (!(lo[i] < hi[i])) bad(e.name, "box needs lo < hi on every axis");
    if (e.space == Space::Euclidean && (!std::isfinite(lo[i]) || !std::isfinite(hi[i])))
      bad(e.name, "Euclidean boxes must be bounded");
  }
}

Box finite_box(CorpusEntry& e, const std::vector<double>& lo, const std::vector<double>& hi) {
  Box b{lo, hi};
  e.bounded = std::all_of(lo.begin(), lo.end(), [](double v) { return std::isfinite(v); }) &&
              std::all_of(hi.begin(), hi.end(), [](double v) { return std::isfinite(v); });
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (!std::isfinite(b.lo[i])) b.lo[i] = -12.0;
    if (!std::isfinite(b.hi[i])) b.hi[i] = 12.0;
  }
  return b;
}

void add_kinks(CorpusEntry& e, std::initializer_list<double> xs) {
  if (e.n != 1) return;
  for (double x : xs)
    if (std::isfinite(x)) e.kinks.push_back(x);
}

void build_indicator(CorpusEntry& e) {
  const auto lo = vec_param(e, "lo"), hi = vec_param(e, "hi");
  check_box(e, lo, hi);
  e.fn = [lo, hi](std::span<const double> x) { return inside(x, lo, hi) ? 1.0 : 0.0; };
  e.support = finite_box(e, lo, hi);
  add_kinks(e, {lo[0], hi[0]});
  const double m = box_measure(e.space, lo, hi);
  e.closed.norm = [m](double p) { return std::pow(m, 1.0 / p); };
  if (e.space == Space::Euclidean && e.n == 1) {
    const double L = hi[0] - lo[0];
    // ||f_h - f||_p^p = 2 min(|h|, L)
    e.closed.omega = [L](double p, double eps) { return std::pow(2.0 * std::min(eps, L), 1.0 / p); };
  }
  if (e.space == Space::Gaussian && e.n == 1 && ((lo[0] == 0.0 && hi[0] == kInf) || (lo[0] == -kInf && hi[0] == 0.0))) {
    // P(sign X != sign Z) for correlation e^{-t}
    e.closed.a_gamma = [](double p, double t) { return std::pow(std::acos(std::exp(-t)) / kPi, 1.0 / p); };
  }
}

void build_cusp(CorpusEntry& e) {
  const double beta = param(e, "beta");
  const auto lo = vec_param(e, "lo"), hi = vec_param(e, "hi");
  check_box(e, lo, hi);
  if (e.space == Space::Euclidean && !(beta > -static_cast<double>(e.n))) bad(e.name, "power_cusp needs beta > -n");
  if (e.space == Space::Gaussian && !(beta >= 0.0)) bad(e.name, "Gaussian power_cusp needs beta >= 0");
  e.fn = [beta, lo, hi](std::span<const double> x) { return inside(x, lo, hi) ? std::pow(norm2(x), beta) : 0.0; };
  e.support = finite_box(e, lo, hi);
  add_kinks(e, {lo[0], 0.0, hi[0]});
  if (e.space == Space::Euclidean && e.n == 1) {
    const double a = lo[0], b = hi[0];
    e.closed.norm = [beta, a, b](double p) {
      return beta * p > -1.0 ? std::pow(power_integral(a, b, beta * p), 1.0 / p) : kInf;
    };
  }
}

void build_bump(CorpusEntry& e) {
  const auto c = vec_param(e, "center", 0.0);
  const double r = param(e, "radius", 1.0);
  if (!(r > 0.0) || !std::isfinite(r)) bad(e.name, "smooth_bump needs a finite radius > 0");
  e.fn = [c, r](std::span<const double> x) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - c[i]) * (x[i] - c[i]);
    s /= r * r;
    return s < 1.0 ? std::exp(-1.0 / (1.0 - s)) : 0.0;
  };
  std::vector<double> lo(c), hi(c);
  for (std::size_t i = 0; i < c.size(); ++i) {
    lo[i] -= r;
    hi[i] += r;
  }
  e.support = Box{lo, hi};
  e.bounded = true;
  add_kinks(e, {lo[0], hi[0]});
}

void build_steps(CorpusEntry& e) {
  if (!e.params.contains("steps") || !e.params.at("steps").is_array() || e.params.at("steps").empty())
    bad(e.name, "step_sum needs a nonempty 'steps' array");
  struct Step {
    std::vector<double> lo, hi;
    double h;
  };
  std::vector<Step> steps;
  for (const auto& s : e.params.at("steps")) {
    if (!s.is_object() || !s.contains("lo") || !s.contains("hi") || !s.contains("height"))
      bad(e.name, "each step needs lo, hi and height");
    Step st{vec_param(e, s.at("lo"), "lo"), vec_param(e, s.at("hi"), "hi"), number(s.at("height"), e.name)};
    check_box(e, st.lo, st.hi);
    if (!std::isfinite(st.h)) bad(e.name, "step heights must be finite");
    steps.push_back(std::move(st));
  }
  e.fn = [steps](std::span<const double> x) {
    double v = 0.0;
    for (const auto& s : steps)
      if (inside(x, s.lo, s.hi)) v += s.h;
    return v;
  };
  std::vector<double> lo = steps.front().lo, hi = steps.front().hi;
  for (const auto& s : steps)
    for (std::size_t i = 0; i < lo.size(); ++i) {
      lo[i] = std::min(lo[i], s.lo[i]);
      hi[i] = std::max(hi[i], s.hi[i]);
    }
  e.support = finite_box(e, lo, hi);
  for (const auto& s : steps) add_kinks(e, {s.lo[0], s.hi[0]});
  if (e.n == 1) {
    // piecewise constant: exact norm from the breakpoints
    std::vector<double> cuts;
    for (const auto& s : steps) {
      cuts.push_back(s.lo[0]);
      cuts.push_back(s.hi[0]);
    }
    std::sort(cuts.begin(), cuts.end());
    const Space space = e.space;
    auto fn = e.fn;
    e.closed.norm = [cuts, space, fn](double p) {
      double s = 0.0;
      for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (!(cuts[i + 1] > cuts[i])) continue;
        const double mid = std::isfinite(cuts[i]) && std::isfinite(cuts[i + 1]) ? 0.5 * (cuts[i] + cuts[i + 1])
                           : std::isfinite(cuts[i])                          ? cuts[i] + 1.0
                                                                             : cuts[i + 1] - 1.0;
        const double x[1] = {mid};
        s += abs_pow(fn(x), p) * box_measure(space, {cuts[i]}, {cuts[i + 1]});
      }
      return std::pow(s, 1.0 / p);
    };
  }
}

void build_hermite(CorpusEntry& e) {
  if (e.space != Space::Gaussian) bad(e.name, "hermite_polynomial lives in Gaussian space");
  if (!e.params.contains("terms") || !e.params.at("terms").is_array() || e.params.at("terms").empty())
    bad(e.name, "hermite_polynomial needs a nonempty 'terms' array");
  HermiteExpansion ex;
  ex.n = e.n;
  for (const auto& t : e.params.at("terms")) {
    if (!t.is_object() || !t.contains("index") || !t.contains("coeff")) bad(e.name, "each term needs index and coeff");
    const auto& idx = t.at("index");
    if (!idx.is_array() || static_cast<int>(idx.size()) != e.n) bad(e.name, "term index must have length n");
    std::vector<int> index;
    for (const auto& v : idx) {
      if (!v.is_number_integer() || v.get<int>() < 0 || v.get<int>() > 200)
        bad(e.name, "term index entries must be integers in [0, 200]");
      index.push_back(v.get<int>());
    }
    const double c = number(t.at("coeff"), e.name);
    if (!std::isfinite(c)) bad(e.name, "coefficients must be finite");
    ex.terms.push_back({std::move(index), c});
  }
  const std::string backing = e.params.value("backing", "callable");
  if (backing != "callable" && backing != "coefficients") bad(e.name, "backing must be 'callable' or 'coefficients'");
  e.fn = [ex](std::span<const double> x) { return ex(x); };
  e.closed.hermite = ex;

  double c0 = 0.0, energy = 0.0, lin = 0.0;
  bool linear = true;
  for (const auto& t : ex.terms) {
    const int d = std::accumulate(t.index.begin(), t.index.end(), 0);
    if (d == 0) c0 += t.coeff;
    if (d > 1 && t.coeff != 0.0) linear = false;
  }
  // merged energies per degree
  std::vector<std::pair<int, double>> parts;
  {
    std::vector<std::pair<std::vector<int>, double>> merged;
    for (const auto& t : ex.terms) {
      auto it = std::find_if(merged.begin(), merged.end(), [&](const auto& m) { return m.first == t.index; });
      if (it == merged.end()) merged.push_back({t.index, t.coeff});
      else it->second += t.coeff;
    }
    for (const auto& [idx, c] : merged) {
      const int d = std::accumulate(idx.begin(), idx.end(), 0);
      parts.push_back({d, c * c});
      energy += c * c;
      if (d == 1) lin += c * c;
    }
  }
  e.closed.norm = [energy, linear, c0, lin](double p) {
    if (p == 2.0) return std::sqrt(energy);
    if (linear && c0 == 0.0) return std::sqrt(lin) * gauss_constant(p);
    return std::nan("");
  };
  e.closed.a_gamma = [parts, linear, lin](double p, double t) {
    // f(e^{-t}x + s y) - f(x) is centred Gaussian when f is affine
    if (linear) return std::sqrt(2.0 * -std::expm1(-t) * lin) * gauss_constant(p);
    if (p != 2.0) return std::nan("");
    double s = 0.0;
    for (const auto& [d, c2] : parts) s += c2 * -std::expm1(-static_cast<double>(d) * t);
    return std::sqrt(2.0 * s);
  };
}

void build_truncated_power(CorpusEntry& e) {
  const double beta = param(e, "beta");
  const double R = param(e, "radius", 1.0);
  if (!(beta > 0.0) || !std::isfinite(beta)) bad(e.name, "truncated_power needs finite beta > 0");
  if (!(R > 0.0) || !std::isfinite(R)) bad(e.name, "truncated_power needs a finite radius > 0");
  e.fn = [beta, R](std::span<const double> x) {
    const double r = norm2(x);
    return r < R ? std::pow(R - r, beta) : 0.0;
  };
  e.support = Box{std::vector<double>(static_cast<std::size_t>(e.n), -R), std::vector<double>(static_cast<std::size_t>(e.n), R)};
  e.bounded = true;
  add_kinks(e, {-R, 0.0, R});
  if (e.space == Space::Euclidean && e.n == 1)
    e.closed.norm = [beta, R](double p) { return std::pow(2.0 * std::pow(R, beta * p + 1.0) / (beta * p + 1.0), 1.0 / p); };
}

}  // namespace

CorpusEntry make_corpus_entry(const nlohmann::json& spec) {
  if (!spec.is_object()) throw Error(ErrorKind::InvalidInput, "corpus entry must be a JSON object");
  for (const auto& [key, _] : spec.items())
    if (key != "name" && key != "space" && key != "n" && key != "constructor" && key != "params")
      throw Error(ErrorKind::InvalidInput, "unknown corpus entry field '" + key + "'");
  CorpusEntry e;
  if (!spec.contains("name") || !spec.at("name").is_string() || spec.at("name").get<std::string>().empty())
    throw Error(ErrorKind::InvalidInput, "corpus entry needs a nonempty name");
  e.name = spec.at("name").get<std::string>();
  for (char c : e.name)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-'))
      bad(e.name, "names may only contain letters, digits, '_' and '-'");
  const std::string space = spec.value("space", "euclidean");
  if (space == "euclidean") e.space = Space::Euclidean;
  else if (space == "gaussian") e.space = Space::Gaussian;
  else bad(e.name, "space must be 'euclidean' or 'gaussian'");
  if (!spec.contains("n") || !spec.at("n").is_number_integer()) bad(e.name, "missing integer n");
  e.n = spec.at("n").get<int>();
  if (e.n < 1 || e.n > (e.space == Space::Euclidean ? 3 : 2)) bad(e.name, "n out of range");
  e.constructor = spec.value("constructor", "");
  e.params = spec.value("params", nlohmann::json::object());
  if (!e.params.is_object()) bad(e.name, "params must be an object");
  static const std::map<std::string, std::set<std::string>> kParams = {
      {"zero", {"lo", "hi"}},
      {"indicator_box", {"lo", "hi"}},
      {"power_cusp", {"beta", "lo", "hi"}},
      {"smooth_bump", {"center", "radius"}},
      {"step_sum", {"steps"}},
      {"hermite_polynomial", {"terms", "backing"}},
      {"truncated_power", {"beta", "radius"}},
  };
  if (const auto it = kParams.find(e.constructor); it != kParams.end())
    for (const auto& [key, _] : e.params.items())
      if (key != "padding" && !it->second.count(key)) bad(e.name, "unknown parameter '" + key + "'");

  if (e.constructor == "zero") {
    e.fn = [](std::span<const double>) { return 0.0; };
    e.support = Box{vec_param(e, "lo", 0.0), vec_param(e, "hi", 1.0)};
    check_box(e, e.support.lo, e.support.hi);
    e.closed.norm = [](double) { return 0.0; };
    e.closed.omega = [](double, double) { return 0.0; };
    e.closed.a_gamma = [](double, double) { return 0.0; };
  } else if (e.constructor == "indicator_box") {
    build_indicator(e);
  } else if (e.constructor == "power_cusp") {
    build_cusp(e);
  } else if (e.constructor == "smooth_bump") {
    build_bump(e);
  } else if (e.constructor == "step_sum") {
    build_steps(e);
  } else if (e.constructor == "hermite_polynomial") {
    build_hermite(e);
  } else if (e.constructor == "truncated_power") {
    build_truncated_power(e);
  } else {
    bad(e.name, "unknown constructor '" + e.constructor + "'");
  }
  std::sort(e.kinks.begin(), e.kinks.end());
  e.kinks.erase(std::unique(e.kinks.begin(), e.kinks.end()), e.kinks.end());
  return e;
}

GridFunction CorpusEntry::sample(double spacing, double min_padding) const {
  if (space != Space::Euclidean) throw Error(ErrorKind::InvalidInput, "entry '" + name + "' is not Euclidean");
  if (!(spacing > 0.0)) throw Error(ErrorKind::ParameterDomain, "spacing must be positive");
  const double pad =
      std::max(min_padding, params.contains("padding") ? number(params.at("padding"), name) : 1.5);
  return GridFunction::sample(fn, support, std::vector<double>(static_cast<std::size_t>(n), spacing),
                              std::vector<double>(static_cast<std::size_t>(n), pad));
}

HermiteFunction CorpusEntry::hermite() const {
  if (space != Space::Gaussian) throw Error(ErrorKind::InvalidInput, "entry '" + name + "' is not Gaussian");
  if (closed.hermite && params.value("backing", "callable") == "coefficients") return HermiteFunction(*closed.hermite);
  HermiteFunction f(n, fn, kinks);
  if (bounded) f = f.with_support({support.lo, support.hi});
  return f;
}

nlohmann::json CorpusEntry::to_json() const {
  nlohmann::json j;
  j["name"] = name;
  j["space"] = to_string(space);
  j["n"] = n;
  j["constructor"] = constructor;
  j["params"] = params;
  auto forms = nlohmann::json::array();
  if (closed.omega) forms.push_back("omega");
  if (closed.norm) forms.push_back("norm");
  if (closed.a_gamma) forms.push_back("a_gamma");
  if (closed.hermite) forms.push_back("hermite");
  j["closed_forms"] = forms;
  return j;
}

std::vector<nlohmann::json> default_corpus_specs() {
  using J = nlohmann::json;
  return {
      J{{"name", "zero_1d"}, {"space", "euclidean"}, {"n", 1}, {"constructor", "zero"}},
      J{{"name", "indicator_1d"}, {"space", "euclidean"}, {"n", 1}, {"constructor", "indicator_box"},
        {"params", {{"lo", {0.0}}, {"hi", {1.0}}}}},
      J{{"name", "cusp_1d"}, {"space", "euclidean"}, {"n", 1}, {"constructor", "power_cusp"},
        {"params", {{"beta", -0.25}, {"lo", {-1.0}}, {"hi", {1.0}}}}},
      J{{"name", "bump_1d"}, {"space", "euclidean"}, {"n", 1}, {"constructor", "smooth_bump"},
        {"params", {{"center", {0.0}}, {"radius", 1.0}}}},
      J{{"name", "steps_1d"}, {"space", "euclidean"}, {"n", 1}, {"constructor", "step_sum"},
        {"params", {{"steps", {{{"lo", {0.0}}, {"hi", {1.0}}, {"height", 1.0}},
                               {{"lo", {0.5}}, {"hi", {1.5}}, {"height", -0.5}}}}}}},
      J{{"name", "tent_root_1d"}, {"space", "euclidean"}, {"n", 1}, {"constructor", "truncated_power"},
        {"params", {{"beta", 0.5}, {"radius", 1.0}}}},
      J{{"name", "square_2d"}, {"space", "euclidean"}, {"n", 2}, {"constructor", "indicator_box"},
        {"params", {{"lo", {0.0, 0.0}}, {"hi", {1.0, 1.0}}}}},
      J{{"name", "bump_2d"}, {"space", "euclidean"}, {"n", 2}, {"constructor", "smooth_bump"},
        {"params", {{"center", {0.0, 0.0}}, {"radius", 1.0}}}},
      J{{"name", "cusp_2d"}, {"space", "euclidean"}, {"n", 2}, {"constructor", "power_cusp"},
        {"params", {{"beta", -0.5}, {"lo", {-1.0, -1.0}}, {"hi", {1.0, 1.0}}}}},

      J{{"name", "g_zero"}, {"space", "gaussian"}, {"n", 1}, {"constructor", "zero"}},
      J{{"name", "g_h1"}, {"space", "gaussian"}, {"n", 1}, {"constructor", "hermite_polynomial"},
        {"params", {{"terms", {{{"index", {1}}, {"coeff", 1.0}}}}}}},
      J{{"name", "g_poly"}, {"space", "gaussian"}, {"n", 1}, {"constructor", "hermite_polynomial"},
        {"params", {{"terms", {{{"index", {0}}, {"coeff", 0.5}}, {{"index", {2}}, {"coeff", 1.0}},
                               {{"index", {3}}, {"coeff", -0.3}}}}}}},
      J{{"name", "g_halfline"}, {"space", "gaussian"}, {"n", 1}, {"constructor", "indicator_box"},
        {"params", {{"lo", {0.0}}, {"hi", {"inf"}}}}},
      J{{"name", "g_tent_root"}, {"space", "gaussian"}, {"n", 1}, {"constructor", "truncated_power"},
        {"params", {{"beta", 0.5}, {"radius", 2.0}}}},
      J{{"name", "g_root_cusp"}, {"space", "gaussian"}, {"n", 1}, {"constructor", "power_cusp"},
        {"params", {{"beta", 0.5}, {"lo", {-2.0}}, {"hi", {2.0}}}}},
      J{{"name", "g_bump"}, {"space", "gaussian"}, {"n", 1}, {"constructor", "smooth_bump"},
        {"params", {{"center", {0.0}}, {"radius", 2.0}}}},
      J{{"name", "g_x1x2"}, {"space", "gaussian"}, {"n", 2}, {"constructor", "hermite_polynomial"},
        {"params", {{"terms", {{{"index", {1, 1}}, {"coeff", 1.0}}}}, {"backing", "coefficients"}}}},
      J{{"name", "g_bump_2d"}, {"space", "gaussian"}, {"n", 2}, {"constructor", "smooth_bump"},
        {"params", {{"center", {0.0, 0.0}}, {"radius", 1.5}}}},
  };
}

void validate_closed_forms(const CorpusEntry& e, double spacing) {
  auto fail = [&](const std::string& what, double got, double want) {
    throw Error(ErrorKind::InvalidInput, "closed form '" + what + "' of corpus entry '" + e.name +
                                             "' disagrees with quadrature: " + std::to_string(got) + " vs " +
                                             std::to_string(want));
  };
  auto close = [](double a, double b, double tol) { return std::fabs(a - b) <= tol * std::max(1.0, std::fabs(b)); };

  if (e.space == Space::Euclidean) {
    if (e.closed.norm && e.n == 1) {
      std::vector<double> cuts{e.support.lo[0]};
      if (e.support.lo[0] < 0.0 && e.support.hi[0] > 0.0) cuts.push_back(0.0);  // cusps sit at the origin
      for (double k : e.kinks)
        if (k > e.support.lo[0] && k < e.support.hi[0]) cuts.push_back(k);
      cuts.push_back(e.support.hi[0]);
      std::sort(cuts.begin(), cuts.end());
      cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
      for (double p : {1.0, 2.0}) {
        const double want = e.closed.norm(p);
        if (!std::isfinite(want)) continue;
        double s = 0.0;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
          s += integrate_singular(
              [&](double x) {
                const double a[1] = {x};
                return abs_pow(e.fn(a), p);
              },
              cuts[i], cuts[i + 1], 1e-12);
        if (!close(std::pow(s, 1.0 / p), want, 1e-6)) fail("norm", std::pow(s, 1.0 / p), want);
      }
    }
    if (e.closed.omega) {
      const auto g = e.sample(spacing);
      ShiftProfile prof(g, 1.0);
      for (double eps : {0.1, 0.5, 2.0}) {
        const double got = prof.omega(eps).value, want = e.closed.omega(1.0, eps);
        if (std::fabs(got - want) > 2.0 * spacing + 1e-12) fail("omega", got, want);
      }
    }
    return;
  }

  const auto f = e.hermite();
  if (e.closed.hermite) {
    for (double x : {-2.3, -0.7, 0.0, 0.4, 1.9}) {
      std::vector<double> pt(static_cast<std::size_t>(e.n), x);
      if (e.n > 1) pt[1] = 0.5 - x;
      const double want = (*e.closed.hermite)(pt);
      if (!close(f(pt), want, 1e-12)) fail("hermite", f(pt), want);
    }
  }
  if (e.closed.norm) {
    for (double p : {1.0, 2.0, 3.0}) {
      const double want = e.closed.norm(p);
      if (std::isnan(want)) continue;
      const double got = gaussian_lp_norm(f, p);
      if (!close(got, want, 1e-8)) fail("norm", got, want);
    }
  }
  if (e.closed.a_gamma) {
    for (double p : {1.0, 2.0}) {
      const double want = e.closed.a_gamma(p, 0.5);
      if (std::isnan(want)) continue;
      const double got = a_gamma(f, p, 0.5);
      if (!close(got, want, 1e-6)) fail("a_gamma", got, want);
    }
  }
}

}  // namespace besov
