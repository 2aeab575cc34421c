#include "besov/chaos.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "besov/error.hpp"
#include "besov/numeric.hpp"

namespace besov {

nlohmann::json ChaosDecomposition::to_json() const {
  nlohmann::json j;
  j["n"] = n;
  j["K"] = K;
  j["method"] = method;
  if (quadrature_order > 0) j["quadrature_order"] = quadrature_order;
  auto arr = nlohmann::json::array();
  for (std::size_t i = 0; i < indices.size(); ++i) arr.push_back({indices[i], coefficients[i]});
  j["coefficients"] = arr;
  j["energies"] = energies;
  j["norm_squared"] = norm_squared;
  j["parseval_defect"] = parseval_defect;
  return j;
}

ChaosDecomposition chaos_decompose(const HermiteFunction& f, int K, int m) {
  if (K < 0) throw Error(ErrorKind::ParameterDomain, "chaos degree K must be >= 0");
  if (m > 0 && m < K + 1)
    throw Error(ErrorKind::Exactness, "quadrature order " + std::to_string(m) + " is below K + 1 = " +
                                          std::to_string(K + 1));
  ChaosDecomposition d;
  d.n = f.dim();
  d.K = K;
  d.indices = multi_indices(d.n, K);
  d.coefficients.assign(d.indices.size(), 0.0);
  d.energies.assign(static_cast<std::size_t>(K) + 1, 0.0);

  if (f.expansion()) {
    d.method = "expansion";
    std::map<std::vector<int>, double> merged;
    for (const auto& t : f.expansion()->terms) merged[t.index] += t.coeff;
    double total = 0.0;
    bool beyond = false;
    for (const auto& [idx, c] : merged) {
      total += c * c;
      if (std::accumulate(idx.begin(), idx.end(), 0) > K && c != 0.0) beyond = true;
    }
    for (std::size_t i = 0; i < d.indices.size(); ++i) {
      auto it = merged.find(d.indices[i]);
      if (it != merged.end()) d.coefficients[i] = it->second;
    }
    d.norm_squared = total;
    d.finite = !beyond;
  } else if (d.n == 1) {
    d.method = "adaptive";
    for (std::size_t i = 0; i < d.indices.size(); ++i) {
      const int k = d.indices[i][0];
      d.coefficients[i] =
          gaussian_integral(1, [&](std::span<const double> x) { return f(x) * hermite_eval(k, x[0]); }, f.kinks());
    }
    d.norm_squared = gaussian_integral(1, [&](std::span<const double> x) { return f(x) * f(x); }, f.kinks());
    d.tolerance = 1e-11 * std::max(1.0, d.norm_squared);
  } else {
    d.method = "gauss-hermite";
    d.quadrature_order = m > 0 ? m : std::max(K + 1, default_gauss_order(d.n));
    HermiteGrid grid(d.quadrature_order, d.n);
    const auto values = f.node_values(grid);
    const auto proj = hermite_projection(grid, values, K);
    for (std::size_t i = 0; i < d.indices.size(); ++i) d.coefficients[i] = proj.terms[i].coeff;
    double s = 0.0;
    for (std::size_t j = 0; j < values.size(); ++j) s += grid.weights()[j] * values[j] * values[j];
    d.norm_squared = s;
    d.tolerance = 1e-10 * std::max(1.0, s);
  }

  for (std::size_t i = 0; i < d.indices.size(); ++i) {
    const int deg = std::accumulate(d.indices[i].begin(), d.indices[i].end(), 0);
    d.energies[static_cast<std::size_t>(deg)] += d.coefficients[i] * d.coefficients[i];
  }
  d.parseval_defect = d.norm_squared - std::accumulate(d.energies.begin(), d.energies.end(), 0.0);
  // no energy detectable beyond K
  if (std::fabs(d.parseval_defect) <= d.tolerance) d.finite = true;
  return d;
}

namespace {

double tail_energy(const ChaosDecomposition& d) { return std::max(0.0, d.parseval_defect) + d.tolerance; }

}  // namespace

Bracketed best_approx(const ChaosDecomposition& d, int N) {
  if (N < 0 || N > d.K + 1) throw Error(ErrorKind::ParameterDomain, "best_approx needs 0 <= N <= K + 1");
  double head = 0.0;
  for (int k = N; k <= d.K; ++k) head += d.energies[static_cast<std::size_t>(k)];
  if (d.finite) {
    const double v = std::sqrt(head);
    return {v, v, v};
  }
  const double lower = std::sqrt(head);
  const double upper = std::sqrt(head + tail_energy(d));
  return {std::sqrt(head + std::max(0.0, d.parseval_defect)), lower, upper};
}

Bracketed a_gamma2_from_chaos(const ChaosDecomposition& d, double t) {
  if (!(t > 0.0)) throw Error(ErrorKind::ParameterDomain, "a_gamma needs t > 0");
  double s = 0.0;
  for (int k = 1; k <= d.K; ++k) s += d.energies[static_cast<std::size_t>(k)] * -std::expm1(-static_cast<double>(k) * t);
  if (d.finite) {
    const double v = std::sqrt(2.0 * s);
    return {v, v, v};
  }
  const double tail = std::max(0.0, d.parseval_defect);
  const double low_factor = -std::expm1(-static_cast<double>(d.K + 1) * t);
  // the quadrature tolerance is charged against the lower end only
  const double lower = std::sqrt(2.0 * std::max(0.0, s + tail * low_factor - d.tolerance));
  return {std::sqrt(2.0 * (s + tail * low_factor)), lower, std::sqrt(2.0 * (s + tail_energy(d)))};
}

CheckReport jackson_stechkin_check(const ChaosDecomposition& d, int N, std::optional<double> sigma_lower) {
  if (N < 1) throw Error(ErrorKind::ParameterDomain, "Jackson-Stechkin check needs N >= 1");
  if (N > d.K + 1) throw Error(ErrorKind::InsufficientCoverage, "N exceeds K + 1 of the decomposition");
  const int order = N >= 2 ? N - 1 : 1;
  const double t = 2.0 * kPi / static_cast<double>(N);
  const auto E = best_approx(d, order);
  const auto a = a_gamma2_from_chaos(d, t);
  auto rep = inequality_report("jackson_stechkin", "Hermite best approximation bound", E.upper, 2.0 * a.lower, 1e-12);
  rep.inputs = {{"N", N}, {"approximation_order", order}, {"t", t}};
  rep.details["E"] = E.value;
  rep.details["a_gamma2"] = a.value;
  if (N == 1) rep.tail_flags.push_back("N = 1 uses E_1: E_0 includes the mean, which no modulus detects");
  if (!d.finite) rep.tail_flags.push_back("chaos tail beyond K bracketed by the Parseval defect");
  if (sigma_lower) {
    rep.details["sigma_lower"] = *sigma_lower;
    rep.details["sharpness_ratio"] = *sigma_lower > 0.0 ? E.value / *sigma_lower : kInf;
  }
  return rep;
}

CheckReport beta_bound_check(int N_max) {
  if (N_max < 1) throw Error(ErrorKind::ParameterDomain, "N_max must be >= 1");
  double worst = -kInf;
  int worst_N = 1;
  bool gamma_ratio_ok = true;
  for (int N = 1; N <= N_max; ++N) {
    const double x = 0.5 * N;
    const double lhs = log_beta(0.5 * (N + 1), 0.5);
    const double rhs = 0.5 * std::log(2.0 * kPi) - 0.5 * std::log(static_cast<double>(N));
    if (lhs - rhs > worst) {
      worst = lhs - rhs;
      worst_N = N;
    }
    // Gamma(x + 1/2) / Gamma(x) <= sqrt(x)
    if (std::lgamma(x + 0.5) - std::lgamma(x) > 0.5 * std::log(x)) gamma_ratio_ok = false;
  }
  CheckReport rep;
  rep.id = "beta_bound";
  rep.reference = "Beta function bound in the best approximation estimate";
  rep.inputs = {{"N_max", N_max}};
  rep.lhs = worst;
  rep.rhs = 0.0;
  rep.slack = -worst;
  rep.verdict = worst <= 0.0 && gamma_ratio_ok ? Verdict::Pass : Verdict::Fail;
  rep.details["worst_N"] = worst_N;
  rep.details["gamma_ratio_bound"] = gamma_ratio_ok;
  return rep;
}

CheckReport gradient_bound_check(int K, std::span<const double> t_grid) {
  double worst = 0.0;
  int worst_k = 0;
  double worst_t = 0.0;
  for (double t : t_grid) {
    if (!(t > 0.0)) throw Error(ErrorKind::ParameterDomain, "t must be positive");
    const double bound = std::exp(-t) / std::sqrt(-std::expm1(-2.0 * t));
    for (int k = 1; k <= K; ++k) {
      const double r = std::sqrt(static_cast<double>(k)) * std::exp(-static_cast<double>(k) * t) / bound;
      if (r > worst) {
        worst = r;
        worst_k = k;
        worst_t = t;
      }
    }
  }
  auto rep = inequality_report("gradient_bound", "OU gradient smoothing bound", worst, 1.0, 1e-12);
  rep.inputs = {{"K", K}, {"t_count", t_grid.size()}};
  rep.details["worst_k"] = worst_k;
  rep.details["worst_t"] = worst_t;
  return rep;
}

}  // namespace besov
