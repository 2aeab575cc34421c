#include "besov/numeric.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "besov/error.hpp"

namespace besov {

double dual_exponent(double p) {
  if (!(p >= 1.0)) throw Error(ErrorKind::ParameterDomain, "exponent p must be >= 1");
  if (p == 1.0) return kInf;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

double weighted_norm(std::span<const double> v, std::span<const double> w, double q) {
  if (std::isinf(q)) {
    double m = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j)
      if (w.empty() || w[j] > 0.0) m = std::max(m, std::fabs(v[j]));
    return m;
  }
  double s = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) s += (w.empty() ? 1.0 : w[j]) * abs_pow(v[j], q);
  return q == 1.0 ? s : (q == 2.0 ? std::sqrt(s) : std::pow(s, 1.0 / q));
}

std::vector<double> geometric_grid(double lo, double hi, double ratio) {
  if (!(lo > 0.0) || !(hi >= lo) || !(ratio > 1.0))
    throw Error(ErrorKind::ParameterDomain, "geometric grid needs 0 < lo <= hi and ratio > 1");
  std::vector<double> out;
  for (std::size_t k = 0;; ++k) {
    const double s = lo * std::pow(ratio, static_cast<double>(k));
    out.push_back(s);
    if (s >= hi * (1.0 - 1e-12)) break;
  }
  return out;
}

std::vector<double> log_spaced(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2)
    throw Error(ErrorKind::ParameterDomain, "log_spaced needs 0 < lo < hi and count >= 2");
  std::vector<double> out(count);
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (std::size_t k = 0; k < count; ++k)
    out[k] = std::exp(a + (b - a) * static_cast<double>(k) / static_cast<double>(count - 1));
  out.front() = lo;
  out.back() = hi;
  return out;
}

double integrate(const std::function<double(double)>& fn, double a, double b, double rel_tol,
                 std::span<const double> breakpoints, unsigned max_depth) {
  using boost::math::quadrature::gauss_kronrod;
  std::vector<double> cuts{a};
  for (double c : breakpoints)
    if (c > a && c < b) cuts.push_back(c);
  std::sort(cuts.begin() + 1, cuts.end());
  cuts.push_back(b);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] <= cuts[i]) continue;
    total += gauss_kronrod<double, 31>::integrate(fn, cuts[i], cuts[i + 1], max_depth, rel_tol);
  }
  return total;
}

double integrate_singular(const std::function<double(double)>& fn, double a, double b, double rel_tol) {
  boost::math::quadrature::tanh_sinh<double> rule;
  // rebuild x from the endpoint distance so a singular endpoint is never hit exactly
  return rule.integrate([&](double, double xc) { return fn(xc < 0.0 ? a - xc : b - xc); }, a, b, rel_tol);
}

double log_beta(double x, double y) { return std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y); }

}  // namespace besov
