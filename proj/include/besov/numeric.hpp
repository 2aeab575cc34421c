#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace besov {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// Dual exponent q = p/(p-1); q = inf for p = 1 and q = 1 for p = inf.
double dual_exponent(double p);

/// |x|^p with fast paths for the exponents used most often.
inline double abs_pow(double x, double p) {
  const double a = std::fabs(x);
  if (p == 1.0) return a;
  if (p == 2.0) return a * a;
  if (p == 3.0) return a * a * a;
  if (a == 0.0) return 0.0;
  return std::pow(a, p);
}

/// Weighted L^q norm (sum_j w_j |v_j|^q)^{1/q}; q = inf ignores weights
/// (except that zero-weight entries are skipped).
double weighted_norm(std::span<const double> v, std::span<const double> w, double q);

/// Geometric grid s_k = lo * ratio^k, k = 0.., with the last point the
/// first one >= hi.
std::vector<double> geometric_grid(double lo, double hi, double ratio);

/// `count` log-spaced points from lo to hi inclusive.
std::vector<double> log_spaced(double lo, double hi, std::size_t count);

/// Adaptive Gauss-Kronrod quadrature of a smooth-by-pieces integrand on
/// [a, b]; breakpoints inside (a, b) split the interval. b may be +inf.
double integrate(const std::function<double(double)>& fn, double a, double b, double rel_tol = 1e-10,
                 std::span<const double> breakpoints = {}, unsigned max_depth = 25);

/// Quadrature with endpoint singularities (tanh-sinh).
double integrate_singular(const std::function<double(double)>& fn, double a, double b,
                          double rel_tol = 1e-12);

/// ln B(x, y) via log-gamma.
double log_beta(double x, double y);

}  // namespace besov
