#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "besov/grid_function.hpp"
#include "besov/report.hpp"
#include "besov/sigma.hpp"

namespace besov {

/// Surface area of the unit sphere in R^n.
double nu_n(int n);

struct EmbeddingConstant {
  int n = 1;
  double p = 1.0;
  double nu = 2.0;
  double value = 1.0;
};

/// C(n, p) = 1 + nu_n^{-1/p} (n/p - 1)^{1/p - 1} for p in [1, n); 1 for n = p = 1.
EmbeddingConstant embedding_constant(int n, double p);

/// Gradient of the Newtonian potential of u, discretized so that the
/// forward-difference divergence reproduces u: component i is sampled at
/// the lower face of each cell along axis i.
struct NewtonianField {
  VectorFieldCandidate field;
  double divergence_defect = 0.0;  // ||div Phi - u||_1 over interior cells
  double u_l1 = 0.0;
  double field_norm_upper = 0.0;   // grid norm plus analytic bound for the region outside the grid
  double constant_bound = 0.0;     // C(n,p) ||u||_1^{p/n}
};

NewtonianField newtonian_gradient_field(const GridFunction& u, int n, double p);

/// Checks int u f <= C(n,p) sigma_p(f, ||u||_1^{p/n}) with the upper surrogate.
CheckReport newtonian_feasibility_check(const GridFunction& f, const GridFunction& u, double p,
                                        const ModulusCurve& sigma_upper_curve);

/// (int_A |f|^p)^{1/p} <= C(n,p) sigma_p(f, lambda(A)^{1/n}).
CheckReport local_energy_check(const GridFunction& f, const std::vector<char>& mask, double p,
                               const ModulusCurve& sigma_upper_curve);

/// For n = p = 1: least-squares slope of log(sigma(t)/t) against log t over
/// curve points in [min_scale, 4 min_scale]. The hypothesis
/// t^{-1} sigma(t) -> inf is treated as plausible when the slope is at most
/// -0.1. Checks pass min_scale = 16 grid cells to stay clear of lattice steps.
struct HypothesisDiagnostic {
  bool plausible = true;
  double slope = 0.0;
};
HypothesisDiagnostic small_scale_growth_diagnostic(const ModulusCurve& sigma_curve, double min_scale);

/// lambda(|f| >= C(n,p) t sigma_p(f, t^{-p/n})) <= t^{-p} on a grid of t.
CheckReport tail_measure_check(const GridFunction& f, double p, const std::vector<double>& t_grid,
                               const ModulusCurve& sigma_upper_curve);

/// Nondecreasing continuous weight U with optional structural flags.
struct MonotoneWeight {
  std::string name;
  std::function<double(double)> fn;
  bool strictly_increasing = false;
  bool zero_at_origin = false;
  /// (a, r): U(t) <= a t^p on (0, r) for the exponent p passed to verify.
  std::optional<std::pair<double, double>> growth;

  double operator()(double t) const { return fn(t); }
  /// Samples U on [0, t_max] and verifies monotonicity and the flags;
  /// throws InvalidWeight on failure.
  void verify(double p, double t_max) const;
};

struct StieltjesResult {
  double value = 0.0;
  int intervals = 0;
  bool converged = false;
};

/// int_N^T g dU by midpoint Riemann-Stieltjes sums, doubling the grid
/// until successive sums agree to relative 1e-6.
StieltjesResult stieltjes_integral(const MonotoneWeight& U, const std::function<double(double)>& g, double N,
                                   double T);

/// int |f|^p U(min(|f|/||f||_p, T)) <= C^p int_N^T sigma(s^{-p/n})^p dU(s) + U(N) ||f||_p^p
/// with T = max |f| / ||f||_p, so the left side is the full integral.
CheckReport ulyanov_LU_check(const GridFunction& f, double p, const MonotoneWeight& U, double N,
                             const ModulusCurve& sigma_upper_curve);

/// int U(|f|) <= a ||f||_p^p + max(0, U(C v*(N)) - U(r)) r^{-p} ||f||_p^p
///               + int_N^T s^{-1-p} U(C s sigma(s^{-p/n})) ds,
/// truncated where C s sigma(s^{-p/n}) exceeds max |f| (or at a cap, flagged).
/// The details carry the change-of-variables cross-check of the integral.
CheckReport ulyanov_U_check(const GridFunction& f, double p, const MonotoneWeight& U, double N,
                            const ModulusCurve& sigma_upper_curve);

/// int_N^T t^{-1-p} U(C t sigma(t^{-p/n})) dt computed in the t variable
/// and, separately, as (n/p) int s^{-1-n} U(C s^{n/p-1} sigma*(s)) ds.
struct ChangeOfVariables {
  double t_form = 0.0;
  double s_form = 0.0;
  double relative_gap = 0.0;
};
ChangeOfVariables ulyanov_change_of_variables(int n, double p, const MonotoneWeight& U, double N, double T,
                                              const ModulusCurve& sigma_upper_curve);

}  // namespace besov
