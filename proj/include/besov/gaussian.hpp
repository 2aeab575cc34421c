#pragma once

#include <optional>
#include <span>
#include <vector>

#include "besov/grid_function.hpp"
#include "besov/hermite.hpp"
#include "besov/report.hpp"

namespace besov {

/// C(p) = (int |s|^p dgamma_1(s))^{1/p} = sqrt(2) (Gamma((p+1)/2)/sqrt(pi))^{1/p}.
double gauss_constant(double p);
/// Same constant by quadrature of the defining integral.
double gauss_constant_quadrature(double p);

/// c_t = int_0^t e^{-tau} / sqrt(1 - e^{-2 tau}) dtau = pi/2 - asin(e^{-t}).
double c_t(double t);
double c_t_quadrature(double t);

/// Ornstein-Uhlenbeck semigroup. Expansion-backed functions are mapped
/// diagonally (coefficient times e^{-|a| t}); callables are integrated
/// pointwise (adaptive for n = 1, tensor Gauss-Hermite of order m otherwise).
HermiteFunction ou_semigroup(const HermiteFunction& f, double t, int m = 0);

/// a_{gamma,p}(f, t). For n = 1 (and m = 0) nested adaptive quadrature;
/// otherwise tensor Gauss-Hermite in 2n variables of order m.
double a_gamma(const HermiteFunction& f, double p, double t, int m = 0);

/// a_{gamma,p} on a grid of t (ModulusKind::AGamma over t, saturation 2||f||_p).
ModulusCurve a_gamma_curve(const HermiteFunction& f, double p, std::span<const double> t_grid, int m = 0);

/// Vector field with Hermite-coefficient components of per-axis degree <= K.
/// Coefficients are component-major: component i occupies
/// [i (K+1)^n, (i+1) (K+1)^n).
struct GaussianFieldCandidate {
  int n = 1;
  int K = 12;
  double q = 2.0;
  double eps = 1.0;
  int quadrature_order = 0;
  std::vector<double> coefficients;
  std::vector<double> divergence;  // at the tensor nodes
  double div_norm = 0.0;
  double field_norm = 0.0;
  double objective = 0.0;
  double mean_divergence = 0.0;    // int div_gamma Phi dgamma (zero in exact arithmetic)

  double ratio() const;
  nlohmann::json to_json() const;
};

struct SigmaGammaOptions {
  int K = 12;
  int budget = 200;
  int quadrature_order = 0;  // 0: 2K + 2
};

struct SigmaGammaResult {
  double value = 0.0;
  GaussianFieldCandidate field;
  int iterations = 0;
};

/// Lower bound for sigma_{gamma,p}(f, eps) by ascent over polynomial fields.
/// p = 1 is not supported: polynomial fields are unbounded unless constant.
SigmaGammaResult sigma_gamma_variational(const HermiteFunction& f, double p, double eps,
                                         const SigmaGammaOptions& options = {});

/// Gaussian divergence of the candidate at arbitrary points, computed from
/// the components directly as sum_i (d_i Psi_i - x_i Psi_i).
double gaussian_divergence_at(const GaussianFieldCandidate& field, std::span<const double> x);

/// (1 + C(q)) a_{gamma,p}(f, eps^2); p = 1 throws NotApplicable.
double sigma_gamma_upper(const HermiteFunction& f, double p, double eps, int m = 0);

/// Upper surrogate curve on eps_k = sqrt(t_k) from an a_gamma curve over t.
ModulusCurve sigma_gamma_upper_curve(const ModulusCurve& a_curve, double p, double f_norm);

ModulusCurve sigma_gamma_lower_curve(const HermiteFunction& f, double p, std::span<const double> eps_grid,
                                     const SigmaGammaOptions& options = {});

/// a(f,p,t) <= 2 sigma_up(C(p) c_t / 2); also records whether the lower
/// curve certifies the same inequality.
CheckReport a_gamma_upper_via_sigma(const HermiteFunction& f, double p, double t,
                                    const ModulusCurve* sigma_lower_curve = nullptr, int m = 0);

struct GaussianFunctionals {
  Bracketed V_upper;                // V from the upper surrogate curve
  std::optional<Bracketed> V_lower; // V from the variational lower curve
  Bracketed A;
  std::vector<CheckReport> checks;
};

/// V_gamma and A_gamma on a t grid with the equivalence checks
/// A <= 2^{1-alpha+1/theta} C(p)^alpha V and V <= 2^{-1/theta} (1+C(q)) A.
GaussianFunctionals gaussian_besov_functionals(const ModulusCurve& a_curve, double f_norm, const BesovParams& params,
                                               const ModulusCurve* sigma_lower_curve = nullptr);

/// a(u(f), t) <= 2^{1-alpha} (alpha theta)^{1/theta} L C(p)^alpha c_t^alpha V.
/// `kinks` are points (n = 1) where u(f(x)) may fail to be smooth.
CheckReport lipschitz_composition_check(const HermiteFunction& f, const std::function<double(double)>& u,
                                        double lipschitz, std::vector<double> kinks, const BesovParams& params,
                                        double t, double V_gamma, int m = 0);

/// ||T_t f||_{1+(p-1)e^{2t}} <= ||f||_p.
CheckReport hypercontractivity_check(const HermiteFunction& f, double p, double t);

/// Constants of the log-Sobolev-type bound.
double log_sobolev_C(double p, double theta, double alpha);
double log_sobolev_C1(double p, double theta, double alpha, double beta);
double log_sobolev_C2(double p, double theta, double alpha, double beta);

/// int |f|^p |ln(|f|/||f||_p)|^{p beta/2} dgamma <= C1 V^p + C2 ||f||_p^p.
CheckReport log_sobolev_embedding_check(const HermiteFunction& f, const BesovParams& params, double beta,
                                        double V_gamma);

}  // namespace besov
