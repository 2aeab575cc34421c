#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <json.hpp>

#include "besov/grid_function.hpp"

namespace besov {

/// Discrete vector field on the grid of a function f together with the
/// quantities entering the sigma ratio. The divergence is the forward
/// difference sum_i (Phi_i(x + h_i e_i) - Phi_i(x)) / h_i with zero
/// extension outside the array.
struct VectorFieldCandidate {
  std::vector<double> spacing;
  std::vector<double> origin;
  std::vector<std::size_t> shape;
  std::vector<std::vector<double>> components;
  std::vector<double> divergence;
  double q = 2.0;
  double eps = 1.0;
  double dual_q_norm_field = 0.0;
  double dual_q_norm_div = 0.0;
  double objective = 0.0;  // int div Phi * f

  /// objective / max(||div Phi||_q, ||Phi||_q / eps)
  double ratio() const;
  /// True when the components vanish on the outer cell layer.
  bool compactly_supported() const;

  nlohmann::json to_json() const;
  static VectorFieldCandidate from_json(const nlohmann::json& j);
};

/// Forward-difference divergence of `components` on the grid of f.
std::vector<double> forward_divergence(const GridFunction& f, const std::vector<std::vector<double>>& components);

/// Builds the candidate (divergence, norms, objective) for given components.
VectorFieldCandidate make_field_candidate(const GridFunction& f, std::vector<std::vector<double>> components,
                                          double p, double eps);

/// 2 (1 + sqrt(n) + n), the constant of the upper estimate by omega.
double sigma_upper_constant(int n);

/// 2 (1 + sqrt(n) + n) omega_p(f, eps) read from an omega curve.
double sigma_upper(const GridFunction& f, double p, double eps, const ModulusCurve& omega);

/// The same surrogate on the whole omega grid (bound = upper).
ModulusCurve sigma_upper_curve(const GridFunction& f, double p, const ModulusCurve& omega);

/// Scalar test function psi for the directional modulus along a primitive
/// lattice direction d: D_d psi(x) = (psi(x + d) - psi(x)) / |d|.
struct DirectionalField {
  std::vector<std::ptrdiff_t> direction;  // primitive lattice vector (cells)
  double step = 0.0;                      // |d| in physical units
  std::vector<double> psi;
  double objective = 0.0;
  double d_norm = 0.0;      // ||D_d psi||_q
  double field_norm = 0.0;  // ||psi||_q
  double length = 0.0;      // |h|
  double value = 0.0;       // objective / max(d_norm, field_norm / |h|)
  double half_shift_norm = 0.0;  // ||f_{2h} - f||_p / 2
  bool smoothed = false;
};

/// Explicit feasible field from the dual witness of ||f_{2h} - f||_p for a
/// lattice shift h (in cells).
DirectionalField constructive_field(const GridFunction& f, double p, std::span<const std::ptrdiff_t> h_cells);

/// Certified lower bound for the directional modulus at |h| (h snapped to
/// the lattice); at least ||f_{2h} - f||_p / 2.
double sigma_constructive(const GridFunction& f, double p, std::span<const double> h);

struct SigmaResult {
  double value = 0.0;
  VectorFieldCandidate field;
  int iterations = 0;
  double constructive = 0.0;  // best constructive start value
};

/// Lower bound for sigma_p(f, eps) by ratio ascent over grid fields,
/// started from the constructive axis fields.
SigmaResult sigma_variational(const GridFunction& f, double p, double eps, int budget);

/// Lower bound for the directional modulus along the unit vector e, which
/// must be parallel to a lattice direction with entries of size <= 4.
double sigma_tilde_variational(const GridFunction& f, double p, double eps, std::span<const double> e, int budget);

/// Running maximum followed by the least concave majorant through (0, 0);
/// still a lower bound for a concave nondecreasing modulus.
ModulusCurve concave_envelope(const ModulusCurve& curve);

/// Variational sigma on a grid of scales, post-processed by concave_envelope.
ModulusCurve sigma_curve_variational(const GridFunction& f, double p, std::span<const double> eps_grid, int budget);

struct ShapeCheck {
  bool nondecreasing = true;
  bool concave = true;
  bool subadditive = true;
  double worst_violation = 0.0;  // relative
};

/// Monotonicity, concavity (non-uniform divided differences) and
/// subadditivity on a sampled curve, with relative tolerance.
ShapeCheck check_curve_shape(std::span<const double> s, std::span<const double> v, double rel_tol);

/// sigma*(s) = s sigma(1/s) on the reciprocal grid.
struct AdjointCurve {
  std::vector<double> s_grid;
  std::vector<double> values;
  ShapeCheck shape;
};

AdjointCurve adjoint_transform(const ModulusCurve& curve, double rel_tol = 1e-6);

/// V (or V-tilde for a directional curve) by log-grid quadrature. Beyond
/// the grid the curve is bounded by `large_scale_bound` (defaults to the
/// curve saturation); below it concavity gives linear decay.
Bracketed V_functional(const ModulusCurve& sigma_curve, const BesovParams& params, double large_scale_bound = -1.0);

}  // namespace besov
