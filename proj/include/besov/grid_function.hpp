#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "besov/numeric.hpp"

namespace besov {

/// Axis-aligned box [lo, hi] in R^n.
struct Box {
  std::vector<double> lo;
  std::vector<double> hi;

  int dim() const { return static_cast<int>(lo.size()); }
  double diameter() const;
  double volume() const;
  bool operator==(const Box&) const = default;
};

/// Exponents of the Besov scale. theta = +inf is the Nikolskii-Besov case.
struct BesovParams {
  double alpha = 0.5;
  double p = 1.0;
  double theta = 2.0;

  bool theta_infinite() const { return std::isinf(theta); }
  double q() const { return dual_exponent(p); }
  void validate() const;
};

/// Real function sampled at the cell centres of a uniform grid in R^n,
/// n in {1, 2, 3}. Values are stored row-major (last axis fastest) and
/// vanish on the outermost layer of cells.
class GridFunction {
 public:
  GridFunction(std::vector<double> spacing, std::vector<double> origin, std::vector<std::size_t> shape,
               std::vector<double> values, Box support);

  /// Samples `fn` at cell centres inside `support`; cells outside are zero.
  /// The grid covers `support` enlarged by `padding` on each side, with
  /// cell edges aligned to `support.lo`.
  static GridFunction sample(const std::function<double(std::span<const double>)>& fn, const Box& support,
                             const std::vector<double>& spacing, const std::vector<double>& padding);

  /// Same grid, all values zero.
  static GridFunction zeros_like(const GridFunction& other);

  int dim() const { return static_cast<int>(shape_.size()); }
  const std::vector<double>& spacing() const { return spacing_; }
  const std::vector<double>& origin() const { return origin_; }
  const std::vector<std::size_t>& shape() const { return shape_; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& mutable_values() { return values_; }
  const Box& support() const { return support_; }

  std::size_t size() const { return values_.size(); }
  std::size_t stride(int axis) const { return strides_[static_cast<std::size_t>(axis)]; }
  double cell_volume() const;
  double min_spacing() const;
  double max_spacing() const;

  /// Multi-index of a flat position.
  void unravel(std::size_t flat, std::span<std::ptrdiff_t> index) const;
  /// Cell-centre coordinates of a flat position.
  void point(std::size_t flat, std::span<double> x) const;
  bool on_boundary(std::size_t flat) const;

  /// Smallest index box containing every nonzero value; empty if f = 0.
  struct IndexBox {
    std::vector<std::ptrdiff_t> lo;
    std::vector<std::ptrdiff_t> hi;  // inclusive
    bool empty = true;
  };
  IndexBox nonzero_box() const;
  bool is_zero() const;

  GridFunction with_values(std::vector<double> values) const;
  GridFunction scaled(double c) const;
  /// Adds `cells[axis]` zero cells on both sides of every axis.
  GridFunction padded(const std::vector<std::size_t>& cells) const;

  /// Integral of f over the grid (midpoint rule).
  double integral() const;

  bool same_grid(const GridFunction& other) const;

  nlohmann::json to_json() const;
  static GridFunction from_json(const nlohmann::json& j);

 private:
  void validate() const;

  std::vector<double> spacing_;
  std::vector<double> origin_;
  std::vector<std::size_t> shape_;
  std::vector<std::size_t> strides_;
  std::vector<double> values_;
  Box support_;
};

enum class ModulusKind { Omega, Sigma, SigmaTilde, AGamma, SigmaGamma };
enum class BoundType { Exact, Lower, Upper };

const char* to_string(ModulusKind kind);
const char* to_string(BoundType bound);
ModulusKind modulus_kind_from_string(const std::string& s);
BoundType bound_type_from_string(const std::string& s);

/// A modulus of continuity sampled on an increasing eps-grid.
struct ModulusCurve {
  std::vector<double> eps;
  std::vector<double> values;
  ModulusKind kind = ModulusKind::Omega;
  BoundType bound = BoundType::Exact;
  /// Bound valid for every eps beyond the grid (e.g. the saturation value).
  std::optional<double> saturation;

  std::size_t size() const { return eps.size(); }
  void validate() const;

  /// Upper bound at an arbitrary scale for a concave nondecreasing modulus
  /// whose grid values are upper bounds: min(u_{k+1}, s * u_k / eps_k).
  double upper_at(double s) const;
  /// Lower bound at an arbitrary scale for a concave nondecreasing modulus
  /// whose grid values are lower bounds (chord below the curve).
  double lower_at(double s) const;
  /// Piecewise-linear interpolation (no bound semantics).
  double interpolate(double s) const;

  nlohmann::json to_json() const;
  static ModulusCurve from_json(const nlohmann::json& j);
};

/// Value with a bracket: lower <= true value <= upper under the stated tail
/// models.
struct Bracketed {
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

/// L^p(lambda^n) norm by the midpoint rule; p = inf gives max |f|.
double lp_norm(const GridFunction& f, double p);

/// f_h(x) = f(x - h) with h snapped to the nearest lattice vector.
GridFunction shift(const GridFunction& f, std::span<const double> h);
/// Shift by an integer lattice vector.
GridFunction shift_cells(const GridFunction& f, std::span<const std::ptrdiff_t> cells);

/// ||f_h - f||_p for a lattice vector h (in cells), computed on the union
/// of supports; no grid room is needed.
double shift_difference_norm(const GridFunction& f, double p, std::span<const std::ptrdiff_t> cells);

struct OmegaValue {
  double value = 0.0;
  bool unresolved = false;  // eps below one grid cell
};

/// Exhaustive table of ||f_h - f||_p over lattice shifts; answers omega
/// queries at any scale exactly for the lattice-restricted supremum.
class ShiftProfile {
 public:
  ShiftProfile(const GridFunction& f, double p, double max_radius = kInf);

  OmegaValue omega(double eps) const;
  /// Lattice shift (cells) attaining the maximum of ||f_h - f|| over |h| <= eps.
  std::vector<std::ptrdiff_t> argmax(double eps) const;
  double norm() const { return norm_; }
  double p() const { return p_; }

 private:
  struct Entry {
    double length;
    double value;
    std::vector<std::ptrdiff_t> cells;
  };
  std::vector<Entry> entries_;      // sorted by length
  std::vector<std::size_t> best_;   // prefix argmax index into entries_
  double norm_ = 0.0;
  double p_ = 1.0;
  double min_spacing_ = 0.0;
  double disjoint_length_ = kInf;   // shifts at least this long separate supports
  double disjoint_value_ = 0.0;
  double max_radius_ = kInf;
};

/// omega_p(f, eps) = sup over lattice |h| <= eps of ||f_h - f||_p.
OmegaValue omega_p(const GridFunction& f, double p, double eps);

/// omega curve on a grid of scales; bound = lower (lattice restriction).
ModulusCurve omega_curve(const GridFunction& f, double p, std::span<const double> eps_grid);

struct HeatOptions {
  double tail_cutoff = 1e-12;  // Gaussian mass dropped beyond the kernel radius
};

/// Heat semigroup P_t f by direct separable Gaussian convolution.
GridFunction heat_semigroup(const GridFunction& f, double t, const HeatOptions& options = {});

/// Default log grid for the s-integral: [10 * spacing, 10 * diam(support)],
/// ratio 2^{1/8}.
std::vector<double> default_scale_grid(const GridFunction& f, double ratio = std::pow(2.0, 0.125));

/// Tail models for the log-grid functional below.
struct TailModel {
  /// Rigorous bound for the modulus at every scale beyond the grid.
  double large_scale_bound = kInf;
  /// Lower bound factor for small scales: m(s) >= factor * m(s0) * s / s0.
  double small_scale_factor = 0.5;
};

/// (int_0^inf [s^{-alpha} m(s)]^theta ds/s)^{1/theta} for a modulus m
/// sampled on a log grid (trapezoid in log s), with tail brackets.
Bracketed log_grid_functional(const ModulusCurve& curve, const BesovParams& params, const TailModel& tails);

/// ||f||_{alpha,p,theta} from an omega curve.
Bracketed besov_seminorm(const GridFunction& f, const BesovParams& params, const ModulusCurve& omega);

}  // namespace besov
