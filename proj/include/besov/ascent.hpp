#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace besov {

/// Ratio maximization shared by the sigma-type moduli:
///   R(x) = <b, x> / max(||D x||_q, ||F x||_q / eps)
/// with D a linear "divergence" map and F a linear field map whose output is
/// `field_points` blocks of `field_components` values (Euclidean length per
/// point). Norms are weighted L^q norms; q = inf ignores weights except that
/// zero-weight points are skipped.
struct RatioProblem {
  std::size_t dim = 0;
  std::vector<double> objective;  // b

  std::size_t div_size = 0;
  std::function<void(const std::vector<double>&, std::vector<double>&)> div;          // out = D x
  std::function<void(const std::vector<double>&, std::vector<double>&)> div_adjoint;  // out = D^T w
  std::vector<double> div_weights;

  std::size_t field_points = 0;
  std::size_t field_components = 1;
  std::function<void(const std::vector<double>&, std::vector<double>&)> field;          // empty: identity
  std::function<void(const std::vector<double>&, std::vector<double>&)> field_adjoint;  // empty: identity
  std::vector<double> field_weights;

  /// Variables with mask 0 stay at zero; empty mask means all free.
  std::vector<char> free_mask;

  double q = 2.0;
  double eps = 1.0;

  /// For q = inf with the identity field map: trial steps are clipped
  /// pointwise to the current sup of |x|.
  bool clip_field_sup = false;
};

struct RatioState {
  std::vector<double> x;
  double value = 0.0;       // R(x)
  double objective = 0.0;   // <b, x>
  double div_norm = 0.0;    // ||D x||_q
  double field_norm = 0.0;  // ||F x||_q
};

/// Evaluates R at x without rescaling.
RatioState evaluate_ratio(const RatioProblem& problem, std::vector<double> x);

struct AscentResult {
  RatioState best;  // rescaled so that max(||Dx||, ||Fx||/eps) = 1
  int iterations = 0;
};

/// Gradient ascent on R with backtracking, starting from x0 (or b when x0
/// is zero). Deterministic; a larger budget replays the same iterates and
/// never returns a smaller value.
AscentResult maximize_ratio(const RatioProblem& problem, std::vector<double> x0, int budget);

}  // namespace besov
