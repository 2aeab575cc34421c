#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace besov {

/// Normalized probabilists' Hermite polynomial h_k (unit norm in L^2(gamma_1)).
double hermite_eval(int k, double x);

/// h_0(x), ..., h_K(x) into out (size K + 1).
void hermite_table(int K, double x, std::span<double> out);

/// Tensor Gauss-Hermite rule for the standard Gaussian measure gamma_n.
/// Weights are normalized to sum to 1 per axis. Flat node index is
/// row-major (last axis fastest).
class HermiteGrid {
 public:
  HermiteGrid(int m, int n);

  int m() const { return m_; }
  int n() const { return n_; }
  std::size_t size() const { return weights_.size(); }

  const std::vector<double>& nodes_1d() const { return nodes1_; }
  const std::vector<double>& weights_1d() const { return weights1_; }
  const std::vector<double>& weights() const { return weights_; }

  void node(std::size_t flat, std::span<double> x) const;

 private:
  int m_;
  int n_;
  std::vector<double> nodes1_;
  std::vector<double> weights1_;
  std::vector<double> weights_;
};

/// Default tensor order per dimension for quadrature of smooth integrands.
int default_gauss_order(int n);

struct HermiteTerm {
  std::vector<int> index;
  double coeff = 0.0;
};

/// Finite combination of tensor Hermite basis functions.
struct HermiteExpansion {
  int n = 1;
  std::vector<HermiteTerm> terms;

  double operator()(std::span<const double> x) const;
  /// Largest total degree with a nonzero coefficient (0 for the zero function).
  int degree() const;
  /// Largest single-axis degree.
  int axis_degree() const;
  double l2_norm() const;

  static HermiteExpansion basis(std::vector<int> index, double coeff = 1.0);
};

/// Function on (R^n, gamma_n). Either callable-backed (closed form) or
/// backed by a finite Hermite expansion, which is then also the callable.
/// For n = 1 callables may list kink locations; one-dimensional integrals
/// are split there.
/// Box outside which a function vanishes.
struct Support {
  std::vector<double> lo;
  std::vector<double> hi;
};

class HermiteFunction {
 public:
  using Callable = std::function<double(std::span<const double>)>;

  HermiteFunction(int n, Callable fn, std::vector<double> kinks = {});
  explicit HermiteFunction(HermiteExpansion expansion);
  /// Node values on a grid, stored as given; off-node evaluation goes
  /// through the projection onto degrees <= K per axis.
  static HermiteFunction from_node_values(const HermiteGrid& grid, std::vector<double> values, int K);

  int dim() const { return n_; }
  double operator()(std::span<const double> x) const { return fn_(x); }
  double at(double x) const;

  const std::optional<HermiteExpansion>& expansion() const { return expansion_; }
  const std::vector<double>& kinks() const { return kinks_; }
  const std::optional<Support>& support() const { return support_; }
  /// Declares that f vanishes outside `box`; enables box quadrature for n >= 2.
  HermiteFunction with_support(Support box) const;

  std::vector<double> node_values(const HermiteGrid& grid) const;

  HermiteFunction scaled(double c) const;
  /// u(f(x)); the expansion is dropped. Extra kinks may be supplied for n = 1.
  HermiteFunction composed(const std::function<double(double)>& u, std::vector<double> kinks = {}) const;

  /// {n, m, degree, coefficients} when an expansion exists, else
  /// {n, m, node_values} on the given grid.
  nlohmann::json to_json(const HermiteGrid& grid) const;

 private:
  int n_ = 1;
  Callable fn_;
  std::optional<HermiteExpansion> expansion_;
  std::vector<double> kinks_;
  std::optional<Support> support_;
};

/// Multi-indices in n variables with total degree <= K, ordered by degree
/// and then lexicographically.
std::vector<std::vector<int>> multi_indices(int n, int K);

/// Applies the rows x dims[axis] matrix M (row-major) along `axis` of a
/// row-major tensor with extents `dims`; dims[axis] becomes `rows`.
std::vector<double> tensor_apply(const std::vector<double>& in, std::vector<std::size_t>& dims, int axis,
                                 const std::vector<double>& M, std::size_t rows);

/// Per-axis Hermite coefficients c_a = sum_j w_j v_j H_a(x_j), a_i <= K, as
/// a row-major tensor with extent K + 1 per axis. Needs m >= K + 1.
std::vector<double> hermite_coefficient_tensor(const HermiteGrid& grid, std::span<const double> values, int K);

/// Projection of node values onto total degree <= K.
HermiteExpansion hermite_projection(const HermiteGrid& grid, std::span<const double> values, int K);

/// Integral of g against gamma_n. For n = 1 adaptive Gauss-Kronrod split at
/// the kinks; otherwise tensor Gauss-Hermite of order m (0: default).
double gaussian_integral(int n, const std::function<double(std::span<const double>)>& g,
                         std::span<const double> kinks = {}, int m = 0, double rel_tol = 1e-12);

/// int_box g(w) prod_i phi((w_i - c_i) / s) / s dw with phi the standard
/// normal density: composite 20-point Gauss-Legendre on the window
/// c +- 9 s clipped to the box, at least 6 panels per axis.
double box_gaussian_integral(int n, const std::function<double(std::span<const double>)>& g, const Support& box,
                             std::span<const double> center, double width);

/// ||f||_{L^p(gamma_n)}; box quadrature when n >= 2 and f has a support; p = inf gives the maximum over the default nodes.
double gaussian_lp_norm(const HermiteFunction& f, double p, int m = 0);

}  // namespace besov
