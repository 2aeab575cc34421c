#include "besov/hermite.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/gauss.hpp>

#include "besov/error.hpp"
#include "besov/numeric.hpp"

namespace besov {

double hermite_eval(int k, double x) {
  if (k < 0) throw Error(ErrorKind::ParameterDomain, "Hermite degree must be >= 0");
  double prev = 0.0, cur = 1.0;
  for (int j = 0; j < k; ++j) {
    const double next = (x * cur - std::sqrt(static_cast<double>(j)) * prev) / std::sqrt(static_cast<double>(j + 1));
    prev = cur;
    cur = next;
  }
  return cur;
}

void hermite_table(int K, double x, std::span<double> out) {
  out[0] = 1.0;
  if (K >= 1) out[1] = x;
  for (int j = 1; j < K; ++j)
    out[j + 1] = (x * out[j] - std::sqrt(static_cast<double>(j)) * out[j - 1]) / std::sqrt(static_cast<double>(j + 1));
}

HermiteGrid::HermiteGrid(int m, int n) : m_(m), n_(n) {
  if (m < 1 || m > 400) throw Error(ErrorKind::ParameterDomain, "Gauss-Hermite order must be in [1, 400]");
  if (n < 1 || n > 3) throw Error(ErrorKind::ParameterDomain, "Gaussian dimension must be 1, 2 or 3");

  // Golub-Welsch on the Jacobi matrix of the normalized recurrence.
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(m, m);
  for (int k = 1; k < m; ++k) J(k, k - 1) = J(k - 1, k) = std::sqrt(static_cast<double>(k));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(J);
  nodes1_.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) nodes1_[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);

  // Newton polish on h_m, then weights 1 / sum_k h_k(x)^2 (Christoffel).
  std::vector<double> h(static_cast<std::size_t>(m) + 1);
  weights1_.resize(static_cast<std::size_t>(m));
  for (std::size_t i = 0; i < nodes1_.size(); ++i) {
    double x = nodes1_[i];
    for (int it = 0; it < 4; ++it) {
      hermite_table(m, x, h);
      const double dh = std::sqrt(static_cast<double>(m)) * h[static_cast<std::size_t>(m) - 1];
      if (dh == 0.0) break;
      x -= h[static_cast<std::size_t>(m)] / dh;
    }
    nodes1_[i] = x;
  }
  for (std::size_t i = 0; i < nodes1_.size() / 2; ++i) {
    const double a = 0.5 * (nodes1_[nodes1_.size() - 1 - i] - nodes1_[i]);
    nodes1_[i] = -a;
    nodes1_[nodes1_.size() - 1 - i] = a;
  }
  if (m % 2 == 1) nodes1_[static_cast<std::size_t>(m / 2)] = 0.0;
  for (std::size_t i = 0; i < nodes1_.size(); ++i) {
    hermite_table(m - 1, nodes1_[i], h);
    double s = 0.0;
    for (int k = 0; k < m; ++k) s += h[static_cast<std::size_t>(k)] * h[static_cast<std::size_t>(k)];
    weights1_[i] = 1.0 / s;
  }
  const double total = std::accumulate(weights1_.begin(), weights1_.end(), 0.0);
  for (double& w : weights1_) w /= total;

  std::size_t N = 1;
  for (int a = 0; a < n; ++a) N *= static_cast<std::size_t>(m);
  weights_.assign(N, 1.0);
  for (std::size_t flat = 0; flat < N; ++flat) {
    std::size_t r = flat;
    for (int a = n - 1; a >= 0; --a) {
      weights_[flat] *= weights1_[r % static_cast<std::size_t>(m)];
      r /= static_cast<std::size_t>(m);
    }
  }
}

void HermiteGrid::node(std::size_t flat, std::span<double> x) const {
  for (int a = n_ - 1; a >= 0; --a) {
    x[static_cast<std::size_t>(a)] = nodes1_[flat % static_cast<std::size_t>(m_)];
    flat /= static_cast<std::size_t>(m_);
  }
}

int default_gauss_order(int n) {
  switch (n) {
    case 1: return 96;
    case 2: return 32;
    default: return 14;
  }
}

double HermiteExpansion::operator()(std::span<const double> x) const {
  double s = 0.0;
  for (const auto& t : terms) {
    double v = t.coeff;
    for (int a = 0; a < n; ++a) v *= hermite_eval(t.index[static_cast<std::size_t>(a)], x[static_cast<std::size_t>(a)]);
    s += v;
  }
  return s;
}

int HermiteExpansion::degree() const {
  int d = 0;
  for (const auto& t : terms)
    if (t.coeff != 0.0) d = std::max(d, std::accumulate(t.index.begin(), t.index.end(), 0));
  return d;
}

int HermiteExpansion::axis_degree() const {
  int d = 0;
  for (const auto& t : terms)
    if (t.coeff != 0.0) d = std::max(d, *std::max_element(t.index.begin(), t.index.end()));
  return d;
}

double HermiteExpansion::l2_norm() const {
  double s = 0.0;
  for (const auto& t : terms) s += t.coeff * t.coeff;
  return std::sqrt(s);
}

HermiteExpansion HermiteExpansion::basis(std::vector<int> index, double coeff) {
  HermiteExpansion e;
  e.n = static_cast<int>(index.size());
  e.terms.push_back({std::move(index), coeff});
  return e;
}

HermiteFunction::HermiteFunction(int n, Callable fn, std::vector<double> kinks)
    : n_(n), fn_(std::move(fn)), kinks_(std::move(kinks)) {
  if (n < 1 || n > 3) throw Error(ErrorKind::ParameterDomain, "Gaussian dimension must be 1, 2 or 3");
  std::sort(kinks_.begin(), kinks_.end());
}

HermiteFunction::HermiteFunction(HermiteExpansion expansion) : n_(expansion.n), expansion_(std::move(expansion)) {
  if (n_ < 1 || n_ > 3) throw Error(ErrorKind::ParameterDomain, "Gaussian dimension must be 1, 2 or 3");
  for (const auto& t : expansion_->terms)
    if (static_cast<int>(t.index.size()) != n_ || *std::min_element(t.index.begin(), t.index.end()) < 0)
      throw Error(ErrorKind::InvalidInput, "Hermite multi-index has wrong length or a negative entry");
  fn_ = [e = *expansion_](std::span<const double> x) { return e(x); };
}

HermiteFunction HermiteFunction::from_node_values(const HermiteGrid& grid, std::vector<double> values, int K) {
  if (values.size() != grid.size()) throw Error(ErrorKind::InvalidInput, "node value count does not match the grid");
  for (double v : values)
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidInput, "node values must be finite");
  return HermiteFunction(hermite_projection(grid, values, K));
}

double HermiteFunction::at(double x) const {
  const double a[1] = {x};
  return fn_(a);
}

std::vector<double> HermiteFunction::node_values(const HermiteGrid& grid) const {
  if (grid.n() != n_) throw Error(ErrorKind::InvalidInput, "grid dimension does not match the function");
  std::vector<double> out(grid.size());
  std::vector<double> x(static_cast<std::size_t>(n_));
  for (std::size_t j = 0; j < grid.size(); ++j) {
    grid.node(j, x);
    out[j] = fn_(x);
  }
  return out;
}

HermiteFunction HermiteFunction::with_support(Support box) const {
  if (box.lo.size() != static_cast<std::size_t>(n_) || box.hi.size() != static_cast<std::size_t>(n_))
    throw Error(ErrorKind::InvalidInput, "support box has the wrong dimension");
  for (int i = 0; i < n_; ++i)
    if (!(box.lo[static_cast<std::size_t>(i)] < box.hi[static_cast<std::size_t>(i)]) ||
        !std::isfinite(box.lo[static_cast<std::size_t>(i)]) || !std::isfinite(box.hi[static_cast<std::size_t>(i)]))
      throw Error(ErrorKind::InvalidInput, "support box must be finite with lo < hi");
  HermiteFunction out = *this;
  out.support_ = std::move(box);
  return out;
}

HermiteFunction HermiteFunction::scaled(double c) const {
  if (expansion_) {
    HermiteExpansion e = *expansion_;
    for (auto& t : e.terms) t.coeff *= c;
    return HermiteFunction(std::move(e));
  }
  HermiteFunction out(n_, [fn = fn_, c](std::span<const double> x) { return c * fn(x); }, kinks_);
  out.support_ = support_;
  return out;
}

HermiteFunction HermiteFunction::composed(const std::function<double(double)>& u, std::vector<double> kinks) const {
  kinks.insert(kinks.end(), kinks_.begin(), kinks_.end());
  HermiteFunction out(n_, [fn = fn_, u](std::span<const double> x) { return u(fn(x)); }, std::move(kinks));
  if (u(0.0) == 0.0) out.support_ = support_;
  return out;
}

nlohmann::json HermiteFunction::to_json(const HermiteGrid& grid) const {
  nlohmann::json j;
  j["n"] = n_;
  j["m"] = grid.m();
  if (expansion_) {
    j["degree"] = expansion_->degree();
    auto arr = nlohmann::json::array();
    for (const auto& t : expansion_->terms) arr.push_back({{"index", t.index}, {"value", t.coeff}});
    j["coefficients"] = arr;
  } else {
    j["node_values"] = node_values(grid);
  }
  return j;
}

std::vector<std::vector<int>> multi_indices(int n, int K) {
  std::vector<std::vector<int>> out;
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  for (int d = 0; d <= K; ++d) {
    // all compositions of d into n parts, lexicographically descending in the first entry
    std::function<void(int, int)> rec = [&](int pos, int left) {
      if (pos == n - 1) {
        idx[static_cast<std::size_t>(pos)] = left;
        out.push_back(idx);
        return;
      }
      for (int v = left; v >= 0; --v) {
        idx[static_cast<std::size_t>(pos)] = v;
        rec(pos + 1, left - v);
      }
    };
    rec(0, d);
  }
  return out;
}

std::vector<double> tensor_apply(const std::vector<double>& in, std::vector<std::size_t>& dims, int axis,
                                 const std::vector<double>& M, std::size_t rows) {
  const std::size_t ax = static_cast<std::size_t>(axis);
  std::size_t outer = 1, inner = 1;
  for (std::size_t a = 0; a < ax; ++a) outer *= dims[a];
  for (std::size_t a = ax + 1; a < dims.size(); ++a) inner *= dims[a];
  const std::size_t cols = dims[ax];
  std::vector<double> out(outer * rows * inner, 0.0);
  for (std::size_t o = 0; o < outer; ++o) {
    const double* src = in.data() + o * cols * inner;
    double* dst = out.data() + o * rows * inner;
    for (std::size_t r = 0; r < rows; ++r) {
      double* d = dst + r * inner;
      for (std::size_t c = 0; c < cols; ++c) {
        const double w = M[r * cols + c];
        if (w == 0.0) continue;
        const double* s = src + c * inner;
        for (std::size_t i = 0; i < inner; ++i) d[i] += w * s[i];
      }
    }
  }
  dims[ax] = rows;
  return out;
}

std::vector<double> hermite_coefficient_tensor(const HermiteGrid& grid, std::span<const double> values, int K) {
  if (grid.m() < K + 1)
    throw Error(ErrorKind::Exactness, "quadrature order " + std::to_string(grid.m()) + " is below K + 1 = " +
                                          std::to_string(K + 1));
  const std::size_t m = static_cast<std::size_t>(grid.m());
  const std::size_t k1 = static_cast<std::size_t>(K) + 1;
  // P[a][j] = w_j h_a(x_j)
  std::vector<double> P(k1 * m);
  std::vector<double> h(k1);
  for (std::size_t j = 0; j < m; ++j) {
    hermite_table(K, grid.nodes_1d()[j], h);
    for (std::size_t a = 0; a < k1; ++a) P[a * m + j] = grid.weights_1d()[j] * h[a];
  }
  std::vector<std::size_t> dims(static_cast<std::size_t>(grid.n()), m);
  std::vector<double> t(values.begin(), values.end());
  for (int a = 0; a < grid.n(); ++a) t = tensor_apply(t, dims, a, P, k1);
  return t;
}

HermiteExpansion hermite_projection(const HermiteGrid& grid, std::span<const double> values, int K) {
  const auto T = hermite_coefficient_tensor(grid, values, K);
  const std::size_t k1 = static_cast<std::size_t>(K) + 1;
  HermiteExpansion e;
  e.n = grid.n();
  for (const auto& idx : multi_indices(grid.n(), K)) {
    std::size_t flat = 0;
    for (int v : idx) flat = flat * k1 + static_cast<std::size_t>(v);
    e.terms.push_back({idx, T[flat]});
  }
  return e;
}

double gaussian_integral(int n, const std::function<double(std::span<const double>)>& g, std::span<const double> kinks,
                         int m, double rel_tol) {
  if (n == 1) {
    static constexpr double kRange = 40.0;  // gamma_1 mass beyond is below 1e-340
    std::vector<double> cuts{-12.0, -6.0, -3.0, -1.5, 0.0, 1.5, 3.0, 6.0, 12.0};
    cuts.insert(cuts.end(), kinks.begin(), kinks.end());
    const double norm = 1.0 / std::sqrt(2.0 * kPi);
    auto fn = [&](double x) {
      const double a[1] = {x};
      return g(a) * norm * std::exp(-0.5 * x * x);
    };
    return integrate(fn, -kRange, kRange, rel_tol, cuts, 12);
  }
  HermiteGrid grid(m > 0 ? m : default_gauss_order(n), n);
  std::vector<double> x(static_cast<std::size_t>(n));
  double s = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    grid.node(j, x);
    s += grid.weights()[j] * g(x);
  }
  return s;
}

double box_gaussian_integral(int n, const std::function<double(std::span<const double>)>& g, const Support& box,
                             std::span<const double> center, double width) {
  using Rule = boost::math::quadrature::gauss<double, 20>;
  static const auto rule = [] {
    // full-range nodes and weights on [-1, 1]
    std::vector<std::pair<double, double>> r;
    const auto& x = Rule::abscissa();
    const auto& w = Rule::weights();
    for (std::size_t i = 0; i < x.size(); ++i) {
      r.push_back({x[i], w[i]});
      if (x[i] != 0.0) r.push_back({-x[i], w[i]});
    }
    return r;
  }();
  constexpr double kWindow = 9.0;  // normal density beyond 9 widths is below 1e-17
  constexpr int kMinPanels = 6;

  std::vector<std::vector<double>> nodes(static_cast<std::size_t>(n)), weights(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    const double lo = std::max(box.lo[k], center[k] - kWindow * width);
    const double hi = std::min(box.hi[k], center[k] + kWindow * width);
    if (!(hi > lo)) return 0.0;
    const int panels = std::max(kMinPanels, static_cast<int>(std::ceil((hi - lo) / (2.0 * width))));
    const double h = (hi - lo) / panels;
    for (int q = 0; q < panels; ++q) {
      const double mid = lo + (q + 0.5) * h;
      for (const auto& [x, w] : rule) {
        const double v = mid + 0.5 * h * x;
        const double z = (v - center[k]) / width;
        nodes[k].push_back(v);
        weights[k].push_back(0.5 * h * w * std::exp(-0.5 * z * z) / (width * std::sqrt(2.0 * kPi)));
      }
    }
  }
  std::vector<double> w(static_cast<std::size_t>(n));
  std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
  double total = 0.0;
  while (true) {
    double wt = 1.0;
    for (std::size_t k = 0; k < idx.size(); ++k) {
      w[k] = nodes[k][idx[k]];
      wt *= weights[k][idx[k]];
    }
    total += wt * g(w);
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == nodes[k].size()) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  return total;
}

double gaussian_lp_norm(const HermiteFunction& f, double p, int m) {
  if (std::isinf(p)) {
    const auto v = f.node_values(HermiteGrid(m > 0 ? m : default_gauss_order(f.dim()), f.dim()));
    double mx = 0.0;
    for (double a : v) mx = std::max(mx, std::fabs(a));
    return mx;
  }
  if (!(p >= 1.0)) throw Error(ErrorKind::ParameterDomain, "exponent p must be >= 1");
  if (f.dim() >= 2 && f.support() && m <= 0) {
    const std::vector<double> origin(static_cast<std::size_t>(f.dim()), 0.0);
    const double s = box_gaussian_integral(
        f.dim(), [&](std::span<const double> x) { return abs_pow(f(x), p); }, *f.support(), origin, 1.0);
    return std::pow(s, 1.0 / p);
  }
  const double s = gaussian_integral(f.dim(), [&](std::span<const double> x) { return abs_pow(f(x), p); }, f.kinks(), m);
  return std::pow(s, 1.0 / p);
}

}  // namespace besov
