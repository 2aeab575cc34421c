#include "besov/grid_function.hpp"

#include <algorithm>
#include <array>
#include <boost/math/special_functions/erf.hpp>
#include <cmath>
#include <numeric>

#include "besov/error.hpp"

namespace besov {

double Box::diameter() const {
  double s = 0.0;
  for (std::size_t i = 0; i < lo.size(); ++i) s += (hi[i] - lo[i]) * (hi[i] - lo[i]);
  return std::sqrt(s);
}

double Box::volume() const {
  double v = 1.0;
  for (std::size_t i = 0; i < lo.size(); ++i) v *= std::max(0.0, hi[i] - lo[i]);
  return v;
}

void BesovParams::validate() const {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw Error(ErrorKind::ParameterDomain, "alpha must lie in (0, 1]");
  if (!(p >= 1.0) || std::isinf(p)) throw Error(ErrorKind::ParameterDomain, "p must lie in [1, inf)");
  if (!(theta >= 1.0)) throw Error(ErrorKind::ParameterDomain, "theta must lie in [1, inf]");
}

// ---------------------------------------------------------------------------
// GridFunction

GridFunction::GridFunction(std::vector<double> spacing, std::vector<double> origin, std::vector<std::size_t> shape,
                           std::vector<double> values, Box support)
    : spacing_(std::move(spacing)),
      origin_(std::move(origin)),
      shape_(std::move(shape)),
      values_(std::move(values)),
      support_(std::move(support)) {
  strides_.assign(shape_.size(), 1);
  for (std::size_t i = shape_.size(); i-- > 1;) strides_[i - 1] = strides_[i] * shape_[i];
  validate();
}

void GridFunction::validate() const {
  const std::size_t n = shape_.size();
  if (n < 1 || n > 3) throw Error(ErrorKind::InvalidInput, "grid dimension must be 1, 2 or 3");
  if (spacing_.size() != n || origin_.size() != n || support_.lo.size() != n || support_.hi.size() != n)
    throw Error(ErrorKind::InvalidInput, "grid metadata has inconsistent dimensions");
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(spacing_[i] > 0.0) || !std::isfinite(spacing_[i]))
      throw Error(ErrorKind::InvalidInput, "grid spacing must be positive");
    if (shape_[i] < 2) throw Error(ErrorKind::InvalidInput, "grid extent must be at least 2 per axis");
    total *= shape_[i];
  }
  if (values_.size() != total) throw Error(ErrorKind::InvalidInput, "value count does not match grid shape");
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (!std::isfinite(values_[k])) throw Error(ErrorKind::InvalidInput, "grid values must be finite");
    if (values_[k] != 0.0 && on_boundary(k))
      throw Error(ErrorKind::InvalidInput, "grid values must vanish on the boundary layer");
  }
}

GridFunction GridFunction::sample(const std::function<double(std::span<const double>)>& fn, const Box& support,
                                  const std::vector<double>& spacing, const std::vector<double>& padding) {
  const std::size_t n = support.lo.size();
  if (n < 1 || n > 3 || support.hi.size() != n || spacing.size() != n || padding.size() != n)
    throw Error(ErrorKind::InvalidInput, "sample: inconsistent dimensions");
  std::vector<std::size_t> shape(n);
  std::vector<double> origin(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(spacing[i] > 0.0)) throw Error(ErrorKind::InvalidInput, "sample: spacing must be positive");
    if (!(support.hi[i] >= support.lo[i])) throw Error(ErrorKind::InvalidInput, "sample: empty support box");
    const auto inner = static_cast<std::size_t>(std::ceil((support.hi[i] - support.lo[i]) / spacing[i] - 1e-9));
    const auto pad = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(padding[i] / spacing[i] - 1e-9)));
    shape[i] = inner + 2 * pad;
    origin[i] = support.lo[i] - static_cast<double>(pad) * spacing[i] + 0.5 * spacing[i];
  }
  const std::size_t total = std::accumulate(shape.begin(), shape.end(), std::size_t{1}, std::multiplies<>());
  std::vector<double> values(total, 0.0);
  GridFunction g(spacing, origin, shape, std::vector<double>(total, 0.0), support);
  std::array<double, 3> x{};
  for (std::size_t k = 0; k < total; ++k) {
    g.point(k, std::span<double>(x.data(), n));
    bool inside = true;
    for (std::size_t i = 0; i < n; ++i)
      if (x[i] < support.lo[i] || x[i] > support.hi[i]) inside = false;
    if (inside) values[k] = fn(std::span<const double>(x.data(), n));
  }
  return g.with_values(std::move(values));
}

GridFunction GridFunction::zeros_like(const GridFunction& other) {
  return other.with_values(std::vector<double>(other.size(), 0.0));
}

double GridFunction::cell_volume() const {
  double v = 1.0;
  for (double h : spacing_) v *= h;
  return v;
}

double GridFunction::min_spacing() const { return *std::min_element(spacing_.begin(), spacing_.end()); }
double GridFunction::max_spacing() const { return *std::max_element(spacing_.begin(), spacing_.end()); }

void GridFunction::unravel(std::size_t flat, std::span<std::ptrdiff_t> index) const {
  for (std::size_t i = 0; i < shape_.size(); ++i) {
    index[i] = static_cast<std::ptrdiff_t>(flat / strides_[i]);
    flat %= strides_[i];
  }
}

void GridFunction::point(std::size_t flat, std::span<double> x) const {
  for (std::size_t i = 0; i < shape_.size(); ++i) {
    const std::size_t idx = flat / strides_[i];
    flat %= strides_[i];
    x[i] = origin_[i] + static_cast<double>(idx) * spacing_[i];
  }
}

bool GridFunction::on_boundary(std::size_t flat) const {
  for (std::size_t i = 0; i < shape_.size(); ++i) {
    const std::size_t idx = flat / strides_[i];
    flat %= strides_[i];
    if (idx == 0 || idx + 1 == shape_[i]) return true;
  }
  return false;
}

GridFunction::IndexBox GridFunction::nonzero_box() const {
  IndexBox box;
  const std::size_t n = shape_.size();
  box.lo.assign(n, std::numeric_limits<std::ptrdiff_t>::max());
  box.hi.assign(n, std::numeric_limits<std::ptrdiff_t>::min());
  std::array<std::ptrdiff_t, 3> idx{};
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (values_[k] == 0.0) continue;
    box.empty = false;
    unravel(k, std::span<std::ptrdiff_t>(idx.data(), n));
    for (std::size_t i = 0; i < n; ++i) {
      box.lo[i] = std::min(box.lo[i], idx[i]);
      box.hi[i] = std::max(box.hi[i], idx[i]);
    }
  }
  return box;
}

bool GridFunction::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

GridFunction GridFunction::with_values(std::vector<double> values) const {
  return GridFunction(spacing_, origin_, shape_, std::move(values), support_);
}

GridFunction GridFunction::scaled(double c) const {
  std::vector<double> v(values_);
  for (double& x : v) x *= c;
  return with_values(std::move(v));
}

GridFunction GridFunction::padded(const std::vector<std::size_t>& cells) const {
  const std::size_t n = shape_.size();
  if (cells.size() != n) throw Error(ErrorKind::InvalidInput, "padded: one pad count per axis");
  std::vector<std::size_t> shape(n);
  std::vector<double> origin(n);
  for (std::size_t i = 0; i < n; ++i) {
    shape[i] = shape_[i] + 2 * cells[i];
    origin[i] = origin_[i] - static_cast<double>(cells[i]) * spacing_[i];
  }
  const std::size_t total = std::accumulate(shape.begin(), shape.end(), std::size_t{1}, std::multiplies<>());
  std::vector<double> values(total, 0.0);
  std::array<std::ptrdiff_t, 3> idx{};
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (values_[k] == 0.0) continue;
    unravel(k, std::span<std::ptrdiff_t>(idx.data(), n));
    std::size_t flat = 0, stride = 1;
    for (std::size_t i = n; i-- > 0;) {
      flat += (static_cast<std::size_t>(idx[i]) + cells[i]) * stride;
      stride *= shape[i];
    }
    values[flat] = values_[k];
  }
  return GridFunction(spacing_, origin, shape, std::move(values), support_);
}

double GridFunction::integral() const {
  return std::accumulate(values_.begin(), values_.end(), 0.0) * cell_volume();
}

bool GridFunction::same_grid(const GridFunction& other) const {
  return shape_ == other.shape_ && spacing_ == other.spacing_ && origin_ == other.origin_;
}

nlohmann::json GridFunction::to_json() const {
  nlohmann::json j;
  j["dim"] = dim();
  j["spacing"] = spacing_;
  j["origin"] = origin_;
  j["shape"] = shape_;
  j["values"] = values_;
  j["support_box"] = {{"lo", support_.lo}, {"hi", support_.hi}};
  return j;
}

GridFunction GridFunction::from_json(const nlohmann::json& j) {
  try {
    Box box{j.at("support_box").at("lo").get<std::vector<double>>(),
            j.at("support_box").at("hi").get<std::vector<double>>()};
    GridFunction g(j.at("spacing").get<std::vector<double>>(), j.at("origin").get<std::vector<double>>(),
                   j.at("shape").get<std::vector<std::size_t>>(), j.at("values").get<std::vector<double>>(),
                   std::move(box));
    if (j.at("dim").get<int>() != g.dim()) throw Error(ErrorKind::InvalidInput, "dim does not match shape");
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("malformed grid function JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// ModulusCurve

const char* to_string(ModulusKind kind) {
  switch (kind) {
    case ModulusKind::Omega: return "omega";
    case ModulusKind::Sigma: return "sigma";
    case ModulusKind::SigmaTilde: return "sigma_tilde";
    case ModulusKind::AGamma: return "a_gamma";
    case ModulusKind::SigmaGamma: return "sigma_gamma";
  }
  return "omega";
}

const char* to_string(BoundType bound) {
  switch (bound) {
    case BoundType::Exact: return "exact";
    case BoundType::Lower: return "lower";
    case BoundType::Upper: return "upper";
  }
  return "exact";
}

ModulusKind modulus_kind_from_string(const std::string& s) {
  for (auto k : {ModulusKind::Omega, ModulusKind::Sigma, ModulusKind::SigmaTilde, ModulusKind::AGamma,
                 ModulusKind::SigmaGamma})
    if (s == to_string(k)) return k;
  throw Error(ErrorKind::InvalidInput, "unknown modulus kind '" + s + "'");
}

BoundType bound_type_from_string(const std::string& s) {
  for (auto b : {BoundType::Exact, BoundType::Lower, BoundType::Upper})
    if (s == to_string(b)) return b;
  throw Error(ErrorKind::InvalidInput, "unknown bound type '" + s + "'");
}

void ModulusCurve::validate() const {
  if (eps.size() != values.size()) throw Error(ErrorKind::InvalidInput, "curve eps/values length mismatch");
  for (std::size_t k = 0; k < eps.size(); ++k) {
    if (!(eps[k] > 0.0) || !std::isfinite(eps[k])) throw Error(ErrorKind::InvalidInput, "curve scales must be positive");
    if (k > 0 && !(eps[k] > eps[k - 1])) throw Error(ErrorKind::InvalidInput, "curve scales must increase strictly");
    if (!(values[k] >= 0.0)) throw Error(ErrorKind::InvalidInput, "curve values must be nonnegative");
  }
}

namespace {

std::size_t upper_index(const std::vector<double>& eps, double s) {
  return static_cast<std::size_t>(std::lower_bound(eps.begin(), eps.end(), s) - eps.begin());
}

}  // namespace

double ModulusCurve::upper_at(double s) const {
  if (eps.empty()) throw Error(ErrorKind::InsufficientCoverage, "empty curve");
  if (s <= 0.0) return 0.0;
  const std::size_t k = upper_index(eps, s);
  if (k == 0) return values.front();
  if (k == eps.size()) {
    if (!saturation) throw Error(ErrorKind::InsufficientCoverage, "scale beyond the curve and no saturation bound");
    return std::min(*saturation, s * values.back() / eps.back());
  }
  if (eps[k] == s) return values[k];
  return std::min(values[k], s * values[k - 1] / eps[k - 1]);
}

double ModulusCurve::lower_at(double s) const {
  if (eps.empty()) throw Error(ErrorKind::InsufficientCoverage, "empty curve");
  if (s <= 0.0) return 0.0;
  const std::size_t k = upper_index(eps, s);
  if (k == 0) return values.front() * s / eps.front();
  if (k == eps.size()) return values.back();
  if (eps[k] == s) return values[k];
  const double w = (s - eps[k - 1]) / (eps[k] - eps[k - 1]);
  return (1.0 - w) * values[k - 1] + w * values[k];
}

double ModulusCurve::interpolate(double s) const {
  if (eps.empty()) throw Error(ErrorKind::InsufficientCoverage, "empty curve");
  if (s < eps.front() || s > eps.back()) throw Error(ErrorKind::InsufficientCoverage, "scale outside the curve grid");
  return lower_at(s);
}

nlohmann::json ModulusCurve::to_json() const {
  nlohmann::json j;
  j["kind"] = to_string(kind);
  j["bound"] = to_string(bound);
  j["eps"] = eps;
  j["values"] = values;
  if (saturation) j["saturation"] = *saturation;
  return j;
}

ModulusCurve ModulusCurve::from_json(const nlohmann::json& j) {
  try {
    ModulusCurve c;
    c.kind = modulus_kind_from_string(j.at("kind").get<std::string>());
    c.bound = bound_type_from_string(j.at("bound").get<std::string>());
    c.eps = j.at("eps").get<std::vector<double>>();
    c.values = j.at("values").get<std::vector<double>>();
    if (j.contains("saturation")) c.saturation = j.at("saturation").get<double>();
    c.validate();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("malformed curve JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Norms and shifts

double lp_norm(const GridFunction& f, double p) {
  if (!(p >= 1.0)) throw Error(ErrorKind::ParameterDomain, "L^p norm needs p >= 1");
  if (std::isinf(p)) return weighted_norm(f.values(), {}, kInf);
  double s = 0.0;
  for (double v : f.values()) s += abs_pow(v, p);
  s *= f.cell_volume();
  return p == 1.0 ? s : std::pow(s, 1.0 / p);
}

GridFunction shift_cells(const GridFunction& f, std::span<const std::ptrdiff_t> cells) {
  const std::size_t n = static_cast<std::size_t>(f.dim());
  if (cells.size() != n) throw Error(ErrorKind::InvalidInput, "shift vector has wrong dimension");
  const auto box = f.nonzero_box();
  if (!box.empty) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto lo = box.lo[i] + cells[i];
      const auto hi = box.hi[i] + cells[i];
      if (lo < 1 || hi > static_cast<std::ptrdiff_t>(f.shape()[i]) - 2)
        throw Error(ErrorKind::DomainExceeded, "shifted support leaves the grid interior");
    }
  }
  std::ptrdiff_t offset = 0;
  for (std::size_t i = 0; i < n; ++i) offset += cells[i] * static_cast<std::ptrdiff_t>(f.stride(static_cast<int>(i)));
  std::vector<double> out(f.size(), 0.0);
  const auto& v = f.values();
  for (std::size_t k = 0; k < v.size(); ++k)
    if (v[k] != 0.0) out[static_cast<std::size_t>(static_cast<std::ptrdiff_t>(k) + offset)] = v[k];
  Box support = f.support();
  for (std::size_t i = 0; i < n; ++i) {
    support.lo[i] += static_cast<double>(cells[i]) * f.spacing()[i];
    support.hi[i] += static_cast<double>(cells[i]) * f.spacing()[i];
  }
  return GridFunction(f.spacing(), f.origin(), f.shape(), std::move(out), std::move(support));
}

GridFunction shift(const GridFunction& f, std::span<const double> h) {
  const std::size_t n = static_cast<std::size_t>(f.dim());
  if (h.size() != n) throw Error(ErrorKind::InvalidInput, "shift vector has wrong dimension");
  std::vector<std::ptrdiff_t> cells(n);
  for (std::size_t i = 0; i < n; ++i) cells[i] = static_cast<std::ptrdiff_t>(std::llround(h[i] / f.spacing()[i]));
  return shift_cells(f, cells);
}

namespace {

// View of a grid function as a 3-D array (leading axes of size 1).
struct View3 {
  std::array<std::ptrdiff_t, 3> shape{1, 1, 1};
  std::array<std::ptrdiff_t, 3> stride{0, 0, 0};
  const double* data = nullptr;

  explicit View3(const GridFunction& f) : data(f.values().data()) {
    const int n = f.dim();
    for (int i = 0; i < n; ++i) {
      shape[static_cast<std::size_t>(3 - n + i)] = static_cast<std::ptrdiff_t>(f.shape()[static_cast<std::size_t>(i)]);
      stride[static_cast<std::size_t>(3 - n + i)] = static_cast<std::ptrdiff_t>(f.stride(i));
    }
  }
  double at(std::ptrdiff_t a, std::ptrdiff_t b, std::ptrdiff_t c) const {
    if (a < 0 || b < 0 || c < 0 || a >= shape[0] || b >= shape[1] || c >= shape[2]) return 0.0;
    return data[a * stride[0] + b * stride[1] + c * stride[2]];
  }
};

template <class Pow>
double shift_sum(const View3& v, const std::array<std::ptrdiff_t, 3>& lo, const std::array<std::ptrdiff_t, 3>& hi,
                 const std::array<std::ptrdiff_t, 3>& k, Pow pw) {
  double s = 0.0;
  for (std::ptrdiff_t a = std::min(lo[0], lo[0] + k[0]); a <= std::max(hi[0], hi[0] + k[0]); ++a)
    for (std::ptrdiff_t b = std::min(lo[1], lo[1] + k[1]); b <= std::max(hi[1], hi[1] + k[1]); ++b)
      for (std::ptrdiff_t c = std::min(lo[2], lo[2] + k[2]); c <= std::max(hi[2], hi[2] + k[2]); ++c)
        s += pw(v.at(a - k[0], b - k[1], c - k[2]) - v.at(a, b, c));
  return s;
}

double shift_power_sum(const GridFunction& f, const GridFunction::IndexBox& box, double p,
                       std::span<const std::ptrdiff_t> cells) {
  const int n = f.dim();
  View3 v(f);
  std::array<std::ptrdiff_t, 3> lo{0, 0, 0}, hi{0, 0, 0}, k{0, 0, 0};
  for (int i = 0; i < n; ++i) {
    const auto j = static_cast<std::size_t>(3 - n + i);
    lo[j] = box.lo[static_cast<std::size_t>(i)];
    hi[j] = box.hi[static_cast<std::size_t>(i)];
    k[j] = cells[static_cast<std::size_t>(i)];
  }
  if (p == 1.0) return shift_sum(v, lo, hi, k, [](double d) { return std::fabs(d); });
  if (p == 2.0) return shift_sum(v, lo, hi, k, [](double d) { return d * d; });
  return shift_sum(v, lo, hi, k, [p](double d) { return abs_pow(d, p); });
}

double finish_norm(double power_sum, double volume, double p) {
  const double s = power_sum * volume;
  return p == 1.0 ? s : std::pow(s, 1.0 / p);
}

}  // namespace

double shift_difference_norm(const GridFunction& f, double p, std::span<const std::ptrdiff_t> cells) {
  if (!(p >= 1.0) || std::isinf(p)) throw Error(ErrorKind::ParameterDomain, "shift norm needs p in [1, inf)");
  if (cells.size() != static_cast<std::size_t>(f.dim()))
    throw Error(ErrorKind::InvalidInput, "shift vector has wrong dimension");
  const auto box = f.nonzero_box();
  if (box.empty) return 0.0;
  return finish_norm(shift_power_sum(f, box, p, cells), f.cell_volume(), p);
}

// ---------------------------------------------------------------------------
// ShiftProfile

ShiftProfile::ShiftProfile(const GridFunction& f, double p, double max_radius)
    : p_(p), min_spacing_(f.min_spacing()), max_radius_(max_radius) {
  if (!(p >= 1.0) || std::isinf(p)) throw Error(ErrorKind::ParameterDomain, "omega_p needs p in [1, inf)");
  norm_ = lp_norm(f, p);
  const auto box = f.nonzero_box();
  if (box.empty) {
    disjoint_length_ = 0.0;
    disjoint_value_ = 0.0;
    return;
  }
  const int n = f.dim();
  const auto& h = f.spacing();
  std::array<std::ptrdiff_t, 3> ext{1, 1, 1};
  disjoint_length_ = kInf;
  for (int i = 0; i < n; ++i) {
    const auto u = static_cast<std::size_t>(i);
    ext[u] = box.hi[u] - box.lo[u] + 1;
    disjoint_length_ = std::min(disjoint_length_, static_cast<double>(ext[u]) * h[u]);
  }
  disjoint_value_ = std::pow(2.0, 1.0 / p) * norm_;

  // Enumerate lattice shifts that keep the supports overlapping; the
  // reflection -k gives the same norm, so only lexicographically positive k.
  std::array<std::ptrdiff_t, 3> k{0, 0, 0};
  std::array<std::ptrdiff_t, 3> lim{0, 0, 0};
  for (int i = 0; i < n; ++i) {
    const auto u = static_cast<std::size_t>(i);
    lim[u] = ext[u] - 1;
    if (std::isfinite(max_radius))
      lim[u] = std::min<std::ptrdiff_t>(lim[u], static_cast<std::ptrdiff_t>(std::floor(max_radius / h[u] + 1e-9)));
  }
  const double vol = f.cell_volume();
  std::vector<std::ptrdiff_t> cells(static_cast<std::size_t>(n));
  for (k[0] = -lim[0]; k[0] <= lim[0]; ++k[0])
    for (k[1] = (n > 1 ? -lim[1] : 0); k[1] <= (n > 1 ? lim[1] : 0); ++k[1])
      for (k[2] = (n > 2 ? -lim[2] : 0); k[2] <= (n > 2 ? lim[2] : 0); ++k[2]) {
        // lexicographic positivity
        bool positive = false;
        for (int i = 0; i < n; ++i) {
          if (k[static_cast<std::size_t>(i)] != 0) {
            positive = k[static_cast<std::size_t>(i)] > 0;
            break;
          }
        }
        if (!positive) continue;
        double len2 = 0.0;
        for (int i = 0; i < n; ++i) {
          const auto u = static_cast<std::size_t>(i);
          len2 += static_cast<double>(k[u] * k[u]) * h[u] * h[u];
        }
        const double len = std::sqrt(len2);
        if (len > max_radius * (1.0 + 1e-12)) continue;
        for (int i = 0; i < n; ++i) cells[static_cast<std::size_t>(i)] = k[static_cast<std::size_t>(i)];
        const double value = finish_norm(shift_power_sum(f, box, p, cells), vol, p);
        entries_.push_back(Entry{len, value, cells});
      }
  std::stable_sort(entries_.begin(), entries_.end(),
                   [](const Entry& a, const Entry& b) { return a.length < b.length; });
  best_.resize(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i)
    best_[i] = (i == 0 || entries_[i].value > entries_[best_[i - 1]].value) ? i : best_[i - 1];
}

OmegaValue ShiftProfile::omega(double eps) const {
  if (!(eps > 0.0)) throw Error(ErrorKind::ParameterDomain, "omega_p needs eps > 0");
  if (eps > max_radius_ * (1.0 + 1e-12))
    throw Error(ErrorKind::InsufficientCoverage, "scale beyond the enumerated shift radius");
  if (eps < min_spacing_ * (1.0 - 1e-12)) return {0.0, true};
  double value = 0.0;
  const auto it = std::upper_bound(entries_.begin(), entries_.end(), eps * (1.0 + 1e-12),
                                   [](double e, const Entry& x) { return e < x.length; });
  if (it != entries_.begin()) value = entries_[best_[static_cast<std::size_t>(it - entries_.begin()) - 1]].value;
  if (eps >= disjoint_length_ * (1.0 - 1e-12)) value = std::max(value, disjoint_value_);
  return {value, false};
}

std::vector<std::ptrdiff_t> ShiftProfile::argmax(double eps) const {
  const auto it = std::upper_bound(entries_.begin(), entries_.end(), eps * (1.0 + 1e-12),
                                   [](double e, const Entry& x) { return e < x.length; });
  if (it == entries_.begin()) return {};
  return entries_[best_[static_cast<std::size_t>(it - entries_.begin()) - 1]].cells;
}

OmegaValue omega_p(const GridFunction& f, double p, double eps) {
  if (!(eps > 0.0)) throw Error(ErrorKind::ParameterDomain, "omega_p needs eps > 0");
  return ShiftProfile(f, p, eps).omega(eps);
}

ModulusCurve omega_curve(const GridFunction& f, double p, std::span<const double> eps_grid) {
  ModulusCurve c;
  c.kind = ModulusKind::Omega;
  c.bound = BoundType::Lower;
  c.eps.assign(eps_grid.begin(), eps_grid.end());
  c.values.assign(c.eps.size(), 0.0);
  c.validate();
  if (c.eps.empty()) return c;
  ShiftProfile profile(f, p, c.eps.back());
  for (std::size_t k = 0; k < c.eps.size(); ++k) c.values[k] = profile.omega(c.eps[k]).value;
  c.saturation = 2.0 * profile.norm();
  return c;
}

// ---------------------------------------------------------------------------
// Heat semigroup

GridFunction heat_semigroup(const GridFunction& f, double t, const HeatOptions& options) {
  if (!(t > 0.0) || !std::isfinite(t)) throw Error(ErrorKind::ParameterDomain, "heat semigroup needs t > 0");
  if (!(options.tail_cutoff > 0.0 && options.tail_cutoff < 1.0))
    throw Error(ErrorKind::ParameterDomain, "tail cutoff must lie in (0, 1)");
  const int n = f.dim();
  const double c = std::sqrt(2.0) * boost::math::erfc_inv(options.tail_cutoff);
  const auto box = f.nonzero_box();
  if (box.empty) return f;

  std::vector<double> cur = f.values();
  std::vector<double> next(cur.size());
  Box support = f.support();
  for (int axis = 0; axis < n; ++axis) {
    const auto u = static_cast<std::size_t>(axis);
    const double h = f.spacing()[u];
    const auto radius = static_cast<std::ptrdiff_t>(std::ceil(c * std::sqrt(t) / h));
    const auto extent = static_cast<std::ptrdiff_t>(f.shape()[u]);
    if (box.lo[u] - radius < 1 || box.hi[u] + radius > extent - 2)
      throw Error(ErrorKind::DomainExceeded, "heat kernel does not fit inside the padded grid");
    std::vector<double> kernel(static_cast<std::size_t>(2 * radius + 1));
    double mass = 0.0;
    for (std::ptrdiff_t j = -radius; j <= radius; ++j) {
      const double x = static_cast<double>(j) * h;
      kernel[static_cast<std::size_t>(j + radius)] = std::exp(-x * x / (2.0 * t));
      mass += kernel[static_cast<std::size_t>(j + radius)];
    }
    for (double& k : kernel) k /= mass;

    const auto stride = static_cast<std::ptrdiff_t>(f.stride(axis));
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t k = 0; k < cur.size(); ++k) {
      if (cur[k] == 0.0) continue;
      const double v = cur[k];
      for (std::ptrdiff_t j = -radius; j <= radius; ++j)
        next[static_cast<std::size_t>(static_cast<std::ptrdiff_t>(k) + j * stride)] +=
            v * kernel[static_cast<std::size_t>(j + radius)];
    }
    std::swap(cur, next);
    support.lo[u] -= static_cast<double>(radius) * h;
    support.hi[u] += static_cast<double>(radius) * h;
  }
  return GridFunction(f.spacing(), f.origin(), f.shape(), std::move(cur), std::move(support));
}

// ---------------------------------------------------------------------------
// Besov functionals on log grids

std::vector<double> default_scale_grid(const GridFunction& f, double ratio) {
  const double lo = 10.0 * f.max_spacing();
  const double hi = std::max(10.0 * f.support().diameter(), lo * ratio);
  return geometric_grid(lo, hi, ratio);
}

Bracketed log_grid_functional(const ModulusCurve& curve, const BesovParams& params, const TailModel& tails) {
  params.validate();
  curve.validate();
  if (curve.size() < 2) throw Error(ErrorKind::InsufficientCoverage, "log-grid functional needs at least two scales");
  const auto& s = curve.eps;
  const auto& m = curve.values;
  const std::size_t K = s.size() - 1;
  const double a = params.alpha;
  const double large_bound = std::max(tails.large_scale_bound, m[K]);

  // small-scale power-law extrapolation m(s) ~ m0 (s/s0)^gamma, gamma in [0, 1]
  double gamma = 1.0;
  if (m[0] > 0.0 && m[1] > 0.0) gamma = std::clamp(std::log(m[1] / m[0]) / std::log(s[1] / s[0]), 0.0, 1.0);

  if (params.theta_infinite()) {
    double sup = 0.0;
    for (std::size_t k = 0; k <= K; ++k) sup = std::max(sup, std::pow(s[k], -a) * m[k]);
    double upper = std::max(sup, large_bound * std::pow(s[K], -a));
    if (m[0] > 0.0 && gamma < a) upper = kInf;
    return {sup, sup, upper};
  }

  const double th = params.theta;
  auto g = [&](std::size_t k) { return std::pow(std::pow(s[k], -a) * m[k], th); };
  double core = 0.0;
  for (std::size_t k = 0; k < K; ++k) core += 0.5 * (g(k) + g(k + 1)) * std::log(s[k + 1] / s[k]);

  const double at = a * th;
  const double large_lower = std::pow(m[K], th) * std::pow(s[K], -at) / at;
  const double large_upper = std::isinf(large_bound) ? kInf : std::pow(large_bound, th) * std::pow(s[K], -at) / at;

  double small_lower = 0.0, small_point = 0.0, small_upper = 0.0;
  if (m[0] > 0.0) {
    if (a < 1.0) {
      const double slope = tails.small_scale_factor * m[0] / s[0];
      small_lower = std::pow(slope, th) * std::pow(s[0], (1.0 - a) * th) / ((1.0 - a) * th);
    } else {
      small_lower = kInf;
    }
    small_point = gamma > a ? std::pow(m[0], th) * std::pow(s[0], -at) / ((gamma - a) * th) : kInf;
    small_upper = std::pow(2.0, th) * small_point;
  }
  auto root = [th](double x) { return std::isinf(x) ? kInf : std::pow(x, 1.0 / th); };
  return {root(core + small_point + large_lower), root(core + small_lower + large_lower),
          root(core + small_upper + large_upper)};
}

Bracketed besov_seminorm(const GridFunction& f, const BesovParams& params, const ModulusCurve& omega) {
  if (omega.kind != ModulusKind::Omega) throw Error(ErrorKind::InvalidInput, "besov_seminorm needs an omega curve");
  TailModel tails;
  tails.large_scale_bound = 2.0 * lp_norm(f, params.p);
  tails.small_scale_factor = 0.5;  // omega(s0) <= 2 (s0/s) omega(s)
  return log_grid_functional(omega, params, tails);
}

}  // namespace besov
