#include "besov/sigma.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "besov/ascent.hpp"
#include "besov/error.hpp"

namespace besov {

namespace {

// Difference stencils on the grid of f: component c differences along the
// lattice vector dirs[c]. Variables are stored point-major (y * C + c).
struct Stencil {
  std::size_t points = 0;
  std::size_t comps = 0;
  std::vector<double> step;
  std::vector<std::vector<std::ptrdiff_t>> nbr;  // -1 outside the array
  std::vector<char> free;                        // cells allowed to carry field values

  Stencil(const GridFunction& f, const std::vector<std::vector<std::ptrdiff_t>>& dirs) {
    const int n = f.dim();
    points = f.size();
    comps = dirs.size();
    std::vector<std::ptrdiff_t> margin(static_cast<std::size_t>(n), 1);
    for (const auto& d : dirs) {
      double len2 = 0.0;
      for (int i = 0; i < n; ++i) {
        const auto u = static_cast<std::size_t>(i);
        margin[u] = std::max<std::ptrdiff_t>(margin[u], std::abs(d[u]));
        len2 += static_cast<double>(d[u] * d[u]) * f.spacing()[u] * f.spacing()[u];
      }
      step.push_back(std::sqrt(len2));
    }
    nbr.assign(comps, std::vector<std::ptrdiff_t>(points, -1));
    free.assign(points, 0);
    std::vector<std::ptrdiff_t> idx(static_cast<std::size_t>(n));
    for (std::size_t y = 0; y < points; ++y) {
      f.unravel(y, idx);
      bool inner = true;
      for (int i = 0; i < n; ++i) {
        const auto u = static_cast<std::size_t>(i);
        const auto ext = static_cast<std::ptrdiff_t>(f.shape()[u]);
        if (idx[u] < margin[u] || idx[u] > ext - 1 - margin[u]) inner = false;
      }
      free[y] = inner ? 1 : 0;
      for (std::size_t c = 0; c < comps; ++c) {
        std::ptrdiff_t flat = 0;
        bool ok = true;
        for (int i = 0; i < n; ++i) {
          const auto u = static_cast<std::size_t>(i);
          const auto j = idx[u] + dirs[c][u];
          if (j < 0 || j >= static_cast<std::ptrdiff_t>(f.shape()[u])) ok = false;
          flat += j * static_cast<std::ptrdiff_t>(f.stride(i));
        }
        nbr[c][y] = ok ? flat : -1;
      }
    }
  }

  void div(const std::vector<double>& x, std::vector<double>& out) const {
    out.assign(points, 0.0);
    for (std::size_t c = 0; c < comps; ++c) {
      const double inv = 1.0 / step[c];
      const auto& nb = nbr[c];
      for (std::size_t y = 0; y < points; ++y) {
        const double ahead = nb[y] >= 0 ? x[static_cast<std::size_t>(nb[y]) * comps + c] : 0.0;
        out[y] += (ahead - x[y * comps + c]) * inv;
      }
    }
  }

  void div_adjoint(const std::vector<double>& w, std::vector<double>& out) const {
    out.assign(points * comps, 0.0);
    for (std::size_t c = 0; c < comps; ++c) {
      const double inv = 1.0 / step[c];
      const auto& nb = nbr[c];
      for (std::size_t y = 0; y < points; ++y) {
        if (w[y] == 0.0) continue;
        if (nb[y] >= 0) out[static_cast<std::size_t>(nb[y]) * comps + c] += w[y] * inv;
        out[y * comps + c] -= w[y] * inv;
      }
    }
  }
};

RatioProblem make_problem(const GridFunction& f, const Stencil& st, double p, double eps) {
  RatioProblem pb;
  const double vol = f.cell_volume();
  pb.dim = st.points * st.comps;
  pb.q = dual_exponent(p);
  pb.eps = eps;
  pb.div_size = st.points;
  pb.div = [&st](const std::vector<double>& x, std::vector<double>& out) { st.div(x, out); };
  pb.div_adjoint = [&st](const std::vector<double>& w, std::vector<double>& out) { st.div_adjoint(w, out); };
  pb.div_weights.assign(st.points, vol);
  pb.field_points = st.points;
  pb.field_components = st.comps;
  pb.field_weights.assign(st.points, vol);
  std::vector<double> fv(f.values());
  for (double& v : fv) v *= vol;
  st.div_adjoint(fv, pb.objective);
  pb.clip_field_sup = std::isinf(pb.q);
  pb.free_mask.assign(pb.dim, 0);
  for (std::size_t y = 0; y < st.points; ++y)
    for (std::size_t c = 0; c < st.comps; ++c) pb.free_mask[y * st.comps + c] = st.free[y];
  return pb;
}

std::vector<std::ptrdiff_t> axis_cells(int n, int axis, std::ptrdiff_t k) {
  std::vector<std::ptrdiff_t> v(static_cast<std::size_t>(n), 0);
  v[static_cast<std::size_t>(axis)] = k;
  return v;
}

std::vector<std::vector<std::ptrdiff_t>> unit_axes(int n) {
  std::vector<std::vector<std::ptrdiff_t>> dirs;
  for (int i = 0; i < n; ++i) dirs.push_back(axis_cells(n, i, 1));
  return dirs;
}

// psi(x) = step * sum_{j < m} phi(x + j d); false if psi leaves the free cells.
bool telescoped(const GridFunction& f, const Stencil& st, const std::vector<double>& phi,
                std::span<const std::ptrdiff_t> d, std::ptrdiff_t m, std::vector<double>& psi) {
  const int n = f.dim();
  psi.assign(f.size(), 0.0);
  std::vector<std::ptrdiff_t> idx(static_cast<std::size_t>(n));
  for (std::size_t y = 0; y < phi.size(); ++y) {
    if (phi[y] == 0.0) continue;
    f.unravel(y, idx);
    for (std::ptrdiff_t j = 0; j < m; ++j) {
      std::ptrdiff_t flat = 0;
      for (int i = 0; i < n; ++i) {
        const auto u = static_cast<std::size_t>(i);
        const auto a = idx[u] - j * d[u];
        if (a < 0 || a >= static_cast<std::ptrdiff_t>(f.shape()[u])) return false;
        flat += a * static_cast<std::ptrdiff_t>(f.stride(i));
      }
      if (!st.free[static_cast<std::size_t>(flat)]) return false;
      psi[static_cast<std::size_t>(flat)] += st.step[0] * phi[y];
    }
  }
  return true;
}

std::vector<double> smooth3(const GridFunction& f, std::vector<double> v) {
  std::vector<double> tmp(v.size());
  for (int axis = 0; axis < f.dim(); ++axis) {
    const auto s = static_cast<std::ptrdiff_t>(f.stride(axis));
    const auto ext = static_cast<std::ptrdiff_t>(f.shape()[static_cast<std::size_t>(axis)]);
    for (std::size_t y = 0; y < v.size(); ++y) {
      const auto pos = (static_cast<std::ptrdiff_t>(y) / s) % ext;
      const double left = pos > 0 ? v[y - static_cast<std::size_t>(s)] : 0.0;
      const double right = pos + 1 < ext ? v[y + static_cast<std::size_t>(s)] : 0.0;
      tmp[y] = 0.25 * left + 0.5 * v[y] + 0.25 * right;
    }
    std::swap(v, tmp);
  }
  return v;
}

double field_ratio(double objective, double d_norm, double field_norm, double eps) {
  const double m = std::max(d_norm, field_norm / eps);
  return m > 0.0 ? objective / m : 0.0;
}

std::vector<std::ptrdiff_t> snap_direction(const GridFunction& f, std::span<const double> e) {
  const int n = f.dim();
  if (e.size() != static_cast<std::size_t>(n)) throw Error(ErrorKind::InvalidInput, "direction has wrong dimension");
  double en = 0.0;
  for (double v : e) en += v * v;
  en = std::sqrt(en);
  if (!(en > 0.0)) throw Error(ErrorKind::ParameterDomain, "direction must be nonzero");
  std::vector<std::ptrdiff_t> d(static_cast<std::size_t>(n), 0);
  std::vector<std::ptrdiff_t> best;
  // smallest lattice vector (entries <= 4) parallel to e
  const std::ptrdiff_t lim = 4;
  std::vector<std::ptrdiff_t> k(static_cast<std::size_t>(n), -lim);
  while (true) {
    double len2 = 0.0, dotp = 0.0;
    for (int i = 0; i < n; ++i) {
      const auto u = static_cast<std::size_t>(i);
      const double x = static_cast<double>(k[u]) * f.spacing()[u];
      len2 += x * x;
      dotp += x * e[u] / en;
    }
    if (len2 > 0.0 && dotp > 0.0 && std::fabs(dotp - std::sqrt(len2)) <= 1e-9 * std::sqrt(len2)) {
      bool shorter = best.empty();
      if (!shorter) {
        double bl = 0.0;
        for (int i = 0; i < n; ++i) bl += std::fabs(static_cast<double>(best[static_cast<std::size_t>(i)]));
        double kl = 0.0;
        for (int i = 0; i < n; ++i) kl += std::fabs(static_cast<double>(k[static_cast<std::size_t>(i)]));
        shorter = kl < bl;
      }
      if (shorter) best = k;
    }
    int i = n - 1;
    while (i >= 0 && k[static_cast<std::size_t>(i)] == lim) k[static_cast<std::size_t>(i--)] = -lim;
    if (i < 0) break;
    ++k[static_cast<std::size_t>(i)];
  }
  if (best.empty()) throw Error(ErrorKind::ParameterDomain, "direction is not parallel to a small lattice vector");
  return best;
}

// Best constructive start along the lattice direction d among shifts
// k d with |k d| <= eps, measured at scale eps.
struct Start {
  std::vector<double> psi;
  double value = 0.0;
};

Start constructive_start(const GridFunction& f, double p, double eps, const std::vector<std::ptrdiff_t>& d,
                         double step) {
  Start best;
  best.psi.assign(f.size(), 0.0);
  auto k = static_cast<std::ptrdiff_t>(std::floor(eps / step + 1e-9));
  while (k >= 1) {
    std::vector<std::ptrdiff_t> h(d);
    for (auto& v : h) v *= k;
    try {
      auto cf = constructive_field(f, p, h);
      const double value = field_ratio(cf.objective, cf.d_norm, cf.field_norm, eps);
      if (value > best.value) {
        best.value = value;
        best.psi = std::move(cf.psi);
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DomainExceeded) throw;
    }
    const auto next = static_cast<std::ptrdiff_t>(std::floor(static_cast<double>(k) / 1.5));
    k = next < k ? next : k - 1;
  }
  return best;
}

AscentResult directional_ascent(const GridFunction& f, double p, double eps, const std::vector<std::ptrdiff_t>& d,
                                int budget, double* start_value = nullptr) {
  Stencil st(f, {d});
  Start s = constructive_start(f, p, eps, d, st.step[0]);
  if (start_value) *start_value = s.value;
  RatioProblem pb = make_problem(f, st, p, eps);
  return maximize_ratio(pb, std::move(s.psi), budget);
}

}  // namespace

// ---------------------------------------------------------------------------

double VectorFieldCandidate::ratio() const {
  return field_ratio(objective, dual_q_norm_div, dual_q_norm_field, eps);
}

bool VectorFieldCandidate::compactly_supported() const {
  GridFunction geom(spacing, origin, shape, std::vector<double>(divergence.size(), 0.0),
                    Box{origin, origin});
  for (const auto& c : components)
    for (std::size_t y = 0; y < c.size(); ++y)
      if (c[y] != 0.0 && geom.on_boundary(y)) return false;
  return true;
}

nlohmann::json VectorFieldCandidate::to_json() const {
  nlohmann::json j;
  j["dim"] = shape.size();
  j["spacing"] = spacing;
  j["origin"] = origin;
  j["shape"] = shape;
  j["components"] = components;
  j["divergence"] = divergence;
  j["q"] = std::isinf(q) ? nlohmann::json("inf") : nlohmann::json(q);
  j["eps"] = eps;
  j["dual_q_norm_field"] = dual_q_norm_field;
  j["dual_q_norm_div"] = dual_q_norm_div;
  j["objective"] = objective;
  return j;
}

VectorFieldCandidate VectorFieldCandidate::from_json(const nlohmann::json& j) {
  try {
    VectorFieldCandidate c;
    c.spacing = j.at("spacing").get<std::vector<double>>();
    c.origin = j.at("origin").get<std::vector<double>>();
    c.shape = j.at("shape").get<std::vector<std::size_t>>();
    c.components = j.at("components").get<std::vector<std::vector<double>>>();
    c.divergence = j.at("divergence").get<std::vector<double>>();
    c.q = j.at("q").is_string() ? kInf : j.at("q").get<double>();
    c.eps = j.at("eps").get<double>();
    c.dual_q_norm_field = j.at("dual_q_norm_field").get<double>();
    c.dual_q_norm_div = j.at("dual_q_norm_div").get<double>();
    c.objective = j.at("objective").get<double>();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("malformed vector field JSON: ") + e.what());
  }
}

std::vector<double> forward_divergence(const GridFunction& f, const std::vector<std::vector<double>>& components) {
  const int n = f.dim();
  if (components.size() != static_cast<std::size_t>(n))
    throw Error(ErrorKind::InvalidInput, "field needs one component per dimension");
  Stencil st(f, unit_axes(n));
  std::vector<double> x(f.size() * st.comps);
  for (std::size_t c = 0; c < st.comps; ++c) {
    if (components[c].size() != f.size()) throw Error(ErrorKind::InvalidInput, "component size mismatch");
    for (std::size_t y = 0; y < f.size(); ++y) x[y * st.comps + c] = components[c][y];
  }
  std::vector<double> out;
  st.div(x, out);
  return out;
}

VectorFieldCandidate make_field_candidate(const GridFunction& f, std::vector<std::vector<double>> components,
                                          double p, double eps) {
  VectorFieldCandidate c;
  c.spacing = f.spacing();
  c.origin = f.origin();
  c.shape = f.shape();
  c.q = dual_exponent(p);
  c.eps = eps;
  c.divergence = forward_divergence(f, components);
  c.components = std::move(components);
  const double vol = f.cell_volume();
  std::vector<double> w(f.size(), vol);
  std::vector<double> lengths(f.size(), 0.0);
  for (std::size_t y = 0; y < f.size(); ++y) {
    double s = 0.0;
    for (const auto& comp : c.components) s += comp[y] * comp[y];
    lengths[y] = std::sqrt(s);
  }
  c.dual_q_norm_field = weighted_norm(lengths, w, c.q);
  c.dual_q_norm_div = weighted_norm(c.divergence, w, c.q);
  double obj = 0.0;
  for (std::size_t y = 0; y < f.size(); ++y) obj += c.divergence[y] * f.values()[y];
  c.objective = obj * vol;
  return c;
}

double sigma_upper_constant(int n) {
  const double nn = static_cast<double>(n);
  return 2.0 * (1.0 + std::sqrt(nn) + nn);
}

double sigma_upper(const GridFunction& f, double p, double eps, const ModulusCurve& omega) {
  if (omega.kind != ModulusKind::Omega) throw Error(ErrorKind::InvalidInput, "sigma_upper needs an omega curve");
  if (!(eps > 0.0)) throw Error(ErrorKind::ParameterDomain, "sigma_upper needs eps > 0");
  (void)p;
  omega.validate();
  if (omega.eps.empty() || eps > omega.eps.back() * (1.0 + 1e-12))
    throw Error(ErrorKind::InsufficientCoverage, "omega curve does not cover eps");
  const auto it = std::lower_bound(omega.eps.begin(), omega.eps.end(), eps * (1.0 - 1e-12));
  const std::size_t k = static_cast<std::size_t>(it - omega.eps.begin());
  // omega is nondecreasing: the next grid value bounds it from above
  return sigma_upper_constant(f.dim()) * omega.values[k];
}

ModulusCurve sigma_upper_curve(const GridFunction& f, double p, const ModulusCurve& omega) {
  if (omega.kind != ModulusKind::Omega) throw Error(ErrorKind::InvalidInput, "sigma_upper_curve needs an omega curve");
  ModulusCurve c;
  c.kind = ModulusKind::Sigma;
  c.bound = BoundType::Upper;
  c.eps = omega.eps;
  const double k = sigma_upper_constant(f.dim());
  for (double v : omega.values) c.values.push_back(k * v);
  c.saturation = k * 2.0 * lp_norm(f, p);
  return c;
}

DirectionalField constructive_field(const GridFunction& f, double p, std::span<const std::ptrdiff_t> h_cells) {
  const int n = f.dim();
  if (h_cells.size() != static_cast<std::size_t>(n)) throw Error(ErrorKind::InvalidInput, "shift has wrong dimension");
  std::ptrdiff_t g = 0;
  for (auto v : h_cells) g = std::gcd(g, std::abs(v));
  if (g == 0) throw Error(ErrorKind::ParameterDomain, "constructive field needs h != 0");
  if (!(p >= 1.0) || std::isinf(p)) throw Error(ErrorKind::ParameterDomain, "p must lie in [1, inf)");

  DirectionalField out;
  for (auto v : h_cells) out.direction.push_back(v / g);
  const double q = dual_exponent(p);
  Stencil st(f, {out.direction});
  out.step = st.step[0];
  out.length = static_cast<double>(g) * out.step;

  std::vector<std::ptrdiff_t> twice(h_cells.begin(), h_cells.end());
  for (auto& v : twice) v *= 2;
  const GridFunction moved = shift_cells(f, twice);
  std::vector<double> gv(f.size());
  for (std::size_t y = 0; y < f.size(); ++y) gv[y] = moved.values()[y] - f.values()[y];
  const GridFunction gf = f.with_values(gv);
  const double gnorm = lp_norm(gf, p);
  out.half_shift_norm = 0.5 * gnorm;
  out.psi.assign(f.size(), 0.0);
  if (gnorm == 0.0) return out;

  std::vector<double> phi(f.size(), 0.0);
  const double denom = p == 1.0 ? 1.0 : std::pow(gnorm, p - 1.0);
  for (std::size_t y = 0; y < f.size(); ++y) {
    if (gv[y] == 0.0) continue;
    const double s = gv[y] > 0.0 ? 1.0 : -1.0;
    phi[y] = p == 1.0 ? s : s * abs_pow(gv[y], p - 1.0) / denom;
  }

  const double vol = f.cell_volume();
  std::vector<double> w(f.size(), vol);
  auto assess = [&](const std::vector<double>& witness, bool smoothed) {
    std::vector<double> psi;
    if (!telescoped(f, st, witness, out.direction, 2 * g, psi)) {
      if (!smoothed) throw Error(ErrorKind::DomainExceeded, "constructive field does not fit inside the grid");
      return;
    }
    std::vector<double> dpsi;
    st.div(psi, dpsi);
    double obj = 0.0;
    for (std::size_t y = 0; y < f.size(); ++y) obj += dpsi[y] * f.values()[y];
    obj *= vol;
    const double dn = weighted_norm(dpsi, w, q);
    const double fn = weighted_norm(psi, w, q);
    const double value = field_ratio(obj, dn, fn, out.length);
    if (value > out.value) {
      out.value = value;
      out.objective = obj;
      out.d_norm = dn;
      out.field_norm = fn;
      out.psi = std::move(psi);
      out.smoothed = smoothed;
    }
  };
  assess(phi, false);
  assess(smooth3(f, phi), true);
  return out;
}

double sigma_constructive(const GridFunction& f, double p, std::span<const double> h) {
  const int n = f.dim();
  if (h.size() != static_cast<std::size_t>(n)) throw Error(ErrorKind::InvalidInput, "shift has wrong dimension");
  std::vector<std::ptrdiff_t> cells(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    cells[static_cast<std::size_t>(i)] =
        static_cast<std::ptrdiff_t>(std::llround(h[static_cast<std::size_t>(i)] / f.spacing()[static_cast<std::size_t>(i)]));
  return constructive_field(f, p, cells).value;
}

SigmaResult sigma_variational(const GridFunction& f, double p, double eps, int budget) {
  if (!(eps > 0.0)) throw Error(ErrorKind::ParameterDomain, "sigma_variational needs eps > 0");
  if (budget < 1) throw Error(ErrorKind::ParameterDomain, "budget must be >= 1");
  const int n = f.dim();
  const auto C = static_cast<std::size_t>(n);
  SigmaResult res;
  if (f.is_zero()) {
    res.field = make_field_candidate(f, std::vector<std::vector<double>>(C, std::vector<double>(f.size(), 0.0)), p, eps);
    return res;
  }
  Stencil st(f, unit_axes(n));
  RatioProblem pb = make_problem(f, st, p, eps);

  std::vector<double> x0(f.size() * C, 0.0);
  double start = -1.0;
  for (int axis = 0; axis < n; ++axis) {
    double cons = 0.0;
    const AscentResult a = directional_ascent(f, p, eps, axis_cells(n, axis, 1), budget, &cons);
    res.constructive = std::max(res.constructive, cons);
    if (a.best.value > start) {
      start = a.best.value;
      std::fill(x0.begin(), x0.end(), 0.0);
      for (std::size_t y = 0; y < f.size(); ++y) x0[y * C + static_cast<std::size_t>(axis)] = a.best.x[y];
    }
  }
  const AscentResult full = maximize_ratio(pb, std::move(x0), budget);
  res.iterations = full.iterations;
  std::vector<std::vector<double>> comps(C, std::vector<double>(f.size()));
  for (std::size_t y = 0; y < f.size(); ++y)
    for (std::size_t c = 0; c < C; ++c) comps[c][y] = full.best.x[y * C + c];
  res.field = make_field_candidate(f, std::move(comps), p, eps);
  res.value = std::max(0.0, full.best.value);
  return res;
}

double sigma_tilde_variational(const GridFunction& f, double p, double eps, std::span<const double> e, int budget) {
  if (!(eps > 0.0)) throw Error(ErrorKind::ParameterDomain, "sigma_tilde_variational needs eps > 0");
  if (budget < 1) throw Error(ErrorKind::ParameterDomain, "budget must be >= 1");
  const auto d = snap_direction(f, e);
  if (f.is_zero()) return 0.0;
  return std::max(0.0, directional_ascent(f, p, eps, d, budget).best.value);
}

ModulusCurve concave_envelope(const ModulusCurve& curve) {
  curve.validate();
  ModulusCurve out = curve;
  const std::size_t K = curve.size();
  std::vector<double> xs{0.0}, ys{0.0};
  double run = 0.0;
  for (std::size_t k = 0; k < K; ++k) {
    run = std::max(run, curve.values[k]);
    xs.push_back(curve.eps[k]);
    ys.push_back(run);
  }
  // upper hull, left to right
  std::vector<std::size_t> hull;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    while (hull.size() >= 2) {
      const std::size_t a = hull[hull.size() - 2], b = hull.back();
      const double cross = (xs[b] - xs[a]) * (ys[i] - ys[a]) - (ys[b] - ys[a]) * (xs[i] - xs[a]);
      if (cross >= 0.0) hull.pop_back();
      else break;
    }
    hull.push_back(i);
  }
  std::size_t seg = 0;
  for (std::size_t k = 0; k < K; ++k) {
    const double s = curve.eps[k];
    while (seg + 1 < hull.size() && xs[hull[seg + 1]] < s) ++seg;
    const std::size_t a = hull[seg], b = hull[std::min(seg + 1, hull.size() - 1)];
    double v = ys[b];
    if (b != a && xs[b] > xs[a]) v = ys[a] + (ys[b] - ys[a]) * (s - xs[a]) / (xs[b] - xs[a]);
    out.values[k] = std::max(v, ys[k + 1]);
  }
  return out;
}

ModulusCurve sigma_curve_variational(const GridFunction& f, double p, std::span<const double> eps_grid, int budget) {
  ModulusCurve c;
  c.kind = ModulusKind::Sigma;
  c.bound = BoundType::Lower;
  c.eps.assign(eps_grid.begin(), eps_grid.end());
  for (double e : c.eps) c.values.push_back(sigma_variational(f, p, e, budget).value);
  c.saturation = lp_norm(f, p);
  return concave_envelope(c);
}

ShapeCheck check_curve_shape(std::span<const double> s, std::span<const double> v, double rel_tol) {
  ShapeCheck out;
  if (s.size() != v.size()) throw Error(ErrorKind::InvalidInput, "curve length mismatch");
  const std::size_t K = s.size();
  if (K < 2) return out;
  double scale = 0.0;
  for (double x : v) scale = std::max(scale, std::fabs(x));
  if (scale == 0.0) return out;
  auto note = [&](double excess, bool& flag) {
    if (excess > rel_tol) flag = false;
    out.worst_violation = std::max(out.worst_violation, excess);
  };
  for (std::size_t k = 0; k + 1 < K; ++k) note((v[k] - v[k + 1]) / scale, out.nondecreasing);
  for (std::size_t k = 0; k + 2 < K; ++k) {
    const double s0 = (v[k + 1] - v[k]) / (s[k + 1] - s[k]);
    const double s1 = (v[k + 2] - v[k + 1]) / (s[k + 2] - s[k + 1]);
    const double ref = std::max({std::fabs(s0), std::fabs(s1), scale / (s[K - 1] - s[0])});
    note((s1 - s0) / ref, out.concave);
  }
  auto chord = [&](double x) {
    const auto it = std::lower_bound(s.begin(), s.end(), x);
    const std::size_t k = static_cast<std::size_t>(it - s.begin());
    if (k < K && s[k] == x) return v[k];
    const double w = (x - s[k - 1]) / (s[k] - s[k - 1]);
    return (1.0 - w) * v[k - 1] + w * v[k];
  };
  for (std::size_t i = 0; i < K; ++i)
    for (std::size_t j = i; j < K; ++j) {
      const double x = s[i] + s[j];
      if (x > s[K - 1]) break;
      note((chord(x) - v[i] - v[j]) / scale, out.subadditive);
    }
  return out;
}

AdjointCurve adjoint_transform(const ModulusCurve& curve, double rel_tol) {
  curve.validate();
  if (curve.size() == 0) throw Error(ErrorKind::InsufficientCoverage, "empty curve");
  AdjointCurve out;
  for (std::size_t k = curve.size(); k-- > 0;) {
    if (!(curve.values[k] > 0.0))
      throw Error(ErrorKind::InsufficientCoverage, "adjoint transform needs positive curve values");
    out.s_grid.push_back(1.0 / curve.eps[k]);
    out.values.push_back(curve.values[k] / curve.eps[k]);
  }
  out.shape = check_curve_shape(out.s_grid, out.values, rel_tol);
  return out;
}

Bracketed V_functional(const ModulusCurve& sigma_curve, const BesovParams& params, double large_scale_bound) {
  TailModel tails;
  tails.large_scale_bound =
      large_scale_bound >= 0.0 ? large_scale_bound : sigma_curve.saturation.value_or(kInf);
  tails.small_scale_factor = 1.0;  // concave with sigma(0) = 0
  return log_grid_functional(sigma_curve, params, tails);
}

}  // namespace besov
