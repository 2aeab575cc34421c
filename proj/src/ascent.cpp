#include "besov/ascent.hpp"

#include <algorithm>
#include <cmath>

#include "besov/error.hpp"
#include "besov/numeric.hpp"

namespace besov {

namespace {

constexpr double kSmoothMaxQ = 32.0;   // stand-in exponent for the sup norm gradient
constexpr double kSmoothMaxPair = 16.0;

struct Workspace {
  std::vector<double> dx, fx, lengths;
};

double pointwise_lengths(const std::vector<double>& fx, std::size_t comps, std::vector<double>& out) {
  const std::size_t pts = fx.size() / comps;
  out.resize(pts);
  for (std::size_t j = 0; j < pts; ++j) {
    if (comps == 1) {
      out[j] = std::fabs(fx[j]);
      continue;
    }
    double s = 0.0;
    for (std::size_t c = 0; c < comps; ++c) s += fx[j * comps + c] * fx[j * comps + c];
    out[j] = std::sqrt(s);
  }
  return 0.0;
}

void apply_field(const RatioProblem& pb, const std::vector<double>& x, std::vector<double>& out) {
  if (pb.field) {
    out.assign(pb.field_points * pb.field_components, 0.0);
    pb.field(x, out);
  } else {
    out = x;
  }
}

// Gradient of the weighted L^q norm of v (q = inf uses a large finite
// exponent with unit weights), computed relative to max |v| to avoid
// overflow.
void norm_gradient(const std::vector<double>& v, const std::vector<double>& w, double q, std::vector<double>& g) {
  g.assign(v.size(), 0.0);
  const bool sup = std::isinf(q);
  const double qs = sup ? kSmoothMaxQ : q;
  double m = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j)
    if (w.empty() || w[j] > 0.0) m = std::max(m, std::fabs(v[j]));
  if (m == 0.0) return;
  double s = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    const double wj = w.empty() ? 1.0 : (sup ? (w[j] > 0.0 ? 1.0 : 0.0) : w[j]);
    if (wj == 0.0) continue;
    const double u = std::fabs(v[j]) / m;
    const double t = abs_pow(u, qs - 1.0);
    s += wj * t * u;
    g[j] = wj * t * (v[j] < 0.0 ? -1.0 : 1.0);
  }
  const double scale = std::pow(s, 1.0 / qs - 1.0);
  for (double& x : g) x *= scale;
}

void clip_lengths(std::vector<double>& x, std::size_t comps, double cap) {
  for (std::size_t j = 0; j < x.size(); j += comps) {
    double s = 0.0;
    for (std::size_t c = 0; c < comps; ++c) s += x[j + c] * x[j + c];
    const double len = std::sqrt(s);
    if (len > cap)
      for (std::size_t c = 0; c < comps; ++c) x[j + c] *= cap / len;
  }
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

void apply_mask(const RatioProblem& pb, std::vector<double>& x) {
  if (pb.free_mask.empty()) return;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!pb.free_mask[i]) x[i] = 0.0;
}

RatioState evaluate(const RatioProblem& pb, std::vector<double> x, Workspace& ws) {
  RatioState st;
  st.objective = dot(pb.objective, x);
  ws.dx.assign(pb.div_size, 0.0);
  pb.div(x, ws.dx);
  apply_field(pb, x, ws.fx);
  pointwise_lengths(ws.fx, pb.field_components, ws.lengths);
  st.div_norm = weighted_norm(ws.dx, pb.div_weights, pb.q);
  st.field_norm = weighted_norm(ws.lengths, pb.field_weights, pb.q);
  const double m = std::max(st.div_norm, st.field_norm / pb.eps);
  st.value = m > 0.0 ? st.objective / m : 0.0;
  st.x = std::move(x);
  return st;
}

void rescale(RatioState& st, const RatioProblem& pb) {
  const double m = std::max(st.div_norm, st.field_norm / pb.eps);
  if (!(m > 0.0)) return;
  for (double& v : st.x) v /= m;
  st.objective /= m;
  st.div_norm /= m;
  st.field_norm /= m;
}

}  // namespace

RatioState evaluate_ratio(const RatioProblem& problem, std::vector<double> x) {
  Workspace ws;
  return evaluate(problem, std::move(x), ws);
}

AscentResult maximize_ratio(const RatioProblem& pb, std::vector<double> x0, int budget) {
  if (budget < 1) throw Error(ErrorKind::ParameterDomain, "optimizer budget must be >= 1");
  if (!(pb.eps > 0.0)) throw Error(ErrorKind::ParameterDomain, "optimizer needs eps > 0");
  if (x0.size() != pb.dim || pb.objective.size() != pb.dim)
    throw Error(ErrorKind::InvalidInput, "optimizer start point has wrong size");
  Workspace ws;
  apply_mask(pb, x0);
  if (norm2(x0) == 0.0) {
    x0 = pb.objective;
    apply_mask(pb, x0);
  }
  AscentResult out;
  RatioState cur = evaluate(pb, std::move(x0), ws);
  if (!std::isfinite(cur.value)) throw Error(ErrorKind::OptimizerDiverged, "non-finite objective at start");
  if (cur.value < 0.0) {
    // flipping the sign of x flips the sign of the objective
    for (double& v : cur.x) v = -v;
    cur.objective = -cur.objective;
    cur.value = -cur.value;
  }
  rescale(cur, pb);
  if (!(std::max(cur.div_norm, cur.field_norm / pb.eps) > 0.0)) {
    out.best = cur;
    return out;
  }

  std::vector<double> history{cur.value};
  std::vector<double> gA, gB, gradA, gradB, grad(pb.dim), trial(pb.dim);
  double eta = -1.0;
  for (int it = 0; it < budget; ++it) {
    // recompute D x and F x at the current point
    ws.dx.assign(pb.div_size, 0.0);
    pb.div(cur.x, ws.dx);
    apply_field(pb, cur.x, ws.fx);
    pointwise_lengths(ws.fx, pb.field_components, ws.lengths);

    const double A = cur.div_norm;
    const double C = cur.field_norm / pb.eps;
    const double M = std::max(A, C);
    const double ms = std::pow(std::pow(A / M, kSmoothMaxPair) + std::pow(C / M, kSmoothMaxPair), 1.0 / kSmoothMaxPair);
    const double wA = std::pow(A / M / ms, kSmoothMaxPair - 1.0);
    const double wC = std::pow(C / M / ms, kSmoothMaxPair - 1.0);

    norm_gradient(ws.dx, pb.div_weights, pb.q, gA);
    gradA.assign(pb.dim, 0.0);
    pb.div_adjoint(gA, gradA);

    norm_gradient(ws.lengths, pb.field_weights, pb.q, gB);
    std::vector<double> chain(ws.fx.size(), 0.0);
    for (std::size_t j = 0; j < ws.lengths.size(); ++j) {
      if (ws.lengths[j] == 0.0) continue;
      for (std::size_t c = 0; c < pb.field_components; ++c) {
        const std::size_t k = j * pb.field_components + c;
        chain[k] = gB[j] * ws.fx[k] / ws.lengths[j];
      }
    }
    if (pb.field_adjoint) {
      gradB.assign(pb.dim, 0.0);
      pb.field_adjoint(chain, gradB);
    } else {
      gradB = std::move(chain);
    }

    const double R = cur.value;
    for (std::size_t i = 0; i < pb.dim; ++i)
      grad[i] = (pb.objective[i] - R * (wA * gradA[i] + wC * gradB[i] / pb.eps)) / M;
    apply_mask(pb, grad);
    const double gn = norm2(grad);
    if (!std::isfinite(gn)) throw Error(ErrorKind::OptimizerDiverged, "non-finite gradient");
    if (gn == 0.0) break;
    if (eta < 0.0) eta = 0.1 * norm2(cur.x) / gn;

    bool improved = false;
    for (int tries = 0; tries < 30; ++tries) {
      for (std::size_t i = 0; i < pb.dim; ++i) trial[i] = cur.x[i] + eta * grad[i];
      if (pb.clip_field_sup && !pb.field) clip_lengths(trial, pb.field_components, cur.field_norm);
      RatioState cand = evaluate(pb, trial, ws);
      if (!std::isfinite(cand.value)) throw Error(ErrorKind::OptimizerDiverged, "non-finite objective");
      if (cand.value > cur.value) {
        rescale(cand, pb);
        cur = std::move(cand);
        improved = true;
        eta *= 2.0;
        break;
      }
      eta *= 0.5;
    }
    ++out.iterations;
    if (!improved) break;
    history.push_back(cur.value);
    const std::size_t h = history.size();
    if (h > 20 && (cur.value - history[h - 21]) <= 1e-6 * std::fabs(cur.value)) break;
  }
  out.best = std::move(cur);
  return out;
}

}  // namespace besov
