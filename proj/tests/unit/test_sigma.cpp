#include <doctest.h>

#include <cmath>

#include "besov/sigma.hpp"
#include "corpus_helpers.hpp"

using namespace besov;
using testing_support::indicator_1d;

TEST_CASE("sigma_upper on the indicator") {
  const auto f = indicator_1d(1.0 / 64);
  const std::vector<double> eps{0.125, 0.25, 0.5};
  const auto w = omega_curve(f, 1.0, eps);
  CHECK(sigma_upper(f, 1.0, 0.25, w) == doctest::Approx(3.0));
  CHECK(sigma_upper(GridFunction::zeros_like(f), 1.0, 0.25, omega_curve(GridFunction::zeros_like(f), 1.0, eps)) == 0.0);
}

TEST_CASE("constructive bound on the indicator") {
  const auto f = indicator_1d(1.0 / 64);
  const std::vector<double> h{0.25};
  const double v = sigma_constructive(f, 1.0, h);
  // ||f_{0.5} - f||_1 = 1, closed form
  CHECK(v >= 0.5 - 1e-12);
  CHECK(v <= 3.0);
}

TEST_CASE("constructive bound for p = 2 in two dimensions") {
  const auto f = testing_support::box_2d(1.0 / 16);
  const std::vector<std::ptrdiff_t> h{2, 1};
  const auto cf = constructive_field(f, 2.0, h);
  CHECK(cf.value >= cf.half_shift_norm - 1e-12);
}

TEST_CASE("variational sigma brackets") {
  const auto f = indicator_1d(1.0 / 32);
  const auto r = sigma_variational(f, 1.0, 0.25, 50);
  CHECK(r.value >= 0.5);
  CHECK(r.value <= 3.0);
  CHECK(r.field.dual_q_norm_div <= 1.0 + 1e-9);
  CHECK(r.field.dual_q_norm_field <= 0.25 * (1.0 + 1e-9));
  CHECK(r.field.compactly_supported());
  const auto r2 = sigma_variational(f, 1.0, 0.25, 100);
  CHECK(r2.value >= r.value);
  const std::vector<double> e{1.0};
  const double t = sigma_tilde_variational(f, 1.0, 0.25, e, 50);
  CHECK(t >= 0.5);
  CHECK(t <= r.value + 1e-12);
  CHECK(sigma_variational(GridFunction::zeros_like(f), 1.0, 0.25, 10).value == 0.0);
}

TEST_CASE("adjoint transform") {
  ModulusCurve c;
  c.eps = log_spaced(0.01, 100.0, 41);
  for (double s : c.eps) c.values.push_back(std::sqrt(s));
  const auto a = adjoint_transform(c);
  for (std::size_t k = 0; k < a.s_grid.size(); ++k)
    CHECK(a.values[k] == doctest::Approx(std::sqrt(a.s_grid[k])).epsilon(1e-12));
  CHECK(a.shape.concave);
  CHECK(a.shape.nondecreasing);
  for (auto& v : c.values) v = 0.0;
  CHECK_THROWS(adjoint_transform(c));
}

TEST_CASE("concave envelope is a nondecreasing concave majorant") {
  ModulusCurve c;
  c.eps = {1, 2, 3, 4, 5};
  c.values = {1.0, 0.5, 2.5, 2.6, 2.0};
  const auto e = concave_envelope(c);
  const auto shape = check_curve_shape(e.eps, e.values, 1e-12);
  CHECK(shape.nondecreasing);
  CHECK(shape.concave);
  CHECK(shape.subadditive);
  for (std::size_t k = 0; k < c.eps.size(); ++k) CHECK(e.values[k] >= c.values[k]);
}

TEST_CASE("V functional sup form") {
  ModulusCurve c;
  c.kind = ModulusKind::Sigma;
  c.eps = {0.25, 0.5, 1.0, 2.0};
  for (double s : c.eps) c.values.push_back(std::min(2 * s, 2.0));
  CHECK(V_functional(c, {0.5, 1.0, kInf}, 2.0).value == doctest::Approx(2.0));
}
