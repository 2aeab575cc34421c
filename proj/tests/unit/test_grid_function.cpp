#include <doctest.h>

#include <cmath>

#include "besov/error.hpp"
#include "besov/grid_function.hpp"
#include "corpus_helpers.hpp"

using namespace besov;
using testing_support::indicator_1d;

TEST_CASE("sampling places cells inside the support box") {
  const auto f = indicator_1d(1.0 / 64);
  CHECK(f.integral() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(lp_norm(f, 2.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(f.values().front() == 0.0);
  CHECK(f.values().back() == 0.0);
}

TEST_CASE("boundary layer must vanish") {
  CHECK_THROWS_AS(GridFunction({1.0}, {0.0}, {3}, {1.0, 0.0, 0.0}, Box{{0.0}, {1.0}}), Error);
}

TEST_CASE("json round trip is exact") {
  const auto f = testing_support::bump_1d(0.05);
  const auto g = GridFunction::from_json(nlohmann::json::parse(f.to_json().dump()));
  CHECK(g.values() == f.values());
  CHECK(g.origin() == f.origin());
}

TEST_CASE("omega of the indicator is min(2 eps, 2)") {
  const double h = 1.0 / 64;
  const auto f = indicator_1d(h);
  for (double eps : {0.02, 0.1, 0.25, 0.5, 0.9, 1.0, 1.7, 3.0}) {
    const auto w = omega_p(f, 1.0, eps);
    CHECK_FALSE(w.unresolved);
    CHECK(std::fabs(w.value - std::min(2 * eps, 2.0)) <= 2 * h);
  }
  CHECK(omega_p(f, 1.0, h / 3).unresolved);
}

TEST_CASE("shift norm matches an independent sum") {
  const auto f = testing_support::box_2d(0.1);
  const std::vector<std::ptrdiff_t> k{3, -2};
  // box shifted by (0.3, -0.2): symmetric difference area 2 (1 - 0.7 * 0.8)
  CHECK(shift_difference_norm(f, 1.0, k) == doctest::Approx(2 * (1 - 0.7 * 0.8)).epsilon(1e-12));
  const auto g = shift_cells(f, k);
  double s = 0;
  for (std::size_t i = 0; i < f.size(); ++i) s += std::fabs(g.values()[i] - f.values()[i]);
  CHECK(s * f.cell_volume() == doctest::Approx(shift_difference_norm(f, 1.0, k)).epsilon(1e-12));
}

TEST_CASE("shift outside the interior throws") {
  const auto f = indicator_1d(0.1, 0.2);
  const std::vector<double> h{5.0};
  CHECK_THROWS_AS(shift(f, h), Error);
}

TEST_CASE("heat semigroup preserves mass and contracts") {
  const auto f = testing_support::bump_1d(0.02, 3.0);
  const auto g = heat_semigroup(f, 0.05);
  CHECK(g.integral() == doctest::Approx(f.integral()).epsilon(1e-12));
  CHECK(lp_norm(g, 2.0) <= lp_norm(f, 2.0));
  CHECK_THROWS_AS(heat_semigroup(f, 100.0), Error);
}

TEST_CASE("Besov seminorm of the indicator") {
  // omega_1 = min(2s, 2): int_0^inf (s^{-1/2} omega)^2 ds/s = 8
  ModulusCurve c;
  c.kind = ModulusKind::Omega;
  c.eps = geometric_grid(1e-6, 1e4, std::pow(2.0, 1.0 / 64));
  for (double s : c.eps) c.values.push_back(std::min(2 * s, 2.0));
  TailModel tails{2.0, 0.5};
  const auto v = log_grid_functional(c, {0.5, 1.0, 2.0}, tails);
  CHECK(v.value == doctest::Approx(std::sqrt(8.0)).epsilon(1e-4));
  CHECK(v.lower <= v.value);
  CHECK(v.value <= v.upper);
  c.eps.push_back(c.eps.back() * 2);
  c.values.push_back(2.0);
  c.eps = {0.25, 0.5, 1.0, 2.0, 4.0};
  c.values = {0.5, 1.0, 2.0, 2.0, 2.0};
  const auto sup = log_grid_functional(c, {0.5, 1.0, kInf}, tails);
  CHECK(sup.value == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("curve bounds") {
  ModulusCurve c;
  c.eps = {1.0, 2.0, 4.0};
  c.values = {1.0, 1.5, 2.0};
  c.saturation = 3.0;
  CHECK(c.upper_at(3.0) == doctest::Approx(2.0));
  CHECK(c.upper_at(1.5) == doctest::Approx(1.5));
  CHECK(c.upper_at(1.2) == doctest::Approx(1.2));
  CHECK(c.upper_at(8.0) == doctest::Approx(3.0));
  CHECK(c.lower_at(0.5) == doctest::Approx(0.5));
  CHECK(c.lower_at(3.0) == doctest::Approx(1.75));
  const auto d = ModulusCurve::from_json(c.to_json());
  CHECK(d.values == c.values);
}
