#include <doctest.h>

#include <cmath>

#include "besov/embedding.hpp"
#include "besov/error.hpp"
#include "corpus_helpers.hpp"

using namespace besov;

namespace {

ModulusCurve upper_curve(const GridFunction& f, double p) {
  const auto eps = geometric_grid(f.max_spacing(), 4.0 * f.support().diameter(), std::pow(2.0, 0.25));
  return sigma_upper_curve(f, p, omega_curve(f, p, eps));
}

MonotoneWeight power_weight(double e) {
  MonotoneWeight U;
  U.name = "t^" + std::to_string(e);
  U.fn = [e](double t) { return std::pow(t, e); };
  U.strictly_increasing = true;
  U.zero_at_origin = true;
  U.growth = {{1.0, 1.0}};
  return U;
}

}  // namespace

TEST_CASE("sphere areas and embedding constants") {
  CHECK(nu_n(1) == 2.0);
  CHECK(nu_n(2) == 2.0 * kPi);
  CHECK(nu_n(3) == 4.0 * kPi);
  CHECK(nu_n(4) == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-14));
  CHECK(embedding_constant(1, 1.0).value == 1.0);
  CHECK(embedding_constant(2, 1.0).value == doctest::Approx(1.1591549431).epsilon(1e-10));
  CHECK(embedding_constant(3, 1.0).value == doctest::Approx(1.0795774715).epsilon(1e-10));
  CHECK_THROWS_AS(embedding_constant(2, 2.0), Error);
  CHECK_THROWS_AS(embedding_constant(1, 1.5), Error);
}

TEST_CASE("one-dimensional Newtonian field is the antiderivative") {
  const auto u = testing_support::indicator_1d(1.0 / 32);
  const auto nf = newtonian_gradient_field(u, 1, 1.0);
  CHECK(nf.field.dual_q_norm_field == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(nf.divergence_defect < 1e-12);
  CHECK(nf.field_norm_upper <= nf.constant_bound * (1 + 1e-12));
}

TEST_CASE("two-dimensional Newtonian field stays under the constant") {
  auto bump = [](std::span<const double> x) {
    const double r2 = x[0] * x[0] + x[1] * x[1];
    return r2 < 1.0 ? std::exp(-1.0 / (1.0 - r2)) : 0.0;
  };
  double defect_prev = kInf;
  for (double h : {0.25, 0.125}) {
    auto u = GridFunction::sample(bump, Box{{-1, -1}, {1, 1}}, {h, h}, {1.5, 1.5});
    u = u.scaled(1.0 / lp_norm(u, kInf));
    const auto nf = newtonian_gradient_field(u, 2, 1.0);
    CHECK(nf.field_norm_upper <= nf.constant_bound);
    CHECK(nf.divergence_defect < defect_prev);
    defect_prev = nf.divergence_defect;
  }
}

TEST_CASE("local energy on the indicator") {
  const auto f = testing_support::indicator_1d(1.0 / 64);
  const auto curve = upper_curve(f, 1.0);
  std::vector<char> mask(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) mask[i] = f.values()[i] != 0.0;
  const auto rep = local_energy_check(f, mask, 1.0, curve);
  CHECK(rep.lhs == doctest::Approx(1.0));
  CHECK(rep.rhs == doctest::Approx(12.0));
  CHECK(rep.pass());
  std::fill(mask.begin(), mask.end(), 0);
  CHECK(local_energy_check(f, mask, 1.0, curve).lhs == 0.0);
}

TEST_CASE("tail measure of the cusp") {
  const auto f = testing_support::cusp_1d(1.0 / 256);
  const auto curve = upper_curve(f, 1.0);
  const auto rep = tail_measure_check(f, 1.0, log_spaced(0.5, 50.0, 12), curve);
  CHECK(rep.verdict == Verdict::Pass);
  // superlevel measure of |x|^{-1/2} on [-1, 1] is min(2, 2 s^{-2})
  for (const auto& row : rep.details["rows"]) {
    const double s = row["threshold"].get<double>();
    CHECK(row["measure"].get<double>() <= std::min(2.0, 2.0 / (s * s)) + 2.0 / 256);
  }
  const auto ind = testing_support::indicator_1d(1.0 / 64);
  CHECK(tail_measure_check(ind, 1.0, {1.0, 2.0}, upper_curve(ind, 1.0)).verdict == Verdict::Inconclusive);
}

TEST_CASE("Stieltjes sums") {
  MonotoneWeight id{"t", [](double t) { return t; }};
  CHECK(stieltjes_integral(id, [](double) { return 1.0; }, 1.0, 2.0).value == doctest::Approx(1.0));
  MonotoneWeight step{"step", [](double t) { return t >= 1.5 ? 3.0 : 0.0; }};
  CHECK(stieltjes_integral(step, [](double t) { return t * t; }, 1.0, 2.0).value ==
        doctest::Approx(3.0 * 2.25).epsilon(1e-5));
  MonotoneWeight flat{"c", [](double) { return 4.0; }};
  CHECK(stieltjes_integral(flat, [](double) { return 1.0; }, 1.0, 2.0).value == 0.0);
  MonotoneWeight down{"down", [](double t) { return -t; }};
  CHECK_THROWS_AS(stieltjes_integral(down, [](double) { return 1.0; }, 1.0, 2.0), Error);
}

TEST_CASE("Ulyanov checks on the cusp") {
  const auto f = testing_support::cusp_1d(1.0 / 256);
  const auto curve = upper_curve(f, 1.0);
  MonotoneWeight logw{"log1p", [](double t) { return std::log1p(t); }};
  const auto lu = ulyanov_LU_check(f, 1.0, logw, 1.0, curve);
  CHECK(lu.verdict == Verdict::Pass);
  for (double e : {1.0, 1.25, 1.5}) {
    const auto rep = ulyanov_U_check(f, 1.0, power_weight(e), 0.01, curve);
    CHECK(rep.verdict == Verdict::Pass);
    CHECK(rep.details.at("change_of_variables_gap").get<double>() < 1e-6);
  }
  MonotoneWeight flat{"const", [](double) { return 2.0; }};
  const auto c = ulyanov_LU_check(f, 1.0, flat, 1.0, curve);
  CHECK(c.lhs == doctest::Approx(c.rhs).epsilon(1e-12));
}
