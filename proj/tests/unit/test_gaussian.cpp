#include <doctest.h>

#include <cmath>

#include "besov/error.hpp"
#include "besov/gaussian.hpp"

using namespace besov;

namespace {

// E|X|^r for X ~ N(0,1) by composite Simpson on [-40, 40]
double abs_moment_simpson(double r) {
  const int N = 400000;
  const double a = -40.0, h = 80.0 / N;
  double s = 0.0;
  for (int i = 0; i <= N; ++i) {
    const double x = a + i * h;
    const double w = (i == 0 || i == N) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    s += w * std::pow(std::fabs(x), r) * std::exp(-0.5 * x * x);
  }
  return s * h / 3.0 / std::sqrt(2.0 * kPi);
}

HermiteFunction h1() { return HermiteFunction(HermiteExpansion::basis({1})); }

HermiteFunction truncated_root() {
  return HermiteFunction(1, [](std::span<const double> x) { return std::sqrt(std::min(std::fabs(x[0]), 2.0)); },
                         {-2.0, 0.0, 2.0});
}

}  // namespace

TEST_CASE("Gauss-Hermite rule reproduces Gaussian moments") {
  for (int m : {1, 5, 10, 40}) {
    HermiteGrid g(m, 1);
    double total = 0.0;
    for (double w : g.weights_1d()) total += w;
    CHECK(std::fabs(total - 1.0) < 1e-12);
    double dfact = 1.0;  // (k-1)!!
    for (int k = 0; k <= 2 * m - 1; ++k) {
      double s = 0.0;
      for (int j = 0; j < m; ++j) s += g.weights_1d()[static_cast<std::size_t>(j)] * std::pow(g.nodes_1d()[static_cast<std::size_t>(j)], k);
      if (k % 2 == 1) {
        CHECK(std::fabs(s) < 1e-12 * std::max(1.0, dfact * k));
      } else {
        if (k >= 2) dfact *= (k - 1);
        CHECK(s == doctest::Approx(dfact).epsilon(1e-12));
      }
    }
  }
  HermiteGrid g2(6, 2);
  double s = 0.0;
  for (double w : g2.weights()) s += w;
  CHECK(std::fabs(s - 1.0) < 1e-12);
}

TEST_CASE("normalized Hermite polynomials") {
  for (double x : {-2.5, -0.3, 0.0, 1.7}) {
    CHECK(hermite_eval(0, x) == 1.0);
    CHECK(hermite_eval(1, x) == x);
    CHECK(hermite_eval(2, x) == doctest::Approx((x * x - 1.0) / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(hermite_eval(3, x) == doctest::Approx((x * x * x - 3.0 * x) / std::sqrt(6.0)).epsilon(1e-13));
  }
  HermiteGrid g(40, 1);
  double worst = 0.0;
  for (int j = 0; j <= 20; ++j)
    for (int k = 0; k <= 20; ++k) {
      double s = 0.0;
      for (int i = 0; i < 40; ++i)
        s += g.weights_1d()[static_cast<std::size_t>(i)] * hermite_eval(j, g.nodes_1d()[static_cast<std::size_t>(i)]) *
             hermite_eval(k, g.nodes_1d()[static_cast<std::size_t>(i)]);
      worst = std::max(worst, std::fabs(s - (j == k ? 1.0 : 0.0)));
    }
  CHECK(worst < 1e-10);
}

TEST_CASE("Gaussian constants C(p) and c_t") {
  CHECK(std::fabs(gauss_constant(2.0) - 1.0) < 1e-12);
  CHECK(std::fabs(gauss_constant(1.0) - std::sqrt(2.0 / kPi)) < 1e-12);
  CHECK(std::fabs(gauss_constant(4.0) - std::pow(3.0, 0.25)) < 1e-12);
  CHECK(std::fabs(gauss_constant(3.0) - std::cbrt(2.0 * std::sqrt(2.0 / kPi))) < 1e-12);
  for (double p : {1.0, 1.5, 2.0, 3.0, 4.0, 7.5}) CHECK(std::fabs(gauss_constant_quadrature(p) - gauss_constant(p)) < 1e-10);
  CHECK_THROWS_AS(gauss_constant(0.5), Error);

  CHECK(std::fabs(c_t(1.0) - 1.1940688187) < 1e-10);
  for (double t : {1e-6, 1e-3, 0.1, 0.5, 1.0, 3.0, 20.0}) {
    CHECK(std::fabs(c_t_quadrature(t) - c_t(t)) < 1e-10);
    CHECK(std::fabs(c_t(t) - (kPi / 2.0 - std::asin(std::exp(-t)))) < 1e-10);
    CHECK(c_t(t) <= std::sqrt(2.0 * t));
  }
  CHECK(std::fabs(c_t(60.0) - kPi / 2.0) < 1e-12);
  CHECK_THROWS_AS(c_t(0.0), Error);
}

TEST_CASE("OU semigroup: eigenfunctions, constants, semigroup law") {
  const double t = 0.7;
  // callable H_3 forces the quadrature path
  HermiteFunction h3(1, [](std::span<const double> x) { return hermite_eval(3, x[0]); });
  const auto T = ou_semigroup(h3, t);
  const auto Te = ou_semigroup(HermiteFunction(HermiteExpansion::basis({3})), t);
  for (double x : {-3.0, -0.4, 0.0, 1.3, 4.0}) {
    CHECK(std::fabs(T.at(x) - std::exp(-3.0 * t) * hermite_eval(3, x)) < 1e-10);
    CHECK(std::fabs(Te.at(x) - std::exp(-3.0 * t) * hermite_eval(3, x)) < 1e-14);
  }
  HermiteFunction one(1, [](std::span<const double>) { return 1.0; });
  CHECK(std::fabs(ou_semigroup(one, 0.3).at(1.5) - 1.0) < 1e-13);

  const auto f = truncated_root();
  const auto lhs = ou_semigroup(ou_semigroup(f, 0.2), 0.3);
  const auto rhs = ou_semigroup(f, 0.5);
  for (double x : {-5.0, -1.0, 0.0, 0.5, 2.0, 7.0}) CHECK(std::fabs(lhs.at(x) - rhs.at(x)) < 1e-8);

  // n = 2 callable: T_t(x1 x2) = e^{-2t} x1 x2
  HermiteFunction prod(2, [](std::span<const double> x) { return x[0] * x[1]; });
  const auto Tp = ou_semigroup(prod, t);
  const double pt[2] = {0.8, -1.9};
  CHECK(std::fabs(Tp(pt) - std::exp(-2.0 * t) * 0.8 * -1.9) < 1e-12);
}

TEST_CASE("a_gamma closed form and bounds") {
  for (double t : {0.01, 0.1, 0.5, 1.0, 3.0})
    CHECK(std::fabs(a_gamma(h1(), 2.0, t) - std::sqrt(2.0 * (1.0 - std::exp(-t)))) < 1e-10);
  HermiteFunction c(1, [](std::span<const double>) { return 3.0; });
  CHECK(a_gamma(c, 2.0, 0.5) < 1e-14);

  const auto f = truncated_root();
  for (double p : {1.0, 1.5, 2.0, 3.0}) {
    double prev = 0.0;
    for (double t : {0.05, 0.2, 0.8, 2.0}) {
      const double a = a_gamma(f, p, t);
      CHECK(a <= 2.0 * gaussian_lp_norm(f, p));
      const auto Tf = ou_semigroup(f, t);
      const auto diff = HermiteFunction(1, [&](std::span<const double> x) { return f(x) - Tf(x); }, f.kinks());
      CHECK(gaussian_lp_norm(diff, p) <= a);
      CHECK(a >= prev);
      prev = a;
    }
  }
}

TEST_CASE("Gaussian sigma: constants, sandwich, adjointness, budget") {
  HermiteFunction c(1, [](std::span<const double>) { return 2.0; });
  CHECK(sigma_gamma_variational(c, 2.0, 0.5).value == 0.0);
  CHECK_THROWS_AS(sigma_gamma_variational(h1(), 1.0, 0.5), Error);
  CHECK_THROWS_AS(sigma_gamma_upper(h1(), 1.0, 0.5), Error);

  SigmaGammaOptions opt;
  opt.K = 8;
  opt.budget = 60;
  for (double eps : {0.1, 0.5, 1.0, 2.0}) {
    const auto r = sigma_gamma_variational(h1(), 2.0, eps, opt);
    const double up = 2.0 * std::sqrt(2.0 * (1.0 - std::exp(-eps * eps)));
    CHECK(r.value > 0.0);
    CHECK(r.value <= up * (1.0 + 1e-9));
    CHECK(std::fabs(sigma_gamma_upper(h1(), 2.0, eps) - up) < 1e-10);
    CHECK(std::fabs(r.field.mean_divergence) < 1e-10);
  }
  // divergence from coefficients agrees with the direct formula
  const auto r = sigma_gamma_variational(HermiteFunction(HermiteExpansion::basis({2, 1})), 1.5, 0.7, opt);
  HermiteGrid g(2 * opt.K + 2, 2);
  double worst = 0.0, scale = 0.0;
  std::vector<double> x(2);
  for (std::size_t j = 0; j < g.size(); j += 37) {
    g.node(j, x);
    worst = std::max(worst, std::fabs(gaussian_divergence_at(r.field, x) - r.field.divergence[j]));
    scale = std::max(scale, std::fabs(r.field.divergence[j]));
  }
  CHECK(worst <= 1e-9 * std::max(1.0, scale));
  CHECK(std::fabs(r.field.mean_divergence) < 1e-10);

  SigmaGammaOptions lo = opt, hi = opt;
  lo.budget = 10;
  hi.budget = 40;
  CHECK(sigma_gamma_variational(h1(), 3.0, 0.8, hi).value >= sigma_gamma_variational(h1(), 3.0, 0.8, lo).value);
}

TEST_CASE("a_gamma via sigma and V/A equivalence") {
  for (double t : {0.05, 0.5, 2.0}) {
    const auto rep = a_gamma_upper_via_sigma(h1(), 2.0, t);
    CHECK(rep.pass());
    const double r = 0.5 * c_t(t);
    CHECK(rep.rhs == doctest::Approx(4.0 * std::sqrt(2.0 * (1.0 - std::exp(-r * r)))).epsilon(1e-10));
  }
  CHECK(a_gamma_upper_via_sigma(h1(), 1.0, 0.5).verdict == Verdict::Inconclusive);

  const auto tg = geometric_grid(1e-4, 1e2, std::pow(2.0, 0.25));
  const auto ac = a_gamma_curve(h1(), 2.0, tg);
  for (double theta : {2.0, kInf}) {
    BesovParams params{0.6, 2.0, theta};
    const auto fun = gaussian_besov_functionals(ac, 1.0, params);
    REQUIRE(fun.checks.size() == 2);
    for (const auto& c : fun.checks) CHECK(c.pass());
    CHECK(fun.A.value > 0.0);
  }
  // A for H_1 by direct quadrature of the closed form
  BesovParams params{0.6, 2.0, 2.0};
  const auto fun = gaussian_besov_functionals(ac, 1.0, params);
  const double A2 = integrate(
      [](double u) {
        const double t = std::exp(u);
        return std::pow(t, -0.6) * 2.0 * -std::expm1(-t);
      },
      -40.0, 12.0, 1e-12);
  CHECK(fun.A.value == doctest::Approx(std::sqrt(A2)).epsilon(2e-3));
}

TEST_CASE("Lipschitz composition, hypercontractivity, log-Sobolev") {
  BesovParams params{0.6, 2.0, 2.0};
  const auto tg = geometric_grid(1e-4, 1e2, std::pow(2.0, 0.25));
  const auto fun = gaussian_besov_functionals(a_gamma_curve(h1(), 2.0, tg), 1.0, params);
  const double V = fun.V_upper.value;
  for (double t : {0.1, 1.0}) {
    CHECK(lipschitz_composition_check(h1(), [](double s) { return std::max(s, 0.0); }, 1.0, {0.0}, params, t, V).pass());
    const auto zero = lipschitz_composition_check(h1(), [](double) { return 5.0; }, 0.0, {}, params, t, V);
    CHECK(zero.lhs == 0.0);
    CHECK(zero.pass());
  }

  HermiteFunction c(1, [](std::span<const double>) { return 1.5; });
  const auto hc = hypercontractivity_check(c, 2.0, 0.5);
  CHECK(hc.pass());
  CHECK(std::fabs(hc.lhs - hc.rhs) < 1e-12);
  const auto hh = hypercontractivity_check(h1(), 2.0, 0.5);
  const double r = 1.0 + std::exp(1.0);
  CHECK(hh.pass());
  CHECK(hh.lhs == doctest::Approx(std::exp(-0.5) * std::pow(abs_moment_simpson(r), 1.0 / r)).epsilon(1e-9));
  CHECK(hh.rhs == doctest::Approx(1.0).epsilon(1e-12));
  for (double p : {1.5, 2.0, 3.0})
    for (double t : {0.1, 0.5, 1.0}) CHECK(hypercontractivity_check(truncated_root(), p, t).pass());

  // C2 for p = q = 2, beta = 0.4: 4 e^8 5^{0.4} + 4^{0.4} 2^{0.4}
  CHECK(log_sobolev_C2(2.0, 2.0, 0.8, 0.4) ==
        doctest::Approx(4.0 * std::exp(8.0) * std::pow(5.0, 0.4) + std::pow(8.0, 0.4)).epsilon(1e-14));
  // C(p, theta, alpha) for p = q = 2, theta = 2, alpha = 0.8
  const double Cpta = std::pow(2.0, 0.2) * std::sqrt(1.6) * std::exp(1.0) / (std::exp(1.0) - 1.0) * std::pow(4.0, 0.4);
  CHECK(log_sobolev_C(2.0, 2.0, 0.8) == doctest::Approx(Cpta).epsilon(1e-14));
  CHECK(log_sobolev_C1(2.0, 2.0, 0.8, 0.4) ==
        doctest::Approx(std::pow(2.0 * std::pow(2.0, -0.4) * Cpta, 2.0) / 0.4 * std::pow(4.0, -0.4) *
                        std::pow(2.0, 0.4) * 0.4)
            .epsilon(1e-14));

  BesovParams lp{0.8, 2.0, 2.0};
  const auto ls = log_sobolev_embedding_check(h1(), lp, 0.4, V);
  CHECK(ls.pass());
  const auto ls10 = log_sobolev_embedding_check(h1().scaled(10.0), lp, 0.4, 10.0 * V);
  CHECK(ls10.lhs == doctest::Approx(100.0 * ls.lhs).epsilon(1e-10));
  CHECK(ls10.rhs == doctest::Approx(100.0 * ls.rhs).epsilon(1e-10));
  const auto lc = log_sobolev_embedding_check(c, lp, 0.4, 0.0);
  CHECK(lc.lhs == 0.0);
  CHECK(lc.pass());
  CHECK_THROWS_AS(log_sobolev_embedding_check(h1(), lp, 0.9, V), Error);
}
