#include <doctest.h>

#include <cmath>

#include "besov/chaos.hpp"
#include "besov/error.hpp"
#include "besov/gaussian.hpp"

using namespace besov;

TEST_CASE("chaos decomposition of simple functions") {
  HermiteFunction h2(1, [](std::span<const double> x) { return (x[0] * x[0] - 1.0) / std::sqrt(2.0); });
  const auto d = chaos_decompose(h2, 6);
  for (std::size_t i = 0; i < d.coefficients.size(); ++i)
    CHECK(std::fabs(d.coefficients[i] - (d.indices[i][0] == 2 ? 1.0 : 0.0)) < 1e-11);

  HermiteFunction sq(1, [](std::span<const double> x) { return x[0] * x[0]; });
  const auto s = chaos_decompose(sq, 8);
  CHECK(std::fabs(s.mean() - 1.0) < 1e-12);
  CHECK(std::fabs(s.coefficients[2] - std::sqrt(2.0)) < 1e-11);
  CHECK(std::fabs(s.parseval_defect) < 1e-8 * s.norm_squared);  // E x^4 = 3

  HermiteFunction zero(1, [](std::span<const double>) { return 0.0; });
  for (double c : chaos_decompose(zero, 5).coefficients) CHECK(c == 0.0);

  // n = 2 by tensor quadrature; x1^2 x2 = (1 + sqrt2 H_2(x1)) H_1(x2)
  HermiteFunction g(2, [](std::span<const double> x) { return x[0] * x[0] * x[1]; });
  const auto d2 = chaos_decompose(g, 4, 6);
  CHECK(std::fabs(d2.parseval_defect) < 1e-8 * d2.norm_squared);
  CHECK(std::fabs(d2.energies[1] - 1.0) < 1e-12);
  CHECK(std::fabs(d2.energies[3] - 2.0) < 1e-12);
  CHECK_THROWS_AS(chaos_decompose(g, 8, 5), Error);

  const auto e = chaos_decompose(HermiteFunction(HermiteExpansion::basis({1, 2}, 0.5)), 4);
  CHECK(e.finite);
  CHECK(e.energies[3] == 0.25);
  CHECK(e.to_json().at("parseval_defect").get<double>() == 0.0);
}

TEST_CASE("best approximation") {
  const auto d = chaos_decompose(HermiteFunction(HermiteExpansion::basis({1})), 4);
  CHECK(best_approx(d, 1).value == 1.0);
  CHECK(best_approx(d, 2).value == 0.0);

  HermiteFunction f(1, [](std::span<const double> x) { return std::sqrt(std::min(std::fabs(x[0]), 2.0)); },
                    {-2.0, 0.0, 2.0});
  const auto df = chaos_decompose(f, 40);
  double prev = kInf;
  for (int N = 0; N <= 41; ++N) {
    const auto E = best_approx(df, N);
    CHECK(E.lower <= E.value);
    CHECK(E.value <= E.upper);
    CHECK(E.value <= prev);
    prev = E.value;
  }
  // p = 2 modulus from chaos agrees with direct quadrature
  for (double t : {0.1, 1.0}) {
    const auto a = a_gamma2_from_chaos(df, t);
    const double q = a_gamma(f, 2.0, t);
    CHECK(a.lower <= q * (1.0 + 1e-4));
    CHECK(q <= a.upper * (1.0 + 1e-4));
  }
}

TEST_CASE("Jackson-Stechkin bound on Hermite basis elements") {
  for (int N = 1; N <= 64; ++N) {
    const auto d = chaos_decompose(HermiteFunction(HermiteExpansion::basis({N - 1})), 64);
    const auto rep = jackson_stechkin_check(d, N);
    CHECK(rep.pass());
    if (N >= 2) {
      CHECK(rep.lhs == 1.0);
      const double t = 2.0 * kPi / N;
      CHECK(rep.rhs == doctest::Approx(2.0 * std::sqrt(2.0 * (1.0 - std::exp(-(N - 1) * t)))).epsilon(1e-12));
    }
  }
  const auto c = chaos_decompose(HermiteFunction(1, [](std::span<const double>) { return 4.0; }), 10);
  for (int N = 1; N <= 11; ++N) {
    const auto rep = jackson_stechkin_check(c, N);
    CHECK(rep.pass());
    CHECK(rep.lhs < 1e-5);
  }
}

TEST_CASE("Beta and gradient bounds") {
  const auto b = beta_bound_check(10000);
  CHECK(b.pass());
  CHECK(b.lhs < 0.0);
  // N = 1: B(1, 1/2) = 2 <= sqrt(2 pi)
  CHECK(std::exp(log_beta(1.0, 0.5)) == doctest::Approx(2.0).epsilon(1e-14));
  const auto tg = log_spaced(1e-3, 10.0, 50);
  const auto g = gradient_bound_check(64, tg);
  CHECK(g.pass());
  CHECK(g.lhs <= 1.0);
}
