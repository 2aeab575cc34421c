#include <doctest.h>

#include <cmath>
#include <set>

#include "besov/corpus.hpp"
#include "besov/error.hpp"
#include "besov/gaussian.hpp"
#include "besov/sigma.hpp"

using namespace besov;
using nlohmann::json;

namespace {

CorpusEntry builtin(const std::string& name) {
  for (const auto& s : default_corpus_specs())
    if (s.at("name") == name) return make_corpus_entry(s);
  FAIL("no built-in entry " << name);
  return {};
}

// composite Simpson on [a, b]
template <class F>
double simpson(F f, double a, double b, int n = 20000) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace

TEST_CASE("default corpus is well formed") {
  const auto specs = default_corpus_specs();
  std::set<std::string> names;
  int euclid = 0, gauss = 0;
  bool seen_gauss = false;
  for (const auto& s : specs) {
    const auto e = make_corpus_entry(s);
    CHECK(names.insert(e.name).second);
    if (e.space == Space::Euclidean) {
      CHECK_FALSE(seen_gauss);
      ++euclid;
      CHECK(e.n <= 3);
    } else {
      seen_gauss = true;
      ++gauss;
      CHECK(e.n <= 2);
    }
    CHECK(e.to_json().at("name") == e.name);
  }
  CHECK(euclid >= 6);
  CHECK(gauss >= 6);
}

TEST_CASE("closed forms agree with quadrature for every built-in entry") {
  for (const auto& s : default_corpus_specs()) {
    const auto e = make_corpus_entry(s);
    CAPTURE(e.name);
    CHECK_NOTHROW(validate_closed_forms(e, e.n == 1 ? 1.0 / 64 : 1.0 / 16));
  }
}

TEST_CASE("interval indicator shift modulus") {
  const auto e = builtin("indicator_1d");
  REQUIRE(e.closed.omega);
  for (double eps : {0.05, 0.5, 1.0, 3.0}) CHECK(e.closed.omega(1.0, eps) == doctest::Approx(std::min(2.0 * eps, 2.0)));
  const double h = 1.0 / 128;
  const auto g = e.sample(h);
  ShiftProfile prof(g, 1.0);
  for (double eps : {0.1, 0.3, 0.9}) CHECK(std::fabs(prof.omega(eps).value - std::min(2.0 * eps, 2.0)) <= 2.0 * h);
}

TEST_CASE("half-line indicator OU modulus against a one-dimensional oracle") {
  const auto e = builtin("g_halfline");
  REQUIRE(e.closed.a_gamma);
  for (double t : {0.05, 0.5, 2.0}) {
    const double a = std::exp(-t), s = std::sqrt(1.0 - a * a);
    // P(X >= 0, aX + sY < 0) + P(X < 0, aX + sY >= 0) = 2 int_0^inf phi(x) Phi(-a x / s) dx
    const double oracle = 2.0 * simpson(
                                    [&](double x) {
                                      return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI) * normal_cdf(-a * x / s);
                                    },
                                    0.0, 12.0);
    CHECK(std::pow(e.closed.a_gamma(1.0, t), 1.0) == doctest::Approx(oracle).epsilon(1e-9));
    CHECK(a_gamma(e.hermite(), 1.0, t) == doctest::Approx(oracle).epsilon(1e-7));
  }
}

TEST_CASE("bounded Gaussian entries carry their support") {
  const auto bump = builtin("g_bump_2d");
  REQUIRE(bump.bounded);
  const auto f = bump.hermite();
  REQUIRE(f.support());
  CHECK_FALSE(builtin("g_halfline").hermite().support());
  CHECK_FALSE(builtin("g_poly").hermite().support());

  // radial oracle: ||f||_2^2 = int_0^R exp(-2 / (1 - r^2 / R^2)) exp(-r^2 / 2) r dr
  const double R = bump.params.at("radius").get<double>();
  const double oracle = simpson(
      [&](double r) { return r < R ? std::exp(-2.0 / (1.0 - r * r / (R * R))) * std::exp(-0.5 * r * r) * r : 0.0; },
      0.0, R);
  CHECK(gaussian_lp_norm(f, 2.0) == doctest::Approx(std::sqrt(oracle)).epsilon(1e-10));
}

TEST_CASE("OU semigroup law for a compactly supported 2-D entry") {
  const auto f = builtin("g_bump_2d").hermite();
  const auto lhs = ou_semigroup(ou_semigroup(f, 0.2), 0.1);
  const auto rhs = ou_semigroup(f, 0.3);
  const double x[2] = {0.7, -0.2};
  CHECK(std::fabs(lhs(x) - rhs(x)) < 1e-10);
}

TEST_CASE("corpus specs are validated") {
  auto spec = [](json params, std::string ctor = "power_cusp", std::string space = "euclidean", int n = 1) {
    return json{{"name", "x"}, {"space", space}, {"n", n}, {"constructor", ctor}, {"params", params}};
  };
  CHECK_THROWS_AS(make_corpus_entry(spec({}, "no_such_constructor")), Error);
  CHECK_THROWS_AS(make_corpus_entry(spec({{"beta", -1.5}, {"lo", {-1.0}}, {"hi", {1.0}}})), Error);
  CHECK_THROWS_AS(make_corpus_entry(spec({{"beta", -0.5}, {"lo", {-1.0}}, {"hi", {1.0}}}, "power_cusp", "gaussian")),
                  Error);
  CHECK_THROWS_AS(make_corpus_entry(spec({{"terms", json::array()}}, "hermite_polynomial", "gaussian", 3)), Error);
  CHECK_THROWS_AS(make_corpus_entry(spec({{"beta", 0.5}, {"radius", 1.0}, {"colour", 1}}, "truncated_power")), Error);
  auto bad_name = spec({{"beta", 0.5}, {"radius", 1.0}}, "truncated_power");
  bad_name["name"] = "has space";
  CHECK_THROWS_AS(make_corpus_entry(bad_name), Error);
  CHECK_NOTHROW(make_corpus_entry(spec({{"beta", 0.5}, {"radius", 1.0}}, "truncated_power")));
}
