#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "besov/grid_function.hpp"
#include "besov/hermite.hpp"

namespace besov {

enum class Space { Euclidean, Gaussian };

const char* to_string(Space s);

/// Closed forms known for a corpus entry. Each is optional; absent means
/// "compute numerically only".
struct ClosedForms {
  /// omega_p(f, eps) (Euclidean).
  std::function<double(double p, double eps)> omega;
  /// ||f||_p for the entry's measure.
  std::function<double(double p)> norm;
  /// a_{gamma,p}(f, t) (Gaussian).
  std::function<double(double p, double t)> a_gamma;
  /// Exact Hermite coefficients (Gaussian polynomials).
  std::optional<HermiteExpansion> hermite;
};

/// One test function of the corpus.
///
/// Constructors and their parameters (JSON):
///   zero                {}
///   indicator_box       {lo: [..], hi: [..]}; Gaussian boxes may use "inf"/"-inf"
///   power_cusp          {beta, lo, hi}: |x|^beta on the box; beta > -n
///   smooth_bump         {center, radius}: exp(-1 / (1 - |x - c|^2 / r^2))
///   step_sum            {steps: [{lo, hi, height}]}: sum of box indicators
///   hermite_polynomial  {terms: [{index: [..], coeff}], backing: "callable"|"coefficients"}
///   truncated_power     {beta, radius}: (radius - |x|)_+^beta, beta > 0
struct CorpusEntry {
  std::string name;
  Space space = Space::Euclidean;
  int n = 1;
  std::string constructor;
  nlohmann::json params = nlohmann::json::object();

  std::function<double(std::span<const double>)> fn;
  Box support;                  // box outside which fn vanishes (clipped to +-12 when unbounded)
  bool bounded = false;         // support is the true support, not a clip
  std::vector<double> kinks;    // Gaussian n = 1: points where fn is not smooth
  ClosedForms closed;

  /// Samples the entry on a grid of the given spacing (Euclidean only); the
  /// padding is params["padding"] (default 1.5) but at least `min_padding`.
  GridFunction sample(double spacing, double min_padding = 0.0) const;
  /// Gaussian-space view of the entry.
  HermiteFunction hermite() const;

  nlohmann::json to_json() const;
};

/// Builds an entry from {name, space, n, constructor, params}; throws
/// InvalidInput for an unknown constructor or out-of-domain parameters.
CorpusEntry make_corpus_entry(const nlohmann::json& spec);

/// The built-in entries, Euclidean first.
std::vector<nlohmann::json> default_corpus_specs();

/// Compares every registered closed form with quadrature once; throws
/// InvalidInput on disagreement. `spacing` is the Euclidean grid spacing.
void validate_closed_forms(const CorpusEntry& entry, double spacing);

}  // namespace besov
