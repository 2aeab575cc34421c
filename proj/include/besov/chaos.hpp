#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "besov/grid_function.hpp"
#include "besov/hermite.hpp"
#include "besov/report.hpp"

namespace besov {

/// Hermite coefficients of total degree <= K with per-degree energies.
struct ChaosDecomposition {
  int n = 1;
  int K = 0;
  std::string method;           // "expansion", "adaptive" or "gauss-hermite"
  int quadrature_order = 0;     // tensor order for "gauss-hermite"
  std::vector<std::vector<int>> indices;
  std::vector<double> coefficients;
  std::vector<double> energies;  // ||I_k f||_2^2, k = 0..K
  double norm_squared = 0.0;     // ||f||_2^2, computed independently
  double parseval_defect = 0.0;  // norm_squared - sum of energies
  double tolerance = 0.0;        // absolute accuracy assumed for norm_squared
  bool finite = false;           // f has no chaos beyond degree K

  double mean() const { return coefficients.empty() ? 0.0 : coefficients.front(); }
  nlohmann::json to_json() const;
};

/// Coefficients by inner products against the tensor Hermite basis.
/// Expansion-backed functions are copied exactly; n = 1 callables use
/// adaptive quadrature; others tensor Gauss-Hermite of order m, which must
/// be at least K + 1 (0 picks a default).
ChaosDecomposition chaos_decompose(const HermiteFunction& f, int K, int m = 0);

/// E_N(f) = ||f - I_0 f - ... - I_{N-1} f||_2, 0 <= N <= K + 1. The lower
/// end counts only degrees up to K; the upper end adds the Parseval tail.
Bracketed best_approx(const ChaosDecomposition& dec, int N);

/// a_{gamma,2}(f, t) = (2 sum_k ||I_k f||^2 (1 - e^{-kt}))^{1/2}, with the
/// energy beyond K bracketed between degrees K+1 and infinity.
Bracketed a_gamma2_from_chaos(const ChaosDecomposition& dec, double t);

/// E_{N-1}(f) <= 2 a_{gamma,2}(f, 2 pi / N) for N >= 2. For N = 1 the
/// left side is E_1 (mean removed); E_0 = ||f||_2 cannot be bounded by a
/// modulus that vanishes on constants.
CheckReport jackson_stechkin_check(const ChaosDecomposition& dec, int N, std::optional<double> sigma_lower = {});

/// B((N+1)/2, 1/2) <= sqrt(2 pi) N^{-1/2} for N = 1..N_max in log-gamma arithmetic.
CheckReport beta_bound_check(int N_max);

/// ||grad T_t H_k||_2 = sqrt(k) e^{-kt} <= e^{-t} / sqrt(1 - e^{-2t}) for k = 1..K on a t grid;
/// lhs is the worst ratio, rhs = 1.
CheckReport gradient_bound_check(int K, std::span<const double> t_grid);

}  // namespace besov
