#pragma once

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "sizevix/data_ingest.hpp"

namespace sizevix {

struct OlsFit {
  std::vector<double> coefficients;
  std::vector<double> std_errors;
  std::vector<double> t_pvalues;  // two-sided, Student t with n-p dof
  std::vector<double> residuals;
  double s2 = 0.0;                        // residual variance, denominator n-p
  std::pair<double, double> s2_ci95{0, 0};  // chi-square interval, n-p dof
  std::size_t n = 0;
  std::size_t p = 0;
};

// Least squares of y on the given predictor columns (the caller supplies an
// explicit intercept column when wanted). Rejects rank-deficient designs:
// smallest singular value < 1e-10 x largest.
OlsFit ols_fit(const std::vector<std::vector<double>>& columns, const std::vector<double>& y);

// Ljung-Box portmanteau statistic computed on |residuals| (the L1 variant,
// aimed at volatility clustering), p-value from chi-square with `lags` dof.
double ljung_box_abs(const std::vector<double>& residuals, std::size_t lags = 10);

// Jarque-Bera normality p-value from population skewness/kurtosis,
// asymptotic chi-square with 2 dof (p = exp(-JB/2)).
double jarque_bera(const std::vector<double>& residuals);

enum class FitKind { Returns, Premia };

// One decile's size-CAPM regression: normalized excess return (or premium)
// on [1, C, C*bench/vol].
struct SizeCapmFit {
  int decile = 0;  // 1..9
  FitKind kind = FitKind::Returns;
  double intercept = 0.0;   // m (Returns) / M (Premia)
  double alpha_slope = 0.0; // a / A: alpha per unit of relative size
  double beta_slope = 0.0;  // b / B: beta adjustment per unit of relative size
  double s2 = 0.0;
  std::pair<double, double> s2_ci95{0, 0};
  double ljung_box_p = 0.0;
  double jarque_bera_p = 0.0;
  std::array<double, 3> t_pvalues{};  // intercept, alpha_slope, beta_slope
  std::vector<double> residuals;
};

SizeCapmFit fit_returns_model(const ModelDataset& ds, int decile);
SizeCapmFit fit_premia_model(const ModelDataset& ds, int decile);

}  // namespace sizevix
