#pragma once

#include <vector>

namespace patecon::econ {

struct OlsFit {
  std::vector<double> coefficients;
  std::vector<double> residuals;
  double ssr = 0.0;
  double sigma2 = 0.0;  // ssr / (n - k)
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<double> standard_errors;
};

// Least squares of y on the columns of X (row-major, n x k). Raises
// RankDeficient when X is numerically rank deficient.
OlsFit ols(const std::vector<double>& y, const std::vector<std::vector<double>>& columns);

// aic = -2l + 2k, bic = -2l + k ln n, hqc = -2l + 2k ln(ln n).
struct InformationCriteria {
  double aic = 0.0;
  double bic = 0.0;
  double hqc = 0.0;
};

InformationCriteria information_criteria(double loglik, std::size_t k, std::size_t n);

// Gaussian log-likelihood of a least-squares fit, concentrated over the
// error variance: -n/2 (ln 2pi + ln(ssr/n) + 1).
double gaussian_loglik(double ssr, std::size_t n);

}  // namespace patecon::econ
