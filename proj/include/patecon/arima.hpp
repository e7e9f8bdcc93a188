#pragma once

#include <optional>
#include <string>
#include <vector>

#include "patecon/ols.hpp"

namespace patecon::econ {

struct ArimaOrders {
  int p = 0;
  int d = 0;
  int q = 0;
};

struct ArimaFit {
  ArimaOrders orders;
  std::vector<double> ar;  // alpha_1..alpha_p
  std::vector<double> ma;  // beta_1..beta_q
  double mean = 0.0;       // mean of the differenced series
  double innovation_variance = 0.0;
  double loglik = 0.0;  // conditional (CSS) Gaussian log-likelihood
  double aic = 0.0;
  double bic = 0.0;
  double hqc = 0.0;
  std::size_t nobs = 0;  // effective observations entering the CSS sum
  bool converged = true;
  bool near_boundary = false;  // AR or MA roots close to the unit circle
  // Best objective value after each accepted optimizer iteration.
  std::vector<double> optimizer_trace;
};

// Conditional-sum-of-squares fit: the series is differenced d times and
// demeaned, then AR/MA coefficients minimise the CSS via Nelder-Mead from
// a zero start. Draws outside the stationarity/invertibility region are
// rejected by the search, never returned.
ArimaFit fit_arima(const std::vector<double>& series, int p, int d, int q);

enum class ModelCriterion { AIC, BIC, HQIC };

struct ArimaCell {
  int p = 0;
  int q = 0;
  bool ok = false;
  std::string error;  // when !ok
  double aic = 0.0;
  double bic = 0.0;
  double hqc = 0.0;
};

struct ArimaSelection {
  ArimaFit best;
  std::vector<ArimaCell> table;
  ModelCriterion criterion = ModelCriterion::BIC;
};

// Fits every (p,q) in [0,p_max] x [0,q_max] at fixed d; the minimiser of
// the chosen criterion wins, ties broken by (p,q). Failed cells are
// recorded in the table; only an all-failed grid raises.
ArimaSelection select_arima(const std::vector<double>& series, int p_max, int q_max, int d,
                            ModelCriterion criterion = ModelCriterion::BIC);

}  // namespace patecon::econ
