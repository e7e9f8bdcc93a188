#pragma once

#include <optional>
#include <vector>

#include "patecon/critical_values.hpp"

namespace patecon::econ {

enum class LagCriterion { AIC, HQIC, Fixed };

struct UnitRootResult {
  TestKind test = TestKind::ADF;
  double statistic = 0.0;
  int lags_used = 0;
  Deterministic deterministic = Deterministic::Constant;
  CriticalValues critical;
  // Rejection of the test's own null: unit root for ADF, stationarity
  // for KPSS.
  bool reject_at_1 = false;
  bool reject_at_5 = false;
  bool reject_at_10 = false;
  std::size_t nobs = 0;  // observations in the final regression
};

// Schwert's rule of thumb: floor(12 (n/100)^{1/4}).
int schwert_max_lag(std::size_t n);

struct AdfOptions {
  Deterministic deterministic = Deterministic::Constant;
  std::optional<int> max_lag;  // default: Schwert rule
  LagCriterion lag_criterion = LagCriterion::AIC;
  int fixed_lag = 0;  // used when lag_criterion == Fixed
  // Critical-value table to compare against; EngleGranger swaps in the
  // residual-based surface for the cointegration second step.
  TestKind cv_table = TestKind::ADF;
  int cv_n_vars = 1;
};

// Augmented Dickey-Fuller regression of dy_t on y_{t-1}, lagged dy terms
// and deterministics; statistic is the t-ratio on y_{t-1}. Lag order is
// chosen over 0..max_lag on a common estimation sample, then the chosen
// regression is re-run on the full available sample.
UnitRootResult adf_test(const std::vector<double>& series, const AdfOptions& options = {});

struct KpssOptions {
  Deterministic deterministic = Deterministic::Constant;
  std::optional<int> bandwidth;  // fixed Bartlett lag; default: automatic
};

// KPSS statistic n^{-2} sum S_t^2 / s^2(l) with a Bartlett-kernel long-run
// variance; automatic bandwidth follows Hobijn / Newey-West.
UnitRootResult kpss_test(const std::vector<double>& series, const KpssOptions& options = {});

struct IntegrationOrder {
  int d = 0;
  bool conflict = false;  // ADF called the returned order stationary, KPSS disagreed
  std::vector<UnitRootResult> adf_results;   // one per tried d
  std::vector<UnitRootResult> kpss_results;
};

// Smallest d <= max_d whose d-th difference is ADF-stationary at 5%;
// KPSS disagreement at that d sets the conflict flag.
IntegrationOrder integration_order(const std::vector<double>& series, int max_d = 2,
                                   const AdfOptions& adf_options = {},
                                   const KpssOptions& kpss_options = {});

}  // namespace patecon::econ
