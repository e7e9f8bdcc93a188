#pragma once

#include <optional>
#include <string>
#include <vector>

#include "patecon/ols.hpp"
#include "patecon/series.hpp"
#include "patecon/unit_root.hpp"

namespace patecon::econ {

struct CointOptions {
  LagCriterion lag_criterion = LagCriterion::AIC;
  std::optional<int> max_lag;
  bool pretested_i1 = false;  // caller attests both series were pretested I(1)
};

struct CointResult {
  series::SeriesKey left_key;   // Y_t
  series::SeriesKey right_key;  // X_t
  OlsFit static_fit;            // Y on [1, X, zero dummies]
  std::vector<std::string> dummy_columns;  // which series contributed one
  UnitRootResult residual_adf;
  LagCriterion lag_criterion = LagCriterion::AIC;
  bool pretested_i1 = false;
  bool degenerate = false;  // residuals identically zero (perfect fit)
  bool cointegrated_at_1 = false;
  bool cointegrated_at_5 = false;
  bool cointegrated_at_10 = false;
};

// Two-step residual-based cointegration test. Step 1 regresses Y on a
// constant, X, and one zero dummy per series whose zero_mask has any
// entries (1 where the raw value was positive, 0 where nil; identical
// dummy columns collapse to one). Step 2 runs an ADF with no
// deterministic terms on the residuals against the two-variable
// Engle-Granger critical values.
CointResult engle_granger(const series::AnnualSeries& y, const series::AnnualSeries& x,
                          const CointOptions& options = {});

}  // namespace patecon::econ
