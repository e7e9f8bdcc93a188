#include "patecon/cointegration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "patecon/errors.hpp"

namespace patecon::econ {

CointResult engle_granger(const series::AnnualSeries& y, const series::AnnualSeries& x,
                          const CointOptions& options) {
  if (y.first_year != x.first_year || y.size() != x.size()) {
    raise(ErrorCode::YearMismatch, "engle_granger: series cover different years");
  }
  const std::size_t n = y.size();
  if (n < 12) raise(ErrorCode::TooShort, "engle_granger: series too short");

  CointResult result;
  result.left_key = y.key;
  result.right_key = x.key;
  result.lag_criterion = options.lag_criterion;
  result.pretested_i1 = options.pretested_i1;

  std::vector<std::vector<double>> cols;
  cols.emplace_back(n, 1.0);
  cols.push_back(x.values);

  auto dummy_from_mask = [&](const std::vector<bool>& mask) {
    std::vector<double> col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = mask[i] ? 0.0 : 1.0;
    return col;
  };
  // One dummy per series with any nil observations; a duplicate zero
  // pattern would make the regressors collinear, so it enters once.
  std::vector<std::vector<double>> dummies;
  bool y_zeros = std::find(y.zero_mask.begin(), y.zero_mask.end(), true) != y.zero_mask.end();
  bool x_zeros = std::find(x.zero_mask.begin(), x.zero_mask.end(), true) != x.zero_mask.end();
  if (y_zeros) {
    dummies.push_back(dummy_from_mask(y.zero_mask));
    result.dummy_columns.push_back("left");
  }
  if (x_zeros) {
    auto col = dummy_from_mask(x.zero_mask);
    if (dummies.empty() || col != dummies[0]) {
      dummies.push_back(std::move(col));
      result.dummy_columns.push_back("right");
    } else {
      result.dummy_columns.push_back("right(shared)");
    }
  }
  for (auto& d : dummies) cols.push_back(std::move(d));

  try {
    result.static_fit = ols(y.values, cols);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::RankDeficient) {
      raise(ErrorCode::RankDeficient, "engle_granger: static regression is rank deficient "
                                      "(constant regressor or collinear dummies)");
    }
    throw;
  }

  // Perfect fit: the pair is trivially cointegrated; the residual ADF has
  // nothing to estimate.
  double y_scale = 0.0;
  for (double v : y.values) y_scale += v * v;
  if (result.static_fit.ssr <= 1e-18 * std::max(y_scale, 1.0)) {
    result.degenerate = true;
    result.cointegrated_at_1 = true;
    result.cointegrated_at_5 = true;
    result.cointegrated_at_10 = true;
    result.residual_adf.test = TestKind::EngleGranger;
    result.residual_adf.statistic = std::numeric_limits<double>::quiet_NaN();
    result.residual_adf.deterministic = Deterministic::None;
    result.residual_adf.critical =
        critical_values(TestKind::EngleGranger, Deterministic::Constant, 2,
                        static_cast<int>(n));
    return result;
  }

  AdfOptions adf_opts;
  adf_opts.deterministic = Deterministic::None;  // intercept already absorbed in step 1
  adf_opts.lag_criterion = options.lag_criterion;
  adf_opts.max_lag = options.max_lag;
  adf_opts.cv_table = TestKind::EngleGranger;
  adf_opts.cv_n_vars = 2;
  result.residual_adf = adf_test(result.static_fit.residuals, adf_opts);

  result.cointegrated_at_1 = result.residual_adf.reject_at_1;
  result.cointegrated_at_5 = result.residual_adf.reject_at_5;
  result.cointegrated_at_10 = result.residual_adf.reject_at_10;
  return result;
}

}  // namespace patecon::econ
