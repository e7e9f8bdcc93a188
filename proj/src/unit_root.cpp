#include "patecon/unit_root.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "patecon/errors.hpp"
#include "patecon/ols.hpp"

namespace patecon::econ {

int schwert_max_lag(std::size_t n) {
  return static_cast<int>(std::floor(12.0 * std::pow(static_cast<double>(n) / 100.0, 0.25)));
}

namespace {

void apply_decision_left_tail(UnitRootResult& r) {
  r.reject_at_1 = r.statistic < r.critical.cv1;
  r.reject_at_5 = r.statistic < r.critical.cv5;
  r.reject_at_10 = r.statistic < r.critical.cv10;
}

void apply_decision_right_tail(UnitRootResult& r) {
  r.reject_at_1 = r.statistic > r.critical.cv1;
  r.reject_at_5 = r.statistic > r.critical.cv5;
  r.reject_at_10 = r.statistic > r.critical.cv10;
}

struct AdfRegression {
  double t_stat = 0.0;
  double loglik = 0.0;
  std::size_t nobs = 0;
  std::size_t k = 0;
};

// Rows t = start..n-1 (0-based) of: dy_t on [deterministics, y_{t-1},
// dy_{t-1}..dy_{t-lag}]. `start` must be at least lag+1.
AdfRegression adf_regression(const std::vector<double>& y, Deterministic det, int lag,
                             std::size_t start) {
  const std::size_t n = y.size();
  const std::size_t rows = n - start;
  std::vector<double> dy(rows);
  for (std::size_t i = 0; i < rows; ++i) dy[i] = y[start + i] - y[start + i - 1];

  std::vector<std::vector<double>> cols;
  if (det == Deterministic::Constant || det == Deterministic::ConstantTrend) {
    cols.emplace_back(rows, 1.0);
  }
  if (det == Deterministic::ConstantTrend) {
    std::vector<double> trend(rows);
    for (std::size_t i = 0; i < rows; ++i) trend[i] = static_cast<double>(start + i);
    cols.push_back(std::move(trend));
  }
  std::vector<double> level(rows);
  for (std::size_t i = 0; i < rows; ++i) level[i] = y[start + i - 1];
  const std::size_t level_index = cols.size();
  cols.push_back(std::move(level));
  for (int j = 1; j <= lag; ++j) {
    std::vector<double> dlag(rows);
    for (std::size_t i = 0; i < rows; ++i) {
      std::size_t t = start + i - static_cast<std::size_t>(j);
      dlag[i] = y[t] - y[t - 1];
    }
    cols.push_back(std::move(dlag));
  }

  OlsFit fit;
  try {
    fit = ols(dy, cols);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::RankDeficient) {
      raise(ErrorCode::DegenerateSeries, "adf_test: collinear regression (degenerate series)");
    }
    throw;
  }
  double dy_scale = 0.0;
  for (double v : dy) dy_scale += v * v;
  if (fit.ssr <= 1e-20 * dy_scale || fit.standard_errors[level_index] <= 0.0) {
    raise(ErrorCode::DegenerateSeries, "adf_test: residual variance is zero");
  }

  AdfRegression out;
  out.t_stat = fit.coefficients[level_index] / fit.standard_errors[level_index];
  out.loglik = gaussian_loglik(fit.ssr, rows);
  out.nobs = rows;
  out.k = fit.k;
  return out;
}

}  // namespace

UnitRootResult adf_test(const std::vector<double>& series, const AdfOptions& options) {
  const std::size_t n = series.size();
  const int det_terms = options.deterministic == Deterministic::None ? 0
                        : options.deterministic == Deterministic::Constant ? 1
                                                                           : 2;
  int max_lag = options.max_lag.value_or(schwert_max_lag(n));
  if (options.lag_criterion == LagCriterion::Fixed) max_lag = options.fixed_lag;
  if (max_lag < 0) raise(ErrorCode::ValidationError, "adf_test: negative max_lag");
  if (!options.max_lag && options.lag_criterion != LagCriterion::Fixed) {
    // Keep the common-sample regression overdetermined at the largest lag.
    int feasible = (static_cast<int>(n) - det_terms - 5) / 2;
    max_lag = std::max(0, std::min(max_lag, feasible));
  }
  if (n < static_cast<std::size_t>(max_lag) + 10 ||
      static_cast<int>(n) - max_lag - 1 <= det_terms + 1 + max_lag) {
    raise(ErrorCode::TooShort, "adf_test: need at least max_lag + 10 observations");
  }
  {
    double mn = *std::min_element(series.begin(), series.end());
    double mx = *std::max_element(series.begin(), series.end());
    if (mx - mn <= 0.0) raise(ErrorCode::DegenerateSeries, "adf_test: constant series");
  }

  int chosen = max_lag;
  if (options.lag_criterion != LagCriterion::Fixed) {
    // Candidates share the sample implied by the largest lag so their
    // likelihoods are comparable.
    const std::size_t common_start = static_cast<std::size_t>(max_lag) + 1;
    double best = std::numeric_limits<double>::infinity();
    chosen = 0;
    for (int lag = 0; lag <= max_lag; ++lag) {
      AdfRegression reg = adf_regression(series, options.deterministic, lag, common_start);
      InformationCriteria ic = information_criteria(reg.loglik, reg.k, reg.nobs);
      double score = options.lag_criterion == LagCriterion::AIC ? ic.aic : ic.hqc;
      if (score < best) {
        best = score;
        chosen = lag;
      }
    }
  }

  AdfRegression final_reg = adf_regression(series, options.deterministic, chosen,
                                           static_cast<std::size_t>(chosen) + 1);

  UnitRootResult result;
  result.test = options.cv_table;
  result.statistic = final_reg.t_stat;
  result.lags_used = chosen;
  result.deterministic = options.deterministic;
  result.nobs = final_reg.nobs;
  Deterministic cv_det = options.cv_table == TestKind::EngleGranger
                             ? Deterministic::Constant
                             : options.deterministic;
  result.critical = critical_values(options.cv_table, cv_det, options.cv_n_vars,
                                    static_cast<int>(final_reg.nobs));
  apply_decision_left_tail(result);
  return result;
}

UnitRootResult kpss_test(const std::vector<double>& series, const KpssOptions& options) {
  const std::size_t n = series.size();
  if (n < 10) raise(ErrorCode::TooShort, "kpss_test: need at least 10 observations");
  if (options.deterministic == Deterministic::None) {
    raise(ErrorCode::UnsupportedCombination, "kpss_test: use Constant or ConstantTrend");
  }

  // Residuals from the deterministic fit.
  std::vector<double> resid(n);
  if (options.deterministic == Deterministic::Constant) {
    double mean = std::accumulate(series.begin(), series.end(), 0.0) / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) resid[i] = series[i] - mean;
  } else {
    std::vector<std::vector<double>> cols(2);
    cols[0].assign(n, 1.0);
    cols[1].resize(n);
    for (std::size_t i = 0; i < n; ++i) cols[1][i] = static_cast<double>(i + 1);
    OlsFit fit = ols(series, cols);
    resid = fit.residuals;
  }

  int lag;
  if (options.bandwidth) {
    lag = *options.bandwidth;
    if (lag < 0) raise(ErrorCode::ValidationError, "kpss_test: negative bandwidth");
  } else {
    // Hobijn et al. / Newey-West automatic bandwidth for the Bartlett kernel.
    const int covlags = static_cast<int>(std::pow(static_cast<double>(n), 2.0 / 9.0));
    double s0 = 0.0;
    for (double e : resid) s0 += e * e;
    s0 /= static_cast<double>(n);
    double s1 = 0.0;
    for (int i = 1; i <= covlags; ++i) {
      double prod = 0.0;
      for (std::size_t t = static_cast<std::size_t>(i); t < n; ++t) {
        prod += resid[t] * resid[t - static_cast<std::size_t>(i)];
      }
      prod /= static_cast<double>(n) / 2.0;
      s0 += prod;
      s1 += static_cast<double>(i) * prod;
    }
    if (s0 == 0.0) raise(ErrorCode::ZeroLongRunVariance, "kpss_test: zero long-run variance");
    const double gamma_hat = 1.1447 * std::pow((s1 / s0) * (s1 / s0), 1.0 / 3.0);
    lag = static_cast<int>(gamma_hat * std::pow(static_cast<double>(n), 1.0 / 3.0));
    lag = std::clamp(lag, 0, static_cast<int>(n) - 1);
  }
  lag = std::min(lag, static_cast<int>(n) - 1);

  // Bartlett long-run variance.
  double lrv = 0.0;
  for (double e : resid) lrv += e * e;
  for (int j = 1; j <= lag; ++j) {
    double gamma = 0.0;
    for (std::size_t t = static_cast<std::size_t>(j); t < n; ++t) {
      gamma += resid[t] * resid[t - static_cast<std::size_t>(j)];
    }
    lrv += 2.0 * (1.0 - static_cast<double>(j) / (static_cast<double>(lag) + 1.0)) * gamma;
  }
  lrv /= static_cast<double>(n);
  if (lrv <= 0.0) raise(ErrorCode::ZeroLongRunVariance, "kpss_test: zero long-run variance");

  double cumulative = 0.0;
  double sum_s2 = 0.0;
  for (double e : resid) {
    cumulative += e;
    sum_s2 += cumulative * cumulative;
  }

  UnitRootResult result;
  result.test = TestKind::KPSS;
  result.statistic = sum_s2 / (static_cast<double>(n) * static_cast<double>(n) * lrv);
  result.lags_used = lag;
  result.deterministic = options.deterministic;
  result.nobs = n;
  result.critical = critical_values(TestKind::KPSS, options.deterministic, 1, 0);
  apply_decision_right_tail(result);
  return result;
}

IntegrationOrder integration_order(const std::vector<double>& series, int max_d,
                                   const AdfOptions& adf_options,
                                   const KpssOptions& kpss_options) {
  if (max_d < 0) raise(ErrorCode::ValidationError, "integration_order: negative max_d");
  IntegrationOrder out;
  std::vector<double> current = series;
  for (int d = 0; d <= max_d; ++d) {
    UnitRootResult adf = adf_test(current, adf_options);
    UnitRootResult kpss = kpss_test(current, kpss_options);
    out.adf_results.push_back(adf);
    out.kpss_results.push_back(kpss);
    if (adf.reject_at_5) {
      out.d = d;
      out.conflict = kpss.reject_at_5;
      return out;
    }
    if (d < max_d) {
      std::vector<double> next(current.size() - 1);
      for (std::size_t i = 0; i + 1 < current.size(); ++i) next[i] = current[i + 1] - current[i];
      current = std::move(next);
    }
  }
  raise(ErrorCode::NoIntegrationOrder,
        "integration_order: no d <= " + std::to_string(max_d) + " passes the ADF test");
}

}  // namespace patecon::econ
