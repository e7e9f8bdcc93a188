#include "patecon/ols.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "patecon/errors.hpp"

namespace patecon::econ {

OlsFit ols(const std::vector<double>& y, const std::vector<std::vector<double>>& columns) {
  const std::size_t n = y.size();
  const std::size_t k = columns.size();
  if (k == 0) raise(ErrorCode::ValidationError, "ols: no regressors");
  for (const auto& col : columns) {
    if (col.size() != n) raise(ErrorCode::ValidationError, "ols: column length mismatch");
  }
  if (n <= k) raise(ErrorCode::ValidationError, "ols: need n > k");

  Eigen::MatrixXd X(n, k);
  Eigen::VectorXd Y(n);
  for (std::size_t i = 0; i < n; ++i) Y(i) = y[i];
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < n; ++i) X(i, j) = columns[j][i];
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  qr.setThreshold(1e-10);
  if (qr.rank() < static_cast<Eigen::Index>(k)) {
    raise(ErrorCode::RankDeficient, "ols: regressor matrix is rank deficient");
  }
  Eigen::VectorXd beta = qr.solve(Y);
  Eigen::VectorXd resid = Y - X * beta;

  OlsFit fit;
  fit.n = n;
  fit.k = k;
  fit.coefficients.assign(beta.data(), beta.data() + k);
  fit.residuals.assign(resid.data(), resid.data() + n);
  fit.ssr = resid.squaredNorm();
  fit.sigma2 = fit.ssr / static_cast<double>(n - k);

  Eigen::MatrixXd xtx_inv =
      (X.transpose() * X).ldlt().solve(Eigen::MatrixXd::Identity(k, k));
  fit.standard_errors.resize(k);
  for (std::size_t j = 0; j < k; ++j) {
    double v = fit.sigma2 * xtx_inv(j, j);
    fit.standard_errors[j] = v > 0.0 ? std::sqrt(v) : 0.0;
  }
  return fit;
}

InformationCriteria information_criteria(double loglik, std::size_t k, std::size_t n) {
  if (n <= 1) raise(ErrorCode::ValidationError, "information_criteria: need n > 1");
  InformationCriteria ic;
  const double kk = static_cast<double>(k);
  const double nn = static_cast<double>(n);
  ic.aic = -2.0 * loglik + 2.0 * kk;
  ic.bic = -2.0 * loglik + kk * std::log(nn);
  ic.hqc = -2.0 * loglik + 2.0 * kk * std::log(std::log(nn));
  return ic;
}

double gaussian_loglik(double ssr, std::size_t n) {
  const double nn = static_cast<double>(n);
  const double sigma2 = std::max(ssr / nn, 1e-300);
  return -0.5 * nn * (std::log(2.0 * M_PI) + std::log(sigma2) + 1.0);
}

}  // namespace patecon::econ
