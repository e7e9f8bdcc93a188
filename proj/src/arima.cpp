#include "patecon/arima.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Dense>

#include "patecon/errors.hpp"

namespace patecon::econ {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRootBarrier = 0.998;   // spectral-radius bound during search
constexpr double kNearBoundary = 0.95;   // flag threshold

// Spectral radius of the companion matrix of the recursion with the given
// coefficients; < 1 means stationary (AR) or invertible (MA).
double spectral_radius(const std::vector<double>& coef) {
  const std::size_t p = coef.size();
  if (p == 0) return 0.0;
  if (p == 1) return std::abs(coef[0]);
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(p, p);
  for (std::size_t j = 0; j < p; ++j) companion(0, j) = coef[j];
  for (std::size_t i = 1; i < p; ++i) companion(i, i - 1) = 1.0;
  Eigen::VectorXcd eig = companion.eigenvalues();
  double radius = 0.0;
  for (Eigen::Index i = 0; i < eig.size(); ++i) radius = std::max(radius, std::abs(eig(i)));
  return radius;
}

// CSS objective over demeaned differenced data z; +inf outside the
// stationarity/invertibility barrier.
double css(const std::vector<double>& z, const std::vector<double>& ar,
           const std::vector<double>& ma) {
  if (spectral_radius(ar) >= kRootBarrier) return kInf;
  if (spectral_radius(ma) >= kRootBarrier) return kInf;
  const std::size_t p = ar.size();
  const std::size_t q = ma.size();
  const std::size_t n = z.size();
  std::vector<double> e(n, 0.0);
  double ssr = 0.0;
  for (std::size_t t = p; t < n; ++t) {
    double pred = 0.0;
    for (std::size_t i = 0; i < p; ++i) pred += ar[i] * z[t - 1 - i];
    for (std::size_t j = 0; j < q; ++j) {
      if (t >= p + 1 + j) pred += ma[j] * e[t - 1 - j];
    }
    e[t] = z[t] - pred;
    ssr += e[t] * e[t];
  }
  return ssr;
}

struct NmResult {
  std::vector<double> x;
  double fx = kInf;
  bool converged = false;
  std::vector<double> trace;  // best objective after each accepted move
};

// Standard Nelder-Mead with reflection/expansion/contraction/shrink.
template <typename F>
NmResult nelder_mead(F f, std::vector<double> x0, double step, double ftol, int max_iter) {
  const std::size_t dim = x0.size();
  NmResult res;
  if (dim == 0) {
    res.x = x0;
    res.fx = f(x0);
    res.converged = true;
    return res;
  }

  std::vector<std::vector<double>> pts(dim + 1, x0);
  std::vector<double> fv(dim + 1);
  for (std::size_t i = 0; i < dim; ++i) pts[i + 1][i] += step;
  for (std::size_t i = 0; i <= dim; ++i) fv[i] = f(pts[i]);

  auto order = [&] {
    std::vector<std::size_t> idx(dim + 1);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    std::vector<std::vector<double>> p2(dim + 1);
    std::vector<double> f2(dim + 1);
    for (std::size_t i = 0; i <= dim; ++i) {
      p2[i] = pts[idx[i]];
      f2[i] = fv[idx[i]];
    }
    pts = std::move(p2);
    fv = std::move(f2);
  };
  order();
  res.trace.push_back(fv[0]);

  for (int iter = 0; iter < max_iter; ++iter) {
    if (std::isfinite(fv[0]) && std::isfinite(fv[dim]) &&
        fv[dim] - fv[0] <= ftol * (std::abs(fv[0]) + ftol)) {
      res.converged = true;
      break;
    }
    std::vector<double> centroid(dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) centroid[j] += pts[i][j];
    }
    for (double& c : centroid) c /= static_cast<double>(dim);

    auto blend = [&](double coef) {
      std::vector<double> x(dim);
      for (std::size_t j = 0; j < dim; ++j) {
        x[j] = centroid[j] + coef * (centroid[j] - pts[dim][j]);
      }
      return x;
    };

    std::vector<double> xr = blend(1.0);
    double fr = f(xr);
    if (fr < fv[0]) {
      std::vector<double> xe = blend(2.0);
      double fe = f(xe);
      if (fe < fr) {
        pts[dim] = std::move(xe);
        fv[dim] = fe;
      } else {
        pts[dim] = std::move(xr);
        fv[dim] = fr;
      }
    } else if (fr < fv[dim - 1]) {
      pts[dim] = std::move(xr);
      fv[dim] = fr;
    } else {
      bool outside = fr < fv[dim];
      std::vector<double> xc = blend(outside ? 0.5 : -0.5);
      double fc = f(xc);
      if (fc < std::min(fr, fv[dim])) {
        pts[dim] = std::move(xc);
        fv[dim] = fc;
      } else {
        for (std::size_t i = 1; i <= dim; ++i) {
          for (std::size_t j = 0; j < dim; ++j) {
            pts[i][j] = pts[0][j] + 0.5 * (pts[i][j] - pts[0][j]);
          }
          fv[i] = f(pts[i]);
        }
      }
    }
    order();
    if (fv[0] < res.trace.back()) res.trace.push_back(fv[0]);
  }
  res.x = pts[0];
  res.fx = fv[0];
  return res;
}

std::vector<double> difference_d(const std::vector<double>& y, int d) {
  std::vector<double> w = y;
  for (int round = 0; round < d; ++round) {
    std::vector<double> next(w.size() - 1);
    for (std::size_t i = 0; i + 1 < w.size(); ++i) next[i] = w[i + 1] - w[i];
    w = std::move(next);
  }
  return w;
}

}  // namespace

ArimaFit fit_arima(const std::vector<double>& series, int p, int d, int q) {
  if (p < 0 || d < 0 || q < 0) raise(ErrorCode::ValidationError, "fit_arima: negative order");
  if (static_cast<int>(series.size()) <= p + q + d + 5) {
    raise(ErrorCode::TooShort, "fit_arima: series too short for (" + std::to_string(p) + "," +
                                   std::to_string(d) + "," + std::to_string(q) + ")");
  }

  std::vector<double> w = difference_d(series, d);
  const double mean = std::accumulate(w.begin(), w.end(), 0.0) / static_cast<double>(w.size());
  std::vector<double> z(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) z[i] = w[i] - mean;

  ArimaFit fit;
  fit.orders = {p, d, q};
  fit.mean = mean;

  const std::size_t dim = static_cast<std::size_t>(p + q);
  auto objective = [&](const std::vector<double>& x) {
    std::vector<double> ar(x.begin(), x.begin() + p);
    std::vector<double> ma(x.begin() + p, x.end());
    return css(z, ar, ma);
  };

  std::vector<double> best(dim, 0.0);
  double ssr;
  if (dim == 0) {
    ssr = 0.0;
    for (double v : z) ssr += v * v;
    fit.optimizer_trace.push_back(ssr);
  } else {
    NmResult nm = nelder_mead(objective, std::vector<double>(dim, 0.0), 0.1, 1e-10,
                              500 * static_cast<int>(dim));
    if (!std::isfinite(nm.fx)) {
      raise(ErrorCode::NonConvergence, "fit_arima: search failed to find admissible coefficients");
    }
    best = nm.x;
    ssr = nm.fx;
    fit.converged = nm.converged;
    fit.optimizer_trace = std::move(nm.trace);
  }

  fit.ar.assign(best.begin(), best.begin() + p);
  fit.ma.assign(best.begin() + p, best.end());
  fit.near_boundary = spectral_radius(fit.ar) > kNearBoundary ||
                      spectral_radius(fit.ma) > kNearBoundary;

  fit.nobs = z.size() - static_cast<std::size_t>(p);
  fit.innovation_variance = ssr / static_cast<double>(fit.nobs);
  fit.loglik = gaussian_loglik(ssr, fit.nobs);
  // Parameters: AR + MA + mean + innovation variance.
  const std::size_t k = static_cast<std::size_t>(p + q) + 2;
  InformationCriteria ic = information_criteria(fit.loglik, k, fit.nobs);
  fit.aic = ic.aic;
  fit.bic = ic.bic;
  fit.hqc = ic.hqc;
  return fit;
}

ArimaSelection select_arima(const std::vector<double>& series, int p_max, int q_max, int d,
                            ModelCriterion criterion) {
  if (p_max < 0 || q_max < 0 || p_max > 5 || q_max > 5) {
    raise(ErrorCode::ValidationError, "select_arima: p_max and q_max must be in [0,5]");
  }
  ArimaSelection sel;
  sel.criterion = criterion;
  bool have_best = false;
  double best_score = kInf;
  for (int p = 0; p <= p_max; ++p) {
    for (int q = 0; q <= q_max; ++q) {
      ArimaCell cell;
      cell.p = p;
      cell.q = q;
      try {
        ArimaFit fit = fit_arima(series, p, d, q);
        cell.ok = true;
        cell.aic = fit.aic;
        cell.bic = fit.bic;
        cell.hqc = fit.hqc;
        double score = criterion == ModelCriterion::AIC   ? fit.aic
                       : criterion == ModelCriterion::BIC ? fit.bic
                                                          : fit.hqc;
        // (score, p, q) lexicographic; the grid is scanned in (p,q) order
        // so strict improvement is enough for the tie-break.
        if (!have_best || score < best_score) {
          have_best = true;
          best_score = score;
          sel.best = std::move(fit);
        }
      } catch (const Error& e) {
        cell.error = e.what();
      }
      sel.table.push_back(cell);
    }
  }
  if (!have_best) {
    raise(ErrorCode::NonConvergence, "select_arima: every grid cell failed");
  }
  return sel;
}

}  // namespace patecon::econ
