#include "patecon/breaks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "patecon/errors.hpp"

namespace patecon::econ {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct SegmentCost {
  std::vector<double> prefix;    // prefix[i] = sum of y[0..i)
  std::vector<double> prefix2;   // squares

  explicit SegmentCost(const std::vector<double>& y)
      : prefix(y.size() + 1, 0.0), prefix2(y.size() + 1, 0.0) {
    for (std::size_t i = 0; i < y.size(); ++i) {
      prefix[i + 1] = prefix[i] + y[i];
      prefix2[i + 1] = prefix2[i] + y[i] * y[i];
    }
  }

  // SSR of the mean fit over y[i..j] inclusive.
  double operator()(std::size_t i, std::size_t j) const {
    const double len = static_cast<double>(j - i + 1);
    const double sum = prefix[j + 1] - prefix[i];
    const double sum2 = prefix2[j + 1] - prefix2[i];
    return std::max(0.0, sum2 - sum * sum / len);
  }
};

}  // namespace

BreakSet bai_perron(const std::vector<double>& series, int first_year, int max_breaks,
                    double trim) {
  const std::size_t n = series.size();
  if (max_breaks < 0 || max_breaks > 5) {
    raise(ErrorCode::ValidationError, "bai_perron: max_breaks must be in [0,5]");
  }
  if (trim <= 0.0 || trim >= 0.5) {
    raise(ErrorCode::ValidationError, "bai_perron: trim must be in (0, 0.5)");
  }
  const std::size_t h = static_cast<std::size_t>(std::ceil(trim * static_cast<double>(n)));
  if (h < 2 || n < (static_cast<std::size_t>(max_breaks) + 1) * h) {
    raise(ErrorCode::TooShort, "bai_perron: series too short for trim and max_breaks");
  }

  SegmentCost cost(series);

  // opt[k][j]: minimal SSR splitting y[0..j] into k segments of length >= h.
  // choice[k][j]: start index of the last segment at the optimum.
  const std::size_t kmax = static_cast<std::size_t>(max_breaks) + 1;
  std::vector<std::vector<double>> opt(kmax + 1, std::vector<double>(n, kInf));
  std::vector<std::vector<std::size_t>> choice(kmax + 1, std::vector<std::size_t>(n, 0));

  for (std::size_t j = h - 1; j < n; ++j) opt[1][j] = cost(0, j);
  for (std::size_t k = 2; k <= kmax; ++k) {
    for (std::size_t j = k * h - 1; j < n; ++j) {
      // last segment is y[i..j], i.e. previous k-1 segments cover y[0..i-1]
      for (std::size_t i = (k - 1) * h; i + h <= j + 1; ++i) {
        double candidate = opt[k - 1][i - 1] + cost(i, j);
        if (candidate < opt[k][j]) {
          opt[k][j] = candidate;
          choice[k][j] = i;
        }
      }
    }
  }

  BreakSet out;
  out.ssr_by_m.resize(kmax);
  out.criterion_by_m.resize(kmax);
  const double nn = static_cast<double>(n);
  int best_m = 0;
  double best_bic = kInf;
  for (std::size_t m = 0; m < kmax; ++m) {
    double ssr = opt[m + 1][n - 1];
    out.ssr_by_m[m] = ssr;
    // Mean-shift model: m+1 segment means plus m break dates.
    const double params = static_cast<double>(2 * m + 1);
    double bic = nn * std::log(std::max(ssr, 1e-300) / nn) + params * std::log(nn);
    out.criterion_by_m[m] = bic;
    if (bic < best_bic) {
      best_bic = bic;
      best_m = static_cast<int>(m);
    }
  }
  out.selected_breaks = best_m;
  out.total_ssr = out.ssr_by_m[static_cast<std::size_t>(best_m)];

  // Reconstruct the selected segmentation.
  std::vector<std::size_t> starts;  // first index of each segment, reversed
  std::size_t j = n - 1;
  for (std::size_t k = static_cast<std::size_t>(best_m) + 1; k >= 1; --k) {
    std::size_t i = (k == 1) ? 0 : choice[k][j];
    starts.push_back(i);
    if (k == 1) break;
    j = i - 1;
  }
  std::reverse(starts.begin(), starts.end());

  for (std::size_t s = 0; s < starts.size(); ++s) {
    std::size_t begin = starts[s];
    std::size_t end = (s + 1 < starts.size()) ? starts[s + 1] - 1 : n - 1;
    double sum = 0.0;
    for (std::size_t t = begin; t <= end; ++t) sum += series[t];
    out.segment_means.push_back(sum / static_cast<double>(end - begin + 1));
    out.segment_ssr.push_back(cost(begin, end));
    if (s > 0) {
      out.break_indices.push_back(begin);
      out.break_years.push_back(first_year + static_cast<int>(begin));
    }
  }
  return out;
}

}  // namespace patecon::econ
