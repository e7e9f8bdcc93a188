#pragma once

#include <vector>

namespace patecon::econ {

struct BreakSet {
  // Index of the first observation of each new segment, 0-based.
  std::vector<std::size_t> break_indices;
  // Same positions in year units (first_year + index).
  std::vector<int> break_years;
  std::vector<double> segment_means;
  std::vector<double> segment_ssr;
  double total_ssr = 0.0;
  int selected_breaks = 0;
  // Criterion value and global minimum SSR for each candidate break count
  // m = 0..max_breaks.
  std::vector<double> criterion_by_m;
  std::vector<double> ssr_by_m;
};

// Global least-squares segmentation of a mean-shift model. For each break
// count m <= max_breaks the SSR-minimising break placement is found by
// dynamic programming with minimum segment length ceil(trim * n); the
// break count is then chosen by BIC.
BreakSet bai_perron(const std::vector<double>& series, int first_year, int max_breaks,
                    double trim = 0.15);

}  // namespace patecon::econ
