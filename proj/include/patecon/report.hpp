#pragma once

// Report tables: stationarity/ARIMA selection per CPC section, structural
// breaks, and the pairwise cointegration grids, with significance stars
// and NA cells where a series is too short. Every cell writes a sibling
// JSON result file.

#include <optional>
#include <string>
#include <vector>

#include "patecon/arima.hpp"
#include "patecon/series.hpp"
#include "patecon/unit_root.hpp"

namespace patecon::cli {

enum class ReportTable {
  Stationarity,
  Breaks,
  CointByGeo,
  CointByApplicant,
  CointBySection,
  CointBySectionGeo,
};

ReportTable report_table_from_string(const std::string& s);
std::vector<std::string> report_table_names();

struct ReportOptions {
  // Transform applied before testing: log annual counts by default, log
  // cumulative stock with `use_stock`. Recorded in every cell JSON.
  bool use_stock = false;
  econ::LagCriterion lag_criterion = econ::LagCriterion::AIC;
  int arima_p_max = 3;
  int arima_q_max = 3;
  econ::ModelCriterion arima_criterion = econ::ModelCriterion::BIC;
  int max_breaks = 5;
  double trim = 0.15;
  std::vector<char> sections = {'A', 'B', 'E', 'F', 'G', 'H', 'Y'};
  std::string cells_dir;  // where per-cell JSON results go; empty = skip
};

struct ReportResult {
  std::string csv_text;
  std::vector<std::string> warnings;
};

ReportResult cmd_report(const std::vector<series::AnnualSeries>& all, ReportTable table,
                        const ReportOptions& options = {});

// "-3.245**" rendering shared by all cointegration tables.
std::string star_cell(double statistic, bool at_1, bool at_5, bool at_10);

}  // namespace patecon::cli
