#include "patecon/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

#include "patecon/cointegration.hpp"
#include "patecon/csv.hpp"
#include "patecon/errors.hpp"
#include "patecon/json_io.hpp"

namespace patecon::cli {

using nlohmann::json;
using series::AnnualSeries;
using series::GeoBasis;

ReportTable report_table_from_string(const std::string& s) {
  if (s == "Stationarity") return ReportTable::Stationarity;
  if (s == "Breaks") return ReportTable::Breaks;
  if (s == "CointByGeo") return ReportTable::CointByGeo;
  if (s == "CointByApplicant") return ReportTable::CointByApplicant;
  if (s == "CointBySection") return ReportTable::CointBySection;
  if (s == "CointBySectionGeo") return ReportTable::CointBySectionGeo;
  std::string names;
  for (const auto& n : report_table_names()) names += (names.empty() ? "" : ", ") + n;
  raise(ErrorCode::ValidationError, "unknown table '" + s + "'; valid tables: " + names);
}

std::vector<std::string> report_table_names() {
  return {"Stationarity", "Breaks",        "CointByGeo",
          "CointByApplicant", "CointBySection", "CointBySectionGeo"};
}

std::string star_cell(double statistic, bool at_1, bool at_5, bool at_10) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", statistic);
  std::string s = buf;
  if (at_1) s += "***";
  else if (at_5) s += "**";
  else if (at_10) s += "*";
  return s;
}

namespace {

const char* kPairLabels[3] = {"AI vs. Enhanced Robots", "AI vs. Traditional Robots",
                              "Enhanced vs. Traditional Robots"};
const char* kPairDomains[3][2] = {{"CoreAI", "AIEnhancedRobot"},
                                  {"CoreAI", "TraditionalRobot"},
                                  {"AIEnhancedRobot", "TraditionalRobot"}};
const char* kRegionColumns[5] = {"China", "US", "Europe", "Japan", "SouthKorea"};

std::string slugify(std::string s) {
  for (auto& c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c))) c = '_';
  }
  return s;
}

struct TableBuilder {
  const std::vector<AnnualSeries>& all;
  const ReportOptions& options;
  std::string table_name;
  std::vector<std::string> warnings;

  const AnnualSeries* find(const std::string& domain, const std::string& geography,
                           GeoBasis basis, std::optional<char> section) const {
    for (const auto& s : all) {
      if (s.key.domain == domain && s.key.geography == geography && s.key.basis == basis &&
          s.key.cpc_section == section && s.transform == series::Transform::Count) {
        return &s;
      }
    }
    return nullptr;
  }

  AnnualSeries prepare(const AnnualSeries& counts) const {
    AnnualSeries base = options.use_stock ? series::cumulate_stock(counts) : counts;
    return series::log_transform(base, series::LogPolicy::DummyZeros);
  }

  void write_cell_json(const std::string& row, const std::string& col, json j) const {
    if (options.cells_dir.empty()) return;
    j["table"] = table_name;
    j["row"] = row;
    j["column"] = col;
    j["series_transform"] = options.use_stock ? "log_stock" : "log_count";
    io::write_file(options.cells_dir + "/" + slugify(table_name) + "__" + slugify(row) + "__" +
                       slugify(col) + ".json",
                   io::dump(j));
  }

  std::string coint_cell(const std::string& row_label, const std::string& col_label,
                         const std::string& domain_y, const std::string& domain_x,
                         const std::string& geography, GeoBasis basis,
                         std::optional<char> section) {
    const AnnualSeries* y_counts = find(domain_y, geography, basis, section);
    const AnnualSeries* x_counts = find(domain_x, geography, basis, section);
    if (!y_counts || !x_counts) {
      warnings.push_back(table_name + " [" + row_label + " x " + col_label +
                         "]: series missing");
      write_cell_json(row_label, col_label, json{{"status", "missing"}, {"statistic", nullptr}});
      return "NA";
    }
    try {
      econ::CointOptions copts;
      copts.lag_criterion = options.lag_criterion;
      econ::CointResult res = engle_granger(prepare(*y_counts), prepare(*x_counts), copts);
      json j = io::coint_to_json(res);
      j["status"] = "ok";
      write_cell_json(row_label, col_label, std::move(j));
      if (res.degenerate) return "degenerate";
      return star_cell(res.residual_adf.statistic, res.cointegrated_at_1, res.cointegrated_at_5,
                       res.cointegrated_at_10);
    } catch (const Error& e) {
      warnings.push_back(table_name + " [" + row_label + " x " + col_label + "]: " + e.what());
      write_cell_json(row_label, col_label,
                      json{{"status", "error"}, {"error", e.what()}, {"statistic", nullptr}});
      return "NA";
    }
  }
};

// Pairwise tables share one layout: rows = the three domain pairs,
// columns = geographies or sections.
std::string coint_grid(TableBuilder& tb, const std::vector<std::string>& col_labels,
                       const std::function<std::pair<std::string, GeoBasis>(const std::string&)>&
                           geo_of_col,
                       const std::function<std::optional<char>(const std::string&)>& section_of_col) {
  std::ostringstream out;
  csv::Row header{"pair"};
  for (const auto& c : col_labels) header.push_back(c);
  csv::write_row(out, header);
  for (int pair = 0; pair < 3; ++pair) {
    csv::Row row{kPairLabels[pair]};
    for (const auto& col : col_labels) {
      auto [geo, basis] = geo_of_col(col);
      row.push_back(tb.coint_cell(kPairLabels[pair], col, kPairDomains[pair][0],
                                  kPairDomains[pair][1], geo, basis, section_of_col(col)));
    }
    csv::write_row(out, row);
  }
  return out.str();
}

}  // namespace

ReportResult cmd_report(const std::vector<AnnualSeries>& all, ReportTable table,
                        const ReportOptions& options) {
  TableBuilder tb{all, options, "", {}};
  ReportResult result;
  std::ostringstream out;

  switch (table) {
    case ReportTable::Stationarity: {
      tb.table_name = "Stationarity";
      csv::write_row(out, {"series", "selected_arima", "process"});
      for (char section : options.sections) {
        std::string row_label(1, section);
        const AnnualSeries* counts = tb.find("CoreAI", "", GeoBasis::Authority, section);
        std::string model = "NA";
        std::string process;
        if (!counts) {
          tb.warnings.push_back("Stationarity [" + row_label + "]: series missing");
          tb.write_cell_json(row_label, "selected_arima",
                             json{{"status", "missing"}, {"statistic", nullptr}});
        } else {
          try {
            AnnualSeries logged = tb.prepare(*counts);
            econ::IntegrationOrder order = econ::integration_order(logged.values);
            econ::ArimaSelection sel =
                econ::select_arima(logged.values, options.arima_p_max, options.arima_q_max,
                                   order.d, options.arima_criterion);
            model = "(" + std::to_string(sel.best.orders.p) + "," +
                    std::to_string(sel.best.orders.d) + "," + std::to_string(sel.best.orders.q) +
                    ")";
            if (sel.best.orders.p == 0 && sel.best.orders.q == 0) process = "white noise";
            json j = io::selection_to_json(sel, counts->key);
            j["status"] = "ok";
            j["integration_order"] = order.d;
            j["integration_conflict"] = order.conflict;
            tb.write_cell_json(row_label, "selected_arima", std::move(j));
          } catch (const Error& e) {
            tb.warnings.push_back("Stationarity [" + row_label + "]: " + e.what());
            tb.write_cell_json(row_label, "selected_arima",
                               json{{"status", "error"}, {"error", e.what()}});
          }
        }
        csv::write_row(out, {row_label, model, process});
      }
      break;
    }
    case ReportTable::Breaks: {
      tb.table_name = "Breaks";
      const char* domains[3] = {"AIEnhancedRobot", "TraditionalRobot", "CoreAI"};
      csv::write_row(out, {"cpc_section", "ai_enhanced_robots", "traditional_robots", "core_ai"});
      for (char section : options.sections) {
        std::string row_label(1, section);
        csv::Row row{row_label};
        for (const char* domain : domains) {
          const AnnualSeries* counts = tb.find(domain, "", GeoBasis::Authority, section);
          if (!counts) {
            tb.warnings.push_back("Breaks [" + row_label + " x " + domain + "]: series missing");
            tb.write_cell_json(row_label, domain,
                               json{{"status", "missing"}, {"statistic", nullptr}});
            row.push_back("NA");
            continue;
          }
          try {
            AnnualSeries logged = tb.prepare(*counts);
            econ::BreakSet breaks = econ::bai_perron(logged.values, logged.first_year,
                                                     options.max_breaks, options.trim);
            std::string cell;
            for (int year : breaks.break_years) {
              if (!cell.empty()) cell += ", ";
              cell += std::to_string(year);
            }
            if (cell.empty()) cell = "none";
            json j = io::breaks_to_json(breaks, counts->key);
            j["status"] = "ok";
            tb.write_cell_json(row_label, domain, std::move(j));
            row.push_back(cell);
          } catch (const Error& e) {
            tb.warnings.push_back("Breaks [" + row_label + " x " + domain + "]: " + e.what());
            tb.write_cell_json(row_label, domain,
                               json{{"status", "error"}, {"error", e.what()}});
            row.push_back("NA");
          }
        }
        csv::write_row(out, row);
      }
      break;
    }
    case ReportTable::CointByGeo: {
      tb.table_name = "CointByGeo";
      std::vector<std::string> cols(kRegionColumns, kRegionColumns + 5);
      cols.push_back("Total");
      out << coint_grid(
          tb, cols,
          [](const std::string& col) -> std::pair<std::string, GeoBasis> {
            return {col == "Total" ? "" : col, GeoBasis::Authority};
          },
          [](const std::string&) { return std::optional<char>{}; });
      break;
    }
    case ReportTable::CointByApplicant: {
      tb.table_name = "CointByApplicant";
      std::vector<std::string> cols(kRegionColumns, kRegionColumns + 5);
      out << coint_grid(
          tb, cols,
          [](const std::string& col) -> std::pair<std::string, GeoBasis> {
            return {"region:" + col, GeoBasis::Applicant};
          },
          [](const std::string&) { return std::optional<char>{}; });
      break;
    }
    case ReportTable::CointBySection: {
      tb.table_name = "CointBySection";
      std::vector<std::string> cols;
      for (char s : options.sections) cols.emplace_back(1, s);
      out << coint_grid(
          tb, cols,
          [](const std::string&) -> std::pair<std::string, GeoBasis> {
            return {"", GeoBasis::Authority};
          },
          [](const std::string& col) { return std::optional<char>{col[0]}; });
      break;
    }
    case ReportTable::CointBySectionGeo: {
      tb.table_name = "CointBySectionGeo";
      csv::Row header{"region", "pair"};
      for (char s : options.sections) header.emplace_back(1, s);
      csv::write_row(out, header);
      for (const char* region : kRegionColumns) {
        for (int pair = 0; pair < 3; ++pair) {
          csv::Row row{region, kPairLabels[pair]};
          for (char section : options.sections) {
            std::string col = std::string(region) + "/" + std::string(1, section);
            row.push_back(tb.coint_cell(kPairLabels[pair], col, kPairDomains[pair][0],
                                        kPairDomains[pair][1], region, GeoBasis::Authority,
                                        section));
          }
          csv::write_row(out, row);
        }
      }
      break;
    }
  }

  result.csv_text = out.str();
  result.warnings = std::move(tb.warnings);
  return result;
}

}  // namespace patecon::cli
