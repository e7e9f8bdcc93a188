#include "patecon/json_io.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "patecon/errors.hpp"
#include "patecon/version.hpp"

namespace patecon::io {

using nlohmann::json;

namespace {

json number_or_null(double v) {
  if (std::isnan(v) || std::isinf(v)) return nullptr;
  return v;
}

json decisions(const econ::UnitRootResult& r) {
  return json{{"reject_at_1", r.reject_at_1},
              {"reject_at_5", r.reject_at_5},
              {"reject_at_10", r.reject_at_10}};
}

json criticals(const econ::CriticalValues& cv) {
  return json{{"cv1", cv.cv1}, {"cv5", cv.cv5}, {"cv10", cv.cv10}};
}

}  // namespace

json key_to_json(const series::SeriesKey& key) {
  return json{{"domain", key.domain},
              {"geography", key.geography},
              {"basis", series::to_string(key.basis)},
              {"cpc_section", key.cpc_section ? std::string(1, *key.cpc_section) : ""}};
}

json unit_root_to_json(const econ::UnitRootResult& r, const series::SeriesKey& key) {
  return json{{"test", econ::to_string(r.test)},
              {"key", key_to_json(key)},
              {"options",
               {{"deterministic", econ::to_string(r.deterministic)},
                {"lags_used", r.lags_used}}},
              {"statistic", number_or_null(r.statistic)},
              {"critical_values", criticals(r.critical)},
              {"decision", decisions(r)},
              {"nobs", r.nobs},
              {"version", kVersion}};
}

json arima_to_json(const econ::ArimaFit& fit, const series::SeriesKey& key) {
  return json{{"test", "ARIMA"},
              {"key", key_to_json(key)},
              {"orders", {{"p", fit.orders.p}, {"d", fit.orders.d}, {"q", fit.orders.q}}},
              {"ar", fit.ar},
              {"ma", fit.ma},
              {"mean", fit.mean},
              {"innovation_variance", fit.innovation_variance},
              {"loglik", fit.loglik},
              {"aic", fit.aic},
              {"bic", fit.bic},
              {"hqc", fit.hqc},
              {"nobs", fit.nobs},
              {"converged", fit.converged},
              {"near_boundary", fit.near_boundary},
              {"version", kVersion}};
}

json selection_to_json(const econ::ArimaSelection& sel, const series::SeriesKey& key) {
  json table = json::array();
  for (const auto& cell : sel.table) {
    json c{{"p", cell.p}, {"q", cell.q}, {"ok", cell.ok}};
    if (cell.ok) {
      c["aic"] = cell.aic;
      c["bic"] = cell.bic;
      c["hqc"] = cell.hqc;
    } else {
      c["error"] = cell.error;
    }
    table.push_back(c);
  }
  const char* crit = sel.criterion == econ::ModelCriterion::AIC   ? "AIC"
                     : sel.criterion == econ::ModelCriterion::BIC ? "BIC"
                                                                  : "HQIC";
  json j = arima_to_json(sel.best, key);
  j["test"] = "ARIMA-selection";
  j["options"] = {{"criterion", crit}};
  j["table"] = table;
  return j;
}

json breaks_to_json(const econ::BreakSet& breaks, const series::SeriesKey& key) {
  return json{{"test", "BaiPerron"},
              {"key", key_to_json(key)},
              {"break_years", breaks.break_years},
              {"break_indices", breaks.break_indices},
              {"segment_means", breaks.segment_means},
              {"segment_ssr", breaks.segment_ssr},
              {"total_ssr", breaks.total_ssr},
              {"selected_breaks", breaks.selected_breaks},
              {"criterion_by_m", breaks.criterion_by_m},
              {"ssr_by_m", breaks.ssr_by_m},
              {"version", kVersion}};
}

json coint_to_json(const econ::CointResult& r) {
  const char* crit = r.lag_criterion == econ::LagCriterion::AIC ? "AIC" : "HQIC";
  return json{{"test", "EngleGranger"},
              {"key", {{"left", key_to_json(r.left_key)}, {"right", key_to_json(r.right_key)}}},
              {"options",
               {{"lag_criterion", crit},
                {"pretested_i1", r.pretested_i1},
                {"dummy_columns", r.dummy_columns}}},
              {"coefficients", r.static_fit.coefficients},
              {"statistic", number_or_null(r.residual_adf.statistic)},
              {"lags_used", r.residual_adf.lags_used},
              {"critical_values", criticals(r.residual_adf.critical)},
              {"decision",
               {{"cointegrated_at_1", r.cointegrated_at_1},
                {"cointegrated_at_5", r.cointegrated_at_5},
                {"cointegrated_at_10", r.cointegrated_at_10}}},
              {"degenerate", r.degenerate},
              {"version", kVersion}};
}

json mc_to_json(const sim::McOutcome& outcome, const sim::SimSpec& spec,
                const std::string& test_name) {
  return json{{"test", test_name},
              {"spec", json::parse(spec.to_json())},
              {"replications", outcome.replications},
              {"rejection_rates",
               {{"at_1", outcome.rate_at_1},
                {"at_5", outcome.rate_at_5},
                {"at_10", outcome.rate_at_10}}},
              {"standard_errors",
               {{"at_1", outcome.se_at_1}, {"at_5", outcome.se_at_5}, {"at_10", outcome.se_at_10}}},
              {"version", kVersion}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void write_file(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) raise(ErrorCode::IoError, "cannot write " + tmp.string());
    out << content;
  }
  fs::rename(tmp, target);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorCode::IoError, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string content_hash(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char out[17];
  std::snprintf(out, sizeof(out), "%016llx", static_cast<unsigned long long>(h));
  return out;
}

}  // namespace patecon::io
