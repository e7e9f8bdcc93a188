#pragma once

// JSON result objects: every result embeds the input key, the options
// used, the statistic, critical values, the decision, and the library
// version, so report cells stay traceable to a result file.

#include <string>

#include <nlohmann/json.hpp>

#include "patecon/arima.hpp"
#include "patecon/breaks.hpp"
#include "patecon/cointegration.hpp"
#include "patecon/series.hpp"
#include "patecon/simulate.hpp"
#include "patecon/unit_root.hpp"

namespace patecon::io {

nlohmann::json key_to_json(const series::SeriesKey& key);
nlohmann::json unit_root_to_json(const econ::UnitRootResult& r, const series::SeriesKey& key);
nlohmann::json arima_to_json(const econ::ArimaFit& fit, const series::SeriesKey& key);
nlohmann::json selection_to_json(const econ::ArimaSelection& sel, const series::SeriesKey& key);
nlohmann::json breaks_to_json(const econ::BreakSet& breaks, const series::SeriesKey& key);
nlohmann::json coint_to_json(const econ::CointResult& r);
nlohmann::json mc_to_json(const sim::McOutcome& outcome, const sim::SimSpec& spec,
                          const std::string& test_name);

// Deterministic rendering: sorted keys, 2-space indent, trailing newline.
std::string dump(const nlohmann::json& j);

// Atomic write (temp file + rename).
void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

// FNV-1a 64-bit content hash, hex-encoded; used in run manifests.
std::string content_hash(const std::string& bytes);

}  // namespace patecon::io
