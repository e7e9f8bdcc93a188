#pragma once

// Annual series construction: counts, stocks, logs, shares, differences.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "patecon/ingest.hpp"

namespace patecon::series {

enum class GeoBasis { Authority, Applicant };

enum class Transform { Count, Stock, LogStock, LogCount, Share, Diff };

std::string to_string(GeoBasis b);
std::string to_string(Transform t);

struct SeriesKey {
  std::string domain;     // DomainLabel name, or a free label for simulations
  std::string geography;  // region or country code; empty = all
  GeoBasis basis = GeoBasis::Authority;
  std::optional<char> cpc_section;

  std::string slug() const;  // filesystem-safe, unique per key
  bool operator==(const SeriesKey&) const = default;
  bool operator<(const SeriesKey& o) const;
};

struct AnnualSeries {
  SeriesKey key;
  int first_year = 0;
  std::vector<double> values;
  std::vector<bool> zero_mask;  // true where the raw count was 0
  Transform transform = Transform::Count;
  int diff_order = 0;  // meaningful when transform == Diff

  std::size_t size() const { return values.size(); }
  int year_at(std::size_t i) const { return first_year + static_cast<int>(i); }
};

struct ShareTable {
  int year = 0;
  std::map<std::string, double> shares;  // label -> share
  GeoBasis basis = GeoBasis::Authority;
  bool technology_split = false;
  bool zero_total = false;  // year had no activity; shares forced to 0
};

// Which dimensions form the grouping key.
struct GroupBy {
  bool domain = false;
  std::optional<GeoBasis> geography;
  bool cpc_section = false;
};

// One Count series per observed key; years inside [first, last] with no
// families get value 0 and zero_mask set. A family with several CPC
// sections increments every matching section series. Families without an
// applicant country are skipped under Applicant grouping (tallied in
// *skipped if given).
std::vector<AnnualSeries> build_counts(const std::vector<ingest::FamilyRecord>& families,
                                       const GroupBy& group_by, int first, int last,
                                       long* skipped = nullptr);

// Cumulative sum, no depreciation.
AnnualSeries cumulate_stock(const AnnualSeries& counts);

enum class LogPolicy { Log1p, DummyZeros };

// Log1p: ln(1+x). DummyZeros: ln(x) where x>0, 0 at zeros, zero_mask kept
// for downstream dummy construction.
AnnualSeries log_transform(const AnnualSeries& s, LogPolicy policy);

// Per-year normalisation by the grand total across all input series.
// All series must share years and basis.
std::vector<ShareTable> compute_shares(const std::vector<AnnualSeries>& series,
                                       bool technology_split);

// d-th difference; output is shorter by d and starts d years later.
AnnualSeries difference(const AnnualSeries& s, int d);

// Divides counts by a user-supplied per-year denominator (e.g. total
// patenting activity). Result transform is Share.
AnnualSeries normalize_by(const AnnualSeries& counts, const AnnualSeries& denominator);

// year,value,zero rows with a JSON sidecar describing the key.
void write_series_csv(std::ostream& out, const AnnualSeries& s);
AnnualSeries read_series_csv(std::istream& in);
std::string key_sidecar_json(const AnnualSeries& s);
void apply_sidecar_json(AnnualSeries& s, const std::string& json_text);

}  // namespace patecon::series
