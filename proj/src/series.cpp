#include "patecon/series.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "patecon/csv.hpp"
#include "patecon/errors.hpp"

namespace patecon::series {

using nlohmann::json;

std::string to_string(GeoBasis b) {
  return b == GeoBasis::Authority ? "Authority" : "Applicant";
}

std::string to_string(Transform t) {
  switch (t) {
    case Transform::Count: return "Count";
    case Transform::Stock: return "Stock";
    case Transform::LogStock: return "LogStock";
    case Transform::LogCount: return "LogCount";
    case Transform::Share: return "Share";
    case Transform::Diff: return "Diff";
  }
  return "Count";
}

std::string SeriesKey::slug() const {
  std::string s = domain.empty() ? "all" : domain;
  s += "__";
  s += (basis == GeoBasis::Authority ? "auth-" : "appl-");
  s += geography.empty() ? "all" : geography;
  s += "__";
  s += cpc_section ? std::string(1, *cpc_section) : "all";
  for (auto& c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_') c = '_';
  }
  return s;
}

bool SeriesKey::operator<(const SeriesKey& o) const {
  return std::tie(domain, geography, basis, cpc_section) <
         std::tie(o.domain, o.geography, o.basis, o.cpc_section);
}

std::vector<AnnualSeries> build_counts(const std::vector<ingest::FamilyRecord>& families,
                                       const GroupBy& group_by, int first, int last,
                                       long* skipped) {
  if (first > last) raise(ErrorCode::InvertedWindow, "build_counts: inverted window");
  const std::size_t n_years = static_cast<std::size_t>(last - first + 1);

  std::map<SeriesKey, std::vector<double>> counts;
  auto bump = [&](const SeriesKey& key, int year) {
    auto [it, inserted] = counts.try_emplace(key);
    if (inserted) it->second.assign(n_years, 0.0);
    it->second[static_cast<std::size_t>(year - first)] += 1.0;
  };

  for (const auto& fam : families) {
    if (fam.application_year < first || fam.application_year > last) continue;
    SeriesKey key;
    if (group_by.domain) key.domain = fam.domain_label;
    if (group_by.geography) {
      key.basis = *group_by.geography;
      if (*group_by.geography == GeoBasis::Authority) {
        key.geography = ingest::to_string(fam.region);
      } else {
        if (!fam.applicant_country) {
          if (skipped) ++*skipped;
          continue;
        }
        key.geography = *fam.applicant_country;
      }
    }
    if (group_by.cpc_section) {
      // one increment per section the family holds
      for (char s : fam.cpc_sections) {
        SeriesKey k = key;
        k.cpc_section = s;
        bump(k, fam.application_year);
      }
    } else {
      bump(key, fam.application_year);
    }
  }

  std::vector<AnnualSeries> out;
  out.reserve(counts.size());
  for (auto& [key, values] : counts) {
    AnnualSeries s;
    s.key = key;
    s.first_year = first;
    s.zero_mask.resize(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) s.zero_mask[i] = values[i] == 0.0;
    s.values = std::move(values);
    s.transform = Transform::Count;
    out.push_back(std::move(s));
  }
  return out;
}

AnnualSeries cumulate_stock(const AnnualSeries& counts) {
  if (counts.transform != Transform::Count) {
    raise(ErrorCode::WrongTransform, "cumulate_stock expects a Count series");
  }
  AnnualSeries s = counts;
  double acc = 0.0;
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    acc += counts.values[i];
    s.values[i] = acc;
    s.zero_mask[i] = acc == 0.0;
  }
  s.transform = Transform::Stock;
  return s;
}

AnnualSeries log_transform(const AnnualSeries& in, LogPolicy policy) {
  for (double v : in.values) {
    if (v < 0.0) raise(ErrorCode::NegativeValue, "log_transform: negative value");
  }
  AnnualSeries s = in;
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    double x = in.values[i];
    if (policy == LogPolicy::Log1p) {
      s.values[i] = std::log1p(x);
    } else {
      s.values[i] = x > 0.0 ? std::log(x) : 0.0;
    }
  }
  s.transform = (in.transform == Transform::Stock) ? Transform::LogStock : Transform::LogCount;
  return s;
}

std::vector<ShareTable> compute_shares(const std::vector<AnnualSeries>& series,
                                       bool technology_split) {
  if (series.empty()) return {};
  const int first = series[0].first_year;
  const std::size_t n = series[0].size();
  const GeoBasis basis = series[0].key.basis;
  for (const auto& s : series) {
    if (s.first_year != first || s.size() != n) {
      raise(ErrorCode::YearMismatch, "compute_shares: mismatched year ranges");
    }
  }

  auto label = [&](const SeriesKey& key) {
    std::string l = key.geography.empty() ? "all" : key.geography;
    if (technology_split) {
      // NOI = traditional, I = AI-enhanced, mirroring the share formula's
      // technology superscript.
      std::string tech = key.domain == "TraditionalRobot" ? "NOI"
                         : key.domain == "AIEnhancedRobot" ? "I"
                                                           : key.domain;
      l += ":" + tech;
    }
    return l;
  };

  std::vector<ShareTable> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    ShareTable table;
    table.year = first + static_cast<int>(i);
    table.basis = basis;
    table.technology_split = technology_split;
    double total = 0.0;
    for (const auto& s : series) total += s.values[i];
    for (const auto& s : series) {
      double share = total > 0.0 ? s.values[i] / total : 0.0;
      table.shares[label(s.key)] += share;
    }
    table.zero_total = total <= 0.0;
    out.push_back(std::move(table));
  }
  return out;
}

AnnualSeries difference(const AnnualSeries& in, int d) {
  if (d < 0) raise(ErrorCode::ValidationError, "difference: d must be nonnegative");
  if (static_cast<int>(in.size()) <= d) {
    raise(ErrorCode::TooShort, "difference: series too short for d=" + std::to_string(d));
  }
  if (d == 0) return in;
  AnnualSeries s = in;
  for (int round = 0; round < d; ++round) {
    std::vector<double> next(s.values.size() - 1);
    for (std::size_t i = 0; i + 1 < s.values.size(); ++i) {
      next[i] = s.values[i + 1] - s.values[i];
    }
    s.values = std::move(next);
    s.first_year += 1;
  }
  s.zero_mask.assign(s.values.size(), false);
  s.transform = Transform::Diff;
  s.diff_order = in.transform == Transform::Diff ? in.diff_order + d : d;
  return s;
}

AnnualSeries normalize_by(const AnnualSeries& counts, const AnnualSeries& denominator) {
  if (counts.first_year != denominator.first_year || counts.size() != denominator.size()) {
    raise(ErrorCode::YearMismatch, "normalize_by: year ranges differ");
  }
  AnnualSeries s = counts;
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    double denom = denominator.values[i];
    if (denom < 0.0) raise(ErrorCode::NegativeValue, "normalize_by: negative denominator");
    if (denom == 0.0) {
      if (counts.values[i] != 0.0) {
        raise(ErrorCode::ValidationError, "normalize_by: zero denominator with nonzero count");
      }
      s.values[i] = 0.0;
    } else {
      s.values[i] = counts.values[i] / denom;
      if (s.values[i] > 1.0) {
        raise(ErrorCode::ValidationError, "normalize_by: share above 1; denominator too small");
      }
    }
  }
  s.transform = Transform::Share;
  return s;
}

void write_series_csv(std::ostream& out, const AnnualSeries& s) {
  csv::write_row(out, {"year", "value", "zero"});
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    csv::write_row(out, {std::to_string(s.year_at(i)), csv::format_double(s.values[i]),
                         s.zero_mask[i] ? "1" : "0"});
  }
}

AnnualSeries read_series_csv(std::istream& in) {
  auto rows = csv::read_all(in);
  if (rows.empty() || rows[0] != csv::Row{"year", "value", "zero"}) {
    raise(ErrorCode::UnknownColumn, "series csv must start with header year,value,zero");
  }
  AnnualSeries s;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != 3) {
      raise(ErrorCode::MalformedRow, "series csv row " + std::to_string(r));
    }
    int year = std::stoi(row[0]);
    if (s.values.empty()) {
      s.first_year = year;
    } else if (year != s.first_year + static_cast<int>(s.values.size())) {
      raise(ErrorCode::MalformedRow,
            "series csv row " + std::to_string(r) + ": years must be contiguous");
    }
    s.values.push_back(std::stod(row[1]));
    s.zero_mask.push_back(row[2] == "1");
  }
  return s;
}

std::string key_sidecar_json(const AnnualSeries& s) {
  json j;
  j["domain"] = s.key.domain;
  j["geography"] = s.key.geography;
  j["basis"] = to_string(s.key.basis);
  j["cpc_section"] = s.key.cpc_section ? std::string(1, *s.key.cpc_section) : "";
  j["transform"] = to_string(s.transform);
  j["diff_order"] = s.diff_order;
  j["first_year"] = s.first_year;
  j["n"] = s.values.size();
  return j.dump(2) + "\n";
}

void apply_sidecar_json(AnnualSeries& s, const std::string& json_text) {
  json j = json::parse(json_text);
  s.key.domain = j.value("domain", "");
  s.key.geography = j.value("geography", "");
  s.key.basis = j.value("basis", "Authority") == "Applicant" ? GeoBasis::Applicant
                                                             : GeoBasis::Authority;
  std::string section = j.value("cpc_section", "");
  s.key.cpc_section = section.empty() ? std::optional<char>{} : std::optional<char>{section[0]};
  std::string t = j.value("transform", "Count");
  if (t == "Count") s.transform = Transform::Count;
  else if (t == "Stock") s.transform = Transform::Stock;
  else if (t == "LogStock") s.transform = Transform::LogStock;
  else if (t == "LogCount") s.transform = Transform::LogCount;
  else if (t == "Share") s.transform = Transform::Share;
  else if (t == "Diff") s.transform = Transform::Diff;
  s.diff_order = j.value("diff_order", 0);
}

}  // namespace patecon::series
