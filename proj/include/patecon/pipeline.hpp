#pragma once

// End-to-end orchestration: ingest -> classify -> series, with a run
// manifest that hashes every output for reproducibility checks.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "patecon/classifier.hpp"
#include "patecon/ingest.hpp"
#include "patecon/series.hpp"

namespace patecon::cli {

struct RunConfig {
  std::string input_path;
  ingest::FileFormat format = ingest::FileFormat::CSV;
  std::string dictionary_path;
  std::string cpc_ai_path;
  std::string cpc_robot_path;
  std::optional<std::string> europe_offices_path;
  int window_first = ingest::kDefaultWindowFirst;
  int window_last = ingest::kDefaultWindowLast;
  classify::IntelligentMode intelligent_mode = classify::IntelligentMode::Union;
  std::string out_dir;
  std::uint64_t seed = 0;

  static RunConfig from_json_file(const std::string& path);
  std::string to_json() const;
};

// Raises ValidationError on missing paths or a window outside [1900,2100].
void validate(const RunConfig& config);

struct LoadedAssets {
  classify::KeywordDictionary dictionary;
  classify::CpcRuleSet rules;
  ingest::RegionConfig regions;
};

LoadedAssets load_assets(const RunConfig& config);

struct RunManifest {
  std::string version;
  std::map<std::string, long> domain_counts;
  std::map<std::string, long> unknown_authorities;
  long families = 0;
  long records = 0;
  long skipped_no_applicant = 0;
  std::map<std::string, std::string> file_hashes;  // relative path -> hash
  std::string content_hash;  // hash over the sorted file hashes
  std::vector<std::string> warnings;
};

// Runs the full pipeline and writes labelled families, one csv+json pair
// per series, and manifest.json under config.out_dir. All writes are
// atomic; reruns on identical inputs are byte-identical.
RunManifest cmd_pipeline(const RunConfig& config);

// Classifies one family in place (union of member CPC codes plus the
// representative's title and abstract).
void classify_family(ingest::FamilyRecord& family, const classify::KeywordDictionary& dict,
                     const classify::CpcRuleSet& rules, classify::IntelligentMode mode);

// The standard series set the reports consume: domain totals and domain
// crossed with authority region, applicant region, applicant country,
// CPC section, and section x region.
std::vector<series::AnnualSeries> standard_series(
    const std::vector<ingest::FamilyRecord>& families, const ingest::RegionConfig& regions,
    int first, int last, long* skipped_no_applicant = nullptr);

// Series directory helpers shared by report and plotdata.
std::vector<series::AnnualSeries> load_series_dir(const std::string& dir);
void write_series_files(const std::string& dir, const std::vector<series::AnnualSeries>& all,
                        std::map<std::string, std::string>* hashes = nullptr);

}  // namespace patecon::cli
