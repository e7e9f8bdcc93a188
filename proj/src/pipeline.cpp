#include "patecon/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "patecon/csv.hpp"
#include "patecon/errors.hpp"
#include "patecon/json_io.hpp"
#include "patecon/version.hpp"

namespace patecon::cli {

namespace fs = std::filesystem;
using nlohmann::json;

RunConfig RunConfig::from_json_file(const std::string& path) {
  json j;
  try {
    j = json::parse(io::read_file(path));
  } catch (const json::exception& e) {
    raise(ErrorCode::ValidationError, "config " + path + ": " + e.what());
  }
  RunConfig cfg;
  cfg.input_path = j.value("input", "");
  cfg.format = j.value("format", "csv") == "jsonl" ? ingest::FileFormat::JSONL
                                                   : ingest::FileFormat::CSV;
  cfg.dictionary_path = j.value("dictionary", "");
  cfg.cpc_ai_path = j.value("cpc_ai", "");
  cfg.cpc_robot_path = j.value("cpc_robot", "");
  if (j.contains("europe_offices")) cfg.europe_offices_path = j["europe_offices"];
  cfg.window_first = j.value("window_first", ingest::kDefaultWindowFirst);
  cfg.window_last = j.value("window_last", ingest::kDefaultWindowLast);
  cfg.intelligent_mode = j.value("intelligent_mode", "union") == "intrinsic-only"
                             ? classify::IntelligentMode::IntrinsicOnly
                             : classify::IntelligentMode::Union;
  cfg.out_dir = j.value("out", "");
  cfg.seed = j.value("seed", 0u);
  return cfg;
}

std::string RunConfig::to_json() const {
  json j;
  j["input"] = input_path;
  j["format"] = format == ingest::FileFormat::JSONL ? "jsonl" : "csv";
  j["dictionary"] = dictionary_path;
  j["cpc_ai"] = cpc_ai_path;
  j["cpc_robot"] = cpc_robot_path;
  if (europe_offices_path) j["europe_offices"] = *europe_offices_path;
  j["window_first"] = window_first;
  j["window_last"] = window_last;
  j["intelligent_mode"] =
      intelligent_mode == classify::IntelligentMode::IntrinsicOnly ? "intrinsic-only" : "union";
  j["out"] = out_dir;
  j["seed"] = seed;
  return io::dump(j);
}

void validate(const RunConfig& config) {
  auto need_file = [](const std::string& path, const char* what) {
    if (path.empty()) {
      raise(ErrorCode::ValidationError, std::string(what) + " path missing");
    }
    if (!fs::exists(path)) {
      raise(ErrorCode::ValidationError, std::string(what) + " not found: " + path);
    }
  };
  need_file(config.input_path, "input");
  need_file(config.dictionary_path, "dictionary");
  need_file(config.cpc_ai_path, "cpc-ai list");
  need_file(config.cpc_robot_path, "cpc-robot list");
  if (config.europe_offices_path) need_file(*config.europe_offices_path, "europe offices");
  if (config.window_first > config.window_last) {
    raise(ErrorCode::ValidationError, "window first > last");
  }
  if (config.window_first < 1900 || config.window_last > 2100) {
    raise(ErrorCode::ValidationError, "window must lie within [1900, 2100]");
  }
  if (config.out_dir.empty()) {
    raise(ErrorCode::ValidationError, "output directory missing");
  }
}

LoadedAssets load_assets(const RunConfig& config) {
  LoadedAssets assets;
  assets.dictionary = classify::load_dictionary(config.dictionary_path);
  assets.rules.ai_codes = classify::load_cpc_list(config.cpc_ai_path);
  assets.rules.robot_prefixes = classify::load_cpc_list(config.cpc_robot_path);
  assets.regions = config.europe_offices_path
                       ? ingest::load_region_config(*config.europe_offices_path)
                       : ingest::default_region_config();
  return assets;
}

void classify_family(ingest::FamilyRecord& family, const classify::KeywordDictionary& dict,
                     const classify::CpcRuleSet& rules, classify::IntelligentMode mode) {
  classify::ClassifyResult res =
      classify::classify_record(family.cpc_codes, family.title, family.abstract, dict, rules, mode);
  family.domain_label = classify::to_string(res.label);
  family.intelligent = res.intelligent;
}

std::vector<series::AnnualSeries> standard_series(
    const std::vector<ingest::FamilyRecord>& families, const ingest::RegionConfig& regions,
    int first, int last, long* skipped_no_applicant) {
  using series::GeoBasis;
  using series::GroupBy;

  std::vector<series::AnnualSeries> all;
  auto add = [&](const GroupBy& g, const std::vector<ingest::FamilyRecord>& fams, long* skipped) {
    auto built = series::build_counts(fams, g, first, last, skipped);
    all.insert(all.end(), built.begin(), built.end());
  };

  GroupBy by_domain{.domain = true};
  GroupBy by_region{.domain = true, .geography = GeoBasis::Authority};
  GroupBy by_applicant{.domain = true, .geography = GeoBasis::Applicant};
  GroupBy by_section{.domain = true, .cpc_section = true};
  GroupBy by_section_region{
      .domain = true, .geography = GeoBasis::Authority, .cpc_section = true};

  add(by_domain, families, nullptr);
  add(by_region, families, nullptr);
  add(by_applicant, families, skipped_no_applicant);
  add(by_section, families, nullptr);
  add(by_section_region, families, nullptr);

  // Applicant countries aggregated to the six regions, for the
  // applicant-level cointegration table.
  std::vector<ingest::FamilyRecord> regionized = families;
  for (auto& fam : regionized) {
    if (fam.applicant_country) {
      fam.applicant_country =
          ingest::to_string(ingest::attribute_region(*fam.applicant_country, regions));
    }
  }
  auto applicant_regions = series::build_counts(regionized, by_applicant, first, last, nullptr);
  for (auto& s : applicant_regions) {
    // distinguish from raw-country series in the same basis
    s.key.geography = "region:" + s.key.geography;
  }
  all.insert(all.end(), applicant_regions.begin(), applicant_regions.end());
  return all;
}

void write_series_files(const std::string& dir, const std::vector<series::AnnualSeries>& all,
                        std::map<std::string, std::string>* hashes) {
  for (const auto& s : all) {
    std::string slug = s.key.slug();
    std::ostringstream csv_out;
    series::write_series_csv(csv_out, s);
    std::string sidecar = series::key_sidecar_json(s);
    io::write_file(dir + "/" + slug + ".csv", csv_out.str());
    io::write_file(dir + "/" + slug + ".json", sidecar);
    if (hashes) {
      (*hashes)["series/" + slug + ".csv"] = io::content_hash(csv_out.str());
      (*hashes)["series/" + slug + ".json"] = io::content_hash(sidecar);
    }
  }
}

std::vector<series::AnnualSeries> load_series_dir(const std::string& dir) {
  if (!fs::exists(dir)) raise(ErrorCode::ValidationError, "series dir not found: " + dir);
  std::vector<fs::path> sidecars;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() == ".json") sidecars.push_back(entry.path());
  }
  std::sort(sidecars.begin(), sidecars.end());
  std::vector<series::AnnualSeries> all;
  for (const auto& sidecar : sidecars) {
    fs::path csv_path = sidecar;
    csv_path.replace_extension(".csv");
    if (!fs::exists(csv_path)) continue;
    std::ifstream in(csv_path);
    series::AnnualSeries s = series::read_series_csv(in);
    series::apply_sidecar_json(s, io::read_file(sidecar.string()));
    all.push_back(std::move(s));
  }
  return all;
}

RunManifest cmd_pipeline(const RunConfig& config) {
  validate(config);
  LoadedAssets assets = load_assets(config);

  RunManifest manifest;
  manifest.version = kVersion;

  std::vector<ingest::PatentRecord> records;
  {
    std::ifstream in(config.input_path, std::ios::binary);
    if (!in) raise(ErrorCode::IoError, "cannot open input: " + config.input_path);
    try {
      records = ingest::parse_patent_file(in, config.format);
    } catch (const Error& e) {
      raise(e.code(), std::string("ingest: ") + e.what());
    }
  }
  manifest.records = static_cast<long>(records.size());
  if (records.empty()) manifest.warnings.push_back("input file has no records");

  ingest::RegionDiagnostics diagnostics;
  std::vector<ingest::FamilyRecord> families;
  try {
    families = ingest::deduplicate_families(records, assets.regions, &diagnostics);
    families = ingest::apply_window(families, config.window_first, config.window_last);
  } catch (const Error& e) {
    raise(e.code(), std::string("ingest: ") + e.what());
  }
  manifest.unknown_authorities = {diagnostics.unknown_authorities.begin(),
                                  diagnostics.unknown_authorities.end()};

  try {
    for (auto& fam : families) {
      classify_family(fam, assets.dictionary, assets.rules, config.intelligent_mode);
    }
  } catch (const Error& e) {
    raise(e.code(), std::string("classify: ") + e.what());
  }
  manifest.families = static_cast<long>(families.size());
  manifest.domain_counts = {{"CoreAI", 0}, {"TraditionalRobot", 0},
                            {"AIEnhancedRobot", 0}, {"Other", 0}};
  for (const auto& fam : families) manifest.domain_counts[fam.domain_label] += 1;

  std::ostringstream family_csv;
  ingest::write_family_csv(family_csv, families);
  io::write_file(config.out_dir + "/families.csv", family_csv.str());
  manifest.file_hashes["families.csv"] = io::content_hash(family_csv.str());

  std::vector<series::AnnualSeries> all;
  try {
    all = standard_series(families, assets.regions, config.window_first, config.window_last,
                          &manifest.skipped_no_applicant);
  } catch (const Error& e) {
    raise(e.code(), std::string("series: ") + e.what());
  }
  write_series_files(config.out_dir + "/series", all, &manifest.file_hashes);

  // Manifest content hash covers every emitted file.
  std::string digest_input;
  for (const auto& [path, hash] : manifest.file_hashes) digest_input += path + ":" + hash + "\n";
  manifest.content_hash = io::content_hash(digest_input);

  json j;
  j["version"] = manifest.version;
  j["config"] = json::parse(config.to_json());
  j["records"] = manifest.records;
  j["families"] = manifest.families;
  j["domain_counts"] = manifest.domain_counts;
  j["unknown_authorities"] = manifest.unknown_authorities;
  j["skipped_no_applicant"] = manifest.skipped_no_applicant;
  j["file_hashes"] = manifest.file_hashes;
  j["content_hash"] = manifest.content_hash;
  j["warnings"] = manifest.warnings;
  io::write_file(config.out_dir + "/manifest.json", io::dump(j));
  return manifest;
}

}  // namespace patecon::cli
