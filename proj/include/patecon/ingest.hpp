#pragma once

// Patent-record ingestion: file parsing, family deduplication, region
// attribution, and the analysis window.

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace patecon::ingest {

enum class ApplicantSector {
  Company,
  Government,
  University,
  Hospital,
  Individual,
  Mixed,
  Unknown,
};

enum class Region { US, China, Japan, SouthKorea, Europe, RestOfWorld };

std::string to_string(ApplicantSector s);
std::string to_string(Region r);
ApplicantSector sector_from_string(const std::string& s);

struct PatentRecord {
  std::string patent_id;
  std::string family_id;
  int application_year = 0;
  std::string title;
  std::string abstract;
  std::vector<std::string> cpc_codes;
  std::string authority;
  std::optional<std::string> applicant_country;
  ApplicantSector applicant_sector = ApplicantSector::Unknown;
  long forward_citations = 0;
  long backward_citations = 0;
  bool unclassifiable = false;  // set when cpc_codes is empty
};

// One deduplicated invention family. Carries the representative patent's
// text and the union of member CPC codes so the classifier can run on it.
struct FamilyRecord {
  std::string family_id;
  std::string representative_patent_id;
  int application_year = 0;  // earliest in family
  Region region = Region::RestOfWorld;
  std::optional<std::string> applicant_country;
  ApplicantSector applicant_sector = ApplicantSector::Unknown;
  std::set<char> cpc_sections;
  std::vector<std::string> cpc_codes;
  std::string title;
  std::string abstract;
  std::string domain_label = "Other";
  bool intelligent = false;
};

enum class FileFormat { CSV, JSONL };

// Expected CSV header, in canonical order.
extern const std::vector<std::string> kPatentSchema;

// Parses a patent file. Any column order is accepted but the header must
// name exactly the documented schema. Duplicate patent ids, bad years,
// negative citation counts, and unparseable rows raise Error with the
// offending row number.
std::vector<PatentRecord> parse_patent_file(std::istream& in, FileFormat format);

struct RegionConfig {
  std::set<std::string> europe_offices;  // e.g. EP, DE, FR, GB, ...
};

// Baseline office set: EP plus the EPC national offices.
RegionConfig default_region_config();
RegionConfig load_region_config(const std::string& path);

// Total over nonempty office codes; empty input raises EmptyAuthority.
Region attribute_region(const std::string& authority, const RegionConfig& config);

// Office codes that landed in RestOfWorld without being a known office.
struct RegionDiagnostics {
  std::map<std::string, long> unknown_authorities;
};

// Collapses records into one FamilyRecord per family_id. Representative =
// max forward citations, then max backward citations, then smallest
// patent_id. Family year is the earliest application year; CPC codes are
// the union over members; text comes from the representative.
std::vector<FamilyRecord> deduplicate_families(const std::vector<PatentRecord>& records,
                                               const RegionConfig& config,
                                               RegionDiagnostics* diagnostics = nullptr);

// Keeps families with first <= application_year <= last.
std::vector<FamilyRecord> apply_window(const std::vector<FamilyRecord>& families,
                                       int first, int last);

inline constexpr int kDefaultWindowFirst = 1980;
inline constexpr int kDefaultWindowLast = 2018;

// families.csv round-trip used between pipeline stages.
void write_family_csv(std::ostream& out, const std::vector<FamilyRecord>& families);
std::vector<FamilyRecord> read_family_csv(std::istream& in);

}  // namespace patecon::ingest
