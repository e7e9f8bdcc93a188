#include "patecon/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "patecon/csv.hpp"
#include "patecon/errors.hpp"

namespace patecon::ingest {

using nlohmann::json;

const std::vector<std::string> kPatentSchema = {
    "patent_id",         "family_id",        "application_year",
    "title",             "abstract",         "cpc_codes",
    "authority",         "applicant_country", "applicant_sector",
    "forward_citations", "backward_citations"};

std::string to_string(ApplicantSector s) {
  switch (s) {
    case ApplicantSector::Company: return "Company";
    case ApplicantSector::Government: return "Government";
    case ApplicantSector::University: return "University";
    case ApplicantSector::Hospital: return "Hospital";
    case ApplicantSector::Individual: return "Individual";
    case ApplicantSector::Mixed: return "Mixed";
    case ApplicantSector::Unknown: return "Unknown";
  }
  return "Unknown";
}

std::string to_string(Region r) {
  switch (r) {
    case Region::US: return "US";
    case Region::China: return "China";
    case Region::Japan: return "Japan";
    case Region::SouthKorea: return "SouthKorea";
    case Region::Europe: return "Europe";
    case Region::RestOfWorld: return "RestOfWorld";
  }
  return "RestOfWorld";
}

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

long parse_count(const std::string& raw, const char* field, std::size_t row) {
  std::string t = trim(raw);
  if (t.empty()) return 0;
  std::size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(t, &pos);
  } catch (const std::exception&) {
    raise(ErrorCode::MalformedRow, "row " + std::to_string(row) + ": bad " +
                                       std::string(field) + " '" + raw + "'");
  }
  if (pos != t.size()) {
    raise(ErrorCode::MalformedRow, "row " + std::to_string(row) + ": bad " +
                                       std::string(field) + " '" + raw + "'");
  }
  if (v < 0) {
    raise(ErrorCode::MalformedRow, "row " + std::to_string(row) + ": " +
                                       std::string(field) + " must be nonnegative");
  }
  return v;
}

int parse_year(const std::string& raw, std::size_t row) {
  std::string t = trim(raw);
  std::size_t pos = 0;
  int y = 0;
  try {
    y = std::stoi(t, &pos);
  } catch (const std::exception&) {
    raise(ErrorCode::MalformedRow,
          "row " + std::to_string(row) + ": bad application_year '" + raw + "'");
  }
  if (pos != t.size() || y < 1900 || y > 2100) {
    raise(ErrorCode::MalformedRow,
          "row " + std::to_string(row) + ": application_year out of [1900,2100]");
  }
  return y;
}

std::vector<std::string> split_codes(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream ss(s);
  while (std::getline(ss, cur, ';')) {
    cur = trim(cur);
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

void finalize(PatentRecord& rec, std::size_t row) {
  if (rec.patent_id.empty()) {
    raise(ErrorCode::MalformedRow, "row " + std::to_string(row) + ": empty patent_id");
  }
  if (rec.family_id.empty()) {
    raise(ErrorCode::MalformedRow, "row " + std::to_string(row) + ": empty family_id");
  }
  rec.unclassifiable = rec.cpc_codes.empty();
}

std::string schema_string() {
  std::string s;
  for (std::size_t i = 0; i < kPatentSchema.size(); ++i) {
    if (i) s += ",";
    s += kPatentSchema[i];
  }
  return s;
}

std::vector<PatentRecord> parse_csv(std::istream& in) {
  auto rows = csv::read_all(in);
  if (rows.empty()) {
    raise(ErrorCode::UnknownColumn, "missing header; expected schema: " + schema_string());
  }
  std::unordered_map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < rows[0].size(); ++i) col[trim(rows[0][i])] = i;
  for (const auto& name : kPatentSchema) {
    if (!col.count(name)) {
      raise(ErrorCode::UnknownColumn,
            "missing column '" + name + "'; expected schema: " + schema_string());
    }
  }
  if (col.size() != kPatentSchema.size()) {
    for (const auto& [name, _] : col) {
      if (std::find(kPatentSchema.begin(), kPatentSchema.end(), name) == kPatentSchema.end()) {
        raise(ErrorCode::UnknownColumn,
              "unknown column '" + name + "'; expected schema: " + schema_string());
      }
    }
  }

  std::vector<PatentRecord> out;
  std::unordered_set<std::string> seen_ids;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() == 1 && trim(row[0]).empty()) continue;
    if (row.size() != kPatentSchema.size()) {
      raise(ErrorCode::MalformedRow,
            "row " + std::to_string(r) + ": expected " +
                std::to_string(kPatentSchema.size()) + " fields, got " +
                std::to_string(row.size()));
    }
    PatentRecord rec;
    rec.patent_id = trim(row[col["patent_id"]]);
    rec.family_id = trim(row[col["family_id"]]);
    rec.application_year = parse_year(row[col["application_year"]], r);
    rec.title = row[col["title"]];
    rec.abstract = row[col["abstract"]];
    rec.cpc_codes = split_codes(row[col["cpc_codes"]]);
    rec.authority = trim(row[col["authority"]]);
    std::string country = trim(row[col["applicant_country"]]);
    if (!country.empty()) rec.applicant_country = country;
    rec.applicant_sector = sector_from_string(row[col["applicant_sector"]]);
    rec.forward_citations = parse_count(row[col["forward_citations"]], "forward_citations", r);
    rec.backward_citations = parse_count(row[col["backward_citations"]], "backward_citations", r);
    finalize(rec, r);
    if (!seen_ids.insert(rec.patent_id).second) {
      raise(ErrorCode::DuplicatePatentId,
            "row " + std::to_string(r) + ": duplicate patent_id '" + rec.patent_id + "'");
    }
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<PatentRecord> parse_jsonl(std::istream& in) {
  std::vector<PatentRecord> out;
  std::unordered_set<std::string> seen_ids;
  std::string line;
  std::size_t r = 0;
  while (std::getline(in, line)) {
    ++r;
    if (trim(line).empty()) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::exception& e) {
      raise(ErrorCode::MalformedRow, "row " + std::to_string(r) + ": " + e.what());
    }
    for (const auto& [key, _] : obj.items()) {
      if (std::find(kPatentSchema.begin(), kPatentSchema.end(), key) == kPatentSchema.end()) {
        raise(ErrorCode::UnknownColumn,
              "row " + std::to_string(r) + ": unknown field '" + key +
                  "'; expected schema: " + schema_string());
      }
    }
    PatentRecord rec;
    try {
      rec.patent_id = trim(obj.at("patent_id").get<std::string>());
      rec.family_id = trim(obj.at("family_id").get<std::string>());
      int y = obj.at("application_year").get<int>();
      if (y < 1900 || y > 2100) {
        raise(ErrorCode::MalformedRow,
              "row " + std::to_string(r) + ": application_year out of [1900,2100]");
      }
      rec.application_year = y;
      rec.title = obj.value("title", "");
      rec.abstract = obj.value("abstract", "");
      if (obj.contains("cpc_codes")) {
        for (const auto& c : obj.at("cpc_codes")) {
          std::string code = trim(c.get<std::string>());
          if (!code.empty()) rec.cpc_codes.push_back(code);
        }
      }
      rec.authority = trim(obj.at("authority").get<std::string>());
      if (obj.contains("applicant_country") && !obj["applicant_country"].is_null()) {
        std::string country = trim(obj["applicant_country"].get<std::string>());
        if (!country.empty()) rec.applicant_country = country;
      }
      rec.applicant_sector = sector_from_string(obj.value("applicant_sector", "Unknown"));
      long fwd = obj.value("forward_citations", 0L);
      long bwd = obj.value("backward_citations", 0L);
      if (fwd < 0 || bwd < 0) {
        raise(ErrorCode::MalformedRow,
              "row " + std::to_string(r) + ": citation counts must be nonnegative");
      }
      rec.forward_citations = fwd;
      rec.backward_citations = bwd;
    } catch (const Error&) {
      throw;
    } catch (const json::exception& e) {
      raise(ErrorCode::MalformedRow, "row " + std::to_string(r) + ": " + e.what());
    }
    finalize(rec, r);
    if (!seen_ids.insert(rec.patent_id).second) {
      raise(ErrorCode::DuplicatePatentId,
            "row " + std::to_string(r) + ": duplicate patent_id '" + rec.patent_id + "'");
    }
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace

ApplicantSector sector_from_string(const std::string& s) {
  std::string t = lower(trim(s));
  if (t.empty() || t == "unknown") return ApplicantSector::Unknown;
  if (t == "company") return ApplicantSector::Company;
  if (t == "government") return ApplicantSector::Government;
  if (t == "university") return ApplicantSector::University;
  if (t == "hospital") return ApplicantSector::Hospital;
  if (t == "individual") return ApplicantSector::Individual;
  if (t == "mixed") return ApplicantSector::Mixed;
  raise(ErrorCode::MalformedRow, "unknown applicant_sector '" + s + "'");
}

std::vector<PatentRecord> parse_patent_file(std::istream& in, FileFormat format) {
  return format == FileFormat::CSV ? parse_csv(in) : parse_jsonl(in);
}

RegionConfig default_region_config() {
  // EP plus EPC member-state offices, GB-style two-letter codes.
  static const char* kEurope[] = {
      "EP", "AL", "AT", "BE", "BG", "CH", "CY", "CZ", "DE", "DK", "EE", "ES",
      "FI", "FR", "GB", "GR", "HR", "HU", "IE", "IS", "IT", "LI", "LT", "LU",
      "LV", "MC", "ME", "MK", "MT", "NL", "NO", "PL", "PT", "RO", "RS", "SE",
      "SI", "SK", "SM", "TR"};
  RegionConfig cfg;
  for (const char* c : kEurope) cfg.europe_offices.insert(c);
  return cfg;
}

RegionConfig load_region_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorCode::IoError, "cannot open region config: " + path);
  RegionConfig cfg;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    std::transform(line.begin(), line.end(), line.begin(),
                   [](unsigned char c) { return std::toupper(c); });
    cfg.europe_offices.insert(line);
  }
  if (cfg.europe_offices.empty()) {
    raise(ErrorCode::ValidationError, "region config lists no Europe offices: " + path);
  }
  return cfg;
}

namespace {
// Offices that are expected and deliberately grouped under RestOfWorld.
const std::unordered_set<std::string> kKnownOther = {"WO", "EA", "AP", "OA", "EM"};
}  // namespace

Region attribute_region(const std::string& authority, const RegionConfig& config) {
  std::string a = trim(authority);
  if (a.empty()) raise(ErrorCode::EmptyAuthority, "empty authority code");
  std::transform(a.begin(), a.end(), a.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  if (a == "US") return Region::US;
  if (a == "CN") return Region::China;
  if (a == "JP") return Region::Japan;
  if (a == "KR") return Region::SouthKorea;
  if (config.europe_offices.count(a)) return Region::Europe;
  return Region::RestOfWorld;
}

std::vector<FamilyRecord> deduplicate_families(const std::vector<PatentRecord>& records,
                                               const RegionConfig& config,
                                               RegionDiagnostics* diagnostics) {
  // Group by family, keeping first-seen order of families for stable output.
  std::unordered_map<std::string, std::vector<const PatentRecord*>> groups;
  std::vector<std::string> order;
  for (const auto& rec : records) {
    auto [it, inserted] = groups.try_emplace(rec.family_id);
    if (inserted) order.push_back(rec.family_id);
    it->second.push_back(&rec);
  }

  std::vector<FamilyRecord> out;
  out.reserve(order.size());
  for (const auto& fid : order) {
    const auto& members = groups[fid];
    const PatentRecord* rep = members[0];
    for (const PatentRecord* m : members) {
      if (m->forward_citations != rep->forward_citations) {
        if (m->forward_citations > rep->forward_citations) rep = m;
        continue;
      }
      if (m->backward_citations != rep->backward_citations) {
        if (m->backward_citations > rep->backward_citations) rep = m;
        continue;
      }
      if (m->patent_id < rep->patent_id) rep = m;
    }

    FamilyRecord fam;
    fam.family_id = fid;
    fam.representative_patent_id = rep->patent_id;
    fam.application_year = rep->application_year;
    for (const PatentRecord* m : members) {
      fam.application_year = std::min(fam.application_year, m->application_year);
    }
    fam.region = attribute_region(rep->authority, config);
    if (diagnostics && fam.region == Region::RestOfWorld) {
      std::string a = rep->authority;
      std::transform(a.begin(), a.end(), a.begin(),
                     [](unsigned char c) { return std::toupper(c); });
      if (!kKnownOther.count(a)) diagnostics->unknown_authorities[a] += 1;
    }
    fam.applicant_country = rep->applicant_country;
    fam.applicant_sector = rep->applicant_sector;
    std::set<std::string> codes;
    for (const PatentRecord* m : members) {
      for (const auto& code : m->cpc_codes) {
        if (codes.insert(code).second) fam.cpc_codes.push_back(code);
      }
    }
    std::sort(fam.cpc_codes.begin(), fam.cpc_codes.end());
    for (const auto& code : fam.cpc_codes) {
      if (!code.empty() && std::isalpha(static_cast<unsigned char>(code[0]))) {
        fam.cpc_sections.insert(std::toupper(static_cast<unsigned char>(code[0])));
      }
    }
    fam.title = rep->title;
    fam.abstract = rep->abstract;
    out.push_back(std::move(fam));
  }
  return out;
}

std::vector<FamilyRecord> apply_window(const std::vector<FamilyRecord>& families,
                                       int first, int last) {
  if (first > last) {
    raise(ErrorCode::InvertedWindow, "window first year " + std::to_string(first) +
                                         " > last year " + std::to_string(last));
  }
  std::vector<FamilyRecord> out;
  for (const auto& fam : families) {
    if (fam.application_year >= first && fam.application_year <= last) {
      out.push_back(fam);
    }
  }
  return out;
}

namespace {
const std::vector<std::string> kFamilySchema = {
    "family_id", "representative_patent_id", "application_year", "region",
    "applicant_country", "applicant_sector", "cpc_sections", "cpc_codes",
    "title", "abstract", "domain_label", "intelligent"};

Region region_from_string(const std::string& s) {
  if (s == "US") return Region::US;
  if (s == "China") return Region::China;
  if (s == "Japan") return Region::Japan;
  if (s == "SouthKorea") return Region::SouthKorea;
  if (s == "Europe") return Region::Europe;
  if (s == "RestOfWorld") return Region::RestOfWorld;
  raise(ErrorCode::MalformedRow, "unknown region '" + s + "'");
}
}  // namespace

void write_family_csv(std::ostream& out, const std::vector<FamilyRecord>& families) {
  csv::write_row(out, kFamilySchema);
  for (const auto& fam : families) {
    std::string sections;
    for (char s : fam.cpc_sections) {
      if (!sections.empty()) sections += ';';
      sections.push_back(s);
    }
    std::string codes;
    for (const auto& c : fam.cpc_codes) {
      if (!codes.empty()) codes += ';';
      codes += c;
    }
    csv::write_row(out, {fam.family_id, fam.representative_patent_id,
                         std::to_string(fam.application_year), to_string(fam.region),
                         fam.applicant_country.value_or(""), to_string(fam.applicant_sector),
                         sections, codes, fam.title, fam.abstract, fam.domain_label,
                         fam.intelligent ? "1" : "0"});
  }
}

std::vector<FamilyRecord> read_family_csv(std::istream& in) {
  auto rows = csv::read_all(in);
  if (rows.empty() || rows[0] != kFamilySchema) {
    std::string expected;
    for (std::size_t i = 0; i < kFamilySchema.size(); ++i) {
      if (i) expected += ",";
      expected += kFamilySchema[i];
    }
    raise(ErrorCode::UnknownColumn, "family csv header mismatch; expected: " + expected);
  }
  std::vector<FamilyRecord> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() == 1 && trim(row[0]).empty()) continue;
    if (row.size() != kFamilySchema.size()) {
      raise(ErrorCode::MalformedRow, "family csv row " + std::to_string(r) + ": bad field count");
    }
    FamilyRecord fam;
    fam.family_id = row[0];
    fam.representative_patent_id = row[1];
    fam.application_year = parse_year(row[2], r);
    fam.region = region_from_string(row[3]);
    if (!trim(row[4]).empty()) fam.applicant_country = trim(row[4]);
    fam.applicant_sector = sector_from_string(row[5]);
    for (const auto& s : split_codes(row[6])) {
      if (!s.empty()) fam.cpc_sections.insert(s[0]);
    }
    fam.cpc_codes = split_codes(row[7]);
    fam.title = row[8];
    fam.abstract = row[9];
    fam.domain_label = row[10];
    fam.intelligent = row[11] == "1";
    out.push_back(std::move(fam));
  }
  return out;
}

}  // namespace patecon::ingest
