#include <doctest.h>

#include <sstream>

#include "patecon/errors.hpp"
#include "patecon/ingest.hpp"

using namespace patecon;
using ingest::FileFormat;
using ingest::PatentRecord;
using ingest::Region;

namespace {

const char* kHeader =
    "patent_id,family_id,application_year,title,abstract,cpc_codes,authority,"
    "applicant_country,applicant_sector,forward_citations,backward_citations\n";

std::vector<PatentRecord> parse_csv(const std::string& body) {
  std::istringstream in(std::string(kHeader) + body);
  return ingest::parse_patent_file(in, FileFormat::CSV);
}

PatentRecord make(const std::string& id, const std::string& family, int fwd, int bwd,
                  const std::string& authority = "US", int year = 2000) {
  PatentRecord rec;
  rec.patent_id = id;
  rec.family_id = family;
  rec.application_year = year;
  rec.cpc_codes = {"B25J 9/00"};
  rec.authority = authority;
  rec.forward_citations = fwd;
  rec.backward_citations = bwd;
  return rec;
}

}  // namespace

TEST_CASE("parse maps fields directly") {
  auto records =
      parse_csv("P1,F1,2015,\"robot arm\",\"an industrial robot...\",B25J9/16,CN,CN,Company,3,7\n");
  REQUIRE(records.size() == 1);
  const auto& r = records[0];
  CHECK(r.patent_id == "P1");
  CHECK(r.family_id == "F1");
  CHECK(r.application_year == 2015);
  CHECK(r.cpc_codes == std::vector<std::string>{"B25J9/16"});
  CHECK(r.authority == "CN");
  CHECK(r.applicant_country == "CN");
  CHECK(r.applicant_sector == ingest::ApplicantSector::Company);
  CHECK(r.forward_citations == 3);
  CHECK(r.backward_citations == 7);
  CHECK_FALSE(r.unclassifiable);
}

TEST_CASE("empty applicant country stays absent") {
  auto records = parse_csv("P1,F1,2015,t,a,B25J9/16,CN,,Company,3,7\n");
  REQUIRE(records.size() == 1);
  CHECK_FALSE(records[0].applicant_country.has_value());
}

TEST_CASE("duplicate patent id is rejected") {
  try {
    parse_csv("P1,F1,2015,t,a,B25J9/16,CN,CN,Company,3,7\n"
              "P1,F2,2016,t,a,B25J9/16,US,US,Company,1,1\n");
    FAIL("expected DuplicatePatentId");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DuplicatePatentId);
  }
}

TEST_CASE("malformed rows carry the row number") {
  try {
    parse_csv("P1,F1,not-a-year,t,a,B25J9/16,CN,CN,Company,3,7\n");
    FAIL("expected MalformedRow");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MalformedRow);
    CHECK(std::string(e.what()).find("row 1") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_csv("P1,F1,2015,t,a,B25J9/16,CN,CN,Company,-3,7\n"), Error);
  CHECK_THROWS_AS(parse_csv("P1,F1,1776,t,a,B25J9/16,CN,CN,Company,3,7\n"), Error);
}

TEST_CASE("unknown column lists the expected schema") {
  std::istringstream in("patent_id,bogus\nP1,x\n");
  try {
    ingest::parse_patent_file(in, FileFormat::CSV);
    FAIL("expected UnknownColumn");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownColumn);
    CHECK(std::string(e.what()).find("patent_id,family_id") != std::string::npos);
  }
}

TEST_CASE("missing cpc codes flag the record unclassifiable") {
  auto records = parse_csv("P1,F1,2015,t,a,,CN,CN,Company,3,7\n");
  REQUIRE(records.size() == 1);
  CHECK(records[0].unclassifiable);
}

TEST_CASE("jsonl mirror parses the same fields") {
  std::istringstream in(
      R"({"patent_id":"P1","family_id":"F1","application_year":2015,"title":"t","abstract":"a","cpc_codes":["B25J 9/16","G06N 3/02"],"authority":"CN","applicant_country":"CN","applicant_sector":"Company","forward_citations":3,"backward_citations":7})"
      "\n");
  auto records = ingest::parse_patent_file(in, FileFormat::JSONL);
  REQUIRE(records.size() == 1);
  CHECK(records[0].cpc_codes.size() == 2);
  CHECK(records[0].forward_citations == 3);
}

TEST_CASE("jsonl rejects unknown fields") {
  std::istringstream in(R"({"patent_id":"P1","family_id":"F1","application_year":2015,"authority":"US","mystery":1})"
                        "\n");
  CHECK_THROWS_AS(ingest::parse_patent_file(in, FileFormat::JSONL), Error);
}

TEST_CASE("representative follows forward citations") {
  auto cfg = ingest::default_region_config();
  auto fams = ingest::deduplicate_families({make("P1", "F1", 3, 0), make("P2", "F1", 7, 0)}, cfg);
  REQUIRE(fams.size() == 1);
  CHECK(fams[0].representative_patent_id == "P2");
}

TEST_CASE("zero forward citations fall back to backward citations") {
  auto cfg = ingest::default_region_config();
  auto fams = ingest::deduplicate_families({make("P1", "F1", 0, 2), make("P2", "F1", 0, 9)}, cfg);
  REQUIRE(fams.size() == 1);
  CHECK(fams[0].representative_patent_id == "P2");
}

TEST_CASE("full ties break lexicographically") {
  auto cfg = ingest::default_region_config();
  auto fams = ingest::deduplicate_families({make("P2", "F1", 5, 1), make("P1", "F1", 5, 1)}, cfg);
  REQUIRE(fams.size() == 1);
  CHECK(fams[0].representative_patent_id == "P1");
}

TEST_CASE("family year is the earliest application year") {
  auto cfg = ingest::default_region_config();
  auto a = make("P1", "F1", 9, 0, "US", 2004);
  auto b = make("P2", "F1", 1, 0, "JP", 2001);
  auto fams = ingest::deduplicate_families({a, b}, cfg);
  REQUIRE(fams.size() == 1);
  CHECK(fams[0].application_year == 2001);
  CHECK(fams[0].region == Region::US);  // representative P1 decides
}

TEST_CASE("deduplicate is idempotent and preserves family count") {
  auto cfg = ingest::default_region_config();
  std::vector<PatentRecord> records;
  for (int i = 0; i < 20; ++i) {
    records.push_back(make("P" + std::to_string(i), "F" + std::to_string(i % 7), i % 5,
                           (3 * i) % 11, i % 2 ? "US" : "JP", 2000 + i % 9));
  }
  auto fams = ingest::deduplicate_families(records, cfg);
  CHECK(fams.size() == 7);

  // feed each family back through as a single record: identity
  std::vector<PatentRecord> as_records;
  for (const auto& f : fams) {
    auto r = make(f.representative_patent_id, f.family_id, 1, 1,
                  "US", f.application_year);
    as_records.push_back(r);
  }
  auto again = ingest::deduplicate_families(as_records, cfg);
  REQUIRE(again.size() == fams.size());
  for (std::size_t i = 0; i < fams.size(); ++i) {
    CHECK(again[i].family_id == fams[i].family_id);
    CHECK(again[i].representative_patent_id == fams[i].representative_patent_id);
    CHECK(again[i].application_year == fams[i].application_year);
  }
}

TEST_CASE("attribute_region covers the six regions") {
  auto cfg = ingest::default_region_config();
  CHECK(ingest::attribute_region("US", cfg) == Region::US);
  CHECK(ingest::attribute_region("CN", cfg) == Region::China);
  CHECK(ingest::attribute_region("JP", cfg) == Region::Japan);
  CHECK(ingest::attribute_region("KR", cfg) == Region::SouthKorea);
  CHECK(ingest::attribute_region("EP", cfg) == Region::Europe);
  CHECK(ingest::attribute_region("DE", cfg) == Region::Europe);
  CHECK(ingest::attribute_region("kr", cfg) == Region::SouthKorea);  // case-insensitive
  CHECK(ingest::attribute_region("WO", cfg) == Region::RestOfWorld);
  CHECK(ingest::attribute_region("EA", cfg) == Region::RestOfWorld);
  CHECK(ingest::attribute_region("ZZ", cfg) == Region::RestOfWorld);  // unknown, no throw
  CHECK_THROWS_AS(ingest::attribute_region("", cfg), Error);
}

TEST_CASE("unknown offices land in the diagnostics tally") {
  auto cfg = ingest::default_region_config();
  ingest::RegionDiagnostics diag;
  auto fams = ingest::deduplicate_families(
      {make("P1", "F1", 1, 0, "ZZ"), make("P2", "F2", 1, 0, "WO"), make("P3", "F3", 1, 0, "zz")},
      cfg, &diag);
  CHECK(fams.size() == 3);
  CHECK(diag.unknown_authorities.size() == 1);
  CHECK(diag.unknown_authorities.at("ZZ") == 2);  // WO is a known office
}

TEST_CASE("apply_window keeps inclusive bounds and rejects inversion") {
  auto cfg = ingest::default_region_config();
  auto fams = ingest::deduplicate_families(
      {make("P1", "F1", 1, 0, "US", 1980), make("P2", "F2", 1, 0, "US", 2019),
       make("P3", "F3", 1, 0, "US", 2018)},
      cfg);
  auto kept = ingest::apply_window(fams, 1980, 2018);
  REQUIRE(kept.size() == 2);
  CHECK(kept[0].family_id == "F1");
  CHECK(kept[1].family_id == "F3");
  CHECK(ingest::apply_window({}, 1980, 2018).empty());
  CHECK_THROWS_AS(ingest::apply_window(fams, 2018, 1980), Error);
}

TEST_CASE("family csv round-trips") {
  auto cfg = ingest::default_region_config();
  auto rec = make("P1", "F1", 3, 1, "CN", 2011);
  rec.title = "a title, with comma";
  rec.abstract = "line one\nline two";
  rec.applicant_country = "CN";
  auto fams = ingest::deduplicate_families({rec}, cfg);
  fams[0].domain_label = "TraditionalRobot";

  std::ostringstream out;
  ingest::write_family_csv(out, fams);
  std::istringstream in(out.str());
  auto back = ingest::read_family_csv(in);
  REQUIRE(back.size() == 1);
  CHECK(back[0].family_id == "F1");
  CHECK(back[0].abstract == "line one\nline two");
  CHECK(back[0].domain_label == "TraditionalRobot");
  CHECK(back[0].region == Region::China);
  CHECK(back[0].cpc_sections == std::set<char>{'B'});
}
