#include <doctest.h>

#include <random>
#include <sstream>

#include "patecon/errors.hpp"
#include "patecon/series.hpp"

using namespace patecon;
using series::AnnualSeries;
using series::GeoBasis;
using series::GroupBy;
using series::Transform;

namespace {

ingest::FamilyRecord family(const std::string& id, int year, const std::string& domain,
                            ingest::Region region = ingest::Region::US,
                            std::set<char> sections = {'G'},
                            std::optional<std::string> applicant = std::nullopt) {
  ingest::FamilyRecord f;
  f.family_id = id;
  f.representative_patent_id = id + "-rep";
  f.application_year = year;
  f.region = region;
  f.applicant_country = applicant;
  f.cpc_sections = std::move(sections);
  f.domain_label = domain;
  return f;
}

AnnualSeries counts_of(std::vector<double> values, int first_year = 2000) {
  AnnualSeries s;
  s.first_year = first_year;
  s.zero_mask.resize(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) s.zero_mask[i] = values[i] == 0.0;
  s.values = std::move(values);
  s.transform = Transform::Count;
  return s;
}

}  // namespace

TEST_CASE("build_counts fills missing years with zeros") {
  std::vector<ingest::FamilyRecord> fams = {family("a", 2010, "CoreAI"),
                                            family("b", 2010, "CoreAI"),
                                            family("c", 2012, "CoreAI")};
  auto all = series::build_counts(fams, GroupBy{.domain = true}, 2010, 2012);
  REQUIRE(all.size() == 1);
  CHECK(all[0].values == std::vector<double>{2, 0, 1});
  CHECK(all[0].zero_mask == std::vector<bool>{false, true, false});
  CHECK(all[0].key.domain == "CoreAI");
}

TEST_CASE("build_counts on empty input returns nothing") {
  CHECK(series::build_counts({}, GroupBy{.domain = true}, 2000, 2005).empty());
}

TEST_CASE("multi-section families increment every matching section series") {
  std::vector<ingest::FamilyRecord> fams = {
      family("a", 2010, "CoreAI", ingest::Region::US, {'G', 'H'})};
  auto all = series::build_counts(fams, GroupBy{.domain = true, .cpc_section = true}, 2010, 2010);
  REQUIRE(all.size() == 2);
  CHECK(all[0].values[0] == 1);
  CHECK(all[1].values[0] == 1);
}

TEST_CASE("partitioning groupings preserve the family total") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> year(2000, 2010), region(0, 5), domain(0, 3);
  const char* domains[] = {"CoreAI", "TraditionalRobot", "AIEnhancedRobot", "Other"};
  std::vector<ingest::FamilyRecord> fams;
  for (int i = 0; i < 200; ++i) {
    fams.push_back(family("f" + std::to_string(i), year(rng), domains[domain(rng)],
                          static_cast<ingest::Region>(region(rng))));
  }
  auto all = series::build_counts(
      fams, GroupBy{.domain = true, .geography = GeoBasis::Authority}, 2000, 2010);
  double total = 0;
  for (const auto& s : all) {
    for (double v : s.values) total += v;
  }
  CHECK(total == 200.0);
}

TEST_CASE("applicant grouping skips families without a country") {
  std::vector<ingest::FamilyRecord> fams = {
      family("a", 2010, "CoreAI", ingest::Region::US, {'G'}, "US"),
      family("b", 2010, "CoreAI", ingest::Region::US, {'G'}, std::nullopt)};
  long skipped = 0;
  auto all = series::build_counts(fams, GroupBy{.domain = true, .geography = GeoBasis::Applicant},
                                  2010, 2010, &skipped);
  REQUIRE(all.size() == 1);
  CHECK(all[0].key.geography == "US");
  CHECK(skipped == 1);
}

TEST_CASE("cumulate_stock is a prefix sum and rejects wrong input") {
  auto stock = series::cumulate_stock(counts_of({2, 0, 1}));
  CHECK(stock.values == std::vector<double>{2, 2, 3});
  CHECK(stock.transform == Transform::Stock);
  for (std::size_t i = 1; i < stock.values.size(); ++i) {
    CHECK(stock.values[i] >= stock.values[i - 1]);
  }
  CHECK(series::cumulate_stock(counts_of({0, 0})).values == std::vector<double>{0, 0});
  CHECK(series::cumulate_stock(counts_of({5})).values == std::vector<double>{5});
  CHECK_THROWS_AS(series::cumulate_stock(stock), Error);
}

TEST_CASE("log_transform applies both zero policies") {
  auto log1p = series::log_transform(counts_of({0.0, std::exp(1.0) - 1.0}),
                                     series::LogPolicy::Log1p);
  CHECK(log1p.values[0] == doctest::Approx(0.0));
  CHECK(log1p.values[1] == doctest::Approx(1.0));

  auto dummy = series::log_transform(counts_of({0.0, 1.0, std::exp(1.0)}),
                                     series::LogPolicy::DummyZeros);
  CHECK(dummy.values[0] == doctest::Approx(0.0));
  CHECK(dummy.values[1] == doctest::Approx(0.0));
  CHECK(dummy.values[2] == doctest::Approx(1.0));
  CHECK(dummy.zero_mask == std::vector<bool>{true, false, false});

  CHECK_THROWS_AS(series::log_transform(counts_of({-1.0}), series::LogPolicy::Log1p), Error);
}

TEST_CASE("log1p transform is strictly monotone per element") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> value(0.0, 50.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> a(10), b(10);
    for (int i = 0; i < 10; ++i) {
      a[i] = value(rng);
      b[i] = a[i] + value(rng) + 0.001;
    }
    auto la = series::log_transform(counts_of(a), series::LogPolicy::Log1p);
    auto lb = series::log_transform(counts_of(b), series::LogPolicy::Log1p);
    for (int i = 0; i < 10; ++i) CHECK(lb.values[i] > la.values[i]);
  }
}

TEST_CASE("compute_shares normalises each year to one") {
  auto a = counts_of({2, 1});
  a.key.geography = "A";
  auto b = counts_of({3, 0});
  b.key.geography = "B";
  auto c = counts_of({5, 0});
  c.key.geography = "C";
  auto tables = series::compute_shares({a, b, c}, false);
  REQUIRE(tables.size() == 2);
  CHECK(tables[0].shares.at("A") == doctest::Approx(0.2));
  CHECK(tables[0].shares.at("B") == doctest::Approx(0.3));
  CHECK(tables[0].shares.at("C") == doctest::Approx(0.5));
  CHECK_FALSE(tables[0].zero_total);
  CHECK(tables[1].shares.at("A") == doctest::Approx(1.0));
}

TEST_CASE("technology split shares follow the published formula") {
  // two countries, NOI/I split: hand-computed shares over the grand total
  auto a_noi = counts_of({1});
  a_noi.key = {.domain = "TraditionalRobot", .geography = "A", .basis = GeoBasis::Applicant};
  auto a_i = counts_of({1});
  a_i.key = {.domain = "AIEnhancedRobot", .geography = "A", .basis = GeoBasis::Applicant};
  auto b_noi = counts_of({2});
  b_noi.key = {.domain = "TraditionalRobot", .geography = "B", .basis = GeoBasis::Applicant};
  auto b_i = counts_of({0});
  b_i.key = {.domain = "AIEnhancedRobot", .geography = "B", .basis = GeoBasis::Applicant};
  auto tables = series::compute_shares({a_noi, a_i, b_noi, b_i}, true);
  REQUIRE(tables.size() == 1);
  CHECK(tables[0].shares.at("A:NOI") == doctest::Approx(0.25));
  CHECK(tables[0].shares.at("A:I") == doctest::Approx(0.25));
  CHECK(tables[0].shares.at("B:NOI") == doctest::Approx(0.5));
  CHECK(tables[0].shares.at("B:I") == doctest::Approx(0.0));
}

TEST_CASE("zero-total years are flagged with all-zero shares") {
  auto a = counts_of({0});
  a.key.geography = "A";
  auto b = counts_of({0});
  b.key.geography = "B";
  auto tables = series::compute_shares({a, b}, false);
  REQUIRE(tables.size() == 1);
  CHECK(tables[0].zero_total);
  CHECK(tables[0].shares.at("A") == 0.0);
  CHECK(tables[0].shares.at("B") == 0.0);
}

TEST_CASE("compute_shares sums to one on random fixtures") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> count(0, 30), nseries(2, 6), nyears(1, 15);
  for (int trial = 0; trial < 100; ++trial) {
    int years = nyears(rng);
    std::vector<AnnualSeries> all;
    for (int s = 0; s < nseries(rng); ++s) {
      std::vector<double> v(years);
      for (auto& x : v) x = count(rng);
      auto a = counts_of(std::move(v));
      a.key.geography = "g" + std::to_string(s);
      all.push_back(std::move(a));
    }
    for (const auto& table : series::compute_shares(all, false)) {
      if (table.zero_total) continue;
      double sum = 0;
      for (const auto& [label, share] : table.shares) sum += share;
      CHECK(std::abs(sum - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("compute_shares rejects mismatched years") {
  auto a = counts_of({1, 2});
  auto b = counts_of({1, 2, 3});
  CHECK_THROWS_AS(series::compute_shares({a, b}, false), Error);
}

TEST_CASE("difference shortens and differences") {
  auto d1 = series::difference(counts_of({1, 3, 6, 10}), 1);
  CHECK(d1.values == std::vector<double>{2, 3, 4});
  CHECK(d1.first_year == 2001);
  CHECK(d1.transform == Transform::Diff);
  CHECK(d1.diff_order == 1);

  auto d0 = series::difference(counts_of({1, 3}), 0);
  CHECK(d0.values == std::vector<double>{1, 3});
  CHECK_THROWS_AS(series::difference(counts_of({5}), 1), Error);
}

TEST_CASE("difference of stock recovers counts") {
  std::mt19937 rng(8);
  std::uniform_int_distribution<int> count(0, 9);
  std::vector<double> v(12);
  for (auto& x : v) x = count(rng);
  auto counts = counts_of(v);
  auto recovered = series::difference(series::cumulate_stock(counts), 1);
  for (std::size_t i = 0; i < recovered.values.size(); ++i) {
    CHECK(recovered.values[i] == doctest::Approx(counts.values[i + 1]));
  }
}

TEST_CASE("normalize_by divides per year") {
  auto shares = series::normalize_by(counts_of({2, 0}), counts_of({8, 4}));
  CHECK(shares.values == std::vector<double>{0.25, 0.0});
  CHECK(shares.transform == Transform::Share);
  CHECK_THROWS_AS(series::normalize_by(counts_of({2}), counts_of({2, 3})), Error);
  CHECK_THROWS_AS(series::normalize_by(counts_of({5}), counts_of({2})), Error);
}

TEST_CASE("series csv round-trips with sidecar") {
  auto s = counts_of({1, 0, 4}, 1999);
  s.key = {.domain = "CoreAI", .geography = "US", .basis = GeoBasis::Authority,
           .cpc_section = 'G'};
  std::ostringstream out;
  series::write_series_csv(out, s);
  std::istringstream in(out.str());
  auto back = series::read_series_csv(in);
  series::apply_sidecar_json(back, series::key_sidecar_json(s));
  CHECK(back.first_year == 1999);
  CHECK(back.values == s.values);
  CHECK(back.zero_mask == s.zero_mask);
  CHECK(back.key == s.key);
  CHECK(back.transform == s.transform);
}
