#include "patecon/plotdata.hpp"

#include <algorithm>
#include <sstream>

#include "patecon/csv.hpp"
#include "patecon/errors.hpp"

namespace patecon::cli {

using series::AnnualSeries;
using series::GeoBasis;

Figure figure_from_string(const std::string& s) {
  if (s == "AiFamiliesByYear") return Figure::AiFamiliesByYear;
  if (s == "AiStockBySection") return Figure::AiStockBySection;
  if (s == "RobotFamiliesByYear") return Figure::RobotFamiliesByYear;
  if (s == "StockByDomain") return Figure::StockByDomain;
  if (s == "AuthorityShares") return Figure::AuthorityShares;
  if (s == "RobotAuthorityShares") return Figure::RobotAuthorityShares;
  if (s == "ApplicantShares") return Figure::ApplicantShares;
  if (s == "RobotApplicantShares") return Figure::RobotApplicantShares;
  std::string names;
  for (const auto& n : figure_names()) names += (names.empty() ? "" : ", ") + n;
  raise(ErrorCode::ValidationError, "unknown figure '" + s + "'; valid figures: " + names);
}

std::vector<std::string> figure_names() {
  return {"AiFamiliesByYear",  "AiStockBySection",     "RobotFamiliesByYear",
          "StockByDomain",     "AuthorityShares",      "RobotAuthorityShares",
          "ApplicantShares",   "RobotApplicantShares"};
}

namespace {

std::vector<const AnnualSeries*> select(const std::vector<AnnualSeries>& all,
                                        const std::string& domain, bool want_geo,
                                        GeoBasis basis, bool want_section,
                                        bool raw_applicant_country = true) {
  std::vector<const AnnualSeries*> out;
  for (const auto& s : all) {
    if (s.transform != series::Transform::Count) continue;
    if (!domain.empty() && s.key.domain != domain) continue;
    if (domain.empty() && s.key.domain.empty()) continue;
    if (want_geo != !s.key.geography.empty()) continue;
    if (want_geo && s.key.basis != basis) continue;
    if (want_geo && basis == GeoBasis::Applicant && raw_applicant_country &&
        s.key.geography.rfind("region:", 0) == 0) {
      continue;
    }
    if (want_section != s.key.cpc_section.has_value()) continue;
    out.push_back(&s);
  }
  std::sort(out.begin(), out.end(), [](const AnnualSeries* a, const AnnualSeries* b) {
    return a->key < b->key;
  });
  return out;
}

void emit(std::ostringstream& out, const std::string& key, const AnnualSeries& s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    csv::write_row(out, {std::to_string(s.year_at(i)), key, csv::format_double(s.values[i])});
  }
}

void emit_shares(std::ostringstream& out, const std::vector<series::ShareTable>& tables) {
  for (const auto& t : tables) {
    for (const auto& [label, share] : t.shares) {
      csv::write_row(out, {std::to_string(t.year), label, csv::format_double(share)});
    }
  }
}

AnnualSeries sum_series(const std::vector<const AnnualSeries*>& parts) {
  AnnualSeries total = *parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) {
    for (std::size_t t = 0; t < total.size(); ++t) total.values[t] += parts[i]->values[t];
  }
  for (std::size_t t = 0; t < total.size(); ++t) total.zero_mask[t] = total.values[t] == 0.0;
  return total;
}

}  // namespace

std::string cmd_plotdata(const std::vector<AnnualSeries>& all, Figure figure) {
  if (all.empty()) raise(ErrorCode::ValidationError, "plotdata: no series found");
  std::ostringstream out;
  csv::write_row(out, {"year", "key", "value"});

  auto require = [&](std::vector<const AnnualSeries*> got,
                     const char* what) -> std::vector<const AnnualSeries*> {
    if (got.empty()) {
      raise(ErrorCode::ValidationError, std::string("plotdata: missing input series: ") + what);
    }
    return got;
  };

  switch (figure) {
    case Figure::AiFamiliesByYear: {
      auto s = require(select(all, "CoreAI", false, GeoBasis::Authority, false),
                       "CoreAI totals");
      emit(out, "CoreAI", *s[0]);
      break;
    }
    case Figure::AiStockBySection: {
      auto parts = require(select(all, "CoreAI", false, GeoBasis::Authority, true),
                           "CoreAI by section");
      for (const auto* s : parts) {
        AnnualSeries logged =
            series::log_transform(series::cumulate_stock(*s), series::LogPolicy::DummyZeros);
        emit(out, std::string(1, *s->key.cpc_section), logged);
      }
      break;
    }
    case Figure::RobotFamiliesByYear: {
      auto trad = require(select(all, "TraditionalRobot", false, GeoBasis::Authority, false),
                          "TraditionalRobot totals");
      auto ai = require(select(all, "AIEnhancedRobot", false, GeoBasis::Authority, false),
                        "AIEnhancedRobot totals");
      emit(out, "robots", sum_series({trad[0], ai[0]}));
      break;
    }
    case Figure::StockByDomain: {
      for (const char* domain : {"TraditionalRobot", "AIEnhancedRobot"}) {
        auto s = require(select(all, domain, false, GeoBasis::Authority, false), domain);
        AnnualSeries logged =
            series::log_transform(series::cumulate_stock(*s[0]), series::LogPolicy::DummyZeros);
        emit(out, domain, logged);
      }
      break;
    }
    case Figure::AuthorityShares: {
      auto parts = require(select(all, "CoreAI", true, GeoBasis::Authority, false),
                           "CoreAI by region");
      std::vector<AnnualSeries> copies;
      for (const auto* p : parts) copies.push_back(*p);
      emit_shares(out, series::compute_shares(copies, false));
      break;
    }
    case Figure::RobotAuthorityShares: {
      std::vector<AnnualSeries> copies;
      for (const char* domain : {"TraditionalRobot", "AIEnhancedRobot"}) {
        for (const auto* p :
             require(select(all, domain, true, GeoBasis::Authority, false), domain)) {
          copies.push_back(*p);
        }
      }
      // shares of total robot filings per region, both kinds pooled
      std::map<std::string, AnnualSeries> by_region;
      for (const auto& s : copies) {
        auto [it, inserted] = by_region.try_emplace(s.key.geography, s);
        if (!inserted) {
          for (std::size_t t = 0; t < it->second.size(); ++t) {
            it->second.values[t] += s.values[t];
          }
        }
      }
      std::vector<AnnualSeries> pooled;
      for (auto& [region, s] : by_region) {
        s.key.domain = "Robot";
        pooled.push_back(std::move(s));
      }
      emit_shares(out, series::compute_shares(pooled, false));
      break;
    }
    case Figure::ApplicantShares: {
      auto parts = require(select(all, "CoreAI", true, GeoBasis::Applicant, false),
                           "CoreAI by applicant country");
      std::vector<AnnualSeries> copies;
      for (const auto* p : parts) copies.push_back(*p);
      emit_shares(out, series::compute_shares(copies, false));
      break;
    }
    case Figure::RobotApplicantShares: {
      std::vector<AnnualSeries> copies;
      for (const char* domain : {"TraditionalRobot", "AIEnhancedRobot"}) {
        for (const auto* p :
             require(select(all, domain, true, GeoBasis::Applicant, false), domain)) {
          copies.push_back(*p);
        }
      }
      emit_shares(out, series::compute_shares(copies, true));
      break;
    }
  }
  return out.str();
}

}  // namespace patecon::cli
