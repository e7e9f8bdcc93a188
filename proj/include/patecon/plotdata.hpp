#pragma once

// Long-format CSV emission for external plotting; no rendering here.

#include <string>
#include <vector>

#include "patecon/series.hpp"

namespace patecon::cli {

enum class Figure {
  AiFamiliesByYear,        // annual core-AI family counts
  AiStockBySection,        // log core-AI stock per CPC section
  RobotFamiliesByYear,     // annual robot family counts (both kinds)
  StockByDomain,           // log stock, traditional vs AI-enhanced robots
  AuthorityShares,         // core-AI share of filings per authority region
  RobotAuthorityShares,    // robot share of filings per authority region
  ApplicantShares,         // core-AI share per applicant country
  RobotApplicantShares,    // robot shares per applicant country split NOI/I
};

Figure figure_from_string(const std::string& s);
std::vector<std::string> figure_names();

// Emits year,key,value rows for the figure's content.
std::string cmd_plotdata(const std::vector<series::AnnualSeries>& all, Figure figure);

}  // namespace patecon::cli
