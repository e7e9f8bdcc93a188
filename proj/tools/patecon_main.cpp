// patecon: patent-family classification and time-series econometrics CLI.
//
// Exit codes: 0 success, 2 validation error (bad flags, paths, schemas),
// 3 runtime error (a computation failed on otherwise valid inputs).

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "patecon/classifier.hpp"
#include "patecon/cointegration.hpp"
#include "patecon/csv.hpp"
#include "patecon/errors.hpp"
#include "patecon/ingest.hpp"
#include "patecon/json_io.hpp"
#include "patecon/pipeline.hpp"
#include "patecon/plotdata.hpp"
#include "patecon/report.hpp"
#include "patecon/series.hpp"
#include "patecon/simulate.hpp"
#include "patecon/unit_root.hpp"
#include "patecon/version.hpp"

namespace {

using namespace patecon;
using nlohmann::json;

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::ValidationError:
    case ErrorCode::InvalidSpec:
    case ErrorCode::UnsupportedCombination:
    case ErrorCode::UnknownColumn:
    case ErrorCode::InvertedWindow:
      return 2;
    default:
      return 3;
  }
}

series::AnnualSeries load_series_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorCode::ValidationError, "cannot open series file: " + path);
  series::AnnualSeries s = series::read_series_csv(in);
  std::filesystem::path sidecar(path);
  sidecar.replace_extension(".json");
  if (std::filesystem::exists(sidecar)) {
    series::apply_sidecar_json(s, io::read_file(sidecar.string()));
  }
  return s;
}

econ::Deterministic parse_deterministic(const std::string& s) {
  if (s == "c" || s == "constant") return econ::Deterministic::Constant;
  if (s == "ct" || s == "constant-trend") return econ::Deterministic::ConstantTrend;
  if (s == "n" || s == "none") return econ::Deterministic::None;
  raise(ErrorCode::ValidationError, "deterministic must be one of: c, ct, n");
}

econ::LagCriterion parse_lag_criterion(const std::string& s) {
  if (s == "aic") return econ::LagCriterion::AIC;
  if (s == "hqic") return econ::LagCriterion::HQIC;
  if (s == "fixed") return econ::LagCriterion::Fixed;
  raise(ErrorCode::ValidationError, "criterion must be one of: aic, hqic, fixed");
}

void write_output(const std::string& path, const std::string& content) {
  io::write_file(path, content);
  std::cout << path << "\n";
}

struct IngestArgs {
  std::string input;
  std::string format = "csv";
  std::string out_dir;
  int first = ingest::kDefaultWindowFirst;
  int last = ingest::kDefaultWindowLast;
  std::optional<std::string> europe;
};

int run_ingest(const IngestArgs& args) {
  std::ifstream in(args.input, std::ios::binary);
  if (!in) raise(ErrorCode::ValidationError, "cannot open input: " + args.input);
  auto records = ingest::parse_patent_file(
      in, args.format == "jsonl" ? ingest::FileFormat::JSONL : ingest::FileFormat::CSV);
  ingest::RegionConfig regions = args.europe ? ingest::load_region_config(*args.europe)
                                             : ingest::default_region_config();
  ingest::RegionDiagnostics diagnostics;
  auto families = ingest::deduplicate_families(records, regions, &diagnostics);
  families = ingest::apply_window(families, args.first, args.last);

  std::ostringstream csv_out;
  ingest::write_family_csv(csv_out, families);
  write_output(args.out_dir + "/families.csv", csv_out.str());

  json diag;
  diag["records"] = records.size();
  diag["families"] = families.size();
  diag["window"] = {args.first, args.last};
  diag["unknown_authorities"] = diagnostics.unknown_authorities;
  diag["version"] = kVersion;
  write_output(args.out_dir + "/ingest_diagnostics.json", io::dump(diag));
  return 0;
}

struct ClassifyArgs {
  std::string input;
  std::string format = "csv";
  std::string dict;
  std::string cpc_ai;
  std::string cpc_robot;
  std::string out;
  std::string mode = "union";
  std::string histogram;
};

int run_classify(const ClassifyArgs& args) {
  auto dict = classify::load_dictionary(args.dict);
  classify::CpcRuleSet rules;
  rules.ai_codes = classify::load_cpc_list(args.cpc_ai);
  rules.robot_prefixes = classify::load_cpc_list(args.cpc_robot);
  classify::IntelligentMode mode = args.mode == "intrinsic-only"
                                       ? classify::IntelligentMode::IntrinsicOnly
                                       : classify::IntelligentMode::Union;

  std::ifstream probe(args.input);
  if (!probe) raise(ErrorCode::ValidationError, "cannot open input: " + args.input);
  std::string first_line;
  std::getline(probe, first_line);
  probe.close();
  const bool family_input = first_line.rfind("family_id,", 0) == 0;

  std::ostringstream out;
  std::vector<classify::KeywordHit> all_hits;
  auto hits_cell = [](const classify::ClassifyResult& res) {
    std::set<std::string> terms;
    for (const auto& h : res.hits) terms.insert(h.term);
    std::string joined;
    for (const auto& t : terms) {
      if (!joined.empty()) joined += ';';
      joined += t;
    }
    return joined;
  };
  auto types_cell = [](const classify::ClassifyResult& res) {
    std::string joined;
    for (auto t : res.robot_types) {
      if (!joined.empty()) joined += ';';
      joined += classify::to_string(t);
    }
    return joined;
  };

  if (family_input) {
    std::ifstream in(args.input, std::ios::binary);
    auto families = ingest::read_family_csv(in);
    csv::write_row(out, {"family_id", "representative_patent_id", "application_year", "region",
                         "applicant_country", "applicant_sector", "cpc_sections", "cpc_codes",
                         "title", "abstract", "domain_label", "intelligent", "robot_types",
                         "keyword_hits"});
    for (auto& fam : families) {
      auto res = classify::classify_record(fam.cpc_codes, fam.title, fam.abstract, dict, rules,
                                           mode);
      fam.domain_label = classify::to_string(res.label);
      fam.intelligent = res.intelligent;
      all_hits.insert(all_hits.end(), res.hits.begin(), res.hits.end());
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
                           std::to_string(fam.application_year), ingest::to_string(fam.region),
                           fam.applicant_country.value_or(""),
                           ingest::to_string(fam.applicant_sector), sections, codes, fam.title,
                           fam.abstract, fam.domain_label, fam.intelligent ? "1" : "0",
                           types_cell(res), hits_cell(res)});
    }
  } else {
    std::ifstream in(args.input, std::ios::binary);
    auto records = ingest::parse_patent_file(
        in, args.format == "jsonl" ? ingest::FileFormat::JSONL : ingest::FileFormat::CSV);
    csv::Row header = ingest::kPatentSchema;
    header.insert(header.end(), {"domain_label", "intelligent", "robot_types", "keyword_hits"});
    csv::write_row(out, header);
    for (const auto& rec : records) {
      auto res =
          classify::classify_record(rec.cpc_codes, rec.title, rec.abstract, dict, rules, mode);
      all_hits.insert(all_hits.end(), res.hits.begin(), res.hits.end());
      std::string codes;
      for (const auto& c : rec.cpc_codes) {
        if (!codes.empty()) codes += ';';
        codes += c;
      }
      csv::write_row(out, {rec.patent_id, rec.family_id, std::to_string(rec.application_year),
                           rec.title, rec.abstract, codes, rec.authority,
                           rec.applicant_country.value_or(""),
                           ingest::to_string(rec.applicant_sector),
                           std::to_string(rec.forward_citations),
                           std::to_string(rec.backward_citations),
                           classify::to_string(res.label), res.intelligent ? "1" : "0",
                           types_cell(res), hits_cell(res)});
    }
  }
  write_output(args.out, out.str());

  if (!args.histogram.empty()) {
    std::ostringstream hist;
    csv::write_row(hist, {"location", "group", "count"});
    for (auto loc : {classify::Location::Title, classify::Location::Abstract}) {
      auto counts = classify::keyword_domain_histogram(all_hits, loc);
      for (const auto& [group, count] : counts) {
        csv::write_row(hist, {loc == classify::Location::Title ? "title" : "abstract",
                              classify::to_string(group), std::to_string(count)});
      }
    }
    write_output(args.histogram, hist.str());
  }
  return 0;
}

struct SeriesArgs {
  std::string input;
  std::vector<std::string> group_by;
  std::string out_dir;
  int first = ingest::kDefaultWindowFirst;
  int last = ingest::kDefaultWindowLast;
  std::string transform = "count";
  std::string normalize;
};

int run_series(const SeriesArgs& args) {
  std::ifstream in(args.input, std::ios::binary);
  if (!in) raise(ErrorCode::ValidationError, "cannot open families file: " + args.input);
  auto families = ingest::read_family_csv(in);

  series::GroupBy group;
  for (const auto& g : args.group_by) {
    if (g == "region") group.geography = series::GeoBasis::Authority;
    else if (g == "applicant") group.geography = series::GeoBasis::Applicant;
    else if (g == "section") group.cpc_section = true;
    else if (g == "domain") group.domain = true;
    else raise(ErrorCode::ValidationError, "group-by must be region|applicant|section|domain");
  }

  long skipped = 0;
  auto all = series::build_counts(families, group, args.first, args.last, &skipped);

  std::optional<series::AnnualSeries> denom;
  if (!args.normalize.empty()) denom = load_series_file(args.normalize);

  for (auto& s : all) {
    if (denom) s = series::normalize_by(s, *denom);
    if (args.transform == "stock") s = series::cumulate_stock(s);
    else if (args.transform == "log") s = series::log_transform(s, series::LogPolicy::DummyZeros);
    else if (args.transform == "logstock") {
      s = series::log_transform(series::cumulate_stock(s), series::LogPolicy::DummyZeros);
    } else if (args.transform != "count") {
      raise(ErrorCode::ValidationError, "transform must be count|stock|log|logstock");
    }
  }
  cli::write_series_files(args.out_dir, all);
  std::cout << args.out_dir << " (" << all.size() << " series";
  if (skipped > 0) std::cout << ", " << skipped << " families without applicant country skipped";
  std::cout << ")\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"patent-family classification and time-series econometrics"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string global_config;
  std::string global_out;
  std::uint64_t global_seed = 0;
  bool seed_given = false;
  app.add_option("--config", global_config, "run configuration JSON (pipeline)");
  app.add_option("--out", global_out, "default output path/directory");
  app.add_option("--seed", global_seed, "seed override for simulate/mc")
      ->each([&](const std::string&) { seed_given = true; });

  // ingest
  IngestArgs ingest_args;
  auto* cmd_ingest = app.add_subcommand("ingest", "parse, deduplicate and window patent records");
  cmd_ingest->add_option("--input", ingest_args.input)->required();
  cmd_ingest->add_option("--format", ingest_args.format)->check(CLI::IsMember({"csv", "jsonl"}));
  cmd_ingest->add_option("--out", ingest_args.out_dir);
  cmd_ingest->add_option("--first", ingest_args.first);
  cmd_ingest->add_option("--last", ingest_args.last);
  std::string europe_path;
  cmd_ingest->add_option("--europe-offices", europe_path);

  // classify
  ClassifyArgs classify_args;
  auto* cmd_classify = app.add_subcommand("classify", "label records with technology domains");
  cmd_classify->add_option("--input", classify_args.input)->required();
  cmd_classify->add_option("--format", classify_args.format)
      ->check(CLI::IsMember({"csv", "jsonl"}));
  cmd_classify->add_option("--dict", classify_args.dict)->required();
  cmd_classify->add_option("--cpc-ai", classify_args.cpc_ai)->required();
  cmd_classify->add_option("--cpc-robot", classify_args.cpc_robot)->required();
  cmd_classify->add_option("--out", classify_args.out);
  cmd_classify->add_option("--intelligent-mode", classify_args.mode)
      ->check(CLI::IsMember({"union", "intrinsic-only"}));
  cmd_classify->add_option("--histogram", classify_args.histogram,
                           "also write a keyword-group histogram CSV");

  // series
  SeriesArgs series_args;
  auto* cmd_series = app.add_subcommand("series", "build annual series from labelled families");
  cmd_series->add_option("--input", series_args.input)->required();
  cmd_series->add_option("--group-by", series_args.group_by)
      ->check(CLI::IsMember({"region", "applicant", "section", "domain"}));
  cmd_series->add_option("--out", series_args.out_dir);
  cmd_series->add_option("--first", series_args.first);
  cmd_series->add_option("--last", series_args.last);
  cmd_series->add_option("--transform", series_args.transform)
      ->check(CLI::IsMember({"count", "stock", "log", "logstock"}));
  cmd_series->add_option("--normalize", series_args.normalize,
                         "per-year denominator series CSV");

  // adf
  std::string adf_input, adf_det = "c", adf_crit = "aic", adf_out;
  int adf_fixed_lag = 0;
  std::optional<int> adf_max_lag;
  auto* cmd_adf = app.add_subcommand("adf", "augmented Dickey-Fuller unit-root test");
  cmd_adf->add_option("--input", adf_input)->required();
  cmd_adf->add_option("--deterministic", adf_det)->check(CLI::IsMember({"c", "ct", "n"}));
  cmd_adf->add_option("--max-lag", [&adf_max_lag](const std::vector<std::string>& v) {
    adf_max_lag = std::stoi(v[0]);
    return true;
  }, "maximum lag (default: Schwert rule)");
  cmd_adf->add_option("--criterion", adf_crit)->check(CLI::IsMember({"aic", "hqic", "fixed"}));
  cmd_adf->add_option("--lag", adf_fixed_lag, "lag when --criterion fixed");
  cmd_adf->add_option("--out", adf_out);

  // kpss
  std::string kpss_input, kpss_det = "c", kpss_bw = "auto", kpss_out;
  auto* cmd_kpss = app.add_subcommand("kpss", "KPSS stationarity test");
  cmd_kpss->add_option("--input", kpss_input)->required();
  cmd_kpss->add_option("--deterministic", kpss_det)->check(CLI::IsMember({"c", "ct"}));
  cmd_kpss->add_option("--bandwidth", kpss_bw, "auto or a fixed Bartlett lag");
  cmd_kpss->add_option("--out", kpss_out);

  // arima
  std::string arima_input, arima_out, arima_crit = "bic", arima_d = "auto";
  int arima_p = -1, arima_q = -1, arima_pmax = 3, arima_qmax = 3;
  auto* cmd_arima = app.add_subcommand("arima", "fit or select an ARIMA model");
  cmd_arima->add_option("--input", arima_input)->required();
  cmd_arima->add_option("--p", arima_p, "AR order for a single fit");
  cmd_arima->add_option("--q", arima_q, "MA order for a single fit");
  cmd_arima->add_option("--d", arima_d, "differencing order, or 'auto'");
  cmd_arima->add_option("--p-max", arima_pmax);
  cmd_arima->add_option("--q-max", arima_qmax);
  cmd_arima->add_option("--criterion", arima_crit)
      ->check(CLI::IsMember({"aic", "bic", "hqic"}));
  cmd_arima->add_option("--out", arima_out);

  // breaks
  std::string breaks_input, breaks_out;
  int breaks_max = 5;
  double breaks_trim = 0.15;
  auto* cmd_breaks = app.add_subcommand("breaks", "Bai-Perron multiple structural breaks");
  cmd_breaks->add_option("--input", breaks_input)->required();
  cmd_breaks->add_option("--max-breaks", breaks_max);
  cmd_breaks->add_option("--trim", breaks_trim);
  cmd_breaks->add_option("--out", breaks_out);

  // coint
  std::string coint_y, coint_x, coint_crit = "aic", coint_out;
  auto* cmd_coint = app.add_subcommand("coint", "Engle-Granger pairwise cointegration");
  cmd_coint->add_option("--y", coint_y)->required();
  cmd_coint->add_option("--x", coint_x)->required();
  cmd_coint->add_option("--criterion", coint_crit)->check(CLI::IsMember({"aic", "hqic"}));
  cmd_coint->add_option("--out", coint_out);

  // report
  std::string report_dir, report_table, report_out, report_cells;
  bool report_stock = false;
  auto* cmd_rep = app.add_subcommand("report", "emit a paper-shaped table from a series dir");
  cmd_rep->add_option("--series-dir", report_dir)->required();
  cmd_rep->add_option("--table", report_table)->required();
  cmd_rep->add_option("--out", report_out);
  cmd_rep->add_option("--cells", report_cells, "directory for per-cell JSON results");
  cmd_rep->add_flag("--stock", report_stock, "test log stocks instead of log counts");

  // plotdata
  std::string plot_dir, plot_figure, plot_out;
  auto* cmd_plot = app.add_subcommand("plotdata", "emit long-format data for one figure");
  cmd_plot->add_option("--series-dir", plot_dir)->required();
  cmd_plot->add_option("--figure", plot_figure)->required();
  cmd_plot->add_option("--out", plot_out);

  // simulate
  std::string sim_spec_path, sim_out;
  auto* cmd_sim = app.add_subcommand("simulate", "generate a seeded ground-truth series");
  cmd_sim->add_option("--spec", sim_spec_path)->required();
  cmd_sim->add_option("--out", sim_out);

  // mc
  std::string mc_spec_path, mc_test, mc_out, mc_det = "c";
  std::size_t mc_reps = 1000;
  auto* cmd_mc = app.add_subcommand("mc", "Monte Carlo size/power of a named test");
  cmd_mc->add_option("--spec", mc_spec_path)->required();
  cmd_mc->add_option("--test", mc_test)->required()->check(CLI::IsMember({"adf", "kpss", "coint"}));
  cmd_mc->add_option("--replications", mc_reps);
  cmd_mc->add_option("--deterministic", mc_det)->check(CLI::IsMember({"c", "ct", "n"}));
  cmd_mc->add_option("--out", mc_out);

  // pipeline
  auto* cmd_pipe = app.add_subcommand("pipeline", "run ingest -> classify -> series end to end");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    auto pick_out = [&](const std::string& local, const char* fallback) {
      if (!local.empty()) return local;
      if (!global_out.empty()) return global_out + "/" + fallback;
      raise(ErrorCode::ValidationError, std::string("--out required for ") + fallback);
    };

    if (cmd_ingest->parsed()) {
      if (!europe_path.empty()) ingest_args.europe = europe_path;
      if (ingest_args.out_dir.empty()) ingest_args.out_dir = global_out;
      if (ingest_args.out_dir.empty()) {
        raise(ErrorCode::ValidationError, "ingest: --out directory required");
      }
      return run_ingest(ingest_args);
    }
    if (cmd_classify->parsed()) {
      classify_args.out = pick_out(classify_args.out, "classified.csv");
      return run_classify(classify_args);
    }
    if (cmd_series->parsed()) {
      if (series_args.out_dir.empty()) series_args.out_dir = global_out;
      if (series_args.out_dir.empty()) {
        raise(ErrorCode::ValidationError, "series: --out directory required");
      }
      return run_series(series_args);
    }
    if (cmd_adf->parsed()) {
      auto s = load_series_file(adf_input);
      econ::AdfOptions opts;
      opts.deterministic = parse_deterministic(adf_det);
      opts.lag_criterion = parse_lag_criterion(adf_crit);
      opts.fixed_lag = adf_fixed_lag;
      opts.max_lag = adf_max_lag;
      auto res = econ::adf_test(s.values, opts);
      write_output(pick_out(adf_out, "adf.json"), io::dump(io::unit_root_to_json(res, s.key)));
      return 0;
    }
    if (cmd_kpss->parsed()) {
      auto s = load_series_file(kpss_input);
      econ::KpssOptions opts;
      opts.deterministic = parse_deterministic(kpss_det);
      if (kpss_bw != "auto") opts.bandwidth = std::stoi(kpss_bw);
      auto res = econ::kpss_test(s.values, opts);
      write_output(pick_out(kpss_out, "kpss.json"), io::dump(io::unit_root_to_json(res, s.key)));
      return 0;
    }
    if (cmd_arima->parsed()) {
      auto s = load_series_file(arima_input);
      int d;
      json extra;
      if (arima_d == "auto") {
        auto order = econ::integration_order(s.values);
        d = order.d;
        extra["integration_conflict"] = order.conflict;
      } else {
        d = std::stoi(arima_d);
      }
      json out_json;
      if (arima_p >= 0 || arima_q >= 0) {
        auto fit = econ::fit_arima(s.values, std::max(arima_p, 0), d, std::max(arima_q, 0));
        out_json = io::arima_to_json(fit, s.key);
      } else {
        econ::ModelCriterion crit = arima_crit == "aic"   ? econ::ModelCriterion::AIC
                                    : arima_crit == "bic" ? econ::ModelCriterion::BIC
                                                          : econ::ModelCriterion::HQIC;
        auto sel = econ::select_arima(s.values, arima_pmax, arima_qmax, d, crit);
        out_json = io::selection_to_json(sel, s.key);
      }
      out_json.update(extra);
      write_output(pick_out(arima_out, "arima.json"), io::dump(out_json));
      return 0;
    }
    if (cmd_breaks->parsed()) {
      auto s = load_series_file(breaks_input);
      auto res = econ::bai_perron(s.values, s.first_year, breaks_max, breaks_trim);
      write_output(pick_out(breaks_out, "breaks.json"), io::dump(io::breaks_to_json(res, s.key)));
      return 0;
    }
    if (cmd_coint->parsed()) {
      auto y = load_series_file(coint_y);
      auto x = load_series_file(coint_x);
      econ::CointOptions opts;
      opts.lag_criterion = parse_lag_criterion(coint_crit);
      auto res = econ::engle_granger(y, x, opts);
      write_output(pick_out(coint_out, "coint.json"), io::dump(io::coint_to_json(res)));
      return 0;
    }
    if (cmd_rep->parsed()) {
      auto all = cli::load_series_dir(report_dir);
      cli::ReportOptions opts;
      opts.use_stock = report_stock;
      opts.cells_dir = report_cells;
      auto res = cli::cmd_report(all, cli::report_table_from_string(report_table), opts);
      for (const auto& w : res.warnings) std::cerr << "warning: " << w << "\n";
      write_output(pick_out(report_out, "report.csv"), res.csv_text);
      return 0;
    }
    if (cmd_plot->parsed()) {
      auto all = cli::load_series_dir(plot_dir);
      auto text = cli::cmd_plotdata(all, cli::figure_from_string(plot_figure));
      write_output(pick_out(plot_out, "plotdata.csv"), text);
      return 0;
    }
    if (cmd_sim->parsed()) {
      auto spec = sim::SimSpec::from_json(io::read_file(sim_spec_path));
      if (seed_given) spec.seed = global_seed;
      auto generated = sim::generate(spec);
      std::string out_path = pick_out(sim_out, "simulated.csv");
      if (generated.series.size() == 1) {
        std::ostringstream body;
        series::write_series_csv(body, generated.series[0]);
        write_output(out_path, body.str());
        io::write_file(std::filesystem::path(out_path).replace_extension(".json").string(),
                       series::key_sidecar_json(generated.series[0]));
      } else {
        std::filesystem::path base(out_path);
        std::string stem = (base.parent_path() / base.stem()).string();
        std::ostringstream bx, by;
        series::write_series_csv(bx, generated.series[0]);
        series::write_series_csv(by, generated.series[1]);
        write_output(stem + "_x.csv", bx.str());
        write_output(stem + "_y.csv", by.str());
      }
      return 0;
    }
    if (cmd_mc->parsed()) {
      auto spec = sim::SimSpec::from_json(io::read_file(mc_spec_path));
      if (seed_given) spec.seed = global_seed;
      econ::Deterministic det = parse_deterministic(mc_det);
      sim::TestInvocation invocation;
      if (mc_test == "adf") {
        invocation = [det](const sim::Generated& g) {
          econ::AdfOptions opts;
          opts.deterministic = det;
          auto r = econ::adf_test(g.series[0].values, opts);
          return sim::TestDecision{r.reject_at_1, r.reject_at_5, r.reject_at_10};
        };
      } else if (mc_test == "kpss") {
        invocation = [det](const sim::Generated& g) {
          econ::KpssOptions opts;
          if (det == econ::Deterministic::ConstantTrend) opts.deterministic = det;
          auto r = econ::kpss_test(g.series[0].values, opts);
          return sim::TestDecision{r.reject_at_1, r.reject_at_5, r.reject_at_10};
        };
      } else {
        invocation = [](const sim::Generated& g) {
          if (g.series.size() != 2) {
            raise(ErrorCode::InvalidSpec, "coint test needs a CointegratedPair spec");
          }
          auto r = econ::engle_granger(g.series[1], g.series[0]);
          return sim::TestDecision{r.cointegrated_at_1, r.cointegrated_at_5,
                                   r.cointegrated_at_10};
        };
      }
      auto outcome = sim::monte_carlo(spec, mc_reps, invocation);
      write_output(pick_out(mc_out, "mc.json"), io::dump(io::mc_to_json(outcome, spec, mc_test)));
      return 0;
    }
    if (cmd_pipe->parsed()) {
      if (global_config.empty()) {
        raise(ErrorCode::ValidationError, "pipeline: --config required");
      }
      auto config = cli::RunConfig::from_json_file(global_config);
      if (!global_out.empty()) config.out_dir = global_out;
      auto manifest = cli::cmd_pipeline(config);
      for (const auto& w : manifest.warnings) std::cerr << "warning: " << w << "\n";
      std::cout << config.out_dir << "/manifest.json (families=" << manifest.families
                << ", hash=" << manifest.content_hash << ")\n";
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
