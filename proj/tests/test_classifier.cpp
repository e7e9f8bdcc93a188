#include <doctest.h>

#include <algorithm>
#include <random>

#include "patecon/classifier.hpp"
#include "patecon/errors.hpp"

using namespace patecon;
using classify::DomainLabel;
using classify::KeywordGroup;
using classify::Location;
using classify::RobotType;
using classify::Tier;

namespace {

classify::KeywordDictionary baseline_dict() {
  return classify::load_dictionary(std::string(PATECON_ASSETS_DIR) + "/keywords.csv");
}

classify::CpcRuleSet baseline_rules() {
  classify::CpcRuleSet rules;
  rules.ai_codes = classify::load_cpc_list(std::string(PATECON_ASSETS_DIR) + "/cpc_ai.txt");
  rules.robot_prefixes =
      classify::load_cpc_list(std::string(PATECON_ASSETS_DIR) + "/cpc_robot.txt");
  return rules;
}

}  // namespace

TEST_CASE("normalize_text splits and lowercases") {
  CHECK(classify::normalize_text("A Robot. It learns fast.") ==
        std::vector<std::string>{"a robot", "it learns fast"});
  CHECK(classify::normalize_text("").empty());
  // naive splitter: abbreviations over-split, accepted behaviour
  CHECK(classify::normalize_text("fig. 1 shows a robot system") ==
        std::vector<std::string>{"fig", "1 shows a robot system"});
  CHECK(classify::normalize_text("it  has   gaps") == std::vector<std::string>{"it has gaps"});
  CHECK(classify::normalize_text("q1; q2! q3?") == std::vector<std::string>{"q1", "q2", "q3"});
  // punctuation not followed by whitespace does not split
  CHECK(classify::normalize_text("b25j9/16 and v2.0 units") ==
        std::vector<std::string>{"b25j9/16 and v2.0 units"});
}

TEST_CASE("baseline dictionary honours the documented tier contents") {
  auto dict = baseline_dict();
  std::set<std::string> robot_core, intrinsic;
  for (const auto& e : dict.entries) {
    if (e.tier == Tier::RobotCore) robot_core.insert(e.term);
    if (e.tier == Tier::AIIntrinsic) intrinsic.insert(e.term);
    CHECK(e.term == [&] {
      std::string low = e.term;
      std::transform(low.begin(), low.end(), low.begin(), ::tolower);
      return low;
    }());
  }
  CHECK(robot_core == std::set<std::string>{"industrial robot", "service robot", "social robot",
                                            "robot system"});
  CHECK(intrinsic == std::set<std::string>{"cognitive system", "control theory"});
}

TEST_CASE("dictionary rejects duplicate term-tier pairs") {
  CHECK_THROWS_AS(
      classify::parse_dictionary_csv("term,group,tier\n"
                                     "robot system,RoboticsAutonomy,RobotCore\n"
                                     "robot system,OtherAI,RobotCore\n"),
      Error);
}

TEST_CASE("match_cpc follows exact and subdivision-extension semantics") {
  auto rules = baseline_rules();
  auto m = classify::match_cpc({"B25J9/161"}, rules);
  CHECK(m.is_ai_cpc);  // normalised form of "B25J 9/161"
  CHECK(m.is_robot_cpc);

  CHECK(classify::match_cpc({"B25J15/00"}, rules).is_robot_cpc);
  CHECK_FALSE(classify::match_cpc({"B25J15/00"}, rules).is_ai_cpc);

  auto none = classify::match_cpc({"C07K14/00"}, rules);
  CHECK_FALSE(none.is_ai_cpc);
  CHECK_FALSE(none.is_robot_cpc);

  // extension past the subdivision boundary counts
  CHECK(classify::match_cpc({"G06N 3/126"}, rules).is_ai_cpc);
  // a parent of a listed symbol does not
  CHECK_FALSE(classify::match_cpc({"G06N 3/1"}, rules).is_ai_cpc);
  // prefix before the slash does not
  CHECK_FALSE(classify::match_cpc({"G06Q 30/0"}, rules).is_ai_cpc);
  CHECK(classify::match_cpc({"G06Q 30/02999"}, rules).is_ai_cpc);
}

TEST_CASE("match_keywords finds word-boundary hits") {
  auto dict = baseline_dict();
  auto hits = classify::match_keywords({"a neural network controller"}, dict,
                                       {Tier::AIBroad}, Location::Abstract);
  REQUIRE(hits.size() >= 1);
  bool found = false;
  for (const auto& h : hits) {
    if (h.term == "neural network") {
      found = true;
      CHECK(h.group == KeywordGroup::LearningIntelligence);
      CHECK(h.sentence_index == 0);
    }
  }
  CHECK(found);

  CHECK(classify::match_keywords({"photographic lens assembly"}, dict, {Tier::AIBroad}).empty());

  auto sd = classify::match_keywords({"self-driving car navigation"}, dict, {Tier::AIBroad});
  bool car = false;
  for (const auto& h : sd) {
    if (h.term == "self-driving car") {
      car = true;
      CHECK(h.group == KeywordGroup::RoboticsAutonomy);
    }
  }
  CHECK(car);
}

TEST_CASE("keyword matching is exact at word boundaries unless stemmed") {
  auto dict = classify::parse_dictionary_csv(
      "term,group,tier\n"
      "robot system,RoboticsAutonomy,RobotCore\n"
      "reinforc* learn*,LearningIntelligence,AIBroad\n"
      "learning,LearningIntelligence,AIBroad\n");
  // "robots" does not match the exact word "robot"
  CHECK(classify::match_keywords({"robots system integration"}, dict, {Tier::RobotCore}).empty());
  // stems do match suffixes
  auto hits =
      classify::match_keywords({"reinforcement learning of grasps"}, dict, {Tier::AIBroad});
  REQUIRE(hits.size() == 2);  // stem pattern + bare "learning", deduped by term
  // multi-word terms match across single spaces only within a sentence
  CHECK(classify::match_keywords({"reinforcement", "learning"}, dict, {Tier::AIBroad}).size() ==
        1);
}

TEST_CASE("proximity window terms allow bounded gaps") {
  auto dict = classify::parse_dictionary_csv("term,group,tier\n"
                                             "bayes* 2w network*,LearningIntelligence,AIBroad\n");
  CHECK(classify::match_keywords({"bayes network"}, dict, {}).size() == 1);
  CHECK(classify::match_keywords({"bayesian belief networks"}, dict, {}).size() == 1);
  CHECK(classify::match_keywords({"bayesian deep belief networks"}, dict, {}).empty());
}

TEST_CASE("hits deduplicate per term and sentence") {
  auto dict = baseline_dict();
  auto hits = classify::match_keywords({"cloud to cloud sync", "cloud backup"}, dict,
                                       {Tier::AIBroad});
  int cloud_hits = 0;
  for (const auto& h : hits) {
    if (h.term == "cloud") ++cloud_hits;
  }
  CHECK(cloud_hits == 2);  // once per sentence, not per occurrence
}

TEST_CASE("classify_robot_type maps core terms to flags") {
  auto dict = baseline_dict();
  auto core = [&](const std::string& text) {
    return classify::classify_robot_type(
        classify::match_keywords(classify::normalize_text(text), dict, {Tier::RobotCore}));
  };
  CHECK(core("an industrial robot for welding") == std::set<RobotType>{RobotType::Industrial});
  CHECK(core("the robot system includes a service robot") ==
        std::set<RobotType>{RobotType::System, RobotType::Service});
  CHECK(core("a gearbox housing").empty());
}

TEST_CASE("flag_intelligent applies both passes and guards its precondition") {
  auto dict = baseline_dict();
  auto rules = baseline_rules();
  // co-occurrence: robot-core term + AI-intrinsic term
  CHECK(classify::flag_intelligent({"B25J 9/00"}, "robot system",
                                   "the robot system relies on control theory.", dict, rules));
  // no AI terms at all
  CHECK_FALSE(classify::flag_intelligent({"B25J 9/00"}, "industrial robot",
                                         "a gripper with improved torque", dict, rules));
  // step-2-only hit still flags in union mode
  CHECK(classify::flag_intelligent({"B25J 9/00"}, "grip controller",
                                   "reinforcement learning adapts the grip.", dict, rules));
  // ...but not in intrinsic-only mode
  CHECK_FALSE(classify::flag_intelligent({"B25J 9/00"}, "grip controller",
                                         "reinforcement learning adapts the grip.", dict, rules,
                                         classify::IntelligentMode::IntrinsicOnly));
  CHECK_THROWS_AS(classify::flag_intelligent({"C07K 14/00"}, "protein", "a binding assay", dict,
                                             rules),
                  Error);
}

TEST_CASE("classify_domain follows the precedence rules") {
  auto dict = baseline_dict();
  auto rules = baseline_rules();
  auto label = [&](const std::vector<std::string>& codes, const std::string& title,
                   const std::string& abstract) {
    return classify::classify_record(codes, title, abstract, dict, rules).label;
  };
  CHECK(label({"B25J 9/16"}, "arm", "a robot system with a cognitive system core.") ==
        DomainLabel::AIEnhancedRobot);
  CHECK(label({"B25J 9/16"}, "arm", "a gripper with improved torque.") ==
        DomainLabel::TraditionalRobot);
  CHECK(label({"G06N 3/02"}, "solver", "constraint program for timetables.") ==
        DomainLabel::CoreAI);
  CHECK(label({"F16H 25/20"}, "screw", "a preloaded ball screw.") == DomainLabel::Other);
  // robot precedence over core AI: B25J + G06N with no keywords is a robot
  CHECK(label({"B25J 9/00", "G06N 3/02"}, "recorder", "records joint torque values.") ==
        DomainLabel::TraditionalRobot);
  // keyword-only robot
  CHECK(label({"B65G 47/00"}, "industrial robot line", "a conveyor synchroniser.") ==
        DomainLabel::TraditionalRobot);
}

TEST_CASE("classification is case-insensitive and order-independent") {
  auto dict = baseline_dict();
  auto rules = baseline_rules();
  std::string title = "Motion Planner";
  std::string abstract = "A NEURAL NETWORK plans paths for the INDUSTRIAL ROBOT.";
  auto upper = classify::classify_record({"b25j 9/16"}, title, abstract, dict, rules);
  auto lower = classify::classify_record({"B25J 9/16"}, "motion planner",
                                         "a neural network plans paths for the industrial robot.",
                                         dict, rules);
  CHECK(upper.label == lower.label);
  CHECK(upper.intelligent == lower.intelligent);

  // permute dictionary entries: labels must not move
  auto shuffled = dict;
  std::mt19937 rng(7);
  std::shuffle(shuffled.entries.begin(), shuffled.entries.end(), rng);
  auto with_shuffled = classify::classify_record({"b25j 9/16"}, title, abstract, shuffled, rules);
  CHECK(with_shuffled.label == upper.label);
  CHECK(with_shuffled.intelligent == upper.intelligent);
}

TEST_CASE("adding AI keywords never downgrades an AI-enhanced robot") {
  auto dict = baseline_dict();
  auto rules = baseline_rules();
  std::string base = "a gripper with improved torque.";
  auto before = classify::classify_record({"B25J 9/00"}, "arm", base, dict, rules);
  CHECK(before.label == DomainLabel::TraditionalRobot);
  for (const char* extra : {"machine learning tunes it.", "control theory stabilises it.",
                            "computer vision guides it."}) {
    auto after =
        classify::classify_record({"B25J 9/00"}, "arm", base + " " + extra, dict, rules);
    CHECK(after.label == DomainLabel::AIEnhancedRobot);
  }
}

TEST_CASE("keyword histogram counts per group with explicit zeros") {
  std::vector<classify::KeywordHit> hits;
  hits.push_back({"machine learning", KeywordGroup::LearningIntelligence, Location::Abstract, 0});
  hits.push_back({"learning", KeywordGroup::LearningIntelligence, Location::Abstract, 1});
  hits.push_back({"deep learn*", KeywordGroup::LearningIntelligence, Location::Title, 0});
  hits.push_back({"big data", KeywordGroup::DataConnectivity, Location::Abstract, 2});
  auto counts = classify::keyword_domain_histogram(hits);
  CHECK(counts.at(KeywordGroup::LearningIntelligence) == 3);
  CHECK(counts.at(KeywordGroup::DataConnectivity) == 1);
  CHECK(counts.at(KeywordGroup::PerceptionRecognition) == 0);
  CHECK(counts.size() == 6);

  auto title_only = classify::keyword_domain_histogram(hits, Location::Title);
  CHECK(title_only.at(KeywordGroup::LearningIntelligence) == 1);
  CHECK(title_only.at(KeywordGroup::DataConnectivity) == 0);

  auto empty = classify::keyword_domain_histogram({});
  for (const auto& [group, count] : empty) CHECK(count == 0);
}

TEST_CASE("one abstract can feed several groups") {
  auto dict = baseline_dict();
  auto hits = classify::match_keywords(
      classify::normalize_text("machine learning with a smart sensor array"), dict,
      {Tier::AIBroad});
  auto counts = classify::keyword_domain_histogram(hits);
  CHECK(counts.at(KeywordGroup::LearningIntelligence) >= 1);
  CHECK(counts.at(KeywordGroup::PerceptionRecognition) >= 1);
}
