#pragma once

// Domain classification: CPC rules, keyword dictionaries, sentence-level
// text mining, and the intelligent flag that separates traditional from
// AI-enhanced robot families.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace patecon::classify {

enum class KeywordGroup {
  LearningIntelligence,
  PerceptionRecognition,
  DataConnectivity,
  ControlDecision,
  RoboticsAutonomy,
  OtherAI,
};

enum class Tier { RobotCore, AIIntrinsic, AIBroad };

enum class Location { Title, Abstract };

enum class RobotType { Industrial, Service, Social, System };

enum class DomainLabel { CoreAI, TraditionalRobot, AIEnhancedRobot, Other };

std::string to_string(KeywordGroup g);
std::string to_string(Tier t);
std::string to_string(RobotType t);
std::string to_string(DomainLabel d);
KeywordGroup group_from_string(const std::string& s);
Tier tier_from_string(const std::string& s);
DomainLabel domain_from_string(const std::string& s);

// One token of a compiled term pattern. `stem` terms ("reinforc*") match
// any word sharing the stem; `max_gap` is the allowed word distance from
// the previous token (1 = adjacent; "A 2w B" allows one word between).
struct PatternToken {
  std::string text;
  bool stem = false;
  int max_gap = 1;
};

struct DictionaryEntry {
  std::string term;  // lowercase, as written in the dictionary file
  KeywordGroup group;
  Tier tier;
  std::vector<PatternToken> pattern;
};

struct KeywordDictionary {
  std::vector<DictionaryEntry> entries;
};

// Dictionary file: CSV `term,group,tier`, UTF-8, lowercase terms.
KeywordDictionary load_dictionary(const std::string& path);
KeywordDictionary parse_dictionary_csv(const std::string& text);

struct CpcRuleSet {
  std::set<std::string> ai_codes;       // normalised symbols, e.g. B25J9/161
  std::set<std::string> robot_prefixes; // e.g. B25J
};

// One symbol per line, `#` comments.
std::set<std::string> load_cpc_list(const std::string& path);

std::string normalize_cpc(const std::string& code);

struct KeywordHit {
  std::string term;
  KeywordGroup group;
  Location location = Location::Abstract;
  std::size_t sentence_index = 0;
};

// Lowercases, splits on . ; ! ? followed by whitespace or end of text, and
// collapses internal whitespace. The splitter is deliberately naive about
// abbreviations ("fig. 1" splits); that behaviour is accepted.
std::vector<std::string> normalize_text(const std::string& text);

struct CpcMatch {
  bool is_ai_cpc = false;
  bool is_robot_cpc = false;
};

// is_ai_cpc: a code equals an ai symbol or extends it past its `/`
// subdivision. is_robot_cpc: plain prefix match.
CpcMatch match_cpc(const std::vector<std::string>& codes, const CpcRuleSet& rules);

// Word-boundary matching over sentences from normalize_text; hits are
// deduplicated per (term, sentence).
std::vector<KeywordHit> match_keywords(const std::vector<std::string>& sentences,
                                       const KeywordDictionary& dict,
                                       const std::set<Tier>& tier_filter,
                                       Location location = Location::Abstract);

std::set<RobotType> classify_robot_type(const std::vector<KeywordHit>& hits);

// Either pass marks a robot as intelligent: the AI-intrinsic co-occurrence
// filter, or (in Union mode) any broad-dictionary hit from text mining.
enum class IntelligentMode { Union, IntrinsicOnly };

struct ClassifyResult {
  DomainLabel label = DomainLabel::Other;
  bool intelligent = false;
  std::set<RobotType> robot_types;
  std::vector<KeywordHit> hits;  // all tiers, title + abstract
};

ClassifyResult classify_record(const std::vector<std::string>& cpc_codes,
                               const std::string& title, const std::string& abstract,
                               const KeywordDictionary& dict, const CpcRuleSet& rules,
                               IntelligentMode mode = IntelligentMode::Union);

// Raises NotARobot unless the record has a robot CPC code or a robot-core
// keyword hit.
bool flag_intelligent(const std::vector<std::string>& cpc_codes,
                      const std::string& title, const std::string& abstract,
                      const KeywordDictionary& dict, const CpcRuleSet& rules,
                      IntelligentMode mode = IntelligentMode::Union);

// Counts hits per group; every group is present, zero or not.
std::map<KeywordGroup, long> keyword_domain_histogram(
    const std::vector<KeywordHit>& hits,
    std::optional<Location> location_filter = std::nullopt);

}  // namespace patecon::classify
