#include "patecon/classifier.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "patecon/csv.hpp"
#include "patecon/errors.hpp"

namespace patecon::classify {

std::string to_string(KeywordGroup g) {
  switch (g) {
    case KeywordGroup::LearningIntelligence: return "LearningIntelligence";
    case KeywordGroup::PerceptionRecognition: return "PerceptionRecognition";
    case KeywordGroup::DataConnectivity: return "DataConnectivity";
    case KeywordGroup::ControlDecision: return "ControlDecision";
    case KeywordGroup::RoboticsAutonomy: return "RoboticsAutonomy";
    case KeywordGroup::OtherAI: return "OtherAI";
  }
  return "OtherAI";
}

std::string to_string(Tier t) {
  switch (t) {
    case Tier::RobotCore: return "RobotCore";
    case Tier::AIIntrinsic: return "AIIntrinsic";
    case Tier::AIBroad: return "AIBroad";
  }
  return "AIBroad";
}

std::string to_string(RobotType t) {
  switch (t) {
    case RobotType::Industrial: return "Industrial";
    case RobotType::Service: return "Service";
    case RobotType::Social: return "Social";
    case RobotType::System: return "System";
  }
  return "System";
}

std::string to_string(DomainLabel d) {
  switch (d) {
    case DomainLabel::CoreAI: return "CoreAI";
    case DomainLabel::TraditionalRobot: return "TraditionalRobot";
    case DomainLabel::AIEnhancedRobot: return "AIEnhancedRobot";
    case DomainLabel::Other: return "Other";
  }
  return "Other";
}

KeywordGroup group_from_string(const std::string& s) {
  if (s == "LearningIntelligence") return KeywordGroup::LearningIntelligence;
  if (s == "PerceptionRecognition") return KeywordGroup::PerceptionRecognition;
  if (s == "DataConnectivity") return KeywordGroup::DataConnectivity;
  if (s == "ControlDecision") return KeywordGroup::ControlDecision;
  if (s == "RoboticsAutonomy") return KeywordGroup::RoboticsAutonomy;
  if (s == "OtherAI") return KeywordGroup::OtherAI;
  raise(ErrorCode::MalformedRow, "unknown keyword group '" + s + "'");
}

Tier tier_from_string(const std::string& s) {
  if (s == "RobotCore") return Tier::RobotCore;
  if (s == "AIIntrinsic") return Tier::AIIntrinsic;
  if (s == "AIBroad") return Tier::AIBroad;
  raise(ErrorCode::MalformedRow, "unknown dictionary tier '" + s + "'");
}

DomainLabel domain_from_string(const std::string& s) {
  if (s == "CoreAI") return DomainLabel::CoreAI;
  if (s == "TraditionalRobot") return DomainLabel::TraditionalRobot;
  if (s == "AIEnhancedRobot") return DomainLabel::AIEnhancedRobot;
  if (s == "Other") return DomainLabel::Other;
  raise(ErrorCode::MalformedRow, "unknown domain label '" + s + "'");
}

namespace {

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

// Words are maximal alphanumeric runs; hyphens, slashes etc. separate words,
// so "self-driving" tokenizes like "self driving".
std::vector<std::string> tokenize(const std::string& sentence) {
  std::vector<std::string> words;
  std::string cur;
  for (char c : sentence) {
    if (is_word_char(c)) {
      cur.push_back(c);
    } else if (!cur.empty()) {
      words.push_back(cur);
      cur.clear();
    }
  }
  if (!cur.empty()) words.push_back(cur);
  return words;
}

bool is_proximity_token(const std::string& w, int* n) {
  // "1w" .. "9w": the next pattern word may sit up to n words away.
  if (w.size() == 2 && w[1] == 'w' && w[0] >= '1' && w[0] <= '9') {
    *n = w[0] - '0';
    return true;
  }
  return false;
}

std::vector<PatternToken> compile_term(const std::string& term) {
  std::vector<PatternToken> pattern;
  int pending_gap = 1;
  for (std::string w : tokenize(term)) {
    int n = 0;
    if (is_proximity_token(w, &n)) {
      pending_gap = n;
      continue;
    }
    PatternToken tok;
    tok.max_gap = pending_gap;
    pending_gap = 1;
    // `$*` and `*` both mark a stem; tokenize() already dropped the symbols,
    // so stems are detected on the raw term below.
    tok.text = w;
    pattern.push_back(tok);
  }
  // Recover which words carried a trailing wildcard. tokenize() strips the
  // markers, so walk the raw term in parallel.
  std::size_t at = 0;
  for (auto& tok : pattern) {
    at = term.find(tok.text, at);
    if (at == std::string::npos) break;
    std::size_t end = at + tok.text.size();
    while (end < term.size() && (term[end] == '$' || term[end] == '*')) {
      tok.stem = true;
      ++end;
    }
    at = end;
  }
  return pattern;
}

bool token_matches(const PatternToken& tok, const std::string& word) {
  if (tok.stem) {
    return word.size() >= tok.text.size() &&
           word.compare(0, tok.text.size(), tok.text) == 0;
  }
  return word == tok.text;
}

// Matches pattern tokens against words[start..], honouring per-token gaps.
bool match_from(const std::vector<PatternToken>& pattern, std::size_t pi,
                const std::vector<std::string>& words, std::size_t wi) {
  if (pi == pattern.size()) return true;
  const PatternToken& tok = pattern[pi];
  for (int gap = 1; gap <= tok.max_gap; ++gap) {
    std::size_t next = wi + gap;
    if (next > words.size()) break;
    if (token_matches(tok, words[next - 1]) &&
        match_from(pattern, pi + 1, words, next)) {
      return true;
    }
  }
  return false;
}

bool pattern_in_words(const std::vector<PatternToken>& pattern,
                      const std::vector<std::string>& words) {
  if (pattern.empty()) return false;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (token_matches(pattern[0], words[i]) &&
        match_from(pattern, 1, words, i + 1)) {
      return true;
    }
  }
  return false;
}

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

}  // namespace

std::vector<std::string> normalize_text(const std::string& text) {
  std::string low = lower(text);
  std::vector<std::string> sentences;
  std::string cur;
  auto flush = [&] {
    // collapse whitespace runs, trim
    std::string out;
    bool in_space = true;
    for (char c : cur) {
      if (std::isspace(static_cast<unsigned char>(c))) {
        if (!in_space && !out.empty()) out.push_back(' ');
        in_space = true;
      } else {
        out.push_back(c);
        in_space = false;
      }
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    if (!out.empty()) sentences.push_back(out);
    cur.clear();
  };
  for (std::size_t i = 0; i < low.size(); ++i) {
    char c = low[i];
    if ((c == '.' || c == ';' || c == '!' || c == '?') &&
        (i + 1 == low.size() ||
         std::isspace(static_cast<unsigned char>(low[i + 1])))) {
      flush();
    } else {
      cur.push_back(c);
    }
  }
  flush();
  return sentences;
}

KeywordDictionary parse_dictionary_csv(const std::string& text) {
  auto rows = csv::parse(text);
  if (rows.empty()) raise(ErrorCode::UnknownColumn, "empty dictionary file");
  std::size_t start = 0;
  if (rows[0] == csv::Row{"term", "group", "tier"}) start = 1;
  KeywordDictionary dict;
  std::unordered_set<std::string> seen;
  for (std::size_t r = start; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() == 1 && trim(row[0]).empty()) continue;
    if (row.size() != 3) {
      raise(ErrorCode::MalformedRow, "dictionary row " + std::to_string(r) +
                                         ": expected term,group,tier");
    }
    DictionaryEntry entry;
    entry.term = lower(trim(row[0]));
    if (entry.term.empty()) {
      raise(ErrorCode::MalformedRow, "dictionary row " + std::to_string(r) + ": empty term");
    }
    entry.group = group_from_string(trim(row[1]));
    entry.tier = tier_from_string(trim(row[2]));
    std::string key = entry.term + "\x1f" + to_string(entry.tier);
    if (!seen.insert(key).second) {
      raise(ErrorCode::MalformedRow, "dictionary row " + std::to_string(r) +
                                         ": duplicate (term, tier) '" + entry.term + "'");
    }
    entry.pattern = compile_term(entry.term);
    if (entry.pattern.empty()) {
      raise(ErrorCode::MalformedRow, "dictionary row " + std::to_string(r) +
                                         ": term has no words '" + entry.term + "'");
    }
    dict.entries.push_back(std::move(entry));
  }
  return dict;
}

KeywordDictionary load_dictionary(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorCode::IoError, "cannot open dictionary: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_dictionary_csv(buf.str());
}

std::string normalize_cpc(const std::string& code) {
  std::string out;
  for (char c : code) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    out.push_back(std::toupper(static_cast<unsigned char>(c)));
  }
  return out;
}

std::set<std::string> load_cpc_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorCode::IoError, "cannot open CPC list: " + path);
  std::set<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::string sym = normalize_cpc(line);
    if (!sym.empty()) out.insert(sym);
  }
  return out;
}

CpcMatch match_cpc(const std::vector<std::string>& codes, const CpcRuleSet& rules) {
  if (rules.ai_codes.empty() && rules.robot_prefixes.empty()) {
    raise(ErrorCode::ValidationError, "empty CPC rule set");
  }
  CpcMatch m;
  for (const auto& raw : codes) {
    std::string code = normalize_cpc(raw);
    if (code.empty()) continue;
    if (!m.is_robot_cpc) {
      for (const auto& prefix : rules.robot_prefixes) {
        if (code.compare(0, prefix.size(), prefix) == 0) {
          m.is_robot_cpc = true;
          break;
        }
      }
    }
    if (!m.is_ai_cpc) {
      if (rules.ai_codes.count(code)) {
        m.is_ai_cpc = true;
      } else {
        // Subdivision extension: G06N3/02 also claims G06N3/0205 etc.
        // Only symbols with a `/` group part extend this way.
        auto it = rules.ai_codes.upper_bound(code);
        while (it != rules.ai_codes.begin()) {
          --it;
          if (code.compare(0, it->size(), *it) == 0) {
            if (it->find('/') != std::string::npos) m.is_ai_cpc = true;
            break;
          }
          // Sorted-set walk: once the candidate is no longer a prefix of
          // code's leading character run, stop.
          if (code.compare(0, 1, *it, 0, 1) != 0) break;
        }
      }
    }
    if (m.is_ai_cpc && m.is_robot_cpc) break;
  }
  return m;
}

std::vector<KeywordHit> match_keywords(const std::vector<std::string>& sentences,
                                       const KeywordDictionary& dict,
                                       const std::set<Tier>& tier_filter,
                                       Location location) {
  std::vector<KeywordHit> hits;
  std::vector<std::vector<std::string>> words;
  words.reserve(sentences.size());
  for (const auto& s : sentences) words.push_back(tokenize(s));

  for (std::size_t si = 0; si < words.size(); ++si) {
    for (const auto& entry : dict.entries) {
      if (!tier_filter.empty() && !tier_filter.count(entry.tier)) continue;
      if (pattern_in_words(entry.pattern, words[si])) {
        hits.push_back({entry.term, entry.group, location, si});
      }
    }
  }
  // Dedup per (term, sentence); entries may repeat a term across tiers.
  std::sort(hits.begin(), hits.end(), [](const KeywordHit& a, const KeywordHit& b) {
    return std::tie(a.sentence_index, a.term) < std::tie(b.sentence_index, b.term);
  });
  hits.erase(std::unique(hits.begin(), hits.end(),
                         [](const KeywordHit& a, const KeywordHit& b) {
                           return a.sentence_index == b.sentence_index && a.term == b.term;
                         }),
             hits.end());
  return hits;
}

std::set<RobotType> classify_robot_type(const std::vector<KeywordHit>& hits) {
  std::set<RobotType> out;
  for (const auto& h : hits) {
    if (h.term == "industrial robot") out.insert(RobotType::Industrial);
    else if (h.term == "service robot") out.insert(RobotType::Service);
    else if (h.term == "social robot") out.insert(RobotType::Social);
    else if (h.term == "robot system") out.insert(RobotType::System);
  }
  return out;
}

namespace {

struct RecordScan {
  bool robot_cpc = false;
  bool ai_cpc = false;
  std::vector<KeywordHit> hits;  // all tiers over title + abstract
};

RecordScan scan_record(const std::vector<std::string>& cpc_codes,
                       const std::string& title, const std::string& abstract,
                       const KeywordDictionary& dict, const CpcRuleSet& rules) {
  RecordScan scan;
  CpcMatch cpc = match_cpc(cpc_codes, rules);
  scan.robot_cpc = cpc.is_robot_cpc;
  scan.ai_cpc = cpc.is_ai_cpc;
  auto title_hits = match_keywords(normalize_text(title), dict, {}, Location::Title);
  auto abstract_hits = match_keywords(normalize_text(abstract), dict, {}, Location::Abstract);
  scan.hits = std::move(title_hits);
  scan.hits.insert(scan.hits.end(), abstract_hits.begin(), abstract_hits.end());
  return scan;
}

bool has_tier_term(const std::vector<KeywordHit>& hits, const KeywordDictionary& dict,
                   Tier tier) {
  for (const auto& h : hits) {
    for (const auto& e : dict.entries) {
      if (e.tier == tier && e.term == h.term) return true;
    }
  }
  return false;
}

bool intelligent_from_scan(const RecordScan& scan, const KeywordDictionary& dict,
                           IntelligentMode mode) {
  bool robot_core = has_tier_term(scan.hits, dict, Tier::RobotCore);
  bool intrinsic = has_tier_term(scan.hits, dict, Tier::AIIntrinsic);
  bool co_occurrence = robot_core && intrinsic;
  if (mode == IntelligentMode::IntrinsicOnly) return co_occurrence;
  bool broad = has_tier_term(scan.hits, dict, Tier::AIBroad);
  return co_occurrence || broad;
}

}  // namespace

bool flag_intelligent(const std::vector<std::string>& cpc_codes,
                      const std::string& title, const std::string& abstract,
                      const KeywordDictionary& dict, const CpcRuleSet& rules,
                      IntelligentMode mode) {
  RecordScan scan = scan_record(cpc_codes, title, abstract, dict, rules);
  bool robot_core = has_tier_term(scan.hits, dict, Tier::RobotCore);
  if (!scan.robot_cpc && !robot_core) {
    raise(ErrorCode::NotARobot, "flag_intelligent requires a robot record");
  }
  return intelligent_from_scan(scan, dict, mode);
}

ClassifyResult classify_record(const std::vector<std::string>& cpc_codes,
                               const std::string& title, const std::string& abstract,
                               const KeywordDictionary& dict, const CpcRuleSet& rules,
                               IntelligentMode mode) {
  RecordScan scan = scan_record(cpc_codes, title, abstract, dict, rules);
  ClassifyResult res;
  res.hits = scan.hits;

  std::vector<KeywordHit> core_hits;
  for (const auto& h : scan.hits) {
    for (const auto& e : dict.entries) {
      if (e.tier == Tier::RobotCore && e.term == h.term) {
        core_hits.push_back(h);
        break;
      }
    }
  }
  res.robot_types = classify_robot_type(core_hits);

  bool is_robot = scan.robot_cpc || !core_hits.empty();
  if (is_robot) {
    res.intelligent = intelligent_from_scan(scan, dict, mode);
    res.label = res.intelligent ? DomainLabel::AIEnhancedRobot : DomainLabel::TraditionalRobot;
  } else if (scan.ai_cpc) {
    res.label = DomainLabel::CoreAI;
  } else {
    res.label = DomainLabel::Other;
  }
  return res;
}

std::map<KeywordGroup, long> keyword_domain_histogram(
    const std::vector<KeywordHit>& hits, std::optional<Location> location_filter) {
  std::map<KeywordGroup, long> counts = {
      {KeywordGroup::LearningIntelligence, 0}, {KeywordGroup::PerceptionRecognition, 0},
      {KeywordGroup::DataConnectivity, 0},     {KeywordGroup::ControlDecision, 0},
      {KeywordGroup::RoboticsAutonomy, 0},     {KeywordGroup::OtherAI, 0}};
  for (const auto& h : hits) {
    if (location_filter && h.location != *location_filter) continue;
    counts[h.group] += 1;
  }
  return counts;
}

}  // namespace patecon::classify
