#include "tabfix/rules.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tabfix/errors.hpp"
#include "tabfix/text.hpp"

namespace tabfix {

using nlohmann::json;

NameLexicon default_name_lexicon() {
  NameLexicon lex;
  lex.stopwords = {
      // institutions and offices
      "united", "states", "state", "house", "senate", "representatives", "representative",
      "congress", "congressional", "assembly", "parliament", "council", "legislature",
      "legislative", "court", "supreme", "committee", "commission", "government", "department",
      "ministry", "cabinet", "district", "county", "city", "province", "region", "ward",
      "constituency", "borough", "municipality", "republic", "kingdom", "federal", "national",
      "general", "presidential", "gubernatorial", "mayoral", "special", "primary", "amendment",
      "referendum", "election", "elections", "by-election", "results", "result", "list",
      "lists", "members", "member", "seniority", "longevity",
      // parties and political labels
      "party", "democratic", "democrat", "democrats", "republican", "republicans", "liberal",
      "liberals", "conservative", "conservatives", "labour", "labor", "federalist",
      "libertarian", "independent", "green", "greens", "socialist", "communist", "progressive",
      "reform", "whig", "unionist", "nationalist", "alliance", "coalition", "front", "union",
      // roles
      "candidate", "candidates", "incumbent", "nominee", "opponent", "governor", "senator",
      "president", "vice", "minister", "ministers", "prime", "mayor", "speaker", "chairman",
      "leader", "leaders", "secretary", "chief", "justice", "judge", "sheriff", "treasurer",
      "attorney", "lieutenant", "delegate", "choice", "subject", "winner", "runner-up",
      // directions and common place words
      "north", "south", "east", "west", "northern", "southern", "eastern", "western", "central",
      "new", "upper", "lower", "greater", "great", "lake", "river", "mount", "saint", "fort",
      "port",
      // table vocabulary
      "total", "totals", "votes", "vote", "majority", "turnout", "swing", "gain", "hold",
      "seat", "seats", "term", "terms", "rank", "office", "year", "date", "notes", "note",
      "the", "of", "and", "for", "in", "on", "at", "to", "by", "a", "an",
      // calendar
      "january", "february", "march", "april", "may", "june", "july", "august", "september",
      "october", "november", "december", "monday", "tuesday", "wednesday", "thursday", "friday",
      "saturday", "sunday"};
  return lex;
}

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) {
  throw RulesError("rules: " + path + ": " + what);
}

const json& require(const json& obj, const char* key, json::value_t type, const std::string& path) {
  const json& v = obj.at(key);
  bool ok = v.type() == type ||
            (type == json::value_t::number_unsigned && v.is_number_integer() && v.get<long long>() >= 0);
  if (!ok) bad(path + "." + key, std::string("expected ") + json(type).type_name());
  return v;
}

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& path) {
  if (!obj.is_object()) bad(path, "expected an object");
  for (const auto& [k, _] : obj.items())
    if (!allowed.count(k)) bad(path + "." + k, "unknown key");
}

std::vector<std::string> string_list(const json& v, const std::string& path) {
  if (!v.is_array()) bad(path, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_string()) bad(path + "[" + std::to_string(i) + "]", "expected a string");
    out.push_back(v[i].get<std::string>());
  }
  return out;
}

std::map<std::string, std::string> string_map(const json& v, const std::string& path) {
  if (!v.is_object()) bad(path, "expected an object of strings");
  std::map<std::string, std::string> out;
  for (const auto& [k, val] : v.items()) {
    if (!val.is_string()) bad(path + "." + k, "expected a string");
    if (k.empty() || val.get<std::string>().empty()) bad(path + "." + k, "empty entry");
    out[k] = val.get<std::string>();
  }
  return out;
}

std::size_t positive(const json& obj, const char* key, const std::string& path, bool allow_zero) {
  const json& v = require(obj, key, json::value_t::number_unsigned, path);
  auto n = v.get<std::size_t>();
  if (n == 0 && !allow_zero) bad(path + "." + key, "must be positive");
  return n;
}

std::string nonempty(const json& obj, const char* key, const std::string& path) {
  auto s = require(obj, key, json::value_t::string, path).get<std::string>();
  if (s.empty()) bad(path + "." + key, "must not be empty");
  return s;
}

// A rename target that is itself a key would be renamed again on the next run.
void check_chains(const std::map<std::string, std::string>& m, const std::string& path) {
  for (const auto& [from, to] : m)
    for (const auto& [k, _] : m)
      if (text::iequals(text::collapse(to), text::collapse(k)))
        bad(path + "." + from, "target '" + to + "' is itself renamed (chain or cycle)");
}

}  // namespace

LintConfig parse_rules(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw RulesError(std::string("rules: malformed JSON: ") + e.what());
  }
  check_keys(doc,
             {"version", "size_limits", "truncate", "split", "complex", "roles", "names", "symbols",
              "header_renames", "party_abbreviations", "band_column", "templates"},
             "$");
  if (!doc.contains("version")) bad("$.version", "missing");
  if (!doc["version"].is_number_integer() || doc["version"].get<long long>() != kRulesVersion)
    bad("$.version", "unsupported rules version " + doc["version"].dump());

  LintConfig cfg;
  if (doc.contains("size_limits")) {
    const json& s = doc["size_limits"];
    check_keys(s, {"max_rows", "max_cols"}, "$.size_limits");
    if (s.contains("max_rows")) cfg.size.max_rows = positive(s, "max_rows", "$.size_limits", false);
    if (s.contains("max_cols")) cfg.size.max_cols = positive(s, "max_cols", "$.size_limits", false);
  }
  if (doc.contains("truncate")) cfg.truncate = require(doc, "truncate", json::value_t::boolean, "$").get<bool>();
  if (doc.contains("split")) {
    const json& s = doc["split"];
    check_keys(s, {"max_records", "party_column", "votes_column", "marker_qualifiers"}, "$.split");
    if (s.contains("max_records")) cfg.split.max_records = positive(s, "max_records", "$.split", true);
    if (s.contains("party_column")) cfg.split.party_column = nonempty(s, "party_column", "$.split");
    if (s.contains("votes_column")) cfg.split.votes_column = nonempty(s, "votes_column", "$.split");
    if (s.contains("marker_qualifiers"))
      cfg.split.marker_qualifiers = string_list(s["marker_qualifiers"], "$.split.marker_qualifiers");
  }
  if (doc.contains("complex")) {
    const json& s = doc["complex"];
    check_keys(s, {"min_words", "verbs", "abbreviations"}, "$.complex");
    if (s.contains("min_words")) cfg.complex.min_words = positive(s, "min_words", "$.complex", false);
    if (s.contains("verbs")) cfg.complex.verbs = string_list(s["verbs"], "$.complex.verbs");
    if (s.contains("abbreviations"))
      cfg.complex.abbreviations = string_list(s["abbreviations"], "$.complex.abbreviations");
  }
  if (doc.contains("roles")) {
    const json& s = doc["roles"];
    check_keys(s, {"identity", "measure", "percent"}, "$.roles");
    if (s.contains("identity")) cfg.roles.identity = string_list(s["identity"], "$.roles.identity");
    if (s.contains("measure")) cfg.roles.measure = string_list(s["measure"], "$.roles.measure");
    if (s.contains("percent")) cfg.roles.percent = string_list(s["percent"], "$.roles.percent");
  }
  if (doc.contains("names")) {
    const json& s = doc["names"];
    check_keys(s, {"lexicon", "stopwords"}, "$.names");
    if (s.contains("lexicon")) cfg.names.names = string_list(s["lexicon"], "$.names.lexicon");
    if (s.contains("stopwords")) cfg.names.stopwords = string_list(s["stopwords"], "$.names.stopwords");
  }
  if (doc.contains("symbols")) {
    const json& s = doc["symbols"];
    check_keys(s, {"patterns", "percent_template", "seats_template"}, "$.symbols");
    if (s.contains("patterns")) cfg.symbols.symbols = string_list(s["patterns"], "$.symbols.patterns");
    if (s.contains("percent_template"))
      cfg.symbols.percent_template = nonempty(s, "percent_template", "$.symbols");
    if (s.contains("seats_template"))
      cfg.symbols.seats_template = nonempty(s, "seats_template", "$.symbols");
  }
  if (doc.contains("header_renames"))
    cfg.symbols.header_renames = string_map(doc["header_renames"], "$.header_renames");
  if (doc.contains("party_abbreviations"))
    cfg.symbols.party_abbreviations = string_map(doc["party_abbreviations"], "$.party_abbreviations");
  if (doc.contains("band_column")) cfg.symbols.band_column = nonempty(doc, "band_column", "$");
  if (doc.contains("templates")) {
    const json& t = doc["templates"];
    if (!t.is_array()) bad("$.templates", "expected an array");
    for (std::size_t i = 0; i < t.size(); ++i) {
      std::string path = "$.templates[" + std::to_string(i) + "]";
      check_keys(t[i], {"id", "body"}, path);
      if (!t[i].contains("id") || !t[i].contains("body")) bad(path, "needs id and body");
      PromptTemplate p{nonempty(t[i], "id", path), nonempty(t[i], "body", path)};
      try {
        validate_template(p);
      } catch (const Error& e) {
        bad(path, e.what());
      }
      cfg.templates.push_back(std::move(p));
    }
  }

  check_chains(cfg.symbols.header_renames, "$.header_renames");
  check_chains(cfg.symbols.party_abbreviations, "$.party_abbreviations");
  return cfg;
}

LintConfig load_rules(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw RulesError("rules: cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_rules(ss.str());
}

std::string dump_rules(const LintConfig& c, int indent) {
  json doc;
  doc["version"] = kRulesVersion;
  doc["size_limits"] = {{"max_rows", c.size.max_rows}, {"max_cols", c.size.max_cols}};
  doc["truncate"] = c.truncate;
  doc["split"] = {{"max_records", c.split.max_records},
                  {"party_column", c.split.party_column},
                  {"votes_column", c.split.votes_column},
                  {"marker_qualifiers", c.split.marker_qualifiers}};
  doc["complex"] = {{"min_words", c.complex.min_words},
                    {"verbs", c.complex.verbs},
                    {"abbreviations", c.complex.abbreviations}};
  doc["roles"] = {{"identity", c.roles.identity},
                  {"measure", c.roles.measure},
                  {"percent", c.roles.percent}};
  doc["names"] = {{"lexicon", c.names.names}, {"stopwords", c.names.stopwords}};
  doc["symbols"] = {{"patterns", c.symbols.symbols},
                    {"percent_template", c.symbols.percent_template},
                    {"seats_template", c.symbols.seats_template}};
  doc["header_renames"] = c.symbols.header_renames;
  doc["party_abbreviations"] = c.symbols.party_abbreviations;
  doc["band_column"] = c.symbols.band_column;
  json t = json::array();
  for (const auto& p : c.templates) t.push_back({{"id", p.id}, {"body", p.body}});
  doc["templates"] = t;
  return doc.dump(indent);
}

}  // namespace tabfix
