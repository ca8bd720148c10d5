#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "tabfix/prompts.hpp"

namespace tabfix {

struct SizeLimits {
  std::size_t max_rows = 20;
  std::size_t max_cols = 10;

  friend bool operator==(const SizeLimits&, const SizeLimits&) = default;
};

struct SplitConfig {
  /// Records kept per non-atomic cell; 0 keeps all.
  std::size_t max_records = 2;
  std::string party_column = "Party";
  std::string votes_column = "% votes";
  /// Parenthesised tokens that annotate the name rather than add a field, e.g. "(inc.)".
  std::vector<std::string> marker_qualifiers = {"inc.", "inc", "incumbent", "i", "write-in"};

  friend bool operator==(const SplitConfig&, const SplitConfig&) = default;
};

struct ComplexConfig {
  std::size_t min_words = 6;
  std::vector<std::string> verbs = {"lost",     "won",     "elected",  "defeated", "retired",
                                    "gain",     "hold",    "re-elected", "resigned", "died",
                                    "appointed", "unopposed"};
  /// Words ending in '.' that do not end a sentence.
  std::vector<std::string> abbreviations = {"inc", "jr", "sr", "dr", "mr", "mrs", "ms",
                                            "st",  "vs", "no", "co", "gen", "lt", "rep", "sen"};

  friend bool operator==(const ComplexConfig&, const ComplexConfig&) = default;
};

struct RoleLexicon {
  /// Header words marking identity columns (who/what the fact is about).
  std::vector<std::string> identity = {"candidate", "candidates", "party",    "parties",
                                       "choice",    "state",      "nominee",  "nominees",
                                       "opponent",  "alliance",   "coalition"};
  /// Header words marking measure columns.
  std::vector<std::string> measure = {"%",     "votes", "vote",   "percentage", "percent",
                                      "share", "seats", "swing",  "±",          "+/-"};
  /// Subset of measure words preferred when a single measure must be chosen.
  std::vector<std::string> percent = {"%", "percentage", "percent", "share"};

  friend bool operator==(const RoleLexicon&, const RoleLexicon&) = default;
};

struct NameLexicon {
  /// Known person names, matched as whole words before the pattern matcher runs.
  std::vector<std::string> names;
  /// Lower-case words that can never be part of a person name.
  std::vector<std::string> stopwords;

  friend bool operator==(const NameLexicon&, const NameLexicon&) = default;
};

NameLexicon default_name_lexicon();

struct SymbolRules {
  std::vector<std::string> symbols = {"±", "+/-", "+/−", "+/–", "+-"};
  std::string percent_template = "{symbol} % difference with previous election";
  std::string seats_template = "{symbol} seats compared to the previous election";
  std::map<std::string, std::string> header_renames = {{"Subject", "Candidate"}};
  std::map<std::string, std::string> party_abbreviations = {
      {"UPA", "United Progressive Alliance"},
      {"NDA", "National Democratic Alliance"},
      {"LDF", "Left Democratic Front"},
      {"UDF", "United Democratic Front"},
      {"DFL", "Democratic-Farmer-Labor"},
  };
  /// Header of the column that receives flattened band-row text.
  std::string band_column = "Term details";

  friend bool operator==(const SymbolRules&, const SymbolRules&) = default;
};

struct LintConfig {
  SizeLimits size;
  bool truncate = false;
  SplitConfig split;
  ComplexConfig complex;
  RoleLexicon roles;
  NameLexicon names = default_name_lexicon();
  SymbolRules symbols;
  std::vector<PromptTemplate> templates;

  friend bool operator==(const LintConfig&, const LintConfig&) = default;
};

inline constexpr int kRulesVersion = 1;

/// Parse a rules document; sections present override the built-in defaults.
/// Throws RulesError for unknown versions, unknown sections, bad types, rename chains.
LintConfig parse_rules(std::string_view json_text);
LintConfig load_rules(const std::filesystem::path& path);
/// Serialise every section, so the output round-trips through parse_rules.
std::string dump_rules(const LintConfig& config, int indent = 2);

}  // namespace tabfix
