#include "tabfix/diagnostics.hpp"

#include <algorithm>
#include <stdexcept>

#include "layout.hpp"
#include "tabfix/text.hpp"

namespace tabfix {

std::string_view problem_name(Problem p) {
  switch (p) {
    case Problem::SingleRecordNonAtomic: return "SingleRecordNonAtomic";
    case Problem::MultiRecordNonAtomic: return "MultiRecordNonAtomic";
    case Problem::ComplexTableType: return "ComplexTableType";
    case Problem::InsufficientInput: return "InsufficientInput";
    case Problem::LongerTable: return "LongerTable";
    case Problem::PoliticsSymbolHeader: return "PoliticsSymbolHeader";
    case Problem::LeaderNameListHazard: return "LeaderNameListHazard";
  }
  return "?";
}

std::string_view problem_label(Problem p) {
  switch (p) {
    case Problem::SingleRecordNonAtomic: return "Single record lacking atomicity";
    case Problem::MultiRecordNonAtomic: return "Multiple records lacking atomicity";
    case Problem::ComplexTableType: return "Complex table type";
    case Problem::InsufficientInput: return "Insufficient input";
    case Problem::LongerTable: return "Longer input";
    case Problem::PoliticsSymbolHeader: return "ToTTo specific";
    case Problem::LeaderNameListHazard: return "List of Leader names";
  }
  return "?";
}

std::optional<Problem> parse_problem(std::string_view s) {
  for (Problem p : kAllProblems)
    if (s == problem_name(p) || text::iequals(s, problem_label(p))) return p;
  return std::nullopt;
}

std::string_view scenario_name(LeaderScenario s) {
  switch (s) {
    case LeaderScenario::TitleLeaderFound: return "TitleLeaderFound";
    case LeaderScenario::LeaderNotInTitle: return "LeaderNotInTitle";
    case LeaderScenario::LeaderNotInTable: return "LeaderNotInTable";
  }
  return "?";
}

std::string AtomicRecord::display() const {
  std::string out = name;
  if (!qualifier.empty()) out += " (" + qualifier + ")";
  if (!number.empty()) out += " " + number;
  return out;
}

namespace {

std::string py_repr(const std::string& s) {
  bool single = s.find('\'') != std::string::npos;
  bool dbl = s.find('"') != std::string::npos;
  char q = single && !dbl ? '"' : '\'';
  std::string out(1, q);
  for (char c : s) {
    if (c == q || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back(q);
  return out;
}

}  // namespace

std::string leader_data_message(const LeaderOrderReport& report) {
  std::string out = "Leader Data: [";
  for (std::size_t i = 0; i < report.recorded_data.size(); ++i) {
    if (i) out += ", ";
    out += py_repr(report.recorded_data[i]);
  }
  return out + "]";
}

std::size_t DiagnosticReport::count(Problem p) const {
  return static_cast<std::size_t>(std::count_if(diagnostics.begin(), diagnostics.end(),
                                                [p](const Diagnostic& d) { return d.problem == p; }));
}

SizeVerdict check_size(const SourceTable& table, SizeLimits limits) {
  if (limits.max_rows == 0 || limits.max_cols == 0)
    throw std::invalid_argument("size limits must be positive");
  Grid grid(table);
  SizeVerdict v;
  v.rows = table.rows.size();
  v.cols = grid.cols();
  v.limits = limits;
  v.manageable = v.rows <= limits.max_rows && v.cols <= limits.max_cols;
  return v;
}

// ---------------------------------------------------------------------------
// leader names

namespace {

bool is_word_byte(char c) {
  return text::is_alpha(c) || text::is_digit(c) || static_cast<unsigned char>(c) >= 0x80;
}

bool upper_start(std::string_view w) {
  if (w.empty()) return false;
  auto u = static_cast<unsigned char>(w[0]);
  return text::is_upper(w[0]) || (u >= 0xC3 && u != 0xE2 && u < 0xF8);
}

// "S." or "J.R."
bool is_initials(std::string_view w) {
  if (w.size() < 2 || w.size() % 2) return false;
  for (std::size_t i = 0; i < w.size(); i += 2)
    if (!text::is_upper(w[i]) || w[i + 1] != '.') return false;
  return true;
}

bool has_lower_or_nonascii(std::string_view w) {
  for (char c : w)
    if (text::is_lower(c) || static_cast<unsigned char>(c) >= 0x80) return true;
  return false;
}

bool contains_lower(const std::vector<std::string>& words, std::string_view w) {
  std::string lw = text::lower(w);
  return std::find(words.begin(), words.end(), lw) != words.end();
}

struct NameToken {
  std::string core;
  bool initial = false;
};

struct Match {
  std::size_t start, end;
  std::string name;
};

constexpr std::string_view kLeadPunct = "([\"'";
constexpr std::string_view kTrailPunct = ",;:)]\"'!?";
const std::vector<std::string> kNameAbbrev = {"jr", "sr", "ii", "iii", "iv"};

std::vector<Match> lexicon_matches(std::string_view s, const NameLexicon& lex) {
  std::vector<Match> out;
  for (const auto& raw : lex.names) {
    std::string name = text::collapse(raw);
    if (name.empty()) continue;
    for (auto pos = s.find(name); pos != std::string_view::npos; pos = s.find(name, pos + 1)) {
      std::size_t end = pos + name.size();
      if (pos > 0 && is_word_byte(s[pos - 1])) continue;
      if (end < s.size() && is_word_byte(s[end])) continue;
      out.push_back({pos, end, name});
    }
  }
  std::sort(out.begin(), out.end(), [](const Match& a, const Match& b) {
    return a.start != b.start ? a.start < b.start : a.end > b.end;
  });
  std::vector<Match> kept;
  for (auto& m : out)
    if (kept.empty() || m.start >= kept.back().end) kept.push_back(std::move(m));
  return kept;
}

}  // namespace

std::vector<std::string> find_leader_names(std::string_view s, const NameLexicon& lex) {
  std::vector<Match> matches = lexicon_matches(s, lex);
  std::vector<Match> pattern;

  std::vector<NameToken> run;
  std::size_t run_start = 0, run_end = 0;
  auto flush = [&] {
    std::size_t words = static_cast<std::size_t>(
        std::count_if(run.begin(), run.end(), [](const NameToken& t) { return !t.initial; }));
    if (run.size() >= 2 && run.size() <= 5 && words >= 1 && !run.back().initial) {
      std::string name;
      for (const auto& t : run) name += (name.empty() ? "" : " ") + t.core;
      pattern.push_back({run_start, run_end, name});
    }
    run.clear();
  };

  std::size_t lex_i = 0;
  for (std::string_view tok : text::split_ws(s)) {
    std::size_t off = static_cast<std::size_t>(tok.data() - s.data());
    std::size_t end = off + tok.size();
    while (lex_i < matches.size() && matches[lex_i].end <= off) ++lex_i;
    if (lex_i < matches.size() && matches[lex_i].start < end) {
      flush();
      continue;
    }

    std::string_view core = tok;
    bool lead = false, trail_break = false;
    while (!core.empty() && kLeadPunct.find(core.front()) != std::string_view::npos) {
      core.remove_prefix(1);
      lead = true;
    }
    while (!core.empty() && kTrailPunct.find(core.back()) != std::string_view::npos) {
      core.remove_suffix(1);
      trail_break = true;
    }
    if (lead) flush();

    NameToken nt;
    bool sentence_end = false;
    bool ok = upper_start(core);
    if (ok && is_initials(core)) {
      nt.initial = true;
    } else if (ok) {
      std::string_view word = core;
      if (word.back() == '.') {
        word.remove_suffix(1);
        if (!contains_lower(kNameAbbrev, word)) {
          sentence_end = true;
          core = word;
        }
      }
      // "I.Crawford" is an initial glued to a surname
      std::string_view base = word;
      if (base.size() > 2 && text::is_upper(base[0]) && base[1] == '.') base.remove_prefix(2);
      ok = !base.empty() && has_lower_or_nonascii(base) &&
           std::none_of(base.begin(), base.end(), text::is_digit) &&
           !contains_lower(lex.stopwords, base) && !contains_lower(lex.stopwords, word);
      if (ok && base.size() > 2 && base.substr(base.size() - 2) == "'s") ok = false;
    }
    if (!ok) {
      flush();
      continue;
    }
    nt.core = std::string(core);
    if (run.empty()) run_start = off;
    run_end = end;
    run.push_back(std::move(nt));
    if (trail_break || sentence_end) flush();
  }
  flush();

  matches.insert(matches.end(), pattern.begin(), pattern.end());
  std::stable_sort(matches.begin(), matches.end(),
                   [](const Match& a, const Match& b) { return a.start < b.start; });
  std::vector<std::string> out;
  for (auto& m : matches) out.push_back(std::move(m.name));
  return out;
}

LeaderOrderReport identify_leader_order(const SourceTable& table, std::string_view title,
                                        const NameLexicon& lexicon) {
  LeaderOrderReport report;
  auto in_title = find_leader_names(title, lexicon);
  std::vector<std::string> from_rows;
  for (const auto& row : table.rows)
    for (const auto& cell : row)
      for (auto& n : find_leader_names(cell.value, lexicon)) from_rows.push_back(std::move(n));

  if (!in_title.empty()) {
    report.scenario = LeaderScenario::TitleLeaderFound;
    report.leader_from_title = in_title.front();
    report.recorded_data.push_back(in_title.front());
    report.recorded_data.insert(report.recorded_data.end(), from_rows.begin(), from_rows.end());
  } else if (!from_rows.empty()) {
    report.scenario = LeaderScenario::LeaderNotInTitle;
    report.recorded_data.emplace_back(kNotInTitle);
    report.recorded_data.insert(report.recorded_data.end(), from_rows.begin(), from_rows.end());
  } else {
    report.scenario = LeaderScenario::LeaderNotInTable;
    report.recorded_data.emplace_back(kNotInTable);
  }
  return report;
}

// ---------------------------------------------------------------------------
// non-atomic cells

std::vector<AtomicRecord> parse_records(std::string_view value, const SplitConfig& config) {
  enum Stage { None, Name, Qualified, Numbered };
  std::vector<AtomicRecord> records;
  AtomicRecord cur;
  Stage stage = None;
  auto finish = [&] {
    if (stage != None) records.push_back(std::move(cur));
    cur = {};
    stage = None;
  };
  static const std::vector<std::string> separators = {",", ";", "and", "&", "/"};

  auto tokens = text::split_ws(value);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    std::string_view tok = tokens[i];
    if (std::find(separators.begin(), separators.end(), tok) != separators.end()) {
      if (stage == Qualified || stage == Numbered) {
        finish();
        continue;
      }
      if (stage == Name && tok != "," && tok != ";" && tok != "/") {
        cur.name += " " + std::string(tok);
        continue;
      }
      return {};
    }
    if (tok.front() == '(') {
      if (stage != Name) return {};
      std::string qual;
      std::size_t j = i;
      bool closed = false, sep = false;
      for (; j < tokens.size(); ++j) {
        std::string_view t = tokens[j];
        if (j == i) t.remove_prefix(1);
        if (!t.empty() && (t.back() == ',' || t.back() == ';')) {
          t.remove_suffix(1);
          sep = true;
        }
        if (!t.empty() && t.back() == ')') {
          t.remove_suffix(1);
          closed = true;
        } else if (sep) {
          return {};
        }
        if (!t.empty()) qual += (qual.empty() ? "" : " ") + std::string(t);
        if (closed) break;
      }
      if (!closed || qual.empty()) return {};
      i = j;
      if (contains_lower(config.marker_qualifiers, qual)) {
        cur.name += " (" + qual + ")";
      } else {
        cur.qualifier = qual;
        stage = Qualified;
      }
      if (sep) {
        if (stage == Name) return {};
        finish();
      }
      continue;
    }
    bool sep = false;
    if (tok.size() > 1 && (tok.back() == ',' || tok.back() == ';')) {
      tok.remove_suffix(1);
      sep = true;
    }
    if (text::is_number(tok)) {
      if (stage != Name && stage != Qualified) return {};
      cur.number = std::string(tok);
      stage = Numbered;
    } else {
      if (stage == Qualified || stage == Numbered) finish();
      if (stage == None) {
        if (!upper_start(tok)) return {};
        cur.name = std::string(tok);
        stage = Name;
      } else {
        cur.name += " " + std::string(tok);
      }
    }
    if (sep) finish();
  }
  finish();
  return records;
}

std::vector<AtomicRecord> detect_non_atomic(const Cell& cell, const SplitConfig& config) {
  auto records = parse_records(cell.value, config);
  if (records.empty()) return {};
  bool all_fielded = std::all_of(records.begin(), records.end(),
                                 [](const AtomicRecord& r) { return r.field_count() >= 2; });
  if (!all_fielded) return {};
  if (records.size() >= 2) return records;
  const AtomicRecord& r = records.front();
  // a bare integer after a word ("District 9") is not evidence of packing
  bool numeric_evidence = r.number.find_first_of("%.,") != std::string::npos;
  if (!r.qualifier.empty() || numeric_evidence) return records;
  return {};
}

std::vector<Diagnostic> detect_non_atomic_cells(const SourceTable& table, const SplitConfig& config) {
  detail::Layout layout(table);
  std::vector<Diagnostic> out;
  for (std::size_t r = 0; r < table.rows.size(); ++r)
    for (CellRef ref : layout.data_cells_in_row(r)) {
      auto records = detect_non_atomic(cell_at(table, ref), config);
      if (records.empty()) continue;
      Diagnostic d;
      d.location = ref;
      if (records.size() >= 2) {
        d.problem = Problem::MultiRecordNonAtomic;
        d.message = "cell packs " + std::to_string(records.size()) + " records";
      } else {
        d.problem = Problem::SingleRecordNonAtomic;
        d.message = "cell packs " + std::to_string(records.front().field_count()) +
                    " fields into one value";
      }
      for (const auto& rec : records) d.evidence.push_back(rec.display());
      out.push_back(std::move(d));
    }
  return out;
}

// ---------------------------------------------------------------------------
// insufficient input

namespace detail {

std::vector<MissingHighlight> missing_highlights(const Layout& layout, const RoleLexicon& roles) {
  const SourceTable& table = layout.table();
  std::vector<MissingHighlight> out;
  for (std::size_t r = layout.header_rows(); r < table.rows.size(); ++r) {
    if (layout.is_band(r)) continue;
    std::vector<CellRef> role, measure;
    std::vector<bool> percent_tier;
    for (CellRef ref : layout.data_cells_in_row(r)) {
      std::string value = text::collapse(cell_at(table, ref).value);
      if (value.empty()) continue;
      std::string label = layout.label_text(ref);
      bool numeric = text::is_number(value);
      bool pct_value = numeric && value.back() == '%';
      if ((numeric && has_word(label, roles.measure)) || pct_value) {
        measure.push_back(ref);
        percent_tier.push_back(pct_value || has_word(label, roles.percent));
      } else if (has_word(label, roles.identity)) {
        role.push_back(ref);
      }
    }
    std::vector<CellRef> added;
    auto lit = [&](CellRef ref) {
      return cell_at(table, ref).highlighted ||
             std::find(added.begin(), added.end(), ref) != added.end();
    };
    bool role_lit = std::any_of(role.begin(), role.end(), lit);
    bool measure_lit = std::any_of(measure.begin(), measure.end(), lit);
    if (role_lit && !measure_lit && !measure.empty()) {
      std::size_t pick = 0;
      for (std::size_t i = 0; i < measure.size(); ++i)
        if (percent_tier[i]) {
          pick = i;
          break;
        }
      added.push_back(measure[pick]);
      out.push_back({measure[pick], "highlighted identity cell has no highlighted measure"});
      measure_lit = true;
    }
    if (measure_lit)
      for (CellRef ref : role)
        if (!lit(ref)) {
          added.push_back(ref);
          out.push_back({ref, "highlighted measure lacks its identity cell"});
        }
  }
  std::sort(out.begin(), out.end(),
            [](const MissingHighlight& a, const MissingHighlight& b) { return a.cell < b.cell; });
  return out;
}

std::optional<std::string> bare_symbol(std::string_view header, const SymbolRules& rules) {
  std::string v = text::collapse(header);
  std::optional<std::string> found;
  for (const auto& sym : rules.symbols) {
    if (sym.empty()) continue;
    auto pos = v.find(sym);
    if (pos == std::string::npos) continue;
    if (!found || sym.size() > found->size()) found = sym;
  }
  if (!found) return std::nullopt;
  std::string rest = v;
  for (const auto& sym : rules.symbols)
    for (auto pos = sym.empty() ? std::string::npos : rest.find(sym); pos != std::string::npos;
         pos = rest.find(sym))
      rest.erase(pos, sym.size());
  if (text::has_alpha(rest)) return std::nullopt;
  return found;
}

const std::string* rename_for(std::string_view header, const SymbolRules& rules) {
  std::string v = text::collapse(header);
  for (const auto& [from, to] : rules.header_renames)
    if (text::iequals(v, text::collapse(from))) return &to;
  return nullptr;
}

const std::string* expansion_for(std::string_view value, const SymbolRules& rules) {
  std::string v = text::collapse(value);
  auto it = rules.party_abbreviations.find(v);
  return it == rules.party_abbreviations.end() ? nullptr : &it->second;
}

}  // namespace detail

std::vector<Diagnostic> detect_insufficient(const SourceTable& table, const RoleLexicon& roles) {
  detail::Layout layout(table);
  std::vector<Diagnostic> out;
  for (const auto& m : detail::missing_highlights(layout, roles)) {
    const Cell& c = cell_at(table, m.cell);
    out.push_back({Problem::InsufficientInput, m.cell, m.reason,
                   {text::collapse(c.value), layout.label_text(m.cell)}});
  }
  return out;
}

std::vector<Diagnostic> detect_symbol_headers(const SourceTable& table, const SymbolRules& rules) {
  std::vector<Diagnostic> out;
  for (std::size_t r = 0; r < table.rows.size(); ++r)
    for (std::size_t i = 0; i < table.rows[r].size(); ++i) {
      const Cell& c = table.rows[r][i];
      std::string v = text::collapse(c.value);
      if (v.empty()) continue;
      CellRef ref{r, i};
      if (c.is_header) {
        if (auto sym = detail::bare_symbol(v, rules)) {
          out.push_back({Problem::PoliticsSymbolHeader, ref,
                         "header is a bare symbol without semantic wording", {v, *sym}});
          continue;
        }
        if (const auto* to = detail::rename_for(v, rules)) {
          out.push_back({Problem::PoliticsSymbolHeader, ref, "header has a preferred name",
                         {v, *to}});
          continue;
        }
      }
      if (const auto* full = detail::expansion_for(v, rules))
        out.push_back({Problem::PoliticsSymbolHeader, ref, "party abbreviation", {v, *full}});
    }
  return out;
}

// ---------------------------------------------------------------------------
// complex cells and nested headers

namespace {

bool sentence_period(std::string_view word, const ComplexConfig& config) {
  while (!word.empty() && kTrailPunct.find(word.back()) != std::string_view::npos)
    word.remove_suffix(1);
  if (word.size() < 2 || word.back() != '.') return false;
  std::string_view base = word.substr(0, word.size() - 1);
  if (base.find('.') != std::string_view::npos) return false;  // U.S. and the like
  if (base.size() == 1) return false;                          // initial
  return !contains_lower(config.abbreviations, base);
}

std::string bare_word(std::string_view w) {
  std::string out;
  for (char c : text::lower(w))
    if (text::is_alpha(c) || c == '-') out.push_back(c);
  return out;
}

}  // namespace

std::vector<Diagnostic> detect_complex(const SourceTable& table, const ComplexConfig& config) {
  std::vector<Diagnostic> out;
  for (std::size_t r = 0; r < table.rows.size(); ++r)
    for (std::size_t i = 0; i < table.rows[r].size(); ++i) {
      const Cell& c = table.rows[r][i];
      if (c.is_header) continue;
      auto words = text::split_ws(c.value);
      if (words.size() < config.min_words) continue;
      std::vector<std::string> evidence;
      for (auto w : words)
        if (sentence_period(w, config) ||
            std::find(config.verbs.begin(), config.verbs.end(), bare_word(w)) != config.verbs.end())
          evidence.emplace_back(w);
      if (evidence.empty()) continue;
      out.push_back({Problem::ComplexTableType, CellRef{r, i},
                     "cell states results in sentence form (" + std::to_string(words.size()) +
                         " words)",
                     std::move(evidence)});
    }
  return out;
}

std::vector<Diagnostic> detect_nested_headers(const SourceTable& table) {
  detail::Layout layout(table);
  std::vector<Diagnostic> out;
  if (layout.multi_header_rows() >= 2)
    out.push_back({Problem::LongerTable, std::nullopt,
                   "column headers are nested over " + std::to_string(layout.multi_header_rows()) +
                       " rows",
                   {}});
  for (std::size_t r : layout.bands())
    out.push_back({Problem::LongerTable, CellRef{r, 0}, "band row interleaved between data rows",
                   {text::collapse(table.rows[r][0].value)}});
  return out;
}

DiagnosticReport lint(const SourceTable& table, const LintConfig& config) {
  require_valid(table);
  DiagnosticReport report;
  report.size = check_size(table, config.size);
  report.leaders = identify_leader_order(table, table.page_title, config.names);

  auto& d = report.diagnostics;
  if (!report.size.manageable)
    d.push_back({Problem::LongerTable, std::nullopt,
                 "table is " + std::to_string(report.size.rows) + "x" +
                     std::to_string(report.size.cols) + ", limit " +
                     std::to_string(config.size.max_rows) + "x" +
                     std::to_string(config.size.max_cols),
                 {}});
  if (report.leaders.scenario == LeaderScenario::TitleLeaderFound) {
    const std::string& lead = *report.leaders.leader_from_title;
    bool other = std::any_of(report.leaders.recorded_data.begin() + 1,
                             report.leaders.recorded_data.end(),
                             [&](const std::string& n) { return n != lead; });
    if (other)
      d.push_back({Problem::LeaderNameListHazard, std::nullopt,
                   "title names one leader while the rows list several", report.leaders.recorded_data});
  }
  auto append = [&](std::vector<Diagnostic> more) {
    d.insert(d.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
  };
  append(detect_non_atomic_cells(table, config.split));
  append(detect_complex(table, config.complex));
  append(detect_insufficient(table, config.roles));
  append(detect_nested_headers(table));
  append(detect_symbol_headers(table, config.symbols));

  std::stable_sort(d.begin(), d.end(), [](const Diagnostic& a, const Diagnostic& b) {
    if (a.location.has_value() != b.location.has_value()) return !a.location.has_value();
    if (a.location && *a.location != *b.location) return *a.location < *b.location;
    if (a.problem != b.problem) return a.problem < b.problem;
    return a.message < b.message;
  });
  return report;
}

}  // namespace tabfix
