#include "tabfix/correction.hpp"

#include <algorithm>
#include <cstdint>
#include <set>

#include "layout.hpp"
#include "tabfix/text.hpp"

namespace tabfix {

std::string_view edit_kind_name(EditKind kind) {
  switch (kind) {
    case EditKind::SplitCell: return "SplitCell";
    case EditKind::AddColumn: return "AddColumn";
    case EditKind::RenameHeader: return "RenameHeader";
    case EditKind::FlattenBand: return "FlattenBand";
    case EditKind::AddHighlight: return "AddHighlight";
    case EditKind::ReplaceSymbol: return "ReplaceSymbol";
    case EditKind::ExpandAbbreviation: return "ExpandAbbreviation";
    case EditKind::TruncateRows: return "TruncateRows";
  }
  return "?";
}

std::optional<EditKind> parse_edit_kind(std::string_view s) {
  for (auto k : {EditKind::SplitCell, EditKind::AddColumn, EditKind::RenameHeader,
                 EditKind::FlattenBand, EditKind::AddHighlight, EditKind::ReplaceSymbol,
                 EditKind::ExpandAbbreviation, EditKind::TruncateRows})
    if (edit_kind_name(k) == s) return k;
  return std::nullopt;
}

namespace {

[[noreturn]] void replay_fail(const Edit& e, const std::string& why) {
  std::string where;
  if (e.row) where += " row " + std::to_string(*e.row);
  if (e.col) where += " col " + std::to_string(*e.col);
  throw ReplayError(std::string(edit_kind_name(e.kind)) + where + ": " + why);
}

bool is_full_width(const SourceTable& t, const Grid& g, std::size_t r) {
  if (r >= t.rows.size() || t.rows[r].size() != 1 || g.cols() < 2) return false;
  const Cell& c = t.rows[r][0];
  return c.row_span == 1 && static_cast<std::size_t>(c.col_span) == g.cols();
}

std::size_t header_rows(const SourceTable& t) { return detail::Layout(t).header_rows(); }

// Insert an empty column right of grid column `after`; the header goes into the
// bottom header row so it sits directly above the new data cells.
void insert_column(SourceTable& t, std::size_t after, const std::string& header) {
  Grid g(t);
  std::size_t h = header_rows(t);
  std::vector<std::pair<std::size_t, std::pair<std::size_t, Cell>>> inserts;  // row, (index, cell)
  std::set<CellRef> widen;
  std::size_t covered = 0;  // rows below this already hold the new header cell

  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    if (r < covered) continue;
    auto left = g.at(r, after);
    auto right = g.at(r, after + 1);
    if (!left) continue;
    if (right && *left == *right) {
      widen.insert(*left);
      continue;
    }
    if (left->row < r) {
      if (r < h) continue;  // the origin row handles the header block
    } else if (is_full_width(t, g, r)) {
      widen.insert(*left);
      continue;
    }
    std::size_t idx = 0;
    while (idx < t.rows[r].size() && g.start_col({r, idx}) <= after) ++idx;
    if (r < h) {
      const Cell& lc = cell_at(t, *left);
      std::size_t bottom = r + static_cast<std::size_t>(lc.row_span) - 1;
      if (bottom + 1 < h) {
        widen.insert(*left);
        continue;
      }
      Cell hc;
      hc.value = header;
      hc.is_header = true;
      hc.row_span = lc.row_span;
      covered = r + static_cast<std::size_t>(lc.row_span);
      inserts.push_back({r, {idx, hc}});
    } else {
      inserts.push_back({r, {idx, Cell{}}});
    }
  }
  for (CellRef ref : widen) cell_at(t, ref).col_span += 1;
  for (auto& [r, ins] : inserts)
    t.rows[r].insert(t.rows[r].begin() + static_cast<std::ptrdiff_t>(ins.first), ins.second);
}

void remove_row(SourceTable& t, std::size_t r) {
  Grid g(t);
  std::set<CellRef> shrink;
  for (std::size_t c = 0; c < g.cols(); ++c)
    if (auto ref = g.at(r, c); ref && ref->row < r) shrink.insert(*ref);
  for (CellRef ref : shrink) cell_at(t, ref).row_span -= 1;

  std::vector<std::pair<std::size_t, Cell>> moved;
  for (std::size_t i = 0; i < t.rows[r].size(); ++i) {
    Cell c = t.rows[r][i];
    if (c.row_span > 1) {
      c.row_span -= 1;
      moved.push_back({g.start_col({r, i}), std::move(c)});
    }
  }
  if (!moved.empty() && r + 1 < t.rows.size()) {
    std::vector<std::pair<std::size_t, Cell>> merged;
    for (std::size_t i = 0; i < t.rows[r + 1].size(); ++i)
      merged.push_back({g.start_col({r + 1, i}), t.rows[r + 1][i]});
    for (auto& m : moved) merged.push_back(std::move(m));
    std::stable_sort(merged.begin(), merged.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    Row next;
    for (auto& m : merged) next.push_back(std::move(m.second));
    t.rows[r + 1] = std::move(next);
  }
  t.rows.erase(t.rows.begin() + static_cast<std::ptrdiff_t>(r));
}

bool row_has_vertical_span(const SourceTable& t, const Grid& g, std::size_t r) {
  for (const Cell& c : t.rows[r])
    if (c.row_span != 1) return true;
  for (std::size_t c = 0; c < g.cols(); ++c)
    if (auto ref = g.at(r, c); ref && ref->row != r) return true;
  return false;
}

std::vector<std::string> split_lines(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string row_text(const Row& row) {
  std::vector<std::string> parts;
  for (const Cell& c : row) parts.push_back(text::collapse(c.value));
  return "[" + text::join(parts, " | ") + "]";
}

void apply_split(SourceTable& t, const Edit& e) {
  if (!e.row || !e.col) replay_fail(e, "missing coordinates");
  std::size_t r = *e.row, idx = *e.col;
  if (r >= t.rows.size() || idx >= t.rows[r].size()) replay_fail(e, "no such cell");
  if (t.rows[r][idx].value != e.before) replay_fail(e, "cell text differs from edit");
  Grid g(t);
  if (row_has_vertical_span(t, g, r)) replay_fail(e, "row is part of a vertical span");

  std::vector<std::vector<std::string>> lines;
  for (const auto& line : split_lines(e.after, '\n')) lines.push_back(split_lines(line, '\t'));
  std::size_t width = lines.front().size();
  for (const auto& l : lines)
    if (l.size() != width) replay_fail(e, "records have different field counts");

  std::size_t c0 = g.start_col({r, idx});
  std::vector<std::size_t> targets;  // cell indices in row r for each field
  for (std::size_t j = 0; j < width; ++j) {
    auto ref = g.at(r, c0 + j);
    if (!ref || ref->row != r) replay_fail(e, "missing target column");
    const Cell& c = cell_at(t, *ref);
    if (c.col_span != 1) replay_fail(e, "target column cell spans columns");
    targets.push_back(ref->index);
  }
  bool lit = t.rows[r][idx].highlighted;
  Row base = t.rows[r];
  for (std::size_t j = 1; j < width; ++j) base[targets[j]].highlighted = lit;

  std::vector<Row> produced;
  for (const auto& fields : lines) {
    Row row = base;
    for (std::size_t j = 0; j < width; ++j) row[targets[j]].value = fields[j];
    produced.push_back(std::move(row));
  }
  t.rows[r] = std::move(produced.front());
  t.rows.insert(t.rows.begin() + static_cast<std::ptrdiff_t>(r + 1),
                std::make_move_iterator(produced.begin() + 1),
                std::make_move_iterator(produced.end()));
}

void apply_flatten(SourceTable& t, const Edit& e) {
  if (!e.row || !e.col) replay_fail(e, "missing coordinates");
  std::size_t b = *e.row;
  Grid g(t);
  if (!is_full_width(t, g, b)) replay_fail(e, "row is not a full-width band");
  if (t.rows[b][0].value != e.before) replay_fail(e, "band text differs from edit");
  if (*e.col >= g.cols()) replay_fail(e, "no such column");
  for (std::size_t r = b + 1; r < t.rows.size() && !is_full_width(t, g, r); ++r) {
    auto ref = g.at(r, *e.col);
    if (ref && ref->row == r) cell_at(t, *ref).value = e.before;
  }
  remove_row(t, b);
}

Cell& edit_cell(SourceTable& t, const Edit& e) {
  if (!e.row || !e.col) replay_fail(e, "missing coordinates");
  if (*e.row >= t.rows.size() || *e.col >= t.rows[*e.row].size()) replay_fail(e, "no such cell");
  return t.rows[*e.row][*e.col];
}

}  // namespace

void apply_edit(SourceTable& t, const Edit& e) {
  switch (e.kind) {
    case EditKind::SplitCell:
      apply_split(t, e);
      return;
    case EditKind::AddColumn: {
      if (!e.col) replay_fail(e, "missing column");
      Grid g(t);
      if (*e.col >= g.cols()) replay_fail(e, "no such column");
      insert_column(t, *e.col, e.after);
      return;
    }
    case EditKind::FlattenBand:
      apply_flatten(t, e);
      return;
    case EditKind::TruncateRows:
      if (!e.row || *e.row >= t.rows.size()) replay_fail(e, "no such row");
      if (row_text(t.rows[*e.row]) != e.before) replay_fail(e, "row text differs from edit");
      remove_row(t, *e.row);
      return;
    case EditKind::AddHighlight: {
      Cell& c = edit_cell(t, e);
      if (c.highlighted) replay_fail(e, "cell already highlighted");
      c.highlighted = true;
      return;
    }
    case EditKind::RenameHeader:
    case EditKind::ReplaceSymbol:
    case EditKind::ExpandAbbreviation: {
      Cell& c = edit_cell(t, e);
      if (c.value != e.before) replay_fail(e, "cell text differs from edit");
      c.value = e.after;
      return;
    }
  }
}

SourceTable replay_edits(SourceTable table, std::span<const Edit> edits) {
  for (const auto& e : edits) apply_edit(table, e);
  return table;
}

namespace {

constexpr int kMaxPasses = 4;

void push(StepResult& res, Edit e) {
  apply_edit(res.table, e);
  res.edits.push_back(std::move(e));
  res.corrections_made = true;
}

}  // namespace

StepResult split_non_atomic(SourceTable table, const SplitConfig& config) {
  require_valid(table);
  StepResult res{std::move(table), false, {}};
  std::size_t limit = SIZE_MAX;

  struct Hit {
    CellRef ref;
    std::vector<AtomicRecord> records;
  };
  for (;;) {
    detail::Layout layout(res.table);
    const Grid& g = layout.grid();
    std::vector<Hit> hits;
    std::size_t col = 0;
    for (std::size_t r = 0; r < res.table.rows.size(); ++r) {
      if (row_has_vertical_span(res.table, g, r)) continue;
      for (CellRef ref : layout.data_cells_in_row(r)) {
        const Cell& c = cell_at(res.table, ref);
        std::size_t sc = g.start_col(ref);
        if (c.col_span != 1 || sc >= limit) continue;
        auto records = detect_non_atomic(c, config);
        if (records.empty()) continue;
        if (hits.empty() || sc > col) {
          hits.clear();
          col = sc;
        }
        if (sc == col) hits.push_back({ref, std::move(records)});
      }
    }
    if (hits.empty()) break;
    limit = col;

    bool has_q = false, has_n = false;
    for (const auto& h : hits)
      for (const auto& rec : h.records) {
        has_q = has_q || !rec.qualifier.empty();
        has_n = has_n || !rec.number.empty();
      }
    std::size_t at = col;
    if (has_q) push(res, {EditKind::AddColumn, std::nullopt, at++, "", config.party_column, "split column", {}});
    if (has_n) push(res, {EditKind::AddColumn, std::nullopt, at, "", config.votes_column, "split column", {}});

    std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) { return a.ref > b.ref; });
    for (const auto& h : hits) {
      std::size_t keep = config.max_records == 0 ? h.records.size()
                                                 : std::min(config.max_records, h.records.size());
      std::vector<std::string> lines, dropped;
      for (std::size_t k = 0; k < h.records.size(); ++k) {
        const auto& rec = h.records[k];
        if (k >= keep) {
          dropped.push_back(rec.display());
          continue;
        }
        std::string line = rec.name;
        if (has_q) line += "\t" + rec.qualifier;
        if (has_n) line += "\t" + rec.number;
        lines.push_back(std::move(line));
      }
      Edit e{EditKind::SplitCell, h.ref.row, h.ref.index, cell_at(res.table, h.ref).value,
             text::join(lines, "\n"), std::to_string(h.records.size()) + " records", std::move(dropped)};
      push(res, std::move(e));
    }
  }
  return res;
}

StepResult update_headers(SourceTable table, const SymbolRules& rules) {
  require_valid(table);
  StepResult res{std::move(table), false, {}};
  for (std::size_t r = 0; r < res.table.rows.size(); ++r)
    for (std::size_t i = 0; i < res.table.rows[r].size(); ++i) {
      const Cell& c = res.table.rows[r][i];
      if (!c.is_header) continue;
      if (const auto* to = detail::rename_for(c.value, rules); to && *to != c.value)
        push(res, {EditKind::RenameHeader, r, i, c.value, *to, "header rename", {}});
    }

  std::vector<std::size_t> bands = detail::Layout(res.table).bands();
  if (bands.empty()) return res;
  std::size_t target = Grid(res.table).cols();
  push(res, {EditKind::AddColumn, std::nullopt, target - 1, "", rules.band_column, "band column", {}});
  std::size_t removed = 0;
  for (std::size_t b : bands) {
    std::size_t row = b - removed;
    push(res, {EditKind::FlattenBand, row, target, res.table.rows[row][0].value, "",
               "band row moved into column", {}});
    ++removed;
  }
  return res;
}

StepResult add_missing_highlights(SourceTable table, const RoleLexicon& roles) {
  require_valid(table);
  StepResult res{std::move(table), false, {}};
  std::vector<detail::MissingHighlight> missing;
  {
    detail::Layout layout(res.table);
    missing = detail::missing_highlights(layout, roles);
  }
  for (const auto& m : missing)
    push(res, {EditKind::AddHighlight, m.cell.row, m.cell.index, "false", "true",
               text::collapse(cell_at(res.table, m.cell).value), {}});
  return res;
}

StepResult replace_symbols(SourceTable table, const SymbolRules& rules) {
  require_valid(table);
  StepResult res{std::move(table), false, {}};
  std::vector<Edit> edits;
  {
    detail::Layout layout(res.table);
    const Grid& g = layout.grid();
    for (std::size_t r = 0; r < res.table.rows.size(); ++r)
      for (std::size_t i = 0; i < res.table.rows[r].size(); ++i) {
        const Cell& c = res.table.rows[r][i];
        if (c.is_header) {
          if (auto sym = detail::bare_symbol(c.value, rules)) {
            std::size_t c0 = g.start_col({r, i});
            bool seats = c.value.find('%') == std::string::npos;
            std::size_t seen = 0;
            for (CellRef ref : layout.data_cells_in(c0, c0 + static_cast<std::size_t>(c.col_span))) {
              if (ref.row <= r) continue;
              std::string v = text::collapse(cell_at(res.table, ref).value);
              if (v.empty()) continue;
              ++seen;
              seats = seats && text::is_integer(v);
            }
            const std::string& tmpl =
                seats && seen > 0 ? rules.seats_template : rules.percent_template;
            std::string phrase = tmpl;
            if (auto pos = phrase.find("{symbol}"); pos != std::string::npos)
              phrase.replace(pos, 8, *sym);
            if (phrase != c.value)
              edits.push_back({EditKind::ReplaceSymbol, r, i, c.value, phrase,
                               seats && seen > 0 ? "seats column" : "percent column", {}});
            continue;
          }
        }
        if (const auto* full = detail::expansion_for(c.value, rules); full && *full != c.value)
          edits.push_back({EditKind::ExpandAbbreviation, r, i, c.value, *full, "party abbreviation", {}});
      }
  }
  for (auto& e : edits) push(res, std::move(e));
  return res;
}

StepResult truncate_rows(SourceTable table, const SizeLimits& limits) {
  require_valid(table);
  StepResult res{std::move(table), false, {}};
  std::size_t n = res.table.rows.size();
  if (n <= limits.max_rows) return res;
  std::size_t h = header_rows(res.table);
  std::size_t budget = limits.max_rows > h ? limits.max_rows - h : 0;
  std::size_t head = (budget + 1) / 2, tail = budget / 2;
  std::size_t first = std::min(n, h + head);
  std::size_t last = n - std::min(n - first, tail);  // exclusive
  for (std::size_t r = last; r-- > first;)
    push(res, {EditKind::TruncateRows, r, std::nullopt, row_text(res.table.rows[r]), "",
               "row dropped by size limit", {}});
  return res;
}

CorrectionResult correct(const SourceTable& table, std::string_view title, const LintConfig& config) {
  require_valid(table);
  CorrectionResult out;
  out.leader_data = identify_leader_order(table, title, config.names);

  SourceTable work = table;
  SizeVerdict size = check_size(table, config.size);
  if (!size.manageable) {
    if (!config.truncate || size.cols > config.size.max_cols) {
      out.table = table;
      out.rejected = std::string(kRejectionMessage);
      return out;
    }
    auto t = truncate_rows(std::move(work), config.size);
    work = std::move(t.table);
    out.edits = std::move(t.edits);
  }

  auto absorb = [&](StepResult step) {
    work = std::move(step.table);
    out.edits.insert(out.edits.end(), std::make_move_iterator(step.edits.begin()),
                     std::make_move_iterator(step.edits.end()));
  };
  // A later step can expose work for an earlier one (band text holding records),
  // so repeat the sequence until a pass changes nothing.
  for (int pass = 0; pass < kMaxPasses; ++pass) {
    std::size_t before = out.edits.size();
    absorb(split_non_atomic(std::move(work), config.split));
    absorb(update_headers(std::move(work), config.symbols));
    absorb(add_missing_highlights(std::move(work), config.roles));
    absorb(replace_symbols(std::move(work), config.symbols));
    if (out.edits.size() == before) break;
  }

  out.table = std::move(work);
  out.corrections_made = !out.edits.empty();
  return out;
}

}  // namespace tabfix
