#include "tabfix/table.hpp"

#include <algorithm>

#include "tabfix/text.hpp"

namespace tabfix {

Grid::Grid(const SourceTable& table) : rows_(table.rows.size()) {
  occ_.assign(rows_, {});
  start_.resize(rows_);
  widths_.assign(rows_, 0);

  auto ensure_cols = [&](std::size_t n) {
    if (n <= cols_) return;
    cols_ = n;
    for (auto& r : occ_) r.resize(cols_);
  };

  for (std::size_t r = 0; r < rows_; ++r) {
    const Row& row = table.rows[r];
    start_[r].resize(row.size());
    std::size_t c = 0;
    for (std::size_t i = 0; i < row.size(); ++i) {
      const Cell& cell = row[i];
      CellRef ref{r, i};
      while (c < cols_ && occ_[r][c]) ++c;
      start_[r][i] = c;
      std::size_t cs = cell.col_span < 1 ? 1 : static_cast<std::size_t>(cell.col_span);
      std::size_t rs = cell.row_span < 1 ? 1 : static_cast<std::size_t>(cell.row_span);
      if (cell.col_span < 1 || cell.row_span < 1)
        conflicts_.push_back({ref, "span must be at least 1"});
      if (r + rs > rows_) {
        conflicts_.push_back({ref, "row_span extends past the last row"});
        rs = rows_ - r;
      }
      ensure_cols(c + cs);
      bool clash = false;
      for (std::size_t dr = 0; dr < rs; ++dr)
        for (std::size_t dc = 0; dc < cs; ++dc) {
          auto& slot = occ_[r + dr][c + dc];
          if (slot) {
            clash = true;
            continue;
          }
          slot = ref;
        }
      if (clash) conflicts_.push_back({ref, "span overlaps another cell"});
      c += cs;
    }
  }
  for (std::size_t r = 0; r < rows_; ++r)
    widths_[r] = static_cast<std::size_t>(
        std::count_if(occ_[r].begin(), occ_[r].end(), [](const auto& s) { return s.has_value(); }));
}

std::optional<CellRef> Grid::at(std::size_t row, std::size_t col) const {
  if (row >= rows_ || col >= cols_) return std::nullopt;
  return occ_[row][col];
}

std::string_view violation_name(ViolationCode code) {
  switch (code) {
    case ViolationCode::RaggedGrid: return "RaggedGrid";
    case ViolationCode::SpanOverflow: return "SpanOverflow";
    case ViolationCode::EmptyValue: return "EmptyValue";
    case ViolationCode::NoHeaders: return "NoHeaders";
    case ViolationCode::UnbalancedTags: return "UnbalancedTags";
  }
  return "?";
}

bool ValidationReport::blocking() const noexcept {
  return std::any_of(violations.begin(), violations.end(),
                     [](const Violation& v) { return v.code != ViolationCode::NoHeaders; });
}

namespace {

// Offset of the first "<name>" or "</name>" in s; such text cannot survive linearization.
std::optional<std::size_t> tag_like(std::string_view s) {
  for (std::size_t p = s.find('<'); p != std::string_view::npos; p = s.find('<', p + 1)) {
    std::size_t i = p + 1;
    if (i < s.size() && s[i] == '/') ++i;
    std::size_t start = i;
    while (i < s.size() && (text::is_alpha(s[i]) || s[i] == '_')) ++i;
    if (i > start && i < s.size() && s[i] == '>') return p;
  }
  return std::nullopt;
}

}  // namespace

ValidationReport validate(const SourceTable& table) {
  ValidationReport report;
  auto check_tags = [&](std::string_view s, std::optional<std::size_t> row, std::optional<std::size_t> col,
                        const char* what) {
    if (auto off = tag_like(s))
      report.violations.push_back({ViolationCode::UnbalancedTags, row, col, off,
                                   std::string(what) + " contains tag-like text"});
  };
  check_tags(table.page_title, std::nullopt, std::nullopt, "page title");
  check_tags(table.section_title, std::nullopt, std::nullopt, "section title");
  for (std::size_t r = 0; r < table.rows.size(); ++r)
    for (std::size_t i = 0; i < table.rows[r].size(); ++i)
      check_tags(table.rows[r][i].value, r, i, "cell value");
  Grid grid(table);
  for (const auto& c : grid.conflicts())
    report.violations.push_back(
        {ViolationCode::SpanOverflow, c.cell.row, c.cell.index, std::nullopt, c.reason});

  bool any_header = false;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    if (table.rows[r].empty())
      report.violations.push_back(
          {ViolationCode::EmptyValue, r, std::nullopt, std::nullopt, "row has no cells"});
    for (const Cell& cell : table.rows[r]) any_header = any_header || cell.is_header;
  }
  for (std::size_t r = 0; r < grid.rows(); ++r) {
    if (grid.row_width(r) != grid.cols())
      report.violations.push_back(
          {ViolationCode::RaggedGrid, r, std::nullopt, std::nullopt,
           "row covers " + std::to_string(grid.row_width(r)) + " of " +
               std::to_string(grid.cols()) + " columns"});
  }
  if (!table.rows.empty() && !any_header)
    report.violations.push_back(
        {ViolationCode::NoHeaders, std::nullopt, std::nullopt, std::nullopt, "table has no header cells"});
  return report;
}

namespace {
std::string summarize(const ValidationReport& report) {
  std::string msg = "invalid table";
  for (const auto& v : report.violations) {
    if (v.code == ViolationCode::NoHeaders) continue;
    msg += "; ";
    msg += violation_name(v.code);
    if (v.row) msg += " at row " + std::to_string(*v.row);
    msg += ": " + v.message;
  }
  return msg;
}
}  // namespace

InvalidTable::InvalidTable(ValidationReport report)
    : Error(summarize(report)), report_(std::move(report)) {}

void require_valid(const SourceTable& table) {
  ValidationReport report = validate(table);
  if (report.blocking()) throw InvalidTable(std::move(report));
}

const Cell& cell_at(const SourceTable& table, CellRef ref) {
  return table.rows.at(ref.row).at(ref.index);
}
Cell& cell_at(SourceTable& table, CellRef ref) { return table.rows.at(ref.row).at(ref.index); }

std::vector<CellRef> column_header_cells(const SourceTable& table, const Grid& grid, CellRef ref) {
  const Cell& cell = cell_at(table, ref);
  std::size_t c0 = grid.start_col(ref);
  std::size_t c1 = c0 + static_cast<std::size_t>(std::max(cell.col_span, 1));
  std::vector<CellRef> out;
  for (std::size_t r = 0; r < ref.row; ++r)
    for (std::size_t c = c0; c < c1 && c < grid.cols(); ++c) {
      auto h = grid.at(r, c);
      if (!h || h->row >= ref.row || !cell_at(table, *h).is_header) continue;
      if (std::find(out.begin(), out.end(), *h) == out.end()) out.push_back(*h);
    }
  return out;
}

std::vector<CellRef> row_header_cells(const SourceTable& table, const Grid& grid, CellRef ref) {
  const Cell& cell = cell_at(table, ref);
  std::size_t c0 = grid.start_col(ref);
  std::size_t r1 = ref.row + static_cast<std::size_t>(std::max(cell.row_span, 1));
  std::vector<CellRef> out;
  for (std::size_t c = 0; c < c0; ++c)
    for (std::size_t r = ref.row; r < r1 && r < grid.rows(); ++r) {
      auto h = grid.at(r, c);
      if (!h || !cell_at(table, *h).is_header) continue;
      if (std::find(out.begin(), out.end(), *h) == out.end()) out.push_back(*h);
    }
  return out;
}

}  // namespace tabfix
