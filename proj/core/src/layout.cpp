#include "layout.hpp"

#include <algorithm>

#include "tabfix/text.hpp"

namespace tabfix::detail {

Layout::Layout(const SourceTable& table) : table_(&table), grid_(table) {
  const auto& rows = table.rows;
  std::size_t block = 0;
  while (block < rows.size() && !rows[block].empty() &&
         std::all_of(rows[block].begin(), rows[block].end(), [](const Cell& c) { return c.is_header; }))
    ++block;
  std::optional<std::size_t> last_multi;
  for (std::size_t r = 0; r < block; ++r)
    if (rows[r].size() > 1) {
      last_multi = r;
      ++multi_header_rows_;
    }
  header_rows_ = last_multi ? *last_multi + 1 : block;
  if (last_multi) {
    multi_header_rows_ = 0;
    for (std::size_t r = 0; r < header_rows_; ++r) multi_header_rows_ += rows[r].size() > 1;
  }

  for (std::size_t r = header_rows_; r + 1 < rows.size(); ++r) {
    if (!full_width(r) || full_width(r + 1)) continue;
    if (text::collapse(rows[r][0].value).empty()) continue;
    bool next_has_data = std::any_of(rows[r + 1].begin(), rows[r + 1].end(),
                                     [](const Cell& c) { return !c.is_header; });
    if (next_has_data) bands_.push_back(r);
  }
}

bool Layout::full_width(std::size_t row) const {
  if (row >= table_->rows.size() || table_->rows[row].size() != 1 || grid_.cols() < 2) return false;
  const Cell& c = table_->rows[row][0];
  return c.row_span == 1 && static_cast<std::size_t>(c.col_span) == grid_.cols();
}

bool Layout::is_band(std::size_t row) const {
  return std::binary_search(bands_.begin(), bands_.end(), row);
}

bool Layout::is_data_cell(CellRef ref) const {
  return ref.row >= header_rows_ && !is_band(ref.row) && !cell_at(*table_, ref).is_header;
}

std::optional<CellRef> Layout::label(CellRef ref) const {
  auto heads = column_header_cells(*table_, grid_, ref);
  for (auto it = heads.rbegin(); it != heads.rend(); ++it) {
    if (it->row >= header_rows_ || full_width(it->row)) continue;
    if (text::collapse(cell_at(*table_, *it).value).empty()) continue;
    return *it;
  }
  return std::nullopt;
}

std::string Layout::label_text(CellRef ref) const {
  auto l = label(ref);
  return l ? text::collapse(cell_at(*table_, *l).value) : std::string();
}

std::vector<CellRef> Layout::data_cells_in(std::size_t c0, std::size_t c1) const {
  std::vector<CellRef> out;
  for (std::size_t r = 0; r < table_->rows.size(); ++r)
    for (std::size_t i = 0; i < table_->rows[r].size(); ++i) {
      CellRef ref{r, i};
      std::size_t c = grid_.start_col(ref);
      if (c >= c0 && c < c1 && is_data_cell(ref)) out.push_back(ref);
    }
  return out;
}

std::vector<CellRef> Layout::data_cells_in_row(std::size_t row) const {
  std::vector<CellRef> out;
  for (std::size_t i = 0; i < table_->rows[row].size(); ++i)
    if (is_data_cell({row, i})) out.push_back({row, i});
  return out;
}

bool has_word(std::string_view s, const std::vector<std::string>& words) {
  std::string low = text::lower(s);
  std::vector<std::string> tokens;
  std::string cur;
  for (char c : low) {
    bool word_char = text::is_alpha(c) || text::is_digit(c) || c == '-' ||
                     static_cast<unsigned char>(c) >= 0x80;
    if (word_char) {
      cur.push_back(c);
    } else if (!cur.empty()) {
      tokens.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  for (const auto& w : words) {
    if (w.empty()) continue;
    if (!text::has_alpha(w)) {
      if (low.find(w) != std::string::npos) return true;
      continue;
    }
    std::string lw = text::lower(w);
    if (std::find(tokens.begin(), tokens.end(), lw) != tokens.end()) return true;
  }
  return false;
}

}  // namespace tabfix::detail
