#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tabfix/rules.hpp"
#include "tabfix/table.hpp"

namespace tabfix::detail {

/// Structural reading of a validated table: header block, band rows, column labels.
class Layout {
 public:
  explicit Layout(const SourceTable& table);

  const SourceTable& table() const noexcept { return *table_; }
  const Grid& grid() const noexcept { return grid_; }

  /// Leading all-header rows up to the last one with several cells.
  std::size_t header_rows() const noexcept { return header_rows_; }
  /// Rows of the header block that hold more than one cell.
  std::size_t multi_header_rows() const noexcept { return multi_header_rows_; }
  bool full_width(std::size_t row) const;
  bool is_band(std::size_t row) const;
  const std::vector<std::size_t>& bands() const noexcept { return bands_; }
  bool is_data_cell(CellRef ref) const;

  /// Nearest header-block cell above `ref` that names its column.
  std::optional<CellRef> label(CellRef ref) const;
  std::string label_text(CellRef ref) const;

  /// Data cells whose start column lies in [c0, c1), row-major.
  std::vector<CellRef> data_cells_in(std::size_t c0, std::size_t c1) const;
  std::vector<CellRef> data_cells_in_row(std::size_t row) const;

 private:
  const SourceTable* table_;
  Grid grid_;
  std::size_t header_rows_ = 0;
  std::size_t multi_header_rows_ = 0;
  std::vector<std::size_t> bands_;
};

/// Lower-cased word match; words without letters match as substrings ("%", "±").
bool has_word(std::string_view text, const std::vector<std::string>& words);

struct MissingHighlight {
  CellRef cell;
  std::string reason;
};

/// Cells that must be highlighted so every highlighted fact carries its identity and measure.
std::vector<MissingHighlight> missing_highlights(const Layout& layout, const RoleLexicon& roles);

/// Symbol pattern found in a header that has no other wording, e.g. "±" or "+/- %".
std::optional<std::string> bare_symbol(std::string_view header, const SymbolRules& rules);
const std::string* rename_for(std::string_view header, const SymbolRules& rules);
const std::string* expansion_for(std::string_view value, const SymbolRules& rules);

}  // namespace tabfix::detail
