#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tabfix/errors.hpp"

namespace tabfix {

struct Cell {
  std::string value;
  bool is_header = false;
  int col_span = 1;
  int row_span = 1;
  bool highlighted = false;

  friend bool operator==(const Cell&, const Cell&) = default;
};

using Row = std::vector<Cell>;

struct SourceTable {
  std::string page_title;
  std::string section_title;
  std::vector<Row> rows;

  friend bool operator==(const SourceTable&, const SourceTable&) = default;
};

/// Address of a cell in the source lists: row index and position within that row.
struct CellRef {
  std::size_t row = 0;
  std::size_t index = 0;

  friend auto operator<=>(const CellRef&, const CellRef&) = default;
};

/// Span-expanded occupancy of a table. Cells are placed left to right,
/// skipping positions already covered by row spans from above.
class Grid {
 public:
  explicit Grid(const SourceTable& table);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  std::optional<CellRef> at(std::size_t row, std::size_t col) const;
  std::size_t start_col(CellRef ref) const { return start_[ref.row][ref.index]; }
  /// Number of grid positions occupied in `row`.
  std::size_t row_width(std::size_t row) const { return widths_[row]; }

  struct Conflict {
    CellRef cell;
    std::string reason;
  };
  const std::vector<Conflict>& conflicts() const noexcept { return conflicts_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::vector<std::optional<CellRef>>> occ_;
  std::vector<std::vector<std::size_t>> start_;
  std::vector<std::size_t> widths_;
  std::vector<Conflict> conflicts_;
};

enum class ViolationCode { RaggedGrid, SpanOverflow, EmptyValue, NoHeaders, UnbalancedTags };

std::string_view violation_name(ViolationCode code);

struct Violation {
  ViolationCode code;
  std::optional<std::size_t> row;
  std::optional<std::size_t> col;
  std::optional<std::size_t> offset;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool empty() const noexcept { return violations.empty(); }
  /// NoHeaders is informational; everything else makes the table unusable.
  bool blocking() const noexcept;
};

ValidationReport validate(const SourceTable& table);

class InvalidTable : public Error {
 public:
  explicit InvalidTable(ValidationReport report);
  const ValidationReport& report() const noexcept { return report_; }

 private:
  ValidationReport report_;
};

/// Throws InvalidTable when validate() reports a blocking violation.
void require_valid(const SourceTable& table);

const Cell& cell_at(const SourceTable& table, CellRef ref);
Cell& cell_at(SourceTable& table, CellRef ref);

/// Header cells above `ref` covering its columns, top-down, each cell once.
std::vector<CellRef> column_header_cells(const SourceTable& table, const Grid& grid, CellRef ref);
/// Header cells left of `ref` covering its rows, left-to-right, each cell once.
std::vector<CellRef> row_header_cells(const SourceTable& table, const Grid& grid, CellRef ref);

}  // namespace tabfix
