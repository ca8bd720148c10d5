#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tabfix/diagnostics.hpp"
#include "tabfix/rules.hpp"
#include "tabfix/table.hpp"

namespace tabfix {

inline constexpr std::string_view kRejectionMessage =
    "Please simplify the tabular data with fewer records";

enum class EditKind {
  SplitCell,
  AddColumn,
  RenameHeader,
  FlattenBand,
  AddHighlight,
  ReplaceSymbol,
  ExpandAbbreviation,
  TruncateRows,
};

std::string_view edit_kind_name(EditKind kind);
std::optional<EditKind> parse_edit_kind(std::string_view s);

/// One table mutation. Coordinates refer to the table as it is right before the
/// edit is applied, so a list of edits replays in order:
///   SplitCell, RenameHeader, AddHighlight, ReplaceSymbol, ExpandAbbreviation:
///       row + col = row index and cell index within the row
///   AddColumn:    col = grid column after which the new column is inserted
///   FlattenBand:  row = band row, col = grid column receiving the band text
///   TruncateRows: row = removed row
/// SplitCell's `after` holds one line per kept record with tab-separated fields
/// (name, then qualifier and number for the columns that exist).
struct Edit {
  EditKind kind = EditKind::RenameHeader;
  std::optional<std::size_t> row;
  std::optional<std::size_t> col;
  std::string before;
  std::string after;
  std::string note;
  /// Records cut by the record cap (SplitCell only).
  std::vector<std::string> dropped;

  friend bool operator==(const Edit&, const Edit&) = default;
};

struct StepResult {
  SourceTable table;
  bool corrections_made = false;
  std::vector<Edit> edits;
};

StepResult split_non_atomic(SourceTable table, const SplitConfig& config = {});
StepResult update_headers(SourceTable table, const SymbolRules& rules = {});
StepResult add_missing_highlights(SourceTable table, const RoleLexicon& roles = {});
StepResult replace_symbols(SourceTable table, const SymbolRules& rules = {});
/// Drop middle data rows until the row limit holds; no-op when within limits.
StepResult truncate_rows(SourceTable table, const SizeLimits& limits = {});

struct CorrectionResult {
  SourceTable table;
  bool corrections_made = false;
  LeaderOrderReport leader_data;
  std::vector<Edit> edits;
  std::optional<std::string> rejected;
};

/// Size gate, leader order, split, headers, highlights, symbols. Throws InvalidTable.
CorrectionResult correct(const SourceTable& table, std::string_view title,
                         const LintConfig& config = {});

/// Throws ReplayError when an edit does not fit the table it is applied to.
void apply_edit(SourceTable& table, const Edit& edit);
SourceTable replay_edits(SourceTable table, std::span<const Edit> edits);

}  // namespace tabfix
