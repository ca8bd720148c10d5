#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tabfix/rules.hpp"
#include "tabfix/table.hpp"

namespace tabfix {

enum class Problem {
  SingleRecordNonAtomic,
  MultiRecordNonAtomic,
  ComplexTableType,
  InsufficientInput,
  LongerTable,
  PoliticsSymbolHeader,
  LeaderNameListHazard,
};

inline constexpr std::array<Problem, 7> kAllProblems = {
    Problem::SingleRecordNonAtomic, Problem::MultiRecordNonAtomic, Problem::ComplexTableType,
    Problem::InsufficientInput,     Problem::LongerTable,          Problem::PoliticsSymbolHeader,
    Problem::LeaderNameListHazard};

std::string_view problem_name(Problem p);
/// Axis label used in per-problem breakdown charts, e.g. "Longer input".
std::string_view problem_label(Problem p);
/// Accepts either the enum name or the chart label.
std::optional<Problem> parse_problem(std::string_view s);

struct Diagnostic {
  Problem problem;
  /// Absent for table-level findings.
  std::optional<CellRef> location;
  std::string message;
  std::vector<std::string> evidence;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

struct AtomicRecord {
  std::string name;
  std::string qualifier;
  std::string number;

  std::size_t field_count() const noexcept {
    return 1 + (qualifier.empty() ? 0 : 1) + (number.empty() ? 0 : 1);
  }
  /// Name with qualifier and number, as it appeared in the cell.
  std::string display() const;

  friend bool operator==(const AtomicRecord&, const AtomicRecord&) = default;
};

inline constexpr std::string_view kNotInTitle = "Leader name not in title";
inline constexpr std::string_view kNotInTable = "Leader name not in table";

enum class LeaderScenario { TitleLeaderFound, LeaderNotInTitle, LeaderNotInTable };

std::string_view scenario_name(LeaderScenario s);

struct LeaderOrderReport {
  std::optional<std::string> leader_from_title;
  std::vector<std::string> recorded_data;
  LeaderScenario scenario = LeaderScenario::LeaderNotInTable;

  friend bool operator==(const LeaderOrderReport&, const LeaderOrderReport&) = default;
};

/// "Leader Data: ['a', 'b']"
std::string leader_data_message(const LeaderOrderReport& report);

struct SizeVerdict {
  bool manageable = true;
  std::size_t rows = 0;
  std::size_t cols = 0;
  SizeLimits limits;
};

struct DiagnosticReport {
  std::vector<Diagnostic> diagnostics;
  SizeVerdict size;
  LeaderOrderReport leaders;

  std::size_t count(Problem p) const;
};

/// Raw grid rows (header rows included) and effective column count.
/// Throws std::invalid_argument for zero limits.
SizeVerdict check_size(const SourceTable& table, SizeLimits limits = {});

/// Person-name matches in reading order: lexicon entries first claim their span,
/// then capitalised multi-token sequences not made of stopwords.
std::vector<std::string> find_leader_names(std::string_view text, const NameLexicon& lexicon);

LeaderOrderReport identify_leader_order(const SourceTable& table, std::string_view title,
                                        const NameLexicon& lexicon);

/// Records of a packed cell; empty when the cell is atomic.
std::vector<AtomicRecord> detect_non_atomic(const Cell& cell, const SplitConfig& config = {});
std::vector<AtomicRecord> parse_records(std::string_view value, const SplitConfig& config = {});

std::vector<Diagnostic> detect_non_atomic_cells(const SourceTable& table, const SplitConfig& config = {});
std::vector<Diagnostic> detect_insufficient(const SourceTable& table, const RoleLexicon& roles = {});
std::vector<Diagnostic> detect_symbol_headers(const SourceTable& table, const SymbolRules& rules = {});
std::vector<Diagnostic> detect_complex(const SourceTable& table, const ComplexConfig& config = {});
std::vector<Diagnostic> detect_nested_headers(const SourceTable& table);

/// Every detector, sorted table-level first then row-major. Throws InvalidTable.
DiagnosticReport lint(const SourceTable& table, const LintConfig& config = {});

}  // namespace tabfix
