#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tabfix/diagnostics.hpp"

namespace tabfix {

enum class ErrorCategory { Word, Name, DateDimension, Number, Other, Context, Addition, NonEnglish };

inline constexpr std::size_t kCategoryCount = 8;
inline constexpr std::array<ErrorCategory, kCategoryCount> kAllCategories = {
    ErrorCategory::Word,    ErrorCategory::Name,    ErrorCategory::DateDimension,
    ErrorCategory::Number,  ErrorCategory::Other,   ErrorCategory::Context,
    ErrorCategory::Addition, ErrorCategory::NonEnglish};

/// "WORD", "NAME", "DATE_DIMENSION", ...
std::string_view category_name(ErrorCategory c);
/// Case-insensitive; '-' and ' ' count as '_'. NOT_CHECKABLE and unknown labels give nullopt.
std::optional<ErrorCategory> parse_category(std::string_view s);
bool is_excluded_category(std::string_view s);

struct ErrorSpan {
  std::size_t start = 0;
  std::size_t end = 0;
  /// Label as written in the annotation file.
  std::string label;
  std::string note;

  std::optional<ErrorCategory> category() const { return parse_category(label); }
  friend bool operator==(const ErrorSpan&, const ErrorSpan&) = default;
};

enum class Phase { Before, After };
std::string_view phase_name(Phase p);
std::optional<Phase> parse_phase(std::string_view s);

struct AnnotatedSample {
  std::string sample_id;
  std::string model_id;
  Phase phase = Phase::Before;
  std::optional<Problem> problem_type;
  std::string text;
  std::vector<ErrorSpan> spans;
  bool omission = false;

  friend bool operator==(const AnnotatedSample&, const AnnotatedSample&) = default;
};

enum class AnnotationViolationCode { OutOfRange, Overlap, UnknownCategory, ExcludedCategory, MisalignedOffset };
std::string_view annotation_violation_name(AnnotationViolationCode code);

struct AnnotationViolation {
  AnnotationViolationCode code;
  std::size_t span_index;
  std::string message;
};

std::vector<AnnotationViolation> validate_annotations(const AnnotatedSample& sample);

enum class SampleClass { NoError, Omissions, Errors };
std::string_view sample_class_name(SampleClass c);

/// Spans dominate the omission flag.
SampleClass classify_sample(const AnnotatedSample& sample);

struct CategoryCounts {
  std::array<std::size_t, kCategoryCount> counts{};

  std::size_t operator[](ErrorCategory c) const { return counts[static_cast<std::size_t>(c)]; }
  std::size_t& operator[](ErrorCategory c) { return counts[static_cast<std::size_t>(c)]; }
  std::size_t total() const;
  friend bool operator==(const CategoryCounts&, const CategoryCounts&) = default;
};

struct ClassCounts {
  std::size_t no_error = 0;
  std::size_t omissions = 0;
  std::size_t errors = 0;

  std::size_t total() const { return no_error + omissions + errors; }
  void add(SampleClass c);
  friend bool operator==(const ClassCounts&, const ClassCounts&) = default;
};

/// Counts spans (not samples) over samples matching model and phase.
CategoryCounts category_counts(std::span<const AnnotatedSample> corpus, std::string_view model_id,
                               Phase phase);
ClassCounts class_counts(std::span<const AnnotatedSample> corpus, std::string_view model_id, Phase phase);

/// round-half-up of 100 * part / whole. Throws DivisionByZero when whole is 0.
int percent_of(std::size_t part, std::size_t whole);
/// round-half-up of 100 * (before - after) / before; negative when errors grew.
int error_reduction(std::size_t before_total, std::size_t after_total);

enum class Grouping { ByModelPhase, ByProblemType };
std::optional<Grouping> parse_grouping(std::string_view s);

struct PhaseSummary {
  CategoryCounts categories;
  ClassCounts classes;
  friend bool operator==(const PhaseSummary&, const PhaseSummary&) = default;
};

struct ModelSummary {
  std::string model_id;
  PhaseSummary before;
  PhaseSummary after;
  /// Absent when there were no errors before.
  std::optional<int> reduction;
};

struct ProblemStack {
  Problem problem;
  ClassCounts before;
  ClassCounts after;
};

struct ModelProblemSummary {
  std::string model_id;
  /// One entry per problem type, in the order of kAllProblems.
  std::vector<ProblemStack> stacks;
  /// Samples that were not NoError before, i.e. the population of the stacks.
  std::size_t plotted = 0;
  /// Plotted samples without a problem type.
  std::size_t unlabelled = 0;
};

struct Summary {
  Grouping grouping = Grouping::ByModelPhase;
  std::vector<ModelSummary> by_model;
  std::vector<ModelProblemSummary> by_problem;
};

/// Models appear in first-seen order. ByProblemType pairs samples by
/// (model, sample_id) and keeps those whose Before phase is not NoError.
Summary summarize(std::span<const AnnotatedSample> corpus, Grouping grouping);

/// Aligned text tables: category counts and classes per model and phase, or stacks per problem type.
std::string render_summary(const Summary& summary);

}  // namespace tabfix
