#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tabfix/annotation.hpp"

namespace tabfix {

/// The eight error categories plus NO ERROR.
inline constexpr std::size_t kLabelCount = kCategoryCount + 1;
inline constexpr std::size_t kNoErrorLabel = kCategoryCount;

std::string_view label_name(std::size_t label);
/// Category names or NO_ERROR / "NO ERROR"; throws SchemaError for anything else.
std::size_t parse_label(std::string_view s);

struct LabeledItem {
  std::string item_id;
  std::vector<std::string> labels;
};

class RatingMatrix {
 public:
  RatingMatrix() = default;
  RatingMatrix(std::size_t items, std::size_t categories);

  std::size_t items() const noexcept { return items_; }
  std::size_t categories() const noexcept { return categories_; }
  std::size_t at(std::size_t item, std::size_t cat) const { return counts_[item * categories_ + cat]; }
  std::size_t& at(std::size_t item, std::size_t cat) { return counts_[item * categories_ + cat]; }
  std::size_t row_sum(std::size_t item) const;
  void add_row(std::span<const std::size_t> row);

  std::vector<std::string> category_names;

 private:
  std::size_t items_ = 0;
  std::size_t categories_ = 0;
  std::vector<std::size_t> counts_;
};

struct KappaResult {
  double kappa = 0;
  double pa = 0;
  double pe = 0;
  std::size_t raters = 0;
};

/// Throws std::invalid_argument for empty matrices, rows with differing sums or
/// fewer than two raters; DegenerateAgreement when pe = 1 and pa < 1.
KappaResult fleiss_kappa_detail(const RatingMatrix& m);
double fleiss_kappa(const RatingMatrix& m);

/// Comma- or whitespace-separated counts, one item per line. '#' starts a comment;
/// a first row of non-numeric fields names the categories. Throws SchemaError.
RatingMatrix parse_rating_matrix(std::string_view text);

RatingMatrix rating_matrix(std::span<const LabeledItem> items, std::size_t raters);

struct ConfusionMatrix {
  std::size_t raters = 0;
  std::array<std::size_t, kLabelCount> all_agree{};
  /// off[row][col]: minority selections of `col` on items whose row label is `row`.
  std::array<std::array<std::size_t, kLabelCount>, kLabelCount> off{};

  std::size_t total(std::size_t row) const;
};

/// Row label: most frequent label, ties going to the earliest annotator's label.
/// Throws ArityMismatch when an item does not carry `raters` labels.
ConfusionMatrix confusion_matrix(std::span<const LabeledItem> items, std::size_t raters);

std::string render_confusion(const ConfusionMatrix& m);

}  // namespace tabfix
