#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tabfix/errors.hpp"
#include "tabfix/table.hpp"

namespace tabfix {

struct LinearizedCell {
  std::string value;
  std::vector<std::string> col_headers;
  std::vector<std::string> row_headers;

  friend bool operator==(const LinearizedCell&, const LinearizedCell&) = default;
};

struct LinearizedInput {
  std::string page_title;
  std::optional<std::string> section_title;
  std::vector<LinearizedCell> cells;

  friend bool operator==(const LinearizedInput&, const LinearizedInput&) = default;
};

enum class ParseErrorCode {
  UnbalancedTags,
  UnknownTag,
  HeaderOutsideCell,
  UnexpectedText,
  EmptyHeader,
  MissingElement,
};

std::string_view parse_error_name(ParseErrorCode code);

class ParseError : public Error {
 public:
  ParseError(ParseErrorCode code, std::size_t offset, const std::string& detail);
  ParseErrorCode code() const noexcept { return code_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  ParseErrorCode code_;
  std::size_t offset_;
};

LinearizedInput parse_linearized(std::string_view text);

/// Single-space separated; values are whitespace-collapsed, col headers before row headers.
std::string render_linearized(const LinearizedInput& input);

/// Highlighted non-header cells in row-major order with their headers.
/// Throws InvalidTable for structurally broken tables.
LinearizedInput extract_highlighted(const SourceTable& table);

}  // namespace tabfix
