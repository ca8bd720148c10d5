#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace tabfix::text {

inline bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}
inline bool is_digit(char c) { return c >= '0' && c <= '9'; }
inline bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
inline bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
inline bool is_alpha(char c) { return is_upper(c) || is_lower(c); }

std::string_view trim(std::string_view s);
/// Trim and collapse internal whitespace runs to one space.
std::string collapse(std::string_view s);
std::vector<std::string_view> split_ws(std::string_view s);
std::string lower(std::string_view s);
bool iequals(std::string_view a, std::string_view b);

/// True when `pos` does not fall inside a UTF-8 multi-byte sequence.
bool is_utf8_boundary(std::string_view s, std::size_t pos);
bool has_alpha(std::string_view s);

/// Decimal lexeme: optional sign, digits with optional thousands separators,
/// optional decimal part (dot or comma), optional trailing %.
bool is_number(std::string_view s);
bool is_integer(std::string_view s);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

}  // namespace tabfix::text
