#include "tabfix/text.hpp"

namespace tabfix::text {

std::string_view trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return s.substr(b, e - b);
}

std::string collapse(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending = false;
  for (char c : s) {
    if (is_space(c)) {
      pending = !out.empty();
      continue;
    }
    if (pending) out.push_back(' ');
    pending = false;
    out.push_back(c);
  }
  return out;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(s[i])) ++i;
    std::size_t j = i;
    while (j < s.size() && !is_space(s[j])) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    if (is_upper(c)) c = static_cast<char>(c - 'A' + 'a');
  return out;
}

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    char x = a[i], y = b[i];
    if (is_upper(x)) x = static_cast<char>(x - 'A' + 'a');
    if (is_upper(y)) y = static_cast<char>(y - 'A' + 'a');
    if (x != y) return false;
  }
  return true;
}

bool is_utf8_boundary(std::string_view s, std::size_t pos) {
  if (pos == 0 || pos >= s.size()) return pos <= s.size();
  return (static_cast<unsigned char>(s[pos]) & 0xC0) != 0x80;
}

bool has_alpha(std::string_view s) {
  // Non-ASCII: lead bytes from U+00C0 upwards count as letters, except the
  // U+2000 block (dashes, minus sign, general punctuation).
  for (char c : s) {
    auto u = static_cast<unsigned char>(c);
    if (is_alpha(c) || (u >= 0xC3 && u < 0xF8 && u != 0xE2)) return true;
  }
  return false;
}

namespace {

// digits, optionally grouped by `sep` in threes
bool digit_run(std::string_view s, std::size_t& i, char sep) {
  std::size_t start = i;
  while (i < s.size() && is_digit(s[i])) ++i;
  std::size_t lead = i - start;
  if (lead == 0) return false;
  if (lead > 3 || sep == 0) return true;
  while (i + 3 < s.size() && s[i] == sep && is_digit(s[i + 1]) && is_digit(s[i + 2]) &&
         is_digit(s[i + 3]) && (i + 4 == s.size() || !is_digit(s[i + 4]))) {
    i += 4;
  }
  return true;
}

}  // namespace

bool is_number(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (s[i] == '+' || s[i] == '-') ++i;
  else if (s.substr(0, 3) == "\xE2\x88\x92") i += 3;  // unicode minus
  if (i >= s.size()) return false;
  if (s[i] == '.') {
    ++i;
    std::size_t d = i;
    while (i < s.size() && is_digit(s[i])) ++i;
    if (i == d) return false;
  } else {
    if (!digit_run(s, i, ',')) return false;
    if (i < s.size() && (s[i] == '.' || s[i] == ',')) {
      ++i;
      std::size_t d = i;
      while (i < s.size() && is_digit(s[i])) ++i;
      if (i == d) return false;
    }
  }
  if (i < s.size() && s[i] == '%') ++i;
  return i == s.size();
}

bool is_integer(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (s[i] == '+' || s[i] == '-') ++i;
  else if (s.substr(0, 3) == "\xE2\x88\x92") i += 3;
  if (!digit_run(s, i, ',')) return false;
  return i == s.size();
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out.append(sep);
    out.append(parts[i]);
  }
  return out;
}

}  // namespace tabfix::text
