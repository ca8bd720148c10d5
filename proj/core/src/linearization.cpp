#include "tabfix/linearization.hpp"

#include <array>

#include "tabfix/text.hpp"

namespace tabfix {

std::string_view parse_error_name(ParseErrorCode code) {
  switch (code) {
    case ParseErrorCode::UnbalancedTags: return "UnbalancedTags";
    case ParseErrorCode::UnknownTag: return "UnknownTag";
    case ParseErrorCode::HeaderOutsideCell: return "HeaderOutsideCell";
    case ParseErrorCode::UnexpectedText: return "UnexpectedText";
    case ParseErrorCode::EmptyHeader: return "EmptyHeader";
    case ParseErrorCode::MissingElement: return "MissingElement";
  }
  return "?";
}

ParseError::ParseError(ParseErrorCode code, std::size_t offset, const std::string& detail)
    : Error(std::string(parse_error_name(code)) + " at byte " + std::to_string(offset) + ": " +
            detail),
      code_(code),
      offset_(offset) {}

namespace {

constexpr std::array<std::string_view, 6> kTags = {"page_title", "section_title", "table",
                                                   "cell",       "col_header",    "row_header"};

struct Token {
  enum Kind { Tag, Text, End } kind = End;
  std::string_view name;  // tag name
  bool closing = false;
  std::string_view text;  // raw text for Text tokens
  std::size_t offset = 0;
};

bool tag_char(char c) { return text::is_alpha(c) || c == '_'; }

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  Token next() {
    if (pos_ >= s_.size()) return {Token::End, {}, false, {}, s_.size()};
    if (auto t = tag_at(pos_)) {
      pos_ = t->second;
      return t->first;
    }
    std::size_t start = pos_;
    ++pos_;
    while (pos_ < s_.size() && !(s_[pos_] == '<' && tag_at(pos_))) ++pos_;
    return {Token::Text, {}, false, s_.substr(start, pos_ - start), start};
  }

  // Next token that is not whitespace-only text.
  Token next_significant() {
    for (;;) {
      Token t = next();
      if (t.kind == Token::Text && text::trim(t.text).empty()) continue;
      return t;
    }
  }

 private:
  std::optional<std::pair<Token, std::size_t>> tag_at(std::size_t p) const {
    if (s_[p] != '<') return std::nullopt;
    std::size_t i = p + 1;
    bool closing = false;
    if (i < s_.size() && s_[i] == '/') {
      closing = true;
      ++i;
    }
    std::size_t name_start = i;
    while (i < s_.size() && tag_char(s_[i])) ++i;
    if (i == name_start || i >= s_.size() || s_[i] != '>') return std::nullopt;
    std::string_view name = s_.substr(name_start, i - name_start);
    bool known = false;
    for (auto k : kTags) known = known || k == name;
    if (!known)
      throw ParseError(ParseErrorCode::UnknownTag, p, "unknown tag <" + std::string(name) + ">");
    return std::make_pair(Token{Token::Tag, name, closing, {}, p}, i + 1);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

bool is_header_tag(std::string_view name) { return name == "col_header" || name == "row_header"; }

std::string describe(const Token& t) {
  if (t.kind == Token::End) return "end of input";
  if (t.kind == Token::Text) return "text";
  return std::string(t.closing ? "</" : "<") + std::string(t.name) + ">";
}

class Parser {
 public:
  explicit Parser(std::string_view s) : lex_(s) {}

  LinearizedInput run() {
    LinearizedInput out;
    Token t = lex_.next_significant();
    if (!(t.kind == Token::Tag && !t.closing && t.name == "page_title"))
      fail_top(t, "expected <page_title>");
    out.page_title = element_body("page_title");

    t = lex_.next_significant();
    if (t.kind == Token::Tag && !t.closing && t.name == "section_title") {
      out.section_title = element_body("section_title");
      t = lex_.next_significant();
    }
    if (!(t.kind == Token::Tag && !t.closing && t.name == "table")) fail_top(t, "expected <table>");
    parse_table(out);

    t = lex_.next_significant();
    if (t.kind != Token::End)
      throw ParseError(ParseErrorCode::UnexpectedText, t.offset,
                       "trailing " + describe(t) + " after </table>");
    return out;
  }

 private:
  [[noreturn]] void fail_top(const Token& t, const std::string& what) {
    if (t.kind == Token::Text)
      throw ParseError(ParseErrorCode::UnexpectedText, t.offset, what + ", found text");
    if (t.kind == Token::Tag && t.closing)
      throw ParseError(ParseErrorCode::UnbalancedTags, t.offset, what + ", found " + describe(t));
    if (t.kind == Token::Tag && is_header_tag(t.name))
      throw ParseError(ParseErrorCode::HeaderOutsideCell, t.offset,
                       describe(t) + " outside of <cell>");
    throw ParseError(ParseErrorCode::MissingElement, t.offset, what + ", found " + describe(t));
  }

  // After an opening tag: optional text then the matching close tag.
  std::string element_body(std::string_view name) {
    Token t = lex_.next();
    std::string value;
    if (t.kind == Token::Text) {
      value = text::collapse(t.text);
      t = lex_.next();
    }
    expect_close(t, name);
    return value;
  }

  void expect_close(const Token& t, std::string_view name) {
    if (t.kind == Token::Tag && t.closing && t.name == name) return;
    if (t.kind == Token::End)
      throw ParseError(ParseErrorCode::UnbalancedTags, t.offset,
                       "unterminated <" + std::string(name) + ">");
    throw ParseError(ParseErrorCode::UnbalancedTags, t.offset,
                     "expected </" + std::string(name) + ">, found " + describe(t));
  }

  void parse_table(LinearizedInput& out) {
    for (;;) {
      Token t = lex_.next_significant();
      if (t.kind == Token::Tag && t.closing && t.name == "table") return;
      if (t.kind == Token::Tag && !t.closing && t.name == "cell") {
        out.cells.push_back(parse_cell());
        continue;
      }
      if (t.kind == Token::Text)
        throw ParseError(ParseErrorCode::UnexpectedText, t.offset, "text outside of <cell>");
      if (t.kind == Token::Tag && !t.closing && is_header_tag(t.name))
        throw ParseError(ParseErrorCode::HeaderOutsideCell, t.offset,
                         describe(t) + " outside of <cell>");
      if (t.kind == Token::End)
        throw ParseError(ParseErrorCode::UnbalancedTags, t.offset, "unterminated <table>");
      throw ParseError(ParseErrorCode::UnbalancedTags, t.offset,
                       "unexpected " + describe(t) + " inside <table>");
    }
  }

  LinearizedCell parse_cell() {
    LinearizedCell cell;
    Token t = lex_.next();
    if (t.kind == Token::Text) {
      cell.value = text::collapse(t.text);
      t = lex_.next();
    }
    for (;; t = lex_.next()) {
      if (t.kind == Token::Text) {
        if (text::trim(t.text).empty()) continue;
        throw ParseError(ParseErrorCode::UnexpectedText, t.offset, "text after cell headers");
      }
      if (t.kind == Token::Tag && t.closing && t.name == "cell") return cell;
      if (t.kind == Token::Tag && !t.closing && is_header_tag(t.name)) {
        std::size_t at = t.offset;
        std::string h = element_body(t.name);
        if (h.empty())
          throw ParseError(ParseErrorCode::EmptyHeader, at, "empty " + describe(t));
        (t.name == "col_header" ? cell.col_headers : cell.row_headers).push_back(std::move(h));
        continue;
      }
      if (t.kind == Token::End)
        throw ParseError(ParseErrorCode::UnbalancedTags, t.offset, "unterminated <cell>");
      throw ParseError(ParseErrorCode::UnbalancedTags, t.offset,
                       "unexpected " + describe(t) + " inside <cell>");
    }
  }

  Lexer lex_;
};

void emit(std::string& out, std::string_view piece) {
  if (piece.empty()) return;
  if (!out.empty()) out.push_back(' ');
  out.append(piece);
}

void emit_element(std::string& out, std::string_view name, std::string_view value) {
  emit(out, "<" + std::string(name) + ">");
  emit(out, text::collapse(value));
  emit(out, "</" + std::string(name) + ">");
}

}  // namespace

LinearizedInput parse_linearized(std::string_view s) { return Parser(s).run(); }

std::string render_linearized(const LinearizedInput& input) {
  std::string out;
  emit_element(out, "page_title", input.page_title);
  if (input.section_title) emit_element(out, "section_title", *input.section_title);
  emit(out, "<table>");
  for (const auto& cell : input.cells) {
    emit(out, "<cell>");
    emit(out, text::collapse(cell.value));
    for (const auto& h : cell.col_headers) emit_element(out, "col_header", h);
    for (const auto& h : cell.row_headers) emit_element(out, "row_header", h);
    emit(out, "</cell>");
  }
  emit(out, "</table>");
  return out;
}

LinearizedInput extract_highlighted(const SourceTable& table) {
  require_valid(table);
  Grid grid(table);
  LinearizedInput out;
  out.page_title = text::collapse(table.page_title);
  std::string section = text::collapse(table.section_title);
  if (!section.empty()) out.section_title = std::move(section);

  auto header_values = [&](const std::vector<CellRef>& refs) {
    std::vector<std::string> values;
    for (CellRef h : refs) {
      std::string v = text::collapse(cell_at(table, h).value);
      if (!v.empty()) values.push_back(std::move(v));
    }
    return values;
  };

  for (std::size_t r = 0; r < table.rows.size(); ++r)
    for (std::size_t i = 0; i < table.rows[r].size(); ++i) {
      const Cell& cell = table.rows[r][i];
      if (!cell.highlighted || cell.is_header) continue;
      std::string value = text::collapse(cell.value);
      if (value.empty()) continue;
      CellRef ref{r, i};
      out.cells.push_back({std::move(value),
                           header_values(column_header_cells(table, grid, ref)),
                           header_values(row_header_cells(table, grid, ref))});
    }
  return out;
}

}  // namespace tabfix
