#include <doctest.h>

#include "support.hpp"
#include "tabfix/linearization.hpp"

using namespace tabfix;

TEST_CASE("property: render then parse is the identity on generated inputs") {
  support::Gen gen(20240611);
  for (int n = 0; n < 2000; ++n) {
    LinearizedInput in = gen.linearized();
    std::string s = render_linearized(in);
    LinearizedInput back = parse_linearized(s);
    REQUIRE_MESSAGE(back == in, s);
    REQUIRE(render_linearized(back) == s);
  }
}

TEST_CASE("property: parse then render is the identity on canonical strings") {
  for (const auto& line : support::read_lines(support::fixture("linearized/corpus.txt"))) {
    LinearizedInput in = parse_linearized(line);
    CHECK(render_linearized(in) == line);
    CHECK(parse_linearized(render_linearized(in)) == in);
  }
}

TEST_CASE("loosely spaced strings normalise to a fixed point") {
  for (const auto& line : support::read_lines(support::fixture("linearized/noncanonical.txt"))) {
    LinearizedInput in = parse_linearized(line);
    std::string canon = render_linearized(in);
    CHECK(canon != line);
    CHECK(parse_linearized(canon) == in);
    CHECK(render_linearized(parse_linearized(canon)) == canon);
  }
}

TEST_CASE("property: extraction of generated tables always parses back") {
  support::Gen gen(99);
  for (int n = 0; n < 500; ++n) {
    SourceTable t = gen.table();
    LinearizedInput in = extract_highlighted(t);
    std::string s = render_linearized(in);
    REQUIRE(parse_linearized(s) == in);
  }
}

TEST_CASE("fuzz: arbitrary bytes only ever raise ParseError") {
  support::Gen gen(5);
  const std::string alphabet = "<>/ abcdeglnprtw_\xC3\xA9\x80\xFF\n";
  for (int n = 0; n < 3000; ++n) {
    std::string s;
    for (std::size_t k = gen.range(0, 80); k > 0; --k) s.push_back(alphabet[gen.below(alphabet.size())]);
    try {
      parse_linearized(s);
    } catch (const ParseError& e) {
      REQUIRE(e.offset() <= s.size());
    }
  }
}

TEST_CASE("fuzz: mutated valid strings only ever raise ParseError") {
  support::Gen gen(11);
  const std::vector<std::string> pieces = {"<cell>", "</cell>", "<col_header>", "</col_header>",
                                           "<row_header>", "</row_header>", "<table>", "</table>",
                                           "<page_title>", "</page_title>", "<section_title>", "x", " ", "<"};
  for (int n = 0; n < 3000; ++n) {
    std::string s = render_linearized(gen.linearized());
    for (std::size_t k = gen.range(1, 4); k > 0; --k) {
      std::size_t pos = gen.below(s.size() + 1);
      switch (gen.below(3)) {
        case 0: s.insert(pos, gen.pick(pieces)); break;
        case 1: s.erase(pos, gen.range(1, 8)); break;
        default:
          if (pos < s.size()) s[pos] = static_cast<char>(gen.below(256));
      }
    }
    try {
      auto in = parse_linearized(s);
      // anything accepted must be stable under a further round-trip
      std::string r = render_linearized(in);
      REQUIRE(render_linearized(parse_linearized(r)) == r);
    } catch (const ParseError& e) {
      REQUIRE(e.offset() <= s.size());
    }
  }
}
