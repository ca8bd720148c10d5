#include <doctest.h>

#include "support.hpp"
#include "tabfix/rules.hpp"

using namespace tabfix;

TEST_CASE("shipped default rules equal the built-in configuration") {
  auto path = std::string(TABFIX_DATA) + "/rules/default.json";
  CHECK(load_rules(path) == LintConfig{});
  auto on_disk = support::json::parse(support::read_file(path));
  CHECK(on_disk == support::json::parse(dump_rules(LintConfig{})));
}

TEST_CASE("dump and parse round-trip") {
  LintConfig c;
  c.size = {5, 3};
  c.truncate = true;
  c.split.max_records = 0;
  c.names.names = {"Ann Lee"};
  c.symbols.header_renames = {{"Nominee", "Candidate"}};
  c.templates = {{"mine", "Say: <Linearized table data>"}};
  CHECK(parse_rules(dump_rules(c)) == c);
}

TEST_CASE("sections override defaults independently") {
  auto c = parse_rules(R"({"version": 1, "size_limits": {"max_rows": 5}})");
  CHECK(c.size.max_rows == 5);
  CHECK(c.size.max_cols == 10);
  CHECK(c.split == SplitConfig{});
}

TEST_CASE("rules errors") {
  CHECK_THROWS_AS(parse_rules("{"), RulesError);
  CHECK_THROWS_AS(parse_rules("{}"), RulesError);
  CHECK_THROWS_AS(parse_rules(R"({"version": 2})"), RulesError);
  CHECK_THROWS_AS(parse_rules(R"({"version": 1, "colour": "red"})"), RulesError);
  CHECK_THROWS_AS(parse_rules(R"({"version": 1, "size_limits": {"max_rows": 0}})"), RulesError);
  CHECK_THROWS_AS(parse_rules(R"({"version": 1, "size_limits": {"max_rows": "5"}})"), RulesError);
  CHECK_THROWS_AS(parse_rules(R"({"version": 1, "templates": [{"id": "x", "body": "no slot"}]})"), RulesError);
  CHECK_THROWS_AS(load_rules("/nonexistent/rules.json"), RulesError);
}

TEST_CASE("rename chains and cycles are rejected") {
  CHECK_THROWS_AS(parse_rules(R"({"version": 1, "header_renames": {"A": "B", "B": "C"}})"), RulesError);
  CHECK_THROWS_AS(parse_rules(R"({"version": 1, "header_renames": {"A": "B", "B": "A"}})"), RulesError);
  CHECK_THROWS_AS(parse_rules(R"({"version": 1, "party_abbreviations": {"X": "X"}})"), RulesError);
  CHECK_NOTHROW(parse_rules(R"({"version": 1, "header_renames": {"A": "C", "B": "C"}})"));
  try {
    parse_rules(R"({"version": 1, "header_renames": {"A": "B", "B": "C"}})");
  } catch (const RulesError& e) {
    CHECK(std::string(e.what()).find("$.header_renames.A") != std::string::npos);
  }
}
