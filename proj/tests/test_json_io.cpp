#include <doctest.h>

#include "support.hpp"
#include "tabfix/json_io.hpp"

using namespace tabfix;
using support::json;

namespace {

std::string schema_path(const std::string& text) {
  try {
    io::parse_source_table(std::string_view(text));
  } catch (const SchemaError& e) {
    return e.path();
  }
  return "<no error>";
}

}  // namespace

TEST_CASE("table schema defaults and round-trip") {
  auto t = io::parse_source_table(std::string_view(R"({"page_title": "P", "rows": [[{"value": "A", "is_header": true}], [{"value": "1", "highlighted": true, "extra": 5}]]})"));
  CHECK(t.page_title == "P");
  CHECK(t.section_title.empty());
  CHECK(t.rows[0][0].is_header);
  CHECK(t.rows[1][0].col_span == 1);
  CHECK(t.rows[1][0].highlighted);
  CHECK(io::parse_source_table(io::to_json(t)) == t);

  for (const auto& f : support::all_fixture_tables()) CHECK(io::parse_source_table(io::to_json(f.table)) == f.table);
}

TEST_CASE("schema errors name the offending field") {
  CHECK(schema_path("[]") == "");
  CHECK(schema_path(R"({"rows": []})") == "page_title");
  CHECK(schema_path(R"({"page_title": "T", "rows": 3})") == "rows");
  CHECK(schema_path(R"({"page_title": "T", "rows": [[{"value": "a"}], [{"value": "b"}, 4]]})") == "rows[1][1]");
  CHECK(schema_path(R"({"page_title": "T", "rows": [[{"value": 1}]]})") == "rows[0][0].value");
  CHECK(schema_path(R"({"page_title": "T", "rows": [[{"value": "a", "col_span": 1.5}]]})") == "rows[0][0].col_span");
  CHECK(schema_path(R"({"page_title": "T", "rows": [[{"value": "a", "row_span": 10000000}]]})") == "rows[0][0].row_span");
  CHECK(schema_path(R"({"page_title": "T", "rows": [[{"value": "a", "is_header": "yes"}]]})") == "rows[0][0].is_header");
  CHECK(schema_path("{not json") != "<no error>");
}

TEST_CASE("edits serialise and parse back") {
  Edit e{EditKind::SplitCell, 2, 1, "A (X) 1% B (Y) 2%", "A\tX\t1%\nB\tY\t2%", "capped", {"C (Z) 3%"}};
  json j = io::to_json(e);
  CHECK(j["kind"] == "SplitCell");
  CHECK(j["location"]["row"] == 2);
  CHECK(io::parse_edit(j) == e);

  Edit add{EditKind::AddColumn, std::nullopt, 1, "", "Party", "", {}};
  CHECK(io::parse_edit(io::to_json(add)) == add);
}

TEST_CASE("diagnostic locations") {
  Diagnostic cell{Problem::ComplexTableType, CellRef{2, 3}, "m", {"e"}};
  Diagnostic table{Problem::LongerTable, std::nullopt, "m", {}};
  CHECK(io::to_json(cell)["location"] == json({{"row", 2}, {"col", 3}}));
  CHECK(io::to_json(table)["location"] == "table");
  CHECK(io::to_json(cell)["label"] == std::string(problem_label(Problem::ComplexTableType)));
}

TEST_CASE("annotation documents") {
  CHECK(io::is_annotation_header(json::parse(R"({"format": "annotations", "version": 1, "encoding": "utf-8"})")));
  CHECK_NOTHROW(io::check_annotation_header(json::parse(R"({"format": "annotations", "version": 1, "encoding": "utf-8"})")));
  CHECK_THROWS_AS(io::check_annotation_header(json::parse(R"({"format": "annotations", "version": 2, "encoding": "utf-8"})")), SchemaError);
  CHECK_THROWS_AS(io::check_annotation_header(json::parse(R"({"format": "annotations", "version": 1, "encoding": "latin-1"})")), SchemaError);

  auto s = io::parse_annotated_sample(json::parse(
      R"({"sample_id": "a", "model_id": "m", "phase": "after", "problem_type": "LongerTable", "text": "xyz", "spans": [{"start": 0, "end": 1, "category": "WORD", "note": "n"}], "omission": false})"));
  CHECK(s.phase == Phase::After);
  CHECK(s.problem_type == Problem::LongerTable);
  CHECK(s.spans[0].note == "n");
  CHECK(io::parse_annotated_sample(io::to_json(s)) == s);

  CHECK_THROWS_AS(io::parse_annotated_sample(json::parse(R"({"sample_id": "a", "model_id": "m", "phase": "during", "text": "", "spans": [], "omission": false})")), SchemaError);
  CHECK_THROWS_AS(io::parse_annotated_sample(json::parse(R"({"sample_id": "a", "model_id": "m", "phase": "before", "problem_type": "Nope", "text": "", "spans": [], "omission": false})")), SchemaError);
  CHECK_THROWS_AS(io::parse_annotated_sample(json::parse(R"({"sample_id": "a", "model_id": "m", "phase": "before", "text": "", "spans": [{"start": -1, "end": 1, "category": "WORD"}], "omission": false})")), SchemaError);

  auto item = io::parse_labeled_item(json::parse(R"({"item": "t1", "labels": ["WORD", "NAME"]})"));
  CHECK(item.item_id == "t1");
  CHECK(item.labels.size() == 2);
  CHECK_THROWS_AS(io::parse_labeled_item(json::parse(R"({"item": "t1"})")), SchemaError);
}
