#include <doctest.h>

#include "support.hpp"
#include "tabfix/correction.hpp"

using namespace tabfix;

namespace {

const LintConfig& config() {
  static const LintConfig c;
  return c;
}

std::string linearize(const SourceTable& t) { return render_linearized(extract_highlighted(t)); }

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

std::size_t count_kind(const std::vector<Edit>& edits, EditKind k) {
  return static_cast<std::size_t>(std::count_if(edits.begin(), edits.end(), [&](const Edit& e) { return e.kind == k; }));
}

}  // namespace

TEST_CASE("edit kind names round-trip") {
  for (EditKind k : {EditKind::SplitCell, EditKind::AddColumn, EditKind::RenameHeader, EditKind::FlattenBand,
                     EditKind::AddHighlight, EditKind::ReplaceSymbol, EditKind::ExpandAbbreviation,
                     EditKind::TruncateRows})
    CHECK(parse_edit_kind(edit_kind_name(k)) == k);
  CHECK_FALSE(parse_edit_kind("Bogus").has_value());
}

TEST_CASE("House 1996: missing party and share are highlighted") {
  auto t = support::find_table("tables/curated.jsonl", "house-1996");
  auto r = correct(t.table, t.title, config());
  CHECK(r.corrections_made);
  CHECK_FALSE(r.rejected.has_value());
  CHECK(count_kind(r.edits, EditKind::AddHighlight) == 2);
  std::string lin = linearize(r.table);
  for (const char* s : {"Democratic", "90.00", "Eleanor Holmes Norton", "Republican", "Sprague Simonds", "7.54"})
    CHECK(contains(lin, s));
  CHECK(lint(r.table, config()).count(Problem::InsufficientInput) == 0);
}

TEST_CASE("Alaska and Virginia cells are split into capped records") {
  auto t = support::find_table("tables/curated.jsonl", "senate-2014");
  auto r = correct(t.table, t.title, config());
  CHECK(count_kind(r.edits, EditKind::AddColumn) == 2);
  CHECK(count_kind(r.edits, EditKind::SplitCell) == 2);
  auto in = extract_highlighted(r.table);
  REQUIRE(in.cells.size() == 16);
  CHECK(in.cells[1].value == "Dan Sullivan");
  CHECK(in.cells[2].value == "Republican");
  CHECK(in.cells[2].col_headers == std::vector<std::string>{"Party"});
  CHECK(in.cells[3].value == "48.0%");
  CHECK(in.cells[3].col_headers == std::vector<std::string>{"% votes"});
  CHECK(in.cells[5].value == "Mark Begich");
  CHECK(in.cells[7].value == "45.8%");
  std::string lin = render_linearized(in);
  CHECK_FALSE(contains(lin, "Mark Fish"));
  CHECK_FALSE(contains(lin, "Ted Gianoutsos"));
  for (const auto& e : r.edits)
    if (e.kind == EditKind::SplitCell && contains(e.before, "Dan Sullivan"))
      CHECK(e.dropped == std::vector<std::string>{"Mark Fish (Libertarian) 3.7%", "Ted Gianoutsos (Independent) 2.0%"});
  CHECK(lint(r.table, config()).count(Problem::MultiRecordNonAtomic) == 0);
}

TEST_CASE("record cap of zero keeps every record") {
  auto t = support::find_table("tables/curated.jsonl", "senate-2014");
  LintConfig cfg;
  cfg.split.max_records = 0;
  auto r = correct(t.table, t.title, cfg);
  std::string lin = linearize(r.table);
  CHECK(contains(lin, "Ted Gianoutsos"));
  CHECK(contains(lin, "Robert Sarvis"));
}

TEST_CASE("size gate rejects or truncates") {
  auto big = support::find_table("tables/size_21x5.jsonl", "size-21x5");
  auto r = correct(big.table, big.title, config());
  REQUIRE(r.rejected.has_value());
  CHECK(*r.rejected == kRejectionMessage);
  CHECK(r.edits.empty());
  CHECK(r.table == big.table);

  LintConfig cut = config();
  cut.truncate = true;
  r = correct(big.table, big.title, cut);
  CHECK_FALSE(r.rejected.has_value());
  CHECK(r.table.rows.size() == 20);
  CHECK(count_kind(r.edits, EditKind::TruncateRows) == 1);
  CHECK(check_size(r.table).manageable);

  auto ok = support::find_table("tables/size_20x10.jsonl", "size-20x10");
  CHECK_FALSE(correct(ok.table, ok.title, config()).rejected.has_value());
}

TEST_CASE("header rename and abbreviation expansion") {
  auto t = support::find_table("tables/curated.jsonl", "joseph-haslet");
  auto r = correct(t.table, t.title, config());
  REQUIRE(count_kind(r.edits, EditKind::RenameHeader) == 1);
  CHECK(r.table.rows[0][2].value == "Candidate");
  CHECK(r.leader_data.scenario == LeaderScenario::TitleLeaderFound);

  auto swing = support::find_table("tables/extra.jsonl", "seats-swing");
  r = correct(swing.table, swing.title, config());
  CHECK(count_kind(r.edits, EditKind::ExpandAbbreviation) == 2);
  CHECK(count_kind(r.edits, EditKind::ReplaceSymbol) >= 1);
  CHECK(r.table.rows[1][0].value == "United Democratic Front");
  CHECK(r.table.rows[2][0].value == "Left Democratic Front");
  CHECK(contains(linearize(r.table), "compared to the previous election"));
  CHECK(lint(r.table, config()).count(Problem::PoliticsSymbolHeader) == 0);
}

TEST_CASE("Cardiff swing header gets the percent wording") {
  auto t = support::find_table("tables/curated.jsonl", "cardiff-2012");
  auto r = correct(t.table, t.title, config());
  CHECK(contains(linearize(r.table), "% difference with previous election"));
}

TEST_CASE("band rows become a column") {
  auto t = support::find_table("tables/curated.jsonl", "house-67th");
  auto r = correct(t.table, t.title, config());
  CHECK(count_kind(r.edits, EditKind::FlattenBand) == 5);
  CHECK(r.table.rows[0].back().value == "Term details");
  CHECK(lint(r.table, config()).count(Problem::LongerTable) == 0);
  // the first data row now carries its band text in the new column
  CHECK(r.table.rows[1].back().value == "Twenty-three non-consecutive terms");
}

TEST_CASE("leader data message for the Ling Ling Chang table") {
  auto t = support::find_table("tables/curated.jsonl", "ling-ling-chang");
  auto r = correct(t.table, t.title, config());
  CHECK(leader_data_message(r.leader_data) == "Leader Data: ['Ling Ling Chang', 'Josh Newman', 'Ling Ling Chang']");
}

TEST_CASE("invalid tables are refused") {
  SourceTable t;
  t.rows = {{{"a", true}, {"b", true}}, {{"1"}}};
  CHECK_THROWS_AS(correct(t, "", config()), InvalidTable);
}

TEST_CASE("property: correction is idempotent and its edits replay") {
  auto tables = support::all_fixture_tables();
  support::Gen gen(31);
  for (int n = 0; n < 400; ++n) tables.push_back({"gen", "", gen.table()});
  for (const auto& t : tables) {
    CAPTURE(t.id);
    auto first = correct(t.table, t.title, config());
    REQUIRE(replay_edits(t.table, first.edits) == first.table);
    if (first.rejected) continue;
    auto second = correct(first.table, t.title, config());
    REQUIRE(second.edits.empty());
    REQUIRE_FALSE(second.corrections_made);
    REQUIRE(second.table == first.table);
    REQUIRE_FALSE(validate(first.table).blocking());
  }
}

TEST_CASE("replay errors") {
  auto t = support::find_table("tables/curated.jsonl", "house-1996");
  SourceTable copy = t.table;
  Edit e;
  e.kind = EditKind::RenameHeader;
  e.row = 0;
  e.col = 0;
  e.before = "not the header";
  e.after = "X";
  CHECK_THROWS_AS(apply_edit(copy, e), ReplayError);
  CHECK(copy == t.table);

  e.before = t.table.rows[0][0].value;
  e.row = 99;
  CHECK_THROWS_AS(apply_edit(copy, e), ReplayError);

  e.row.reset();
  CHECK_THROWS_AS(apply_edit(copy, e), ReplayError);

  e.row = 0;
  apply_edit(copy, e);
  CHECK(copy.rows[0][0].value == "X");
}
