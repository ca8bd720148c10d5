#include <doctest.h>

#include <map>
#include <set>

#include "support.hpp"
#include "tabfix/table.hpp"

using namespace tabfix;

namespace {

Cell H(std::string v, int cs = 1, int rs = 1) { return {std::move(v), true, cs, rs, false}; }
Cell D(std::string v, bool hl = false, int cs = 1, int rs = 1) { return {std::move(v), false, cs, rs, hl}; }

bool has_code(const ValidationReport& r, ViolationCode c) {
  for (const auto& v : r.violations)
    if (v.code == c) return true;
  return false;
}

// Occupancy map built cell by cell, independent of Grid.
std::map<std::pair<std::size_t, std::size_t>, CellRef> occupancy(const SourceTable& t) {
  std::map<std::pair<std::size_t, std::size_t>, CellRef> occ;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < t.rows[r].size(); ++i) {
      while (occ.count({r, c})) ++c;
      const Cell& x = t.rows[r][i];
      for (int dr = 0; dr < x.row_span; ++dr)
        for (int dc = 0; dc < x.col_span; ++dc) occ[{r + dr, c + dc}] = CellRef{r, i};
      c += static_cast<std::size_t>(x.col_span);
    }
  }
  return occ;
}

}  // namespace

TEST_CASE("grid packs spans left to right") {
  SourceTable t;
  t.rows = {{H("State", 1, 2), H("Incumbent", 2), H("Results", 1, 2)}, {H("Senator"), H("Party")},
            {D("SD"), D("Coe"), D("R"), D("lost")}};
  Grid g(t);
  CHECK(g.rows() == 3);
  CHECK(g.cols() == 4);
  CHECK(*g.at(1, 0) == CellRef{0, 0});
  CHECK(*g.at(1, 1) == CellRef{1, 0});
  CHECK(*g.at(1, 3) == CellRef{0, 2});
  CHECK(g.start_col({1, 1}) == 2);
  CHECK(validate(t).empty());

  auto cols = column_header_cells(t, g, {2, 1});
  REQUIRE(cols.size() == 2);
  CHECK(cols[0] == CellRef{0, 1});
  CHECK(cols[1] == CellRef{1, 0});
}

TEST_CASE("validation codes") {
  SUBCASE("ragged") {
    SourceTable t;
    t.rows = {{H("a"), H("b"), H("c")}, {D("1"), D("2"), D("3"), D("4")}};
    CHECK(has_code(validate(t), ViolationCode::RaggedGrid));
    CHECK_THROWS_AS(require_valid(t), InvalidTable);
  }
  SUBCASE("span past the last row") {
    SourceTable t;
    t.rows = {{H("a", 1, 3), H("b")}, {D("1")}};
    CHECK(has_code(validate(t), ViolationCode::SpanOverflow));
  }
  SUBCASE("non-positive span") {
    SourceTable t;
    t.rows = {{H("a", 0)}};
    CHECK(has_code(validate(t), ViolationCode::SpanOverflow));
  }
  SUBCASE("empty row") {
    SourceTable t;
    t.rows = {{H("a")}, {}};
    CHECK(has_code(validate(t), ViolationCode::EmptyValue));
  }
  SUBCASE("no headers is informational") {
    SourceTable t;
    t.rows = {{D("a")}};
    auto r = validate(t);
    CHECK(has_code(r, ViolationCode::NoHeaders));
    CHECK_FALSE(r.blocking());
  }
  SUBCASE("tag-like text") {
    SourceTable t;
    t.page_title = "bad </cell> title";
    t.rows = {{H("a")}, {D("x <b> y")}};
    auto r = validate(t);
    REQUIRE(r.violations.size() == 2);
    CHECK(r.violations[0].code == ViolationCode::UnbalancedTags);
    CHECK(*r.violations[0].offset == 4);
    CHECK(*r.violations[1].row == 1);
    CHECK(*r.violations[1].offset == 2);
  }
  SUBCASE("zero rows and header-only tables are valid") {
    SourceTable t;
    CHECK(validate(t).empty());
    t.rows = {{H("a"), H("b")}};
    CHECK(validate(t).empty());
  }
}

TEST_CASE("property: grid and header association match a brute-force oracle") {
  support::Gen gen(7);
  for (int n = 0; n < 500; ++n) {
    SourceTable t = gen.table();
    REQUIRE_FALSE(validate(t).blocking());
    Grid g(t);
    auto occ = occupancy(t);
    for (std::size_t r = 0; r < g.rows(); ++r)
      for (std::size_t c = 0; c < g.cols(); ++c) REQUIRE(*g.at(r, c) == occ.at({r, c}));

    for (std::size_t r = 0; r < t.rows.size(); ++r)
      for (std::size_t i = 0; i < t.rows[r].size(); ++i) {
        CellRef ref{r, i};
        std::vector<std::pair<std::size_t, std::size_t>> mine;
        for (auto& [pos, who] : occ)
          if (who == ref) mine.push_back(pos);
        std::size_t rmin = mine.front().first, cmin = mine.front().second;
        std::set<std::size_t> cols, rows;
        for (auto& [rr, cc] : mine) {
          cols.insert(cc);
          rows.insert(rr);
        }
        std::vector<CellRef> want_cols, want_rows;
        for (std::size_t rr = 0; rr < rmin; ++rr)
          for (std::size_t cc : cols) {
            CellRef h = occ.at({rr, cc});
            if (cell_at(t, h).is_header && std::find(want_cols.begin(), want_cols.end(), h) == want_cols.end())
              want_cols.push_back(h);
          }
        for (std::size_t cc = 0; cc < cmin; ++cc)
          for (std::size_t rr : rows) {
            CellRef h = occ.at({rr, cc});
            if (cell_at(t, h).is_header && std::find(want_rows.begin(), want_rows.end(), h) == want_rows.end())
              want_rows.push_back(h);
          }
        REQUIRE(column_header_cells(t, g, ref) == want_cols);
        REQUIRE(row_header_cells(t, g, ref) == want_rows);
      }
  }
}
