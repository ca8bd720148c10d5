#pragma once

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tabfix/json_io.hpp"
#include "tabfix/linearization.hpp"
#include "tabfix/table.hpp"

namespace support {

using nlohmann::json;

inline std::string fixture(const std::string& rel) { return std::string(TABFIX_FIXTURES) + "/" + rel; }

inline std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline std::vector<std::string> read_lines(const std::string& path) {
  std::vector<std::string> out;
  std::istringstream in(read_file(path));
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) out.push_back(line);
  return out;
}

struct NamedTable {
  std::string id;
  std::string title;
  tabfix::SourceTable table;
};

inline std::vector<NamedTable> load_tables(const std::string& rel) {
  std::vector<NamedTable> out;
  for (const auto& line : read_lines(fixture(rel))) {
    json doc = json::parse(line);
    NamedTable t{doc.value("id", ""), "", tabfix::io::parse_source_table(doc)};
    t.title = doc.value("title", t.table.page_title);
    out.push_back(std::move(t));
  }
  return out;
}

inline NamedTable find_table(const std::string& rel, const std::string& id) {
  for (auto& t : load_tables(rel))
    if (t.id == id) return t;
  throw std::runtime_error("no fixture table " + id);
}

inline std::vector<NamedTable> all_fixture_tables() {
  std::vector<NamedTable> out;
  for (const char* f : {"tables/curated.jsonl", "tables/extra.jsonl", "tables/size_21x5.jsonl",
                        "tables/size_20x10.jsonl"})
    for (auto& t : load_tables(f)) out.push_back(std::move(t));
  return out;
}

inline std::vector<tabfix::AnnotatedSample> load_annotations(const std::string& rel) {
  std::vector<tabfix::AnnotatedSample> out;
  for (const auto& line : read_lines(fixture(rel))) {
    json doc = json::parse(line);
    if (tabfix::io::is_annotation_header(doc)) continue;
    out.push_back(tabfix::io::parse_annotated_sample(doc));
  }
  return out;
}

// ---------------------------------------------------------------------------
// generators

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  std::size_t range(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[below(v.size())];
  }

  // Tag-free text; may contain '<' and UTF-8 but never a complete tag.
  std::string word() {
    static const std::vector<std::string> words = {
        "Party", "Candidate", "Votes", "%", "48.0%", "1,234", "Democratic", "São", "Tomé",
        "Eleanor", "(inc.)", "±", "-11.5", "a<b", "x>y", "U.S.", "1996", "Ünïcode", "&", "·"};
    return pick(words);
  }
  std::string phrase(std::size_t max_words = 4) {
    std::string s;
    std::size_t n = range(1, max_words);
    for (std::size_t i = 0; i < n; ++i) s += (i ? " " : "") + word();
    return s;
  }

  tabfix::LinearizedInput linearized() {
    tabfix::LinearizedInput in;
    in.page_title = phrase();
    if (chance(0.5)) in.section_title = phrase();
    std::size_t cells = range(0, 6);
    for (std::size_t i = 0; i < cells; ++i) {
      tabfix::LinearizedCell c;
      c.value = phrase();
      for (std::size_t k = range(0, 3); k > 0; --k) c.col_headers.push_back(phrase(2));
      for (std::size_t k = range(0, 2); k > 0; --k) c.row_headers.push_back(phrase(2));
      in.cells.push_back(std::move(c));
    }
    return in;
  }

  // Structurally valid table with random spans; header rows on top, optional header column.
  tabfix::SourceTable table(std::size_t max_rows = 7, std::size_t max_cols = 6) {
    for (;;) {
      tabfix::SourceTable t = try_table(max_rows, max_cols);
      // a row fully covered from above has no cells of its own; draw again
      if (std::none_of(t.rows.begin(), t.rows.end(), [](const tabfix::Row& r) { return r.empty(); })) return t;
    }
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  tabfix::SourceTable try_table(std::size_t max_rows, std::size_t max_cols) {
    std::size_t R = range(1, max_rows), C = range(1, max_cols);
    std::size_t header_rows = range(0, std::min<std::size_t>(2, R));
    bool header_col = chance(0.3);
    std::vector<std::vector<bool>> used(R, std::vector<bool>(C, false));
    tabfix::SourceTable t;
    t.page_title = phrase();
    t.section_title = chance(0.5) ? phrase() : "";
    t.rows.resize(R);
    for (std::size_t r = 0; r < R; ++r)
      for (std::size_t c = 0; c < C; ++c) {
        if (used[r][c]) continue;
        std::size_t free_w = 0;
        while (c + free_w < C && !used[r][c + free_w]) ++free_w;
        std::size_t w = chance(0.2) ? range(1, free_w) : 1;
        std::size_t h = 1;
        if (chance(0.15)) {
          std::size_t limit = R - r;
          h = range(1, limit);
          for (std::size_t hh = 1; hh < h; ++hh)
            for (std::size_t cc = c; cc < c + w; ++cc)
              if (used[r + hh][cc]) h = std::min(h, hh);
        }
        for (std::size_t rr = r; rr < r + h; ++rr)
          for (std::size_t cc = c; cc < c + w; ++cc) used[rr][cc] = true;
        tabfix::Cell cell;
        cell.value = chance(0.05) ? "" : phrase(3);
        cell.is_header = r < header_rows || (header_col && c == 0);
        cell.col_span = static_cast<int>(w);
        cell.row_span = static_cast<int>(h);
        cell.highlighted = !cell.is_header && chance(0.4);
        t.rows[r].push_back(std::move(cell));
        c += w - 1;
      }
    return t;
  }

  std::mt19937_64 rng_;
};

}  // namespace support
