#include <benchmark/benchmark.h>

#include <fstream>
#include <random>
#include <sstream>

#include "tabfix/correction.hpp"
#include "tabfix/diagnostics.hpp"
#include "tabfix/json_io.hpp"
#include "tabfix/kappa.hpp"
#include "tabfix/linearization.hpp"

using namespace tabfix;

namespace {

std::vector<SourceTable> fixture_tables() {
  std::vector<SourceTable> out;
  std::ifstream f(std::string(TABFIX_FIXTURES) + "/tables/curated.jsonl");
  for (std::string line; std::getline(f, line);)
    if (!line.empty()) out.push_back(io::parse_source_table(std::string_view(line)));
  return out;
}

const std::vector<SourceTable>& tables() {
  static const auto t = fixture_tables();
  return t;
}

}  // namespace

static void BM_ParseRender(benchmark::State& state) {
  std::vector<std::string> lines;
  for (const auto& t : tables()) lines.push_back(render_linearized(extract_highlighted(t)));
  std::size_t bytes = 0;
  for (auto _ : state)
    for (const auto& s : lines) {
      auto in = parse_linearized(s);
      benchmark::DoNotOptimize(render_linearized(in));
      bytes += s.size();
    }
  state.SetBytesProcessed(static_cast<std::int64_t>(bytes));
}
BENCHMARK(BM_ParseRender);

static void BM_Lint(benchmark::State& state) {
  const LintConfig cfg;
  for (auto _ : state)
    for (const auto& t : tables()) benchmark::DoNotOptimize(lint(t, cfg));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(tables().size()));
}
BENCHMARK(BM_Lint);

static void BM_Correct(benchmark::State& state) {
  const LintConfig cfg;
  for (auto _ : state)
    for (const auto& t : tables()) benchmark::DoNotOptimize(correct(t, t.page_title, cfg));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(tables().size()));
}
BENCHMARK(BM_Correct);

static void BM_FleissKappa(benchmark::State& state) {
  const auto items = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(7);
  RatingMatrix m(0, kLabelCount);
  for (std::size_t i = 0; i < items; ++i) {
    std::vector<std::size_t> row(kLabelCount, 0);
    for (int r = 0; r < 3; ++r) ++row[rng() % kLabelCount];
    m.add_row(row);
  }
  for (auto _ : state) benchmark::DoNotOptimize(fleiss_kappa(m));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(items));
}
BENCHMARK(BM_FleissKappa)->Arg(106)->Arg(10000);
BENCHMARK_MAIN();
