#include <doctest.h>

#include "support.hpp"
#include "tabfix/annotation.hpp"

using namespace tabfix;

namespace {

AnnotatedSample sample(std::string text, std::vector<ErrorSpan> spans, bool omission = false) {
  AnnotatedSample s;
  s.sample_id = "s";
  s.model_id = "m";
  s.text = std::move(text);
  s.spans = std::move(spans);
  s.omission = omission;
  return s;
}

std::vector<AnnotationViolationCode> codes(const AnnotatedSample& s) {
  std::vector<AnnotationViolationCode> out;
  for (const auto& v : validate_annotations(s)) out.push_back(v.code);
  return out;
}

const ModelSummary& model(const Summary& s, const std::string& id) {
  for (const auto& m : s.by_model)
    if (m.model_id == id) return m;
  throw std::runtime_error("missing model " + id);
}

}  // namespace

TEST_CASE("category labels") {
  CHECK(parse_category("WORD") == ErrorCategory::Word);
  CHECK(parse_category("date dimension") == ErrorCategory::DateDimension);
  CHECK(parse_category("Non-English") == ErrorCategory::NonEnglish);
  CHECK_FALSE(parse_category("NOT_CHECKABLE").has_value());
  CHECK(is_excluded_category("not checkable"));
  CHECK_FALSE(parse_category("TYPO").has_value());
  for (auto c : kAllCategories) CHECK(parse_category(category_name(c)) == c);
}

TEST_CASE("span validation") {
  CHECK(codes(sample("abcdef", {{0, 3, "WORD", ""}, {3, 6, "NAME", ""}})).empty());
  CHECK(codes(sample("abc", {{1, 4, "WORD", ""}})) == std::vector{AnnotationViolationCode::OutOfRange});
  CHECK(codes(sample("abc", {{2, 2, "WORD", ""}})) == std::vector{AnnotationViolationCode::OutOfRange});
  CHECK(codes(sample("abcdef", {{0, 4, "WORD", ""}, {3, 6, "NAME", ""}})) ==
        std::vector{AnnotationViolationCode::Overlap});
  CHECK(codes(sample("abc", {{0, 1, "TYPO", ""}})) == std::vector{AnnotationViolationCode::UnknownCategory});
  CHECK(codes(sample("abc", {{0, 1, "NOT_CHECKABLE", ""}})) ==
        std::vector{AnnotationViolationCode::ExcludedCategory});
  // "é" is two bytes; offset 2 splits it
  CHECK(codes(sample("a\xC3\xA9z", {{0, 2, "WORD", ""}})) == std::vector{AnnotationViolationCode::MisalignedOffset});
  CHECK(codes(sample("a\xC3\xA9z", {{0, 3, "WORD", ""}})).empty());
}

TEST_CASE("sample classes: spans dominate the omission flag") {
  CHECK(classify_sample(sample("x", {})) == SampleClass::NoError);
  CHECK(classify_sample(sample("x", {}, true)) == SampleClass::Omissions);
  CHECK(classify_sample(sample("x", {{0, 1, "WORD", ""}}, true)) == SampleClass::Errors);
}

TEST_CASE("percentages and reductions") {
  CHECK(percent_of(1, 2) == 50);
  CHECK(percent_of(1, 8) == 13);  // 12.5 rounds up
  CHECK(percent_of(0, 5) == 0);
  CHECK_THROWS_AS(percent_of(1, 0), DivisionByZero);
  CHECK(error_reduction(134, 51) == 62);
  CHECK(error_reduction(95, 41) == 57);
  CHECK(error_reduction(48, 26) == 46);
  CHECK(error_reduction(36, 17) == 53);
  CHECK(error_reduction(50, 24) == 52);
  CHECK(error_reduction(45, 11) == 76);
  CHECK(error_reduction(44, 11) == 75);
  CHECK(error_reduction(10, 15) == -50);
  CHECK(error_reduction(8, 9) == -12);  // -12.5 rounds toward +inf
  CHECK_THROWS_AS(error_reduction(0, 0), DivisionByZero);
}

TEST_CASE("property: percent_of agrees with exact rational rounding") {
  for (std::size_t whole = 1; whole <= 200; ++whole)
    for (std::size_t part = 0; part <= whole; ++part) {
      // round-half-up of 100*part/whole, done with integers
      int want = static_cast<int>((200 * part + whole) / (2 * whole));
      REQUIRE(percent_of(part, whole) == want);
    }
}

TEST_CASE("pilot corpus counts") {
  auto corpus = support::load_annotations("annotations/pilot_t5.jsonl");
  for (const auto& s : corpus) REQUIRE(validate_annotations(s).empty());

  auto before = class_counts(corpus, "T5-base", Phase::Before);
  CHECK(before.no_error == 358);
  CHECK(before.omissions == 272);
  CHECK(before.errors == 124);
  CHECK(before.total() == 754);
  CHECK(std::abs(percent_of(before.no_error, before.total()) - 47) <= 1);
  CHECK(std::abs(percent_of(before.omissions, before.total()) - 36) <= 1);
  CHECK(std::abs(percent_of(before.errors, before.total()) - 17) <= 1);

  auto cats = category_counts(corpus, "T5-base", Phase::Before);
  CHECK(cats.total() == 134);
  CHECK(category_counts(corpus, "T5-base", Phase::After).total() == 51);
  CHECK(category_counts(corpus, "T5-large", Phase::Before).total() == 95);
  CHECK(category_counts(corpus, "T5-large", Phase::After).total() == 41);

  auto sum = summarize(corpus, Grouping::ByModelPhase);
  REQUIRE(sum.by_model.size() == 2);
  CHECK(sum.by_model[0].model_id == "T5-base");
  CHECK(model(sum, "T5-base").reduction == 62);
  CHECK(model(sum, "T5-large").reduction == 57);
  CHECK(model(sum, "T5-base").before.classes == before);
  CHECK(render_summary(sum).find("62%") != std::string::npos);
}

TEST_CASE("challenging set summaries") {
  auto corpus = support::load_annotations("annotations/challenging_40.jsonl");
  auto sum = summarize(corpus, Grouping::ByModelPhase);
  REQUIRE(sum.by_model.size() == 4);
  CHECK(model(sum, "T5-base").reduction == 46);
  CHECK(model(sum, "T5-large").reduction == 53);
  CHECK(model(sum, "Llama-2-7B").reduction == 52);
  CHECK(model(sum, "Llama-2-13B").reduction == 75);
  CHECK(model(sum, "Llama-2-13B").before.categories.total() == 44);

  auto by_problem = summarize(corpus, Grouping::ByProblemType);
  REQUIRE(by_problem.by_problem.size() == 4);
  for (const auto& m : by_problem.by_problem) {
    REQUIRE(m.stacks.size() == kAllProblems.size());
    std::size_t before = 0, after = 0;
    for (const auto& st : m.stacks) {
      CHECK(st.before.no_error == 0);
      before += st.before.total();
      after += st.after.total();
    }
    CHECK(before + m.unlabelled == m.plotted);
    CHECK(after == before);
  }
  const auto& l13 = by_problem.by_problem[3];
  CHECK(l13.model_id == "Llama-2-13B");
  const auto& leader = l13.stacks[static_cast<std::size_t>(Problem::LeaderNameListHazard)];
  CHECK(leader.after.no_error == 5);
  CHECK(leader.after.omissions == 2);
  CHECK(leader.after.errors == 3);
}

TEST_CASE("summaries of empty corpora") {
  std::vector<AnnotatedSample> none;
  auto s = summarize(none, Grouping::ByModelPhase);
  CHECK(s.by_model.empty());
  CHECK_NOTHROW(render_summary(s));

  // no errors before: reduction is undefined rather than a division by zero
  std::vector<AnnotatedSample> clean = {sample("ok", {})};
  clean[0].phase = Phase::After;
  s = summarize(clean, Grouping::ByModelPhase);
  REQUIRE(s.by_model.size() == 1);
  CHECK_FALSE(s.by_model[0].reduction.has_value());
}

TEST_CASE("property: span totals equal the sum of category counts") {
  support::Gen gen(41);
  std::vector<AnnotatedSample> corpus;
  std::size_t spans = 0;
  for (int n = 0; n < 300; ++n) {
    AnnotatedSample s = sample(std::string(40, 'x'), {});
    s.sample_id = std::to_string(n);
    s.model_id = gen.chance(0.5) ? "a" : "b";
    for (std::size_t pos = 0; pos + 3 < 40 && gen.chance(0.6); pos += gen.range(3, 10)) {
      s.spans.push_back({pos, pos + 3, std::string(category_name(gen.pick(std::vector(kAllCategories.begin(),
                                                                                          kAllCategories.end())))),
                         ""});
    }
    REQUIRE(validate_annotations(s).empty());
    if (s.model_id == "a") spans += s.spans.size();
    corpus.push_back(std::move(s));
  }
  auto counts = category_counts(corpus, "a", Phase::Before);
  std::size_t sum = 0;
  for (auto c : kAllCategories) sum += counts[c];
  CHECK(counts.total() == sum);
  CHECK(sum == spans);
}
