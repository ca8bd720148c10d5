#include "tabfix/annotation.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>

#include "tabfix/errors.hpp"
#include "tabfix/text.hpp"

namespace tabfix {

std::string_view category_name(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::Word: return "WORD";
    case ErrorCategory::Name: return "NAME";
    case ErrorCategory::DateDimension: return "DATE_DIMENSION";
    case ErrorCategory::Number: return "NUMBER";
    case ErrorCategory::Other: return "OTHER";
    case ErrorCategory::Context: return "CONTEXT";
    case ErrorCategory::Addition: return "ADDITION";
    case ErrorCategory::NonEnglish: return "NON_ENGLISH";
  }
  return "?";
}

namespace {
std::string canonical_label(std::string_view s) {
  std::string out;
  for (char c : text::trim(s)) {
    if (c == '-' || c == ' ') c = '_';
    if (text::is_lower(c)) c = static_cast<char>(c - 'a' + 'A');
    out.push_back(c);
  }
  return out;
}
}  // namespace

std::optional<ErrorCategory> parse_category(std::string_view s) {
  std::string k = canonical_label(s);
  if (k == "DATE" || k == "DATE_DIM") return ErrorCategory::DateDimension;
  for (auto c : kAllCategories)
    if (k == category_name(c)) return c;
  return std::nullopt;
}

bool is_excluded_category(std::string_view s) { return canonical_label(s) == "NOT_CHECKABLE"; }

std::string_view phase_name(Phase p) { return p == Phase::Before ? "before" : "after"; }

std::optional<Phase> parse_phase(std::string_view s) {
  if (text::iequals(s, "before")) return Phase::Before;
  if (text::iequals(s, "after")) return Phase::After;
  return std::nullopt;
}

std::string_view annotation_violation_name(AnnotationViolationCode code) {
  switch (code) {
    case AnnotationViolationCode::OutOfRange: return "OutOfRange";
    case AnnotationViolationCode::Overlap: return "Overlap";
    case AnnotationViolationCode::UnknownCategory: return "UnknownCategory";
    case AnnotationViolationCode::ExcludedCategory: return "ExcludedCategory";
    case AnnotationViolationCode::MisalignedOffset: return "MisalignedOffset";
  }
  return "?";
}

std::vector<AnnotationViolation> validate_annotations(const AnnotatedSample& s) {
  std::vector<AnnotationViolation> out;
  const std::size_t len = s.text.size();
  std::vector<std::size_t> in_range;
  for (std::size_t i = 0; i < s.spans.size(); ++i) {
    const ErrorSpan& sp = s.spans[i];
    std::string where = "span " + std::to_string(i) + " [" + std::to_string(sp.start) + ", " +
                        std::to_string(sp.end) + ")";
    if (is_excluded_category(sp.label))
      out.push_back({AnnotationViolationCode::ExcludedCategory, i, where + ": NOT_CHECKABLE is not used"});
    else if (!sp.category())
      out.push_back({AnnotationViolationCode::UnknownCategory, i, where + ": unknown category '" + sp.label + "'"});
    if (sp.start >= sp.end || sp.end > len) {
      out.push_back({AnnotationViolationCode::OutOfRange, i,
                     where + ": outside text of " + std::to_string(len) + " bytes"});
      continue;
    }
    if (!text::is_utf8_boundary(s.text, sp.start) || !text::is_utf8_boundary(s.text, sp.end))
      out.push_back({AnnotationViolationCode::MisalignedOffset, i, where + ": splits a UTF-8 sequence"});
    in_range.push_back(i);
  }
  std::sort(in_range.begin(), in_range.end(), [&](std::size_t a, std::size_t b) {
    return std::pair(s.spans[a].start, a) < std::pair(s.spans[b].start, b);
  });
  for (std::size_t k = 1; k < in_range.size(); ++k) {
    const auto& prev = s.spans[in_range[k - 1]];
    const auto& cur = s.spans[in_range[k]];
    if (cur.start < prev.end)
      out.push_back({AnnotationViolationCode::Overlap, in_range[k],
                     "span " + std::to_string(in_range[k]) + " overlaps span " +
                         std::to_string(in_range[k - 1])});
  }
  return out;
}

std::string_view sample_class_name(SampleClass c) {
  switch (c) {
    case SampleClass::NoError: return "no_error";
    case SampleClass::Omissions: return "omissions";
    case SampleClass::Errors: return "errors";
  }
  return "?";
}

SampleClass classify_sample(const AnnotatedSample& s) {
  if (!s.spans.empty()) return SampleClass::Errors;
  return s.omission ? SampleClass::Omissions : SampleClass::NoError;
}

std::size_t CategoryCounts::total() const {
  std::size_t n = 0;
  for (auto c : counts) n += c;
  return n;
}

void ClassCounts::add(SampleClass c) {
  switch (c) {
    case SampleClass::NoError: ++no_error; break;
    case SampleClass::Omissions: ++omissions; break;
    case SampleClass::Errors: ++errors; break;
  }
}

CategoryCounts category_counts(std::span<const AnnotatedSample> corpus, std::string_view model_id,
                               Phase phase) {
  CategoryCounts out;
  for (const auto& s : corpus) {
    if (s.model_id != model_id || s.phase != phase) continue;
    for (const auto& sp : s.spans)
      if (auto c = sp.category()) ++out[*c];
  }
  return out;
}

ClassCounts class_counts(std::span<const AnnotatedSample> corpus, std::string_view model_id, Phase phase) {
  ClassCounts out;
  for (const auto& s : corpus)
    if (s.model_id == model_id && s.phase == phase) out.add(classify_sample(s));
  return out;
}

namespace {

// floor((2*num + den) / (2*den)) for den > 0, i.e. num/den rounded half up
int round_half_up(std::int64_t num, std::int64_t den) {
  std::int64_t a = 2 * num + den, b = 2 * den;
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return static_cast<int>(q);
}

}  // namespace

int percent_of(std::size_t part, std::size_t whole) {
  if (whole == 0) throw DivisionByZero("percentage of an empty total");
  return round_half_up(100 * static_cast<std::int64_t>(part), static_cast<std::int64_t>(whole));
}

int error_reduction(std::size_t before_total, std::size_t after_total) {
  if (before_total == 0) throw DivisionByZero("error reduction with zero errors before");
  auto b = static_cast<std::int64_t>(before_total);
  auto a = static_cast<std::int64_t>(after_total);
  return round_half_up(100 * (b - a), b);
}

std::optional<Grouping> parse_grouping(std::string_view s) {
  if (s == "model-phase" || s == "ByModelPhase") return Grouping::ByModelPhase;
  if (s == "problem-type" || s == "ByProblemType") return Grouping::ByProblemType;
  return std::nullopt;
}

Summary summarize(std::span<const AnnotatedSample> corpus, Grouping grouping) {
  Summary out;
  out.grouping = grouping;
  std::vector<std::string> models;
  for (const auto& s : corpus)
    if (std::find(models.begin(), models.end(), s.model_id) == models.end()) models.push_back(s.model_id);

  if (grouping == Grouping::ByModelPhase) {
    for (const auto& m : models) {
      ModelSummary ms;
      ms.model_id = m;
      ms.before = {category_counts(corpus, m, Phase::Before), class_counts(corpus, m, Phase::Before)};
      ms.after = {category_counts(corpus, m, Phase::After), class_counts(corpus, m, Phase::After)};
      if (ms.before.categories.total() > 0)
        ms.reduction = error_reduction(ms.before.categories.total(), ms.after.categories.total());
      out.by_model.push_back(std::move(ms));
    }
    return out;
  }

  for (const auto& m : models) {
    std::map<std::string, std::pair<const AnnotatedSample*, const AnnotatedSample*>> pairs;
    std::vector<std::string> order;
    for (const auto& s : corpus) {
      if (s.model_id != m) continue;
      auto [it, fresh] = pairs.try_emplace(s.sample_id);
      if (fresh) order.push_back(s.sample_id);
      (s.phase == Phase::Before ? it->second.first : it->second.second) = &s;
    }
    ModelProblemSummary mp;
    mp.model_id = m;
    for (Problem p : kAllProblems) mp.stacks.push_back({p, {}, {}});
    for (const auto& id : order) {
      auto [before, after] = pairs[id];
      if (!before || classify_sample(*before) == SampleClass::NoError) continue;
      ++mp.plotted;
      auto type = before->problem_type ? before->problem_type : (after ? after->problem_type : std::nullopt);
      if (!type) {
        ++mp.unlabelled;
        continue;
      }
      auto& stack = mp.stacks[static_cast<std::size_t>(*type)];
      stack.before.add(classify_sample(*before));
      if (after) stack.after.add(classify_sample(*after));
    }
    out.by_problem.push_back(std::move(mp));
  }
  return out;
}

namespace {

std::string pad(std::string s, std::size_t w, bool right = false) {
  if (s.size() >= w) return s;
  return right ? std::string(w - s.size(), ' ') + s : s + std::string(w - s.size(), ' ');
}

std::string render_rows(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (width.size() <= i) width.push_back(0);
      width[i] = std::max(width[i], r[i].size());
    }
  std::ostringstream os;
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) line += "  ";
      line += pad(r[i], width[i], i >= 2);
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    os << line << '\n';
  }
  return os.str();
}

}  // namespace

std::string render_summary(const Summary& s) {
  std::vector<std::vector<std::string>> rows;
  if (s.grouping == Grouping::ByModelPhase) {
    std::vector<std::string> head = {"model", "phase"};
    for (auto c : kAllCategories) head.emplace_back(category_name(c));
    for (const char* h : {"TOTAL", "no_error", "omissions", "errors", "reduction"}) head.emplace_back(h);
    rows.push_back(head);
    for (const auto& m : s.by_model) {
      for (Phase p : {Phase::Before, Phase::After}) {
        const PhaseSummary& ps = p == Phase::Before ? m.before : m.after;
        std::vector<std::string> r = {m.model_id, std::string(phase_name(p))};
        for (auto c : kAllCategories) r.push_back(std::to_string(ps.categories[c]));
        r.push_back(std::to_string(ps.categories.total()));
        r.push_back(std::to_string(ps.classes.no_error));
        r.push_back(std::to_string(ps.classes.omissions));
        r.push_back(std::to_string(ps.classes.errors));
        r.push_back(p == Phase::After && m.reduction ? std::to_string(*m.reduction) + "%" : "");
        rows.push_back(std::move(r));
      }
    }
    return render_rows(rows);
  }
  rows.push_back({"model", "problem", "before_no_error", "before_omissions", "before_errors",
                  "after_no_error", "after_omissions", "after_errors"});
  for (const auto& m : s.by_problem)
    for (const auto& st : m.stacks)
      rows.push_back({m.model_id, std::string(problem_label(st.problem)),
                      std::to_string(st.before.no_error), std::to_string(st.before.omissions),
                      std::to_string(st.before.errors), std::to_string(st.after.no_error),
                      std::to_string(st.after.omissions), std::to_string(st.after.errors)});
  return render_rows(rows);
}

}  // namespace tabfix
