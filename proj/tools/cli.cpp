#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "tabfix/annotation.hpp"
#include "tabfix/correction.hpp"
#include "tabfix/diagnostics.hpp"
#include "tabfix/errors.hpp"
#include "tabfix/json_io.hpp"
#include "tabfix/kappa.hpp"
#include "tabfix/linearization.hpp"
#include "tabfix/prompts.hpp"
#include "tabfix/rules.hpp"

namespace tabfix::cli {

namespace {

using io::json;

enum class Format { Structured, Plain };

struct RunConfig {
  std::vector<std::string> inputs;
  std::string rules_path;
  std::string output_path;
  std::string linearized_out;
  std::size_t max_rows = 20;
  std::size_t max_cols = 10;
  std::size_t max_records = 2;
  bool truncate = false;
  std::string group_by = "model-phase";
  std::string template_id = "election-fields";
  std::string format = "structured";
  unsigned jobs = 1;

  Format fmt() const { return format == "plain" ? Format::Plain : Format::Structured; }
};

// Worst outcome wins: schema/io, then validation, then findings.
int rank(int code) {
  switch (code) {
    case kIoOrSchema: return 3;
    case kValidation: return 2;
    case kFindings: return 1;
    default: return 0;
  }
}

int worse(int a, int b) { return rank(b) > rank(a) ? b : a; }

struct Line {
  std::string source;
  std::size_t number = 0;
  std::string text;
};

class IoFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void read_stream(std::istream& is, const std::string& source, std::vector<Line>& out) {
  std::string text;
  std::size_t n = 0;
  while (std::getline(is, text)) {
    ++n;
    if (n == 1 && text.rfind("\xEF\xBB\xBF", 0) == 0) text.erase(0, 3);
    if (!text.empty() && text.back() == '\r') text.pop_back();
    out.push_back({source, n, std::move(text)});
  }
  if (is.bad()) throw IoFailure("read error on " + source);
}

std::vector<Line> read_inputs(const RunConfig& cfg, std::istream& in) {
  std::vector<Line> lines;
  if (cfg.inputs.empty()) {
    read_stream(in, "<stdin>", lines);
    return lines;
  }
  for (const auto& path : cfg.inputs) {
    if (path == "-") {
      read_stream(in, "<stdin>", lines);
      continue;
    }
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoFailure("cannot open " + path);
    read_stream(f, path, lines);
  }
  return lines;
}

bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

bool looks_like_json(std::string_view s) {
  auto p = s.find_first_not_of(" \t");
  return p != std::string_view::npos && s[p] == '{';
}

struct Outcome {
  int code = kOk;
  std::optional<json> record;
  std::vector<std::string> messages;  // to stderr, prefixed with the location
  std::string plain;                  // plain-format output
  std::optional<std::string> side;    // fix: linearized corpus line
};

// Bounded worker pool; results land in input order.
template <class F>
std::vector<Outcome> process(const std::vector<const Line*>& items, unsigned jobs, F fn) {
  std::vector<Outcome> out(items.size());
  auto run = [&](std::size_t i) {
    try {
      out[i] = fn(*items[i]);
    } catch (const std::exception& e) {
      out[i].code = kIoOrSchema;
      out[i].messages.push_back(std::string("internal error: ") + e.what());
    }
  };
  if (jobs <= 1 || items.size() < 2) {
    for (std::size_t i = 0; i < items.size(); ++i) run(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    unsigned n = static_cast<unsigned>(std::min<std::size_t>(jobs, items.size()));
    for (unsigned t = 0; t < n; ++t)
      pool.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < items.size();) run(i);
      });
  }
  return out;
}

std::string where(const Line& l, bool many_sources) {
  return (many_sources ? l.source + ":" : std::string("line ")) + std::to_string(l.number);
}

json id_of(const json& doc) {
  auto it = doc.find("id");
  if (it == doc.end()) return nullptr;
  return *it;
}

std::string id_suffix(const json& id) {
  if (id.is_null()) return "";
  return " [" + (id.is_string() ? id.get<std::string>() : id.dump()) + "]";
}

json parse_json_line(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError("", std::string("malformed JSON: ") + e.what());
  }
}

// Split-cell payloads carry newlines and tabs.
std::string one_line(std::string s) {
  std::string out;
  for (char c : s) {
    if (c == '\n') out += " | ";
    else if (c == '\t') out += ", ";
    else out += c;
  }
  return out;
}

std::string loc_text(const std::optional<CellRef>& loc) {
  if (!loc) return "table";
  return "row " + std::to_string(loc->row) + " cell " + std::to_string(loc->index);
}

std::string violation_text(const Violation& v) {
  std::string s(violation_name(v.code));
  if (v.row) s += " row " + std::to_string(*v.row);
  if (v.col) s += " col " + std::to_string(*v.col);
  return s + ": " + v.message;
}

class Command {
 public:
  Command(const RunConfig& cfg, const LintConfig& lint, std::istream& in, std::ostream& out,
          std::ostream& err)
      : cfg_(cfg), lint_(lint), in_(in), out_(out), err_(err) {}

  int parse();
  int lint();
  int fix();
  int stats();
  int kappa();
  int prompt();

 private:
  std::vector<const Line*> records(const std::vector<Line>& lines) const {
    std::vector<const Line*> out;
    for (const auto& l : lines)
      if (!blank(l.text)) out.push_back(&l);
    return out;
  }
  bool many() const { return cfg_.inputs.size() > 1; }
  int emit(const std::vector<Outcome>& outcomes);

  const RunConfig& cfg_;
  const LintConfig& lint_;
  std::istream& in_;
  std::ostream& out_;
  std::ostream& err_;
};

int Command::emit(const std::vector<Outcome>& outcomes) {
  int code = kOk;
  for (const auto& o : outcomes) {
    code = worse(code, o.code);
    for (const auto& m : o.messages) err_ << m << '\n';
    if (cfg_.fmt() == Format::Plain) {
      out_ << o.plain;
    } else if (o.record) {
      out_ << o.record->dump() << '\n';
    }
  }
  return code;
}

int Command::parse() {
  auto lines = read_inputs(cfg_, in_);
  auto items = records(lines);
  auto outcomes = process(items, cfg_.jobs, [&](const Line& l) {
    Outcome o;
    std::string at = where(l, many());
    json rec = {{"line", l.number}};
    if (many()) rec["source"] = l.source;
    std::string text = l.text;
    try {
      if (looks_like_json(text)) {
        json doc = parse_json_line(text);
        if (!doc.is_object() || !doc.contains("linearized") || !doc["linearized"].is_string())
          throw SchemaError("linearized", "expected a string field");
        text = doc["linearized"].get<std::string>();
      }
      LinearizedInput a = parse_linearized(text);
      std::string rendered = render_linearized(a);
      LinearizedInput b = parse_linearized(rendered);
      // values keep inner whitespace on parse, so compare canonical renders
      bool ok = a.cells.size() == b.cells.size() && render_linearized(b) == rendered;
      rec["ok"] = ok;
      rec["rendered"] = rendered;
      rec["cells"] = a.cells.size();
      if (!ok) {
        o.code = kValidation;
        o.messages.push_back(at + ": round-trip mismatch");
      }
      o.plain = at + ": " + (ok ? "ok" : "mismatch") + "\n";
    } catch (const ParseError& e) {
      o.code = kValidation;
      rec["ok"] = false;
      rec["error"] = {{"code", parse_error_name(e.code())}, {"offset", e.offset()}, {"message", e.what()}};
      o.messages.push_back(at + ": " + e.what());
      o.plain = at + ": error\n";
    } catch (const SchemaError& e) {
      o.code = kIoOrSchema;
      rec["ok"] = false;
      rec["error"] = {{"code", "SchemaError"}, {"message", e.what()}};
      o.messages.push_back(at + ": " + e.what());
      o.plain = at + ": error\n";
    }
    o.record = std::move(rec);
    return o;
  });
  int code = emit(outcomes);
  if (cfg_.fmt() == Format::Plain) {
    std::size_t bad = std::count_if(outcomes.begin(), outcomes.end(), [](const Outcome& o) { return o.code; });
    out_ << items.size() << " records, " << bad << " failed\n";
  }
  return code;
}

int Command::lint() {
  auto lines = read_inputs(cfg_, in_);
  auto items = records(lines);
  auto outcomes = process(items, cfg_.jobs, [&](const Line& l) {
    Outcome o;
    std::string at = where(l, many());
    json rec = {{"line", l.number}};
    if (many()) rec["source"] = l.source;
    try {
      json doc = parse_json_line(l.text);
      SourceTable table = io::parse_source_table(doc);
      json id = id_of(doc);
      rec["id"] = id;
      at += id_suffix(id);
      ValidationReport vr = validate(table);
      rec["violations"] = io::to_json(vr);
      if (vr.blocking()) {
        o.code = kValidation;
        rec["valid"] = false;
        for (const auto& v : vr.violations) o.messages.push_back(at + ": " + violation_text(v));
        o.plain = at + ": invalid table\n";
        o.record = std::move(rec);
        return o;
      }
      rec["valid"] = true;
      DiagnosticReport report = tabfix::lint(table, lint_);
      json r = io::to_json(report);
      for (auto& [k, v] : r.items()) rec[k] = v;
      if (!report.diagnostics.empty()) o.code = kFindings;
      if (report.diagnostics.empty()) o.plain = at + ": clean\n";
      for (const auto& d : report.diagnostics)
        o.plain += at + ": " + std::string(problem_name(d.problem)) + " at " + loc_text(d.location) +
                   ": " + d.message + "\n";
    } catch (const SchemaError& e) {
      o.code = kIoOrSchema;
      rec["error"] = {{"code", "SchemaError"}, {"message", e.what()}};
      o.messages.push_back(at + ": " + e.what());
      o.plain = at + ": error\n";
    }
    o.record = std::move(rec);
    return o;
  });
  int code = emit(outcomes);
  if (cfg_.fmt() == Format::Plain) {
    std::map<Problem, std::size_t> tables;
    for (const auto& o : outcomes) {
      if (!o.record || !o.record->contains("diagnostics")) continue;
      std::vector<Problem> seen;
      for (const auto& d : (*o.record)["diagnostics"]) {
        Problem p = *parse_problem(d["problem"].get<std::string>());
        if (std::find(seen.begin(), seen.end(), p) == seen.end()) seen.push_back(p);
      }
      for (Problem p : seen) ++tables[p];
    }
    out_ << "\ntables per problem type\n";
    std::size_t w = 0;
    for (Problem p : kAllProblems) w = std::max(w, problem_label(p).size());
    for (Problem p : kAllProblems) {
      std::string label(problem_label(p));
      out_ << label << std::string(w - label.size() + 2, ' ') << tables[p] << '\n';
    }
  }
  return code;
}

int Command::fix() {
  auto lines = read_inputs(cfg_, in_);
  auto items = records(lines);
  auto outcomes = process(items, cfg_.jobs, [&](const Line& l) {
    Outcome o;
    std::string at = where(l, many());
    json rec = {{"line", l.number}};
    if (many()) rec["source"] = l.source;
    try {
      json doc = parse_json_line(l.text);
      SourceTable table = io::parse_source_table(doc);
      json id = id_of(doc);
      rec["id"] = id;
      at += id_suffix(id);
      std::string title = table.page_title;
      if (auto it = doc.find("title"); it != doc.end() && it->is_string()) title = it->get<std::string>();
      CorrectionResult result = correct(table, title, lint_);
      json r = io::to_json(result);
      for (auto& [k, v] : r.items()) rec[k] = v;
      bool replay_ok = replay_edits(table, result.edits) == result.table;
      rec["replay_ok"] = replay_ok;
      if (!replay_ok) {
        o.code = kValidation;
        o.messages.push_back(at + ": edit replay does not reproduce the corrected table");
      }
      o.side = r["linearized"].get<std::string>();
      o.plain = at + ": " + std::to_string(result.edits.size()) + " edits" +
                (result.rejected ? ", rejected: " + *result.rejected : "") + "\n";
      for (const auto& e : result.edits) {
        o.plain += "  " + std::string(edit_kind_name(e.kind));
        if (e.row) o.plain += " row " + std::to_string(*e.row);
        if (e.col) o.plain += " col " + std::to_string(*e.col);
        o.plain += ": " + one_line(e.before) + " -> " + one_line(e.after) + "\n";
      }
      o.plain += "  " + leader_data_message(result.leader_data) + "\n";
      o.plain += "  " + *o.side + "\n";
    } catch (const InvalidTable& e) {
      o.code = kValidation;
      rec["error"] = {{"code", "InvalidTable"}, {"violations", io::to_json(e.report())}};
      for (const auto& v : e.report().violations) o.messages.push_back(at + ": " + violation_text(v));
      o.plain = at + ": invalid table\n";
    } catch (const SchemaError& e) {
      o.code = kIoOrSchema;
      rec["error"] = {{"code", "SchemaError"}, {"message", e.what()}};
      o.messages.push_back(at + ": " + e.what());
      o.plain = at + ": error\n";
    }
    o.record = std::move(rec);
    return o;
  });
  if (!cfg_.linearized_out.empty()) {
    std::ofstream f(cfg_.linearized_out, std::ios::binary);
    if (!f) throw IoFailure("cannot write " + cfg_.linearized_out);
    for (const auto& o : outcomes)
      if (o.side) f << *o.side << '\n';
    if (!f) throw IoFailure("write error on " + cfg_.linearized_out);
  }
  return emit(outcomes);
}

int Command::stats() {
  auto lines = read_inputs(cfg_, in_);
  auto grouping = parse_grouping(cfg_.group_by);
  std::vector<AnnotatedSample> samples;
  int code = kOk;
  bool first = true;
  for (const auto& l : lines) {
    if (blank(l.text)) continue;
    std::string at = where(l, many());
    try {
      json doc = parse_json_line(l.text);
      if (first && io::is_annotation_header(doc)) {
        io::check_annotation_header(doc);
        first = false;
        continue;
      }
      first = false;
      AnnotatedSample s = io::parse_annotated_sample(doc);
      for (const auto& v : validate_annotations(s)) {
        code = worse(code, kValidation);
        err_ << at << " (" << s.sample_id << "): " << annotation_violation_name(v.code) << ": " << v.message
             << '\n';
      }
      samples.push_back(std::move(s));
    } catch (const SchemaError& e) {
      code = worse(code, kIoOrSchema);
      err_ << at << ": " << e.what() << '\n';
    }
  }
  if (code != kOk) return code;
  Summary summary = summarize(samples, *grouping);
  if (cfg_.fmt() == Format::Plain)
    out_ << render_summary(summary);
  else
    out_ << io::to_json(summary).dump() << '\n';
  return kOk;
}

int Command::kappa() {
  auto lines = read_inputs(cfg_, in_);
  bool labeled = false;
  for (const auto& l : lines) {
    auto p = l.text.find_first_not_of(" \t");
    if (p == std::string::npos || l.text[p] == '#') continue;
    labeled = l.text[p] == '{';
    break;
  }
  try {
    RatingMatrix m;
    std::optional<ConfusionMatrix> cm;
    if (labeled) {
      std::vector<LabeledItem> items;
      for (const auto& l : lines) {
        if (blank(l.text)) continue;
        try {
          items.push_back(io::parse_labeled_item(parse_json_line(l.text)));
        } catch (const SchemaError& e) {
          throw SchemaError(where(l, many()) + (e.path().empty() ? "" : " " + e.path()), e.what());
        }
      }
      if (items.empty()) throw SchemaError("", "no labelled items");
      std::size_t raters = items.front().labels.size();
      m = rating_matrix(items, raters);
      cm = confusion_matrix(items, raters);
    } else {
      std::string all;
      for (const auto& l : lines) all += l.text + "\n";
      m = parse_rating_matrix(all);
    }
    KappaResult k = fleiss_kappa_detail(m);
    if (cfg_.fmt() == Format::Plain) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "items %zu  raters %zu  pa %.4f  pe %.4f  kappa %.4f\n", m.items(),
                    k.raters, k.pa, k.pe, k.kappa);
      out_ << buf;
      if (cm) out_ << '\n' << render_confusion(*cm);
    } else {
      json rec = io::to_json(k);
      rec["items"] = m.items();
      if (cm) rec["confusion"] = io::to_json(*cm);
      out_ << rec.dump() << '\n';
    }
    return kOk;
  } catch (const SchemaError& e) {
    err_ << e.what() << '\n';
    return kIoOrSchema;
  } catch (const ArityMismatch& e) {
    err_ << e.what() << '\n';
    return kValidation;
  } catch (const DegenerateAgreement& e) {
    err_ << e.what() << '\n';
    return kValidation;
  } catch (const std::invalid_argument& e) {
    err_ << e.what() << '\n';
    return kValidation;
  }
}

int Command::prompt() {
  for (const auto& t : lint_.templates) {
    try {
      validate_template(t);
    } catch (const Error& e) {
      err_ << "template '" << t.id << "': " << e.what() << '\n';
      return kValidation;
    }
  }
  const PromptTemplate* tmpl = find_template(cfg_.template_id, lint_.templates);
  if (!tmpl) {
    err_ << "unknown template '" << cfg_.template_id << "'\n";
    return kIoOrSchema;
  }
  auto lines = read_inputs(cfg_, in_);
  auto items = records(lines);
  auto outcomes = process(items, cfg_.jobs, [&](const Line& l) {
    Outcome o;
    std::string at = where(l, many());
    json rec = {{"line", l.number}, {"template", tmpl->id}};
    if (many()) rec["source"] = l.source;
    try {
      LinearizedInput input;
      if (looks_like_json(l.text)) {
        json doc = parse_json_line(l.text);
        if (!doc.is_object()) throw SchemaError("", "expected an object");
        rec["id"] = id_of(doc);
        if (doc.contains("rows"))
          input = extract_highlighted(io::parse_source_table(doc));
        else if (doc.contains("linearized") && doc["linearized"].is_string())
          input = parse_linearized(doc["linearized"].get<std::string>());
        else
          throw SchemaError("", "expected a table (rows) or a linearized string");
      } else {
        input = parse_linearized(l.text);
      }
      std::string p = build_prompt(*tmpl, input);
      rec["prompt"] = p;
      o.plain = p + "\n\n";
    } catch (const ParseError& e) {
      o.code = kValidation;
      rec["error"] = {{"code", parse_error_name(e.code())}, {"offset", e.offset()}, {"message", e.what()}};
      o.messages.push_back(at + ": " + e.what());
    } catch (const InvalidTable& e) {
      o.code = kValidation;
      rec["error"] = {{"code", "InvalidTable"}, {"violations", io::to_json(e.report())}};
      for (const auto& v : e.report().violations) o.messages.push_back(at + ": " + violation_text(v));
    } catch (const SchemaError& e) {
      o.code = kIoOrSchema;
      rec["error"] = {{"code", "SchemaError"}, {"message", e.what()}};
      o.messages.push_back(at + ": " + e.what());
    }
    o.record = std::move(rec);
    return o;
  });
  return emit(outcomes);
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("inputs", cfg.inputs, "Input files; '-' or none reads stdin");
  sub->add_option("--rules", cfg.rules_path, "Versioned rules file (JSON)");
  sub->add_option("-o,--output", cfg.output_path, "Write records here instead of stdout");
  sub->add_option("--format", cfg.format, "Report format")
      ->check(CLI::IsMember({"structured", "plain"}))
      ->capture_default_str();
  sub->add_option("--jobs", cfg.jobs, "Worker threads; 0 uses every core")->capture_default_str();
}

void add_table_opts(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--max-rows", cfg.max_rows, "Row limit")->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--max-cols", cfg.max_cols, "Column limit")->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--max-records", cfg.max_records, "Records kept per packed cell; 0 keeps all")
      ->capture_default_str();
  sub->add_flag("--truncate", cfg.truncate, "Drop middle rows of over-long tables instead of rejecting");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lint, correct and score table-to-text inputs", "tabfix"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* parse = app.add_subcommand("parse", "Round-trip a linearized corpus");
  auto* lint = app.add_subcommand("lint", "Report input problems per table");
  auto* fix = app.add_subcommand("fix", "Correct tables and emit the edits");
  auto* stats = app.add_subcommand("stats", "Summarise annotated generations");
  auto* kappa = app.add_subcommand("kappa", "Fleiss' kappa and confusion matrix");
  auto* prompt = app.add_subcommand("prompt", "Fill a prompt template");
  for (auto* sub : {parse, lint, fix, stats, kappa, prompt}) add_common(sub, cfg);
  for (auto* sub : {lint, fix}) add_table_opts(sub, cfg);
  fix->add_option("--linearized-out", cfg.linearized_out, "Also write the corrected linearized corpus");
  stats->add_option("--group-by", cfg.group_by, "model-phase or problem-type")
      ->check(CLI::IsMember({"model-phase", "problem-type"}))
      ->capture_default_str();
  prompt->add_option("--template", cfg.template_id, "Template id")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kIoOrSchema;
  }

  LintConfig lint_cfg;
  try {
    if (!cfg.rules_path.empty()) lint_cfg = load_rules(cfg.rules_path);
  } catch (const std::exception& e) {
    err << "tabfix: rules: " << e.what() << '\n';
    return kIoOrSchema;
  }
  auto given = [&](CLI::App* sub, const char* name) {
    auto* opt = sub->get_option_no_throw(name);
    return opt && opt->count() > 0;
  };
  CLI::App* active = app.get_subcommands().front();
  if (given(active, "--max-rows") || cfg.rules_path.empty()) lint_cfg.size.max_rows = cfg.max_rows;
  if (given(active, "--max-cols") || cfg.rules_path.empty()) lint_cfg.size.max_cols = cfg.max_cols;
  if (given(active, "--max-records") || cfg.rules_path.empty()) lint_cfg.split.max_records = cfg.max_records;
  if (cfg.truncate) lint_cfg.truncate = true;
  if (cfg.jobs == 0) cfg.jobs = std::max(1u, std::thread::hardware_concurrency());

  std::ofstream file;
  std::ostream* sink = &out;
  if (!cfg.output_path.empty()) {
    file.open(cfg.output_path, std::ios::binary);
    if (!file) {
      err << "tabfix: cannot write " << cfg.output_path << '\n';
      return kIoOrSchema;
    }
    sink = &file;
  }

  Command cmd(cfg, lint_cfg, in, *sink, err);
  int rc = kOk;
  try {
    if (active == parse) rc = cmd.parse();
    else if (active == lint) rc = cmd.lint();
    else if (active == fix) rc = cmd.fix();
    else if (active == stats) rc = cmd.stats();
    else if (active == kappa) rc = cmd.kappa();
    else rc = cmd.prompt();
  } catch (const IoFailure& e) {
    err << "tabfix: " << e.what() << '\n';
    return kIoOrSchema;
  }
  sink->flush();
  if (!*sink) {
    err << "tabfix: write error\n";
    return kIoOrSchema;
  }
  return rc;
}

}  // namespace tabfix::cli
