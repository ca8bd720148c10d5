#include "tabfix/json_io.hpp"

#include "tabfix/errors.hpp"

namespace tabfix::io {

namespace {

std::string idx(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }
std::string field(const std::string& path, const char* key) {
  return path.empty() ? std::string(key) : path + "." + key;
}

const json* get(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() || it->is_null() ? nullptr : &*it;
}

std::string req_string(const json& obj, const char* key, const std::string& path) {
  const json* v = get(obj, key);
  if (!v) throw SchemaError(field(path, key), "missing required string");
  if (!v->is_string()) throw SchemaError(field(path, key), "expected a string");
  return v->get<std::string>();
}

std::string opt_string(const json& obj, const char* key, const std::string& path) {
  const json* v = get(obj, key);
  if (!v) return {};
  if (!v->is_string()) throw SchemaError(field(path, key), "expected a string");
  return v->get<std::string>();
}

bool opt_bool(const json& obj, const char* key, const std::string& path, bool dflt) {
  const json* v = get(obj, key);
  if (!v) return dflt;
  if (!v->is_boolean()) throw SchemaError(field(path, key), "expected a boolean");
  return v->get<bool>();
}

long long opt_int(const json& obj, const char* key, const std::string& path, long long dflt) {
  const json* v = get(obj, key);
  if (!v) return dflt;
  if (!v->is_number_integer()) throw SchemaError(field(path, key), "expected an integer");
  return v->get<long long>();
}

std::size_t req_offset(const json& obj, const char* key, const std::string& path) {
  const json* v = get(obj, key);
  if (!v) throw SchemaError(field(path, key), "missing required integer");
  if (!v->is_number_integer() || v->get<long long>() < 0)
    throw SchemaError(field(path, key), "expected a non-negative integer");
  return v->get<std::size_t>();
}

void require_object(const json& doc, const std::string& path) {
  if (!doc.is_object()) throw SchemaError(path, "expected an object");
}

json parse_text(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError("", std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

SourceTable parse_source_table(const json& doc) {
  require_object(doc, "");
  SourceTable t;
  t.page_title = req_string(doc, "page_title", "");
  t.section_title = opt_string(doc, "section_title", "");
  const json* rows = get(doc, "rows");
  if (!rows) throw SchemaError("rows", "missing required array");
  if (!rows->is_array()) throw SchemaError("rows", "expected an array");
  for (std::size_t r = 0; r < rows->size(); ++r) {
    const json& row = (*rows)[r];
    std::string rp = idx("rows", r);
    if (!row.is_array()) throw SchemaError(rp, "expected an array of cells");
    Row out;
    for (std::size_t i = 0; i < row.size(); ++i) {
      const json& c = row[i];
      std::string cp = idx(rp, i);
      require_object(c, cp);
      Cell cell;
      cell.value = req_string(c, "value", cp);
      cell.is_header = opt_bool(c, "is_header", cp, false);
      cell.highlighted = opt_bool(c, "highlighted", cp, false);
      long long cs = opt_int(c, "col_span", cp, 1), rs = opt_int(c, "row_span", cp, 1);
      if (cs < -1000000 || cs > 1000000) throw SchemaError(field(cp, "col_span"), "out of range");
      if (rs < -1000000 || rs > 1000000) throw SchemaError(field(cp, "row_span"), "out of range");
      cell.col_span = static_cast<int>(cs);
      cell.row_span = static_cast<int>(rs);
      out.push_back(std::move(cell));
    }
    t.rows.push_back(std::move(out));
  }
  return t;
}

SourceTable parse_source_table(std::string_view text) { return parse_source_table(parse_text(text)); }

json to_json(const SourceTable& t) {
  json rows = json::array();
  for (const auto& row : t.rows) {
    json r = json::array();
    for (const auto& c : row)
      r.push_back({{"value", c.value},
                   {"is_header", c.is_header},
                   {"col_span", c.col_span},
                   {"row_span", c.row_span},
                   {"highlighted", c.highlighted}});
    rows.push_back(std::move(r));
  }
  return {{"page_title", t.page_title}, {"section_title", t.section_title}, {"rows", std::move(rows)}};
}

json to_json(const LinearizedInput& in) {
  json cells = json::array();
  for (const auto& c : in.cells)
    cells.push_back({{"value", c.value}, {"col_headers", c.col_headers}, {"row_headers", c.row_headers}});
  json out = {{"page_title", in.page_title}, {"cells", std::move(cells)}};
  out["section_title"] = in.section_title ? json(*in.section_title) : json(nullptr);
  return out;
}

json to_json(const ValidationReport& report) {
  json arr = json::array();
  for (const auto& v : report.violations) {
    json j = {{"code", violation_name(v.code)}, {"message", v.message}};
    j["row"] = v.row ? json(*v.row) : json(nullptr);
    j["col"] = v.col ? json(*v.col) : json(nullptr);
    if (v.offset) j["offset"] = *v.offset;
    arr.push_back(std::move(j));
  }
  return arr;
}

json to_json(const Diagnostic& d) {
  json j = {{"problem", problem_name(d.problem)},
            {"label", problem_label(d.problem)},
            {"message", d.message},
            {"evidence", d.evidence}};
  if (d.location)
    j["location"] = {{"row", d.location->row}, {"col", d.location->index}};
  else
    j["location"] = "table";
  return j;
}

json to_json(const LeaderOrderReport& r) {
  json j = {{"scenario", scenario_name(r.scenario)},
            {"recorded_data", r.recorded_data},
            {"message", leader_data_message(r)}};
  j["leader_from_title"] = r.leader_from_title ? json(*r.leader_from_title) : json(nullptr);
  return j;
}

json to_json(const SizeVerdict& v) {
  return {{"manageable", v.manageable},
          {"rows", v.rows},
          {"cols", v.cols},
          {"max_rows", v.limits.max_rows},
          {"max_cols", v.limits.max_cols}};
}

json to_json(const DiagnosticReport& report) {
  json diags = json::array();
  for (const auto& d : report.diagnostics) diags.push_back(to_json(d));
  return {{"diagnostics", std::move(diags)},
          {"size", to_json(report.size)},
          {"leaders", to_json(report.leaders)}};
}

json to_json(const Edit& e) {
  json j = {{"kind", edit_kind_name(e.kind)}, {"before", e.before}, {"after", e.after}};
  json loc = json::object();
  loc["row"] = e.row ? json(*e.row) : json(nullptr);
  loc["col"] = e.col ? json(*e.col) : json(nullptr);
  j["location"] = std::move(loc);
  if (!e.note.empty()) j["note"] = e.note;
  if (!e.dropped.empty()) j["dropped"] = e.dropped;
  return j;
}

Edit parse_edit(const json& doc) {
  require_object(doc, "edit");
  Edit e;
  std::string kind = req_string(doc, "kind", "edit");
  auto k = parse_edit_kind(kind);
  if (!k) throw SchemaError("edit.kind", "unknown edit kind '" + kind + "'");
  e.kind = *k;
  e.before = opt_string(doc, "before", "edit");
  e.after = opt_string(doc, "after", "edit");
  e.note = opt_string(doc, "note", "edit");
  if (const json* loc = get(doc, "location")) {
    require_object(*loc, "edit.location");
    if (get(*loc, "row")) e.row = req_offset(*loc, "row", "edit.location");
    if (get(*loc, "col")) e.col = req_offset(*loc, "col", "edit.location");
  }
  if (const json* d = get(doc, "dropped")) {
    if (!d->is_array()) throw SchemaError("edit.dropped", "expected an array");
    for (std::size_t i = 0; i < d->size(); ++i) {
      if (!(*d)[i].is_string()) throw SchemaError(idx("edit.dropped", i), "expected a string");
      e.dropped.push_back((*d)[i].get<std::string>());
    }
  }
  return e;
}

json to_json(const CorrectionResult& r) {
  json edits = json::array();
  for (const auto& e : r.edits) edits.push_back(to_json(e));
  json j = {{"table", to_json(r.table)},
            {"linearized", render_linearized(extract_highlighted(r.table))},
            {"edits", std::move(edits)},
            {"corrections_made", r.corrections_made},
            {"leader_data", to_json(r.leader_data)}};
  j["rejected"] = r.rejected ? json(*r.rejected) : json(nullptr);
  return j;
}

bool is_annotation_header(const json& doc) {
  return doc.is_object() && doc.contains("format") && !doc.contains("sample_id");
}

void check_annotation_header(const json& doc) {
  if (opt_string(doc, "format", "header") != "annotations")
    throw SchemaError("header.format", "expected \"annotations\"");
  if (opt_int(doc, "version", "header", 1) != 1)
    throw SchemaError("header.version", "unsupported annotation file version");
  std::string enc = opt_string(doc, "encoding", "header");
  if (!enc.empty() && enc != "utf-8" && enc != "UTF-8")
    throw SchemaError("header.encoding", "offsets must be utf-8 byte offsets, got " + enc);
}

AnnotatedSample parse_annotated_sample(const json& doc) {
  require_object(doc, "");
  AnnotatedSample s;
  s.sample_id = req_string(doc, "sample_id", "");
  s.model_id = req_string(doc, "model_id", "");
  std::string phase = req_string(doc, "phase", "");
  auto p = parse_phase(phase);
  if (!p) throw SchemaError("phase", "expected \"before\" or \"after\", got \"" + phase + "\"");
  s.phase = *p;
  if (const json* pt = get(doc, "problem_type")) {
    if (!pt->is_string()) throw SchemaError("problem_type", "expected a string");
    auto prob = parse_problem(pt->get<std::string>());
    if (!prob) throw SchemaError("problem_type", "unknown problem type \"" + pt->get<std::string>() + "\"");
    s.problem_type = prob;
  }
  s.text = req_string(doc, "text", "");
  s.omission = opt_bool(doc, "omission", "", false);
  if (const json* spans = get(doc, "spans")) {
    if (!spans->is_array()) throw SchemaError("spans", "expected an array");
    for (std::size_t i = 0; i < spans->size(); ++i) {
      const json& sp = (*spans)[i];
      std::string path = idx("spans", i);
      require_object(sp, path);
      ErrorSpan e;
      e.start = req_offset(sp, "start", path);
      e.end = req_offset(sp, "end", path);
      e.label = req_string(sp, "category", path);
      e.note = opt_string(sp, "note", path);
      s.spans.push_back(std::move(e));
    }
  }
  return s;
}

json to_json(const AnnotatedSample& s) {
  json spans = json::array();
  for (const auto& sp : s.spans) {
    json j = {{"start", sp.start}, {"end", sp.end}, {"category", sp.label}};
    if (!sp.note.empty()) j["note"] = sp.note;
    spans.push_back(std::move(j));
  }
  json j = {{"sample_id", s.sample_id}, {"model_id", s.model_id}, {"phase", phase_name(s.phase)},
            {"text", s.text},           {"spans", std::move(spans)}, {"omission", s.omission}};
  if (s.problem_type) j["problem_type"] = problem_name(*s.problem_type);
  return j;
}

LabeledItem parse_labeled_item(const json& doc) {
  require_object(doc, "");
  LabeledItem item;
  const json* id = get(doc, "item");
  if (!id) throw SchemaError("item", "missing item id");
  item.item_id = id->is_string() ? id->get<std::string>() : id->dump();
  const json* labels = get(doc, "labels");
  if (!labels || !labels->is_array()) throw SchemaError("labels", "expected an array of labels");
  for (std::size_t i = 0; i < labels->size(); ++i) {
    if (!(*labels)[i].is_string()) throw SchemaError(idx("labels", i), "expected a string");
    item.labels.push_back((*labels)[i].get<std::string>());
  }
  return item;
}

json to_json(const CategoryCounts& c) {
  json j = json::object();
  for (auto cat : kAllCategories) j[std::string(category_name(cat))] = c[cat];
  j["TOTAL"] = c.total();
  return j;
}

json to_json(const ClassCounts& c) {
  return {{"no_error", c.no_error}, {"omissions", c.omissions}, {"errors", c.errors}, {"total", c.total()}};
}

json to_json(const Summary& s) {
  json out = json::array();
  if (s.grouping == Grouping::ByModelPhase) {
    for (const auto& m : s.by_model) {
      json j = {{"model_id", m.model_id},
                {"before", {{"categories", to_json(m.before.categories)}, {"classes", to_json(m.before.classes)}}},
                {"after", {{"categories", to_json(m.after.categories)}, {"classes", to_json(m.after.classes)}}}};
      j["reduction"] = m.reduction ? json(*m.reduction) : json(nullptr);
      out.push_back(std::move(j));
    }
    return {{"grouping", "model-phase"}, {"models", std::move(out)}};
  }
  for (const auto& m : s.by_problem) {
    json stacks = json::array();
    for (const auto& st : m.stacks)
      stacks.push_back({{"problem", problem_name(st.problem)},
                        {"label", problem_label(st.problem)},
                        {"before", to_json(st.before)},
                        {"after", to_json(st.after)}});
    out.push_back({{"model_id", m.model_id},
                   {"plotted", m.plotted},
                   {"unlabelled", m.unlabelled},
                   {"stacks", std::move(stacks)}});
  }
  return {{"grouping", "problem-type"}, {"models", std::move(out)}};
}

json to_json(const ConfusionMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < kLabelCount; ++i) {
    json off = json::object();
    for (std::size_t j = 0; j < kLabelCount; ++j) off[std::string(label_name(j))] = m.off[i][j];
    rows.push_back({{"label", label_name(i)}, {"all_agree", m.all_agree[i]}, {"off", std::move(off)},
                    {"total", m.total(i)}});
  }
  return {{"raters", m.raters}, {"rows", std::move(rows)}};
}

json to_json(const KappaResult& k) {
  return {{"kappa", k.kappa}, {"pa", k.pa}, {"pe", k.pe}, {"raters", k.raters}};
}

}  // namespace tabfix::io
