#pragma once

#include <string_view>

#include <nlohmann/json.hpp>

#include "tabfix/annotation.hpp"
#include "tabfix/correction.hpp"
#include "tabfix/diagnostics.hpp"
#include "tabfix/kappa.hpp"
#include "tabfix/linearization.hpp"
#include "tabfix/table.hpp"

namespace tabfix::io {

using nlohmann::json;

/// Throws SchemaError with the offending field path. Unknown fields are ignored.
SourceTable parse_source_table(const json& doc);
SourceTable parse_source_table(std::string_view text);
json to_json(const SourceTable& table);

json to_json(const LinearizedInput& input);
json to_json(const ValidationReport& report);
json to_json(const Diagnostic& d);
json to_json(const LeaderOrderReport& r);
json to_json(const SizeVerdict& v);
json to_json(const DiagnosticReport& report);
json to_json(const Edit& e);
Edit parse_edit(const json& doc);

/// Corrected table, its linearization, edits, leader data and rejection message.
json to_json(const CorrectionResult& r);

/// True for the optional first line of an annotation file.
bool is_annotation_header(const json& doc);
/// Throws SchemaError unless the header declares utf-8 and version 1.
void check_annotation_header(const json& doc);
AnnotatedSample parse_annotated_sample(const json& doc);
json to_json(const AnnotatedSample& s);
LabeledItem parse_labeled_item(const json& doc);

json to_json(const CategoryCounts& c);
json to_json(const ClassCounts& c);
json to_json(const Summary& s);
json to_json(const ConfusionMatrix& m);
json to_json(const KappaResult& k);

}  // namespace tabfix::io
