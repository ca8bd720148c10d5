#include "tabfix/prompts.hpp"

#include "tabfix/errors.hpp"

namespace tabfix {

const std::vector<PromptTemplate>& builtin_templates() {
  static const std::vector<PromptTemplate> templates = {
      {"election-fields",
       "Given the input table data, the task is to: (i). Identify the party name, candidate name, "
       "and the number of votes received by each candidate. (ii). Determine the winner based on "
       "the highest number of votes. Then, put together the gathered information from (i) and "
       "(ii) into a single coherent sentence. Input table data: <Linearized table data>"},
      {"generic-summary",
       "The task is to summarize the information from the given input table data into a single "
       "coherent sentence. Use only the information mentioned in the input table data. Input "
       "table data is: <Linearized table data>"},
  };
  return templates;
}

const PromptTemplate& election_fields_template() { return builtin_templates()[0]; }
const PromptTemplate& generic_summary_template() { return builtin_templates()[1]; }

std::size_t placeholder_count(std::string_view body) {
  std::size_t n = 0;
  for (auto pos = body.find(kPlaceholder); pos != std::string_view::npos;
       pos = body.find(kPlaceholder, pos + kPlaceholder.size()))
    ++n;
  return n;
}

void validate_template(const PromptTemplate& tmpl) {
  if (tmpl.id.empty()) throw InvalidTemplate("template id is empty");
  std::size_t n = placeholder_count(tmpl.body);
  if (n == 0)
    throw MissingPlaceholder("template '" + tmpl.id + "' has no " + std::string(kPlaceholder) +
                             " slot");
  if (n > 1)
    throw InvalidTemplate("template '" + tmpl.id + "' has " + std::to_string(n) +
                          " placeholder slots, expected one");
}

std::string build_prompt(const PromptTemplate& tmpl, std::string_view linearized) {
  validate_template(tmpl);
  std::string out = tmpl.body;
  out.replace(out.find(kPlaceholder), kPlaceholder.size(), linearized);
  return out;
}

std::string build_prompt(const PromptTemplate& tmpl, const LinearizedInput& input) {
  return build_prompt(tmpl, render_linearized(input));
}

const PromptTemplate* find_template(std::string_view id, std::span<const PromptTemplate> user) {
  for (const auto& t : user)
    if (t.id == id) return &t;
  for (const auto& t : builtin_templates())
    if (t.id == id) return &t;
  return nullptr;
}

}  // namespace tabfix
