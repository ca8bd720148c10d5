#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tabfix/linearization.hpp"

namespace tabfix {

inline constexpr std::string_view kPlaceholder = "<Linearized table data>";

struct PromptTemplate {
  std::string id;
  std::string body;

  friend bool operator==(const PromptTemplate&, const PromptTemplate&) = default;
};

/// The two built-in templates: "election-fields" and "generic-summary".
const std::vector<PromptTemplate>& builtin_templates();
const PromptTemplate& election_fields_template();
const PromptTemplate& generic_summary_template();

std::size_t placeholder_count(std::string_view body);

/// Throws MissingPlaceholder (no slot) or InvalidTemplate (several slots, empty id).
void validate_template(const PromptTemplate& tmpl);

std::string build_prompt(const PromptTemplate& tmpl, const LinearizedInput& input);
std::string build_prompt(const PromptTemplate& tmpl, std::string_view linearized);

/// User templates shadow built-ins with the same id. Returns nullptr when absent.
const PromptTemplate* find_template(std::string_view id, std::span<const PromptTemplate> user);

}  // namespace tabfix
