#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <initializer_list>

namespace etf::prompts {

/// Placeholders as they appear in the templates.
inline constexpr std::string_view kCode = "{CODE}";
inline constexpr std::string_view kSummary = "{SUMMARY}";
inline constexpr std::string_view kMappedEntity = "{mapped_entity}";
inline constexpr std::string_view kRelevantSent = "{relevant_sent}";
inline constexpr std::string_view kIncontextExample = "{Incontext Example}";
inline constexpr std::string_view kGeneratedSummary = "{generated_summary}";

extern const std::string_view kSummaryGenerationTemplate;
extern const std::string_view kIntentVerificationTemplate;
extern const std::string_view kNerTemplate;
extern const std::string_view kDirectEvaluationTemplate;

/// Worked example shown to the NER model, in the "entity ||| TAG" line format.
extern const std::string_view kNerIncontextExample;

/// Replaces placeholders in one left-to-right pass; substituted text is never
/// scanned again, so code containing "{CODE}" is inserted literally.
std::string substitute(std::string_view tmpl,
                       std::initializer_list<std::pair<std::string_view, std::string_view>> values);

std::string render_summary_generation(std::string_view code);
std::string render_intent_verification(std::string_view mapped_entity, std::string_view relevant_sent,
                                       std::string_view code);
std::string render_ner(std::string_view generated_summary,
                       std::string_view incontext_example = kNerIncontextExample);
std::string render_direct_evaluation(std::string_view summary, std::string_view code);

}  // namespace etf::prompts
