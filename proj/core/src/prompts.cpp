#include "etf/prompts.hpp"

#include <algorithm>

namespace etf::prompts {

const std::string_view kSummaryGenerationTemplate =
    "Assume you are an expert in understanding JAVA code.\n"
    "Question: As a Java Expert, please provide a detailed summary of the following Java code with the "
    "following sections:\n"
    "1. Inputs and outputs of the method\n"
    "2. Business purpose\n"
    "3. Detailed functional summary of the method.\n"
    "```\n"
    "{CODE}\n"
    "```";

const std::string_view kIntentVerificationTemplate =
    "Assume you are an expert in understanding JAVA code. Your task is to verify whether the description of "
    "'{mapped_entity}' in the given text is correct, incorrect, or irrelevant with respect to the code.\n"
    "Only output one of the following labels: [\"CORRECT\", \"INCORRECT\", \"IRRELEVANT\"].\n"
    "Description:\n"
    "{relevant_sent}\n"
    "[CODE]\n"
    "{CODE}\n"
    "[/CODE]";

const std::string_view kNerTemplate =
    "Assume you are an expert in understanding Java and performing named entity recognition related to Java "
    "code. You have to label the entities by considering the following labels:\n"
    "\n"
    "Code Entities: CLASS, VARIABLE, FUNCTION, LIBRARY, VALUE, DATA TYPE, and HTML or XML TAG\n"
    "Natural Language Entities: APPLICATION, UI ELEMENT, LANGUAGE, DATA STRUCTURE, ALGORITHM, FILE TYPE, "
    "FILE NAME, VERSION, DEVICE, OS, WEBSITE, and USER NAME.\n"
    "\n"
    "For every entity in the input, mention the entity_type in the given format only. Strictly follow this "
    "template and only print the output without any other words. You can follow the example below:\n"
    "```\n"
    "{Incontext Example}\n"
    "```\n"
    "\n"
    "Now consider the summary describing the code below:\n"
    "{generated_summary}";

const std::string_view kDirectEvaluationTemplate =
    "Assume you are an expert in understanding JAVA code. Your task is to verify if the description of the "
    "code entities present in the given summary is correctly described or NOT as per the code logic.\n"
    "Output all the 'entity_name' and a relevant_sentence' corresponding to the 'entity_name', which are "
    "incorrectly described. Do not provide any other details.\n"
    "Strictly follow this format: [{entity_name:\"\", relevant_sentence:\"\"}]\n"
    "\n"
    "Summary:\n"
    "{SUMMARY}\n"
    "\n"
    "Code:\n"
    "{CODE}";

const std::string_view kNerIncontextExample =
    "Summary: The method `loadUsers()` reads the users.csv file with the Apache Commons CSV library and "
    "stores each row in a HashMap keyed by userId. If the file is missing it returns null, and the "
    "<user> element of settings.xml selects the delimiter.\n"
    "Output:\n"
    "loadUsers ||| FUNCTION\n"
    "users.csv ||| FILE NAME\n"
    "Apache Commons CSV ||| LIBRARY\n"
    "HashMap ||| CLASS\n"
    "userId ||| VARIABLE\n"
    "null ||| VALUE\n"
    "<user> ||| HTML or XML TAG\n"
    "settings.xml ||| FILE NAME";

std::string substitute(std::string_view tmpl,
                       std::initializer_list<std::pair<std::string_view, std::string_view>> values) {
  std::string out;
  out.reserve(tmpl.size());
  std::size_t i = 0;
  while (i < tmpl.size()) {
    auto hit = std::find_if(values.begin(), values.end(),
                            [&](const auto& kv) { return tmpl.substr(i).starts_with(kv.first); });
    if (hit != values.end()) {
      out.append(hit->second);
      i += hit->first.size();
    } else {
      out.push_back(tmpl[i++]);
    }
  }
  return out;
}

std::string render_summary_generation(std::string_view code) {
  return substitute(kSummaryGenerationTemplate, {{kCode, code}});
}

std::string render_intent_verification(std::string_view mapped_entity, std::string_view relevant_sent,
                                       std::string_view code) {
  return substitute(kIntentVerificationTemplate,
                    {{kMappedEntity, mapped_entity}, {kRelevantSent, relevant_sent}, {kCode, code}});
}

std::string render_ner(std::string_view generated_summary, std::string_view incontext_example) {
  return substitute(kNerTemplate, {{kIncontextExample, incontext_example}, {kGeneratedSummary, generated_summary}});
}

std::string render_direct_evaluation(std::string_view summary, std::string_view code) {
  return substitute(kDirectEvaluationTemplate, {{kSummary, summary}, {kCode, code}});
}

}  // namespace etf::prompts
