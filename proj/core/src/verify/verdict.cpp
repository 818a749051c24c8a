#include "etf/verify/verdict.hpp"

#include <cctype>
#include <spdlog/spdlog.h>

#include "etf/match/normalize.hpp"
#include "etf/prompts.hpp"

namespace etf::verify {

std::string_view to_string(Label label) {
  switch (label) {
    case Label::CORRECT: return "CORRECT";
    case Label::INCORRECT: return "INCORRECT";
    case Label::IRRELEVANT: return "IRRELEVANT";
  }
  return "UNKNOWN";
}

std::optional<Label> parse_label(std::string_view text) {
  for (Label l : {Label::CORRECT, Label::INCORRECT, Label::IRRELEVANT}) {
    if (match::iequals(text, to_string(l))) return l;
  }
  return std::nullopt;
}

std::optional<Label> parse_verdict(std::string_view response) {
  std::size_t i = 0;
  while (i < response.size()) {
    if (!std::isalpha(static_cast<unsigned char>(response[i]))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < response.size() && match::is_identifier_char(static_cast<unsigned char>(response[i]))) ++i;
    if (auto label = parse_label(response.substr(start, i - start))) return label;
  }
  return std::nullopt;
}

Verdict LlmJudge::verify(const IntentTuple& tuple, const code::SourceUnit& code) {
  const std::string prompt =
      prompts::render_intent_verification(match::normalize(tuple.entity.surface), tuple.context(), code.text);
  Verdict verdict;
  for (int attempt = 0; attempt < max_attempts_; ++attempt) {
    verdict.raw_backend_text = model_.complete(client::Role::JUDGE, prompt, attempt);
    verdict.attempts = attempt + 1;
    verdict.label = parse_verdict(verdict.raw_backend_text);
    if (verdict.label) return verdict;
  }
  spdlog::warn("judge: no label for '{}' in '{}' after {} attempts; tuple is UNRESOLVED", tuple.entity.surface,
               tuple.unit_id, max_attempts_);
  return verdict;
}

}  // namespace etf::verify
