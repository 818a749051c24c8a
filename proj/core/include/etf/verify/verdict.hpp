#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "etf/client/chat_model.hpp"
#include "etf/code/token.hpp"
#include "etf/verify/intent.hpp"

namespace etf::verify {

enum class Label { CORRECT, INCORRECT, IRRELEVANT };

std::string_view to_string(Label label);
std::optional<Label> parse_label(std::string_view text);  // case-insensitive, exact word

/// IRRELEVANT is scored as INCORRECT.
constexpr Label effective(Label label) { return label == Label::IRRELEVANT ? Label::INCORRECT : label; }

/// First whole-word, case-insensitive CORRECT / INCORRECT / IRRELEVANT.
std::optional<Label> parse_verdict(std::string_view response);

struct Verdict {
  std::optional<Label> label;  // empty: UNRESOLVED
  std::string raw_backend_text;
  int attempts = 1;

  bool resolved() const noexcept { return label.has_value(); }
};

class JudgeBackend {
 public:
  virtual ~JudgeBackend() = default;
  virtual Verdict verify(const IntentTuple& tuple, const code::SourceUnit& code) = 0;
  virtual std::string_view name() const = 0;
};

/// Asks a chat model with the intent verification prompt. After
/// `max_attempts` replies without a label the verdict is UNRESOLVED.
class LlmJudge : public JudgeBackend {
 public:
  explicit LlmJudge(client::ChatModel& model, int max_attempts = 3)
      : model_(model), max_attempts_(max_attempts < 1 ? 1 : max_attempts) {}

  Verdict verify(const IntentTuple& tuple, const code::SourceUnit& code) override;
  std::string_view name() const override { return "llm"; }

 private:
  client::ChatModel& model_;
  int max_attempts_;
};

inline Verdict verify_tuple(const IntentTuple& tuple, const code::SourceUnit& code, JudgeBackend& judge) {
  return judge.verify(tuple, code);
}

}  // namespace etf::verify
