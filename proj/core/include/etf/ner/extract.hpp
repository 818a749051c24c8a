#pragma once

#include <string_view>
#include <vector>

#include "etf/client/chat_model.hpp"
#include "etf/ner/types.hpp"

namespace etf::ner {

class EntityExtractorBackend {
 public:
  virtual ~EntityExtractorBackend() = default;
  virtual std::vector<SummaryEntity> extract(const Summary& summary) = 0;
  virtual std::string_view name() const = 0;
  /// True when the backend sets `ordinal` itself (gold annotations do).
  virtual bool provides_ordinals() const { return false; }
};

/// Parses NER model output. Accepts a JSON list (objects with entity/type
/// keys or [entity, type] pairs, optionally under "entities") or lines of the
/// form "entity ||| TAG". Entries with unknown tags are dropped with a
/// warning. Throws MalformedBackendOutput when neither format is recognised.
std::vector<SummaryEntity> parse_ner_output(std::string_view response);

/// Sets `ordinal` to the occurrence index of each normalized surface.
void assign_ordinals(std::vector<SummaryEntity>& entities);

/// Runs the backend and numbers the candidates unless the backend already
/// did. Spans are not validated.
std::vector<SummaryEntity> extract_entities(const Summary& summary, EntityExtractorBackend& backend);

/// Prompts a chat model with the NER template and parses the reply,
/// re-asking up to `max_attempts` times on malformed output.
class LlmEntityExtractor : public EntityExtractorBackend {
 public:
  explicit LlmEntityExtractor(client::ChatModel& model, int max_attempts = 3)
      : model_(model), max_attempts_(max_attempts < 1 ? 1 : max_attempts) {}

  std::vector<SummaryEntity> extract(const Summary& summary) override;
  std::string_view name() const override { return "llm"; }

 private:
  client::ChatModel& model_;
  int max_attempts_;
};

}  // namespace etf::ner
