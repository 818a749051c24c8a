#pragma once

#include "etf/ner/extract.hpp"

namespace etf::ner {

/// Shape-based extraction that needs no model. Only code tags are produced.
///
/// Candidates come from backtick spans, quoted identifiers and code-shaped
/// words (camelCase, snake_case, SCREAMING_SNAKE, leading '_', trailing "()"
/// or "[]", dotted paths). Each distinct surface is reported once, in order
/// of first appearance, without backticks or trailing parentheses.
std::vector<SummaryEntity> extract_entities_heuristic(const Summary& summary);

class HeuristicExtractor : public EntityExtractorBackend {
 public:
  std::vector<SummaryEntity> extract(const Summary& summary) override {
    return extract_entities_heuristic(summary);
  }
  std::string_view name() const override { return "heuristic"; }
};

}  // namespace etf::ner
