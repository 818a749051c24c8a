#pragma once

#include <string>

#include "etf/match/matcher.hpp"
#include "etf/ner/types.hpp"

namespace etf::verify {

/// A mapped entity together with the summary sentences that describe it.
struct IntentTuple {
  std::string unit_id;
  ner::SummaryEntity entity;
  code::CodeEntity code_entity;
  ner::SentenceList relevant_sentences;

  /// Sentences joined by newlines, as inserted into the judge prompt.
  std::string context() const;
};

/// Sentences that mention the entity at an identifier boundary, in document
/// order. If none does (the mention is glued to other text), the sentences
/// overlapping the entity's spans are used instead.
ner::SentenceList sentences_mentioning(const ner::SummaryEntity& entity, const ner::SentenceList& sentences,
                                       bool ignore_case = false);

IntentTuple collect_intent(const match::MappedEntity& mapped, const ner::SentenceList& sentences,
                           const std::string& unit_id = {}, bool ignore_case = false);

}  // namespace etf::verify
