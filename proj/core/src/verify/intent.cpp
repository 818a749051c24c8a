#include "etf/verify/intent.hpp"

#include <algorithm>

#include "etf/match/normalize.hpp"

namespace etf::verify {

std::string IntentTuple::context() const {
  std::string out;
  for (const ner::Sentence& s : relevant_sentences) {
    if (!out.empty()) out.push_back('\n');
    out += s.text;
  }
  return out;
}

ner::SentenceList sentences_mentioning(const ner::SummaryEntity& entity, const ner::SentenceList& sentences,
                                       bool ignore_case) {
  const std::string bare = match::normalize(entity.surface);
  ner::SentenceList out;
  for (const ner::Sentence& s : sentences) {
    if (match::contains_bounded(s.text, bare, ignore_case)) out.push_back(s);
  }
  if (!out.empty()) return out;
  for (const ner::Sentence& s : sentences) {
    if (std::any_of(entity.spans.begin(), entity.spans.end(),
                    [&](const ner::CharRange& r) { return r.overlaps(s.range); })) {
      out.push_back(s);
    }
  }
  return out;
}

IntentTuple collect_intent(const match::MappedEntity& mapped, const ner::SentenceList& sentences,
                           const std::string& unit_id, bool ignore_case) {
  return IntentTuple{unit_id, mapped.entity, mapped.code_entity,
                     sentences_mentioning(mapped.entity, sentences, ignore_case)};
}

}  // namespace etf::verify
