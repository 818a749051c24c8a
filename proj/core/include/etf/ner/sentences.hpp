#pragma once

#include <string_view>

#include "etf/ner/types.hpp"

namespace etf::ner {

/// Splits text into trimmed sentences. A sentence ends at '.', '!' or '?'
/// followed by whitespace and an uppercase letter or line break, and at every
/// line break. No split happens inside backticks or parentheses, after
/// "e.g.", "i.e.", "etc.", "vs.", "cf.", or after a list number such as "2.".
SentenceList segment_sentences(std::string_view text);

inline SentenceList segment_sentences(const Summary& summary) { return segment_sentences(summary.text); }

}  // namespace etf::ner
