#pragma once

#include <string_view>
#include <vector>

#include "etf/ner/types.hpp"

namespace etf::ner {

struct FilterOptions {
  bool ignore_case = false;
};

struct FilterResult {
  std::vector<SummaryEntity> kept;
  std::vector<SummaryEntity> fabricated;  // surface not found in the summary
  std::vector<SummaryEntity> polysemous;  // bare English word with no code marking
};

/// Lowercase words that double as ordinary English ("list", "if", "while").
bool is_stopword_like(std::string_view surface);

/// Keeps candidates whose normalized surface occurs in the summary and fills
/// their spans with every occurrence. Occurrences at identifier boundaries
/// are preferred; plain substring hits are used only when there are none.
/// Stopword-like surfaces survive only when some occurrence is wrapped in
/// backticks, quotes or parentheses.
FilterResult filter_fabricated(const std::vector<SummaryEntity>& candidates, const Summary& summary,
                               const FilterOptions& options = {});

}  // namespace etf::ner
