#include "etf/ner/filter.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "etf/code/token.hpp"
#include "etf/match/normalize.hpp"

namespace etf::ner {
namespace {

constexpr std::array<std::string_view, 32> kCommonWords = {
    "list",  "map",    "set",   "string", "object", "value", "values", "data",
    "key",   "keys",   "name",  "type",   "method", "function", "array", "result",
    "input", "output", "item",  "items",  "number", "text",  "file",   "line",
    "error", "index",  "count", "size",   "length", "node",  "table",  "column"};

bool opener(std::string_view before) {
  for (std::string_view q : {"`", "\"", "'", "(", "“", "‘"}) {
    if (before.ends_with(q)) return true;
  }
  return false;
}

bool closer(std::string_view after) {
  for (std::string_view q : {"`", "\"", "'", ")", "”", "’"}) {
    if (after.starts_with(q)) return true;
  }
  return false;
}

/// True when an occurrence sits inside `..`, "..", '..' or (..).
bool marked_as_code(std::string_view text, std::size_t pos, std::size_t len) {
  // Allow a trailing "()" or "[]" that normalize() removed.
  std::size_t end = pos + len;
  std::string_view after = text.substr(end);
  if (after.starts_with("()") || after.starts_with("[]")) after.remove_prefix(2);
  return opener(text.substr(0, pos)) && closer(after);
}

}  // namespace

bool is_stopword_like(std::string_view surface) {
  if (surface.empty()) return false;
  if (std::any_of(surface.begin(), surface.end(), [](char c) { return !std::islower(static_cast<unsigned char>(c)); })) {
    return false;
  }
  if (surface == "true" || surface == "false" || surface == "null") return false;
  return code::is_java_keyword(surface) ||
         std::find(kCommonWords.begin(), kCommonWords.end(), surface) != kCommonWords.end();
}

FilterResult filter_fabricated(const std::vector<SummaryEntity>& candidates, const Summary& summary,
                               const FilterOptions& options) {
  FilterResult result;
  const std::string_view text = summary.text;
  for (const SummaryEntity& candidate : candidates) {
    SummaryEntity e = candidate;
    e.spans.clear();
    std::string bare = match::normalize(e.surface);
    std::vector<std::size_t> hits = match::find_all(text, bare, true, options.ignore_case);
    if (hits.empty()) hits = match::find_all(text, bare, false, options.ignore_case);
    if (hits.empty()) {
      result.fabricated.push_back(std::move(e));
      continue;
    }
    for (std::size_t h : hits) e.spans.push_back({h, h + bare.size()});
    if (is_stopword_like(bare) &&
        std::none_of(hits.begin(), hits.end(), [&](std::size_t h) { return marked_as_code(text, h, bare.size()); })) {
      result.polysemous.push_back(std::move(e));
      continue;
    }
    result.kept.push_back(std::move(e));
  }
  return result;
}

}  // namespace etf::ner
