#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "etf/ner/tagset.hpp"

namespace etf::ner {

/// Half-open byte range [begin, end) into a summary.
struct CharRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const noexcept { return end - begin; }
  bool overlaps(const CharRange& o) const noexcept { return begin < o.end && o.begin < end; }
  bool contains(const CharRange& o) const noexcept { return begin <= o.begin && o.end <= end; }
  friend auto operator<=>(const CharRange&, const CharRange&) = default;
};

struct Summary {
  std::string id;
  std::string text;
  std::string source_model;
};

struct SummaryEntity {
  std::string surface;
  Tag tag = Tag::VARIABLE;
  std::vector<CharRange> spans;
  // Index of this mention among entities sharing the same normalized surface.
  int ordinal = 0;
};

struct Sentence {
  std::string text;
  CharRange range;
};

using SentenceList = std::vector<Sentence>;

}  // namespace etf::ner
