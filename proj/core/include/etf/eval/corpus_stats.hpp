#pragma once

#include <cstddef>
#include <nlohmann/json.hpp>
#include <string>
#include <string_view>
#include <vector>

#include "etf/match/matcher.hpp"

namespace etf::eval {

/// Per-summary tallies feeding the corpus table.
struct RecordCounts {
  std::string source_model;
  std::size_t summary_words = 0;
  std::size_t code_entities = 0;  // code-tagged summary entities: mapped + unmapped
  std::size_t mapped = 0;
  std::size_t unmapped = 0;
  std::size_t nl = 0;
};

struct ModelStats {
  std::string model;
  std::size_t records = 0;
  double mean_summary_length = 0.0;
  double mean_code_entities = 0.0;
  double mapped_pct = 0.0;  // of all entities of the model
  double unmapped_pct = 0.0;
  double nl_pct = 0.0;
};

struct CorpusStats {
  std::vector<ModelStats> models;  // sorted by model name
};

/// Whitespace-separated word count.
std::size_t word_count(std::string_view text);

RecordCounts count_record(std::string source_model, std::string_view summary_text, const match::MatchResult& match);

/// Means are per record; percentages pool all entities of a model.
CorpusStats corpus_stats(const std::vector<RecordCounts>& records);

nlohmann::ordered_json to_json(const CorpusStats& stats);
std::string render_table(const CorpusStats& stats);

}  // namespace etf::eval
