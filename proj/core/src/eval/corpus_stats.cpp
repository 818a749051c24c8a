#include "etf/eval/corpus_stats.hpp"

#include <spdlog/fmt/fmt.h>

#include <algorithm>
#include <cctype>
#include <map>

namespace etf::eval {

std::size_t word_count(std::string_view text) {
  std::size_t words = 0;
  bool in_word = false;
  for (unsigned char c : text) {
    bool space = std::isspace(c) != 0;
    if (!space && !in_word) ++words;
    in_word = !space;
  }
  return words;
}

RecordCounts count_record(std::string source_model, std::string_view summary_text, const match::MatchResult& match) {
  RecordCounts r;
  r.source_model = std::move(source_model);
  r.summary_words = word_count(summary_text);
  r.mapped = match.mapped.size();
  r.unmapped = match.unmapped.size();
  r.nl = match.nl_entities.size();
  r.code_entities = r.mapped + r.unmapped;
  return r;
}

CorpusStats corpus_stats(const std::vector<RecordCounts>& records) {
  struct Sums {
    std::size_t records = 0, words = 0, code = 0, mapped = 0, unmapped = 0, nl = 0;
  };
  std::map<std::string, Sums> by_model;
  for (const RecordCounts& r : records) {
    Sums& s = by_model[r.source_model];
    ++s.records;
    s.words += r.summary_words;
    s.code += r.code_entities;
    s.mapped += r.mapped;
    s.unmapped += r.unmapped;
    s.nl += r.nl;
  }
  CorpusStats stats;
  for (const auto& [model, s] : by_model) {
    ModelStats m;
    m.model = model;
    m.records = s.records;
    m.mean_summary_length = static_cast<double>(s.words) / s.records;
    m.mean_code_entities = static_cast<double>(s.code) / s.records;
    std::size_t all = s.mapped + s.unmapped + s.nl;
    if (all > 0) {
      m.mapped_pct = 100.0 * s.mapped / all;
      m.unmapped_pct = 100.0 * s.unmapped / all;
      m.nl_pct = 100.0 * s.nl / all;
    }
    stats.models.push_back(std::move(m));
  }
  return stats;
}

nlohmann::ordered_json to_json(const CorpusStats& stats) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const ModelStats& m : stats.models) {
    rows.push_back({{"model", m.model},
                    {"records", m.records},
                    {"mean_summary_length", m.mean_summary_length},
                    {"mean_code_entities", m.mean_code_entities},
                    {"mapped_pct", m.mapped_pct},
                    {"unmapped_pct", m.unmapped_pct},
                    {"nl_pct", m.nl_pct}});
  }
  return nlohmann::ordered_json{{"models", std::move(rows)}};
}

std::string render_table(const CorpusStats& stats) {
  std::size_t width = 5;
  for (const ModelStats& m : stats.models) width = std::max(width, m.model.size());
  std::string out = fmt::format("{:<{}}  {:>8}  {:>8}  {:>8}  {:>9}  {:>7}\n", "model", width, "length", "CE count",
                                "mapped%", "unmapped%", "NL%");
  for (const ModelStats& m : stats.models) {
    out += fmt::format("{:<{}}  {:>8.2f}  {:>8.2f}  {:>8.2f}  {:>9.2f}  {:>7.2f}\n", m.model, width,
                       m.mean_summary_length, m.mean_code_entities, m.mapped_pct, m.unmapped_pct, m.nl_pct);
  }
  return out;
}

}  // namespace etf::eval
