#include <gtest/gtest.h>

#include "etf/eval/corpus_stats.hpp"

using namespace etf::eval;
using etf::ner::SummaryEntity;
using etf::ner::Tag;

namespace {

etf::match::MatchResult result(int mapped, int unmapped, int nl) {
  etf::match::MatchResult r;
  for (int i = 0; i < mapped; ++i) r.mapped.push_back({SummaryEntity{"m", Tag::VARIABLE}, {}});
  for (int i = 0; i < unmapped; ++i) r.unmapped.push_back({"u", Tag::VARIABLE});
  for (int i = 0; i < nl; ++i) r.nl_entities.push_back({"n", Tag::LANGUAGE});
  return r;
}

}  // namespace

TEST(CorpusStats, WordCount) {
  EXPECT_EQ(word_count(""), 0u);
  EXPECT_EQ(word_count("  one two\nthree\t "), 3u);
}

TEST(CorpusStats, EightOneOne) {
  auto stats = corpus_stats({count_record("m", "a b c", result(8, 1, 1))});
  ASSERT_EQ(stats.models.size(), 1u);
  const auto& s = stats.models[0];
  EXPECT_DOUBLE_EQ(s.mapped_pct, 80.0);
  EXPECT_DOUBLE_EQ(s.unmapped_pct, 10.0);
  EXPECT_DOUBLE_EQ(s.nl_pct, 10.0);
  EXPECT_DOUBLE_EQ(s.mean_code_entities, 9.0);
  EXPECT_DOUBLE_EQ(s.mean_summary_length, 3.0);
}

// Hand-counted: model a has records (2 mapped, 2 unmapped, 0 nl, 4 words) and
// (1, 0, 1, 6 words); model b has one record with no entities and 5 words.
TEST(CorpusStats, HandCountedTable) {
  auto stats = corpus_stats({count_record("b", "one two three four five", result(0, 0, 0)),
                             count_record("a", "w w w w", result(2, 2, 0)),
                             count_record("a", "w w w w w w", result(1, 0, 1))});
  ASSERT_EQ(stats.models.size(), 2u);
  const auto& a = stats.models[0];
  EXPECT_EQ(a.model, "a");
  EXPECT_EQ(a.records, 2u);
  EXPECT_DOUBLE_EQ(a.mean_summary_length, 5.0);
  EXPECT_DOUBLE_EQ(a.mean_code_entities, 2.5);
  EXPECT_DOUBLE_EQ(a.mapped_pct, 50.0);
  EXPECT_DOUBLE_EQ(a.unmapped_pct, 2.0 / 6.0 * 100.0);
  EXPECT_DOUBLE_EQ(a.nl_pct, 1.0 / 6.0 * 100.0);
  const auto& b = stats.models[1];
  EXPECT_DOUBLE_EQ(b.mapped_pct, 0.0);
  EXPECT_DOUBLE_EQ(b.mean_summary_length, 5.0);
  EXPECT_EQ(to_json(stats)["models"].size(), 2u);
  EXPECT_NE(render_table(stats).find("a"), std::string::npos);
}
