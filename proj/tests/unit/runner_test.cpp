#include <gtest/gtest.h>

#include <atomic>

#include "etf/client/oracle.hpp"
#include "etf/errors.hpp"
#include "etf/eval/runner.hpp"
#include "etf/ner/heuristic.hpp"
#include "test_util.hpp"

using namespace etf;
using namespace etf::eval;
using client::Role;

namespace {

std::vector<DatasetRecord> fixtures() {
  return load_dataset(test::data_dir() / "fixture_dataset.jsonl").records;
}

RecordBackends oracle(const DatasetRecord& r) {
  RecordBackends b;
  b.extractor = std::make_unique<client::GoldEntityExtractor>(r);
  b.judge = std::make_unique<client::OracleJudge>(r);
  return b;
}

class Throwing : public verify::JudgeBackend {
 public:
  verify::Verdict verify(const verify::IntentTuple&, const code::SourceUnit&) override {
    throw BackendUnavailable("down", "JUDGE", "fp");
  }
  std::string_view name() const override { return "throwing"; }
};

}  // namespace

TEST(ParallelFor, VisitsEveryIndex) {
  std::vector<std::atomic<int>> hits(100);
  parallel_for(100, 4, [&](std::size_t i) { hits[i]++; });
  for (auto& h : hits) EXPECT_EQ(h.load(), 1);
}

TEST(ParallelFor, RethrowsLowestIndex) {
  try {
    parallel_for(20, 3, [](std::size_t i) {
      if (i == 7 || i == 15) throw std::runtime_error(std::to_string(i));
    });
    FAIL() << "expected exception";
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "7");
  }
}

TEST(Runner, OracleScoresPerfectly) {
  auto recs = fixtures();
  auto res = evaluate_dataset(recs, oracle);
  EXPECT_EQ(res.method, "ETF");
  EXPECT_EQ(res.failures, 0u);
  EXPECT_DOUBLE_EQ(res.instance.macro_f1, 1.0);
  EXPECT_DOUBLE_EQ(res.entity.macro_f1, 1.0);
  EXPECT_EQ(res.instance.scored, recs.size());
  ASSERT_TRUE(res.corpus);
  EXPECT_EQ(res.instance.title, "Instance Level (ETF)");
}

TEST(Runner, WorkerCountDoesNotChangeOutput) {
  auto recs = fixtures();
  EvaluationOptions one, four;
  four.workers = 4;
  auto a = evaluate_dataset(recs, oracle, one);
  auto b = evaluate_dataset(recs, oracle, four);
  ASSERT_EQ(a.outcomes.size(), b.outcomes.size());
  for (std::size_t i = 0; i < recs.size(); ++i) {
    EXPECT_EQ(outcome_line(a.outcomes[i], recs[i]), outcome_line(b.outcomes[i], recs[i]));
  }
  EXPECT_EQ(to_json(a.entity).dump(), to_json(b.entity).dump());
}

TEST(Runner, FailedRecordsAreReportedAndExcluded) {
  auto recs = fixtures();
  auto factory = [](const DatasetRecord& r) {
    RecordBackends b = oracle(r);
    if (r.id == "fx03") b.judge = std::make_unique<Throwing>();
    return b;
  };
  auto res = evaluate_dataset(recs, factory);
  EXPECT_EQ(res.failures, 1u);
  EXPECT_EQ(res.instance.scored, recs.size() - 1);
  const auto& bad = res.outcomes[2];
  EXPECT_EQ(bad.id, "fx03");
  EXPECT_FALSE(bad.report);
  EXPECT_NE(bad.error.find("down"), std::string::npos);
  auto line = nlohmann::json::parse(outcome_line(bad, recs[2]));
  EXPECT_EQ(line["unit_id"], "fx03");
  EXPECT_TRUE(line.contains("error"));
}

TEST(Runner, TaxonomyHintComesFromGold) {
  auto recs = fixtures();
  auto res = evaluate_dataset(recs, oracle);
  for (std::size_t i = 0; i < recs.size(); ++i) {
    const auto& rep = *res.outcomes[i].report;
    bool has_taxonomy = false;
    for (const auto& g : recs[i].gold_entities) has_taxonomy |= g.taxonomy.has_value();
    EXPECT_EQ(rep.taxonomy_hint.has_value(), has_taxonomy) << recs[i].id;
  }
}

TEST(Runner, DirectBaselineMarksNamedEntities) {
  auto recs = fixtures();
  recs.resize(3);
  test::ScriptedModel model([](Role, const std::string&, int) { return std::string("[]"); });
  auto factory = [&](const DatasetRecord&) {
    RecordBackends b;
    b.direct_model = &model;
    return b;
  };
  EvaluationOptions opt;
  opt.direct = true;
  auto res = evaluate_dataset(recs, factory, opt);
  EXPECT_EQ(res.method, "Direct");
  EXPECT_FALSE(res.corpus);
  for (const auto& o : res.outcomes) {
    for (const auto& [key, label] : o.entity_predictions) EXPECT_EQ(label, verify::Label::CORRECT);
  }
  EXPECT_EQ(res.instance.title, "Instance Level (Direct)");
}

TEST(Runner, GoldRowsSkipNothing) {
  auto recs = fixtures();
  std::size_t n = 0;
  for (const auto& r : recs) n += r.gold_entities.size();
  EXPECT_EQ(gold_rows(recs).size(), n);
}
