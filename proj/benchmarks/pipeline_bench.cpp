#include <benchmark/benchmark.h>

#include "etf/client/oracle.hpp"
#include "etf/eval/dataset.hpp"
#include "etf/pipeline.hpp"

namespace {

const std::vector<etf::eval::DatasetRecord>& records() {
  static const auto loaded =
      etf::eval::load_dataset(std::filesystem::path(ETF_BENCH_DATA) / "fixture_dataset.jsonl").records;
  return loaded;
}

// Whole-subset oracle run: extraction, matching and aggregation with gold
// entities and gold verdicts standing in for the model.
void BM_OraclePipeline(benchmark::State& state) {
  for (auto _ : state) {
    for (const auto& rec : records()) {
      etf::client::GoldEntityExtractor ner(rec);
      etf::client::OracleJudge judge(rec);
      benchmark::DoNotOptimize(etf::run_etf(rec.source_unit(), rec.summary_unit(), ner, judge));
    }
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(records().size()));
}
BENCHMARK(BM_OraclePipeline)->Unit(benchmark::kMillisecond);

}  // namespace
