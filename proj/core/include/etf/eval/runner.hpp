#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "etf/client/chat_model.hpp"
#include "etf/eval/corpus_stats.hpp"
#include "etf/eval/dataset.hpp"
#include "etf/eval/metrics.hpp"
#include "etf/ner/extract.hpp"
#include "etf/pipeline.hpp"
#include "etf/verify/verdict.hpp"

namespace etf::eval {

/// Calls fn(i) for every i in [0, n) on up to `workers` threads. When calls
/// throw, the exception of the lowest index is rethrown after all threads
/// have joined.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

/// Backends used for one record. `direct_model` is needed only for the
/// direct baseline; the others only for entity tracing.
struct RecordBackends {
  std::unique_ptr<ner::EntityExtractorBackend> extractor;
  std::unique_ptr<verify::JudgeBackend> judge;
  client::ChatModel* direct_model = nullptr;
};

using BackendFactory = std::function<RecordBackends(const DatasetRecord&)>;

struct EvaluationOptions {
  PipelineOptions pipeline;
  bool direct = false;
  int workers = 1;
  Averaging averaging = Averaging::GOLD_PRESENT;
};

struct RecordOutcome {
  std::string id;
  std::optional<verify::SummaryReport> report;  // empty when the record failed
  std::string error;
  EntityPredictions entity_predictions;
  std::optional<RecordCounts> counts;  // entity tracing only
};

struct EvaluationResult {
  std::string method;  // "ETF" or "Direct"
  std::vector<RecordOutcome> outcomes;  // dataset order
  MetricsBundle instance;
  MetricsBundle entity;
  std::optional<CorpusStats> corpus;
  std::size_t failures = 0;
};

/// Entity-level predictions come from judging each scored gold row as a
/// tuple (gold entity, gold relevant sentences); with the direct baseline a
/// gold entity is predicted INCORRECT when a finding names it. Records whose
/// backends fail are reported and left out of both metric tables.
EvaluationResult evaluate_dataset(const std::vector<DatasetRecord>& records, const BackendFactory& factory,
                                  const EvaluationOptions& options = {});

/// Gold rows in the alignment form used by entity_level_metrics.
std::vector<GoldEntityRow> gold_rows(const std::vector<DatasetRecord>& records);

/// Outcome of one record as a JSON line: the report, or the id and error.
std::string outcome_line(const RecordOutcome& outcome, const DatasetRecord& record);

}  // namespace etf::eval
