#include "etf/eval/runner.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <spdlog/spdlog.h>
#include <thread>

#include "etf/code/entities.hpp"
#include "etf/errors.hpp"
#include "etf/match/normalize.hpp"
#include "etf/verify/intent.hpp"
#include "etf/verify/report.hpp"

namespace etf::eval {

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, workers)));
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::vector<GoldEntityRow> gold_rows(const std::vector<DatasetRecord>& records) {
  std::vector<GoldEntityRow> rows;
  for (const DatasetRecord& r : records) {
    for (const GoldEntity& e : r.gold_entities) rows.push_back({{r.id, match::normalize(e.name), e.ordinal}, e.label});
  }
  return rows;
}

namespace {

verify::IntentTuple gold_tuple(const DatasetRecord& record, const GoldEntity& gold, const code::CodeEntitySet& code,
                               const ner::SentenceList& sentences, const PipelineOptions& options) {
  verify::IntentTuple tuple;
  tuple.unit_id = record.id;
  tuple.entity.surface = gold.name;
  tuple.entity.tag = gold.tag;
  tuple.entity.ordinal = gold.ordinal;
  const std::string bare = match::normalize(gold.name);
  for (std::size_t pos : match::find_all(record.summary, bare, true, options.lenient_case)) {
    tuple.entity.spans.push_back({pos, pos + bare.size()});
  }
  if (auto hit = match::match_entity(tuple.entity, code, {options.lenient_case})) {
    tuple.code_entity = *hit;
  } else {
    tuple.code_entity.name = bare;
  }
  if (gold.relevant_sentences.empty()) {
    tuple.relevant_sentences = verify::sentences_mentioning(tuple.entity, sentences, options.lenient_case);
  } else {
    for (const std::string& text : gold.relevant_sentences) {
      std::size_t pos = record.summary.find(text);
      ner::CharRange range = pos == std::string::npos ? ner::CharRange{} : ner::CharRange{pos, pos + text.size()};
      tuple.relevant_sentences.push_back({text, range});
    }
  }
  return tuple;
}

std::optional<std::string> taxonomy_hint(const DatasetRecord& record) {
  for (const GoldEntity& e : record.gold_entities) {
    if (e.label == verify::Label::INCORRECT && e.taxonomy) return std::string(to_string(*e.taxonomy));
  }
  return std::nullopt;
}

RecordOutcome run_record(const DatasetRecord& record, const BackendFactory& factory, const EvaluationOptions& options) {
  RecordOutcome out;
  out.id = record.id;
  const code::SourceUnit code = record.source_unit();
  const ner::Summary summary = record.summary_unit();
  RecordBackends backends = factory(record);

  if (options.direct) {
    if (!backends.direct_model) throw ConfigError("direct evaluation needs a chat model");
    verify::SummaryReport report = run_direct(code, summary, *backends.direct_model, options.pipeline);
    for (const GoldEntity& g : record.gold_entities) {
      if (g.label == verify::Label::IRRELEVANT) continue;
      const std::string bare = match::normalize(g.name);
      bool flagged = std::any_of(report.direct_findings.begin(), report.direct_findings.end(),
                                 [&](const verify::DirectFinding& f) { return match::iequals(match::normalize(f.entity_name), bare); });
      out.entity_predictions[{record.id, bare, g.ordinal}] = flagged ? verify::Label::INCORRECT : verify::Label::CORRECT;
    }
    report.taxonomy_hint = taxonomy_hint(record);
    out.report = std::move(report);
    return out;
  }

  if (!backends.extractor || !backends.judge) throw ConfigError("entity tracing needs an extractor and a judge");
  PipelineResult result = run_etf(code, summary, *backends.extractor, *backends.judge, options.pipeline);
  for (const GoldEntity& g : record.gold_entities) {
    if (g.label == verify::Label::IRRELEVANT) continue;
    verify::IntentTuple tuple = gold_tuple(record, g, result.code_entities, result.sentences, options.pipeline);
    verify::Verdict verdict = backends.judge->verify(tuple, code);
    out.entity_predictions[{record.id, match::normalize(g.name), g.ordinal}] = verdict.label;
  }
  out.counts = count_record(record.source_model, record.summary, result.match);
  result.report.taxonomy_hint = taxonomy_hint(record);
  out.report = std::move(result.report);
  return out;
}

}  // namespace

EvaluationResult evaluate_dataset(const std::vector<DatasetRecord>& records, const BackendFactory& factory,
                                  const EvaluationOptions& options) {
  EvaluationResult result;
  result.method = options.direct ? "Direct" : "ETF";
  result.outcomes.resize(records.size());
  parallel_for(records.size(), options.workers, [&](std::size_t i) {
    try {
      result.outcomes[i] = run_record(records[i], factory, options);
    } catch (const std::exception& e) {
      spdlog::warn("record {} failed: {}", records[i].id, e.what());
      result.outcomes[i] = RecordOutcome{};
      result.outcomes[i].id = records[i].id;
      result.outcomes[i].error = e.what();
    }
  });

  std::vector<verify::InstanceLabel> predicted, gold;
  std::vector<DatasetRecord> scored;
  EntityPredictions entity_predictions;
  std::vector<RecordCounts> counts;
  for (std::size_t i = 0; i < records.size(); ++i) {
    RecordOutcome& o = result.outcomes[i];
    if (!o.report) {
      ++result.failures;
      continue;
    }
    predicted.push_back(o.report->instance_label);
    gold.push_back(records[i].gold_instance_label);
    scored.push_back(records[i]);
    entity_predictions.insert(o.entity_predictions.begin(), o.entity_predictions.end());
    if (o.counts) counts.push_back(*o.counts);
  }
  result.instance = instance_level_metrics(predicted, gold, options.averaging);
  result.entity = entity_level_metrics(entity_predictions, gold_rows(scored), options.averaging);
  result.instance.title += " (" + result.method + ")";
  result.entity.title += " (" + result.method + ")";
  if (!options.direct) result.corpus = corpus_stats(counts);
  return result;
}

std::string outcome_line(const RecordOutcome& outcome, const DatasetRecord& record) {
  if (outcome.report) return verify::to_json(*outcome.report, record.summary).dump() + "\n";
  nlohmann::ordered_json j;
  j["unit_id"] = outcome.id;
  j["error"] = outcome.error;
  return j.dump() + "\n";
}

}  // namespace etf::eval
