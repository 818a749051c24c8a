#include "etf/pipeline.hpp"

#include "etf/errors.hpp"
#include "etf/ner/filter.hpp"
#include "etf/ner/sentences.hpp"
#include "etf/verify/direct.hpp"
#include "etf/verify/intent.hpp"

namespace etf {

PipelineResult run_etf(const code::SourceUnit& code, const ner::Summary& summary,
                       ner::EntityExtractorBackend& extractor, verify::JudgeBackend& judge,
                       const PipelineOptions& options) {
  PipelineResult out;
  out.code_entities = code::extract_code_entities(code);
  std::vector<ner::SummaryEntity> candidates = ner::extract_entities(summary, extractor);
  out.sentences = ner::segment_sentences(summary);

  ner::FilterResult filtered = ner::filter_fabricated(candidates, summary, {options.lenient_case});
  out.match = match::partition(filtered.kept, out.code_entities, {options.lenient_case});

  std::vector<verify::TupleVerdict> tuples;
  for (const match::MappedEntity& mapped : out.match.mapped) {
    verify::IntentTuple tuple = verify::collect_intent(mapped, out.sentences, code.id, options.lenient_case);
    verify::Verdict verdict = verify::verify_tuple(tuple, code, judge);
    tuples.push_back({std::move(tuple), std::move(verdict)});
  }
  std::vector<verify::ExtrinsicFlag> extrinsic;
  for (const ner::SummaryEntity& e : out.match.unmapped) {
    extrinsic.push_back({e, verify::sentences_mentioning(e, out.sentences, options.lenient_case)});
  }

  out.report = verify::aggregate(std::move(tuples), std::move(extrinsic), options.aggregate);
  out.report.unit_id = code.id;
  out.report.parse_mode = out.code_entities.parse_mode;
  out.report.fabricated = std::move(filtered.fabricated);
  out.report.polysemous = std::move(filtered.polysemous);
  out.report.nl_entities = out.match.nl_entities;
  return out;
}

verify::SummaryReport run_direct(const code::SourceUnit& code, const ner::Summary& summary, client::ChatModel& model,
                                 const PipelineOptions& options) {
  if (!code::has_content(code.text)) throw EmptySourceError();
  if (!code::has_content(summary.text)) throw EmptySummaryError();
  verify::SummaryReport report = verify::direct_verify(code, summary, model, options.max_attempts);
  report.unit_id = code.id;
  return report;
}

}  // namespace etf
