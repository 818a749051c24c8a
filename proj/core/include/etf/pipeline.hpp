#pragma once

#include "etf/client/chat_model.hpp"
#include "etf/code/entities.hpp"
#include "etf/match/matcher.hpp"
#include "etf/ner/extract.hpp"
#include "etf/ner/types.hpp"
#include "etf/verify/aggregate.hpp"
#include "etf/verify/verdict.hpp"

namespace etf {

struct PipelineOptions {
  verify::AggregateOptions aggregate;
  bool lenient_case = false;  // case-folded filtering, matching and sentence lookup
  int max_attempts = 3;       // per backend call that may return unusable text
};

struct PipelineResult {
  verify::SummaryReport report;
  code::CodeEntitySet code_entities;
  match::MatchResult match;
  ner::SentenceList sentences;
};

/// Entity tracing over one code/summary pair: code entities, summary
/// entities, filtration, matching, one judged tuple per mapped entity, and
/// aggregation. Throws EmptySourceError / EmptySummaryError on blank input.
PipelineResult run_etf(const code::SourceUnit& code, const ner::Summary& summary,
                       ner::EntityExtractorBackend& extractor, verify::JudgeBackend& judge,
                       const PipelineOptions& options = {});

/// The single-prompt baseline over the same pair.
verify::SummaryReport run_direct(const code::SourceUnit& code, const ner::Summary& summary, client::ChatModel& model,
                                 const PipelineOptions& options = {});

}  // namespace etf
