#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "etf/code/entities.hpp"
#include "etf/ner/types.hpp"
#include "etf/verify/verdict.hpp"

namespace etf::verify {

enum class InstanceLabel { HALLUCINATED, NOT_HALLUCINATED, INDETERMINATE };

std::string_view to_string(InstanceLabel label);
std::optional<InstanceLabel> parse_instance_label(std::string_view text);

enum class Reason { INTRINSIC, EXTRINSIC };

std::string_view to_string(Reason reason);

struct Localization {
  ner::CharRange range;
  Reason reason = Reason::INTRINSIC;
  std::vector<std::string> entities;  // normalized surfaces that point here
};

/// A code-tagged summary entity with no counterpart in the code.
struct ExtrinsicFlag {
  ner::SummaryEntity entity;
  ner::SentenceList sentences;
};

struct TupleVerdict {
  IntentTuple tuple;
  Verdict verdict;
};

struct DirectFinding {
  std::string entity_name;
  std::string relevant_sentence;
  bool grounded = true;  // false: the named entity does not occur in the summary
};

struct AggregateOptions {
  int threshold = 1;
  bool count_extrinsic = false;
};

struct SummaryReport {
  std::string unit_id;
  std::string method = "etf";  // "etf" or "direct"
  code::ParseMode parse_mode = code::ParseMode::FULL_AST;
  std::vector<TupleVerdict> tuples;
  std::vector<ExtrinsicFlag> extrinsic_flags;
  std::vector<ner::SummaryEntity> fabricated;
  std::vector<ner::SummaryEntity> polysemous;
  std::vector<ner::SummaryEntity> nl_entities;
  std::vector<DirectFinding> direct_findings;
  InstanceLabel instance_label = InstanceLabel::NOT_HALLUCINATED;
  int hallucinated_entity_count = 0;
  int unresolved_count = 0;
  int threshold = 1;
  bool count_extrinsic = false;
  std::vector<Localization> localization;
  std::optional<std::string> taxonomy_hint;
};

/// Counts tuples whose effective label is INCORRECT, plus unmapped entities
/// when count_extrinsic is set. The label is HALLUCINATED when the count
/// reaches the threshold, INDETERMINATE when only the UNRESOLVED tuples could
/// still reach it, NOT_HALLUCINATED otherwise. Localization lists the
/// sentences of INCORRECT tuples (INTRINSIC) and of unmapped entities
/// (EXTRINSIC), merged per range and sorted.
SummaryReport aggregate(std::vector<TupleVerdict> tuples, std::vector<ExtrinsicFlag> extrinsic,
                        const AggregateOptions& options = {});

}  // namespace etf::verify
