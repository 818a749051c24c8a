#include "etf/verify/aggregate.hpp"

#include <algorithm>
#include <map>

#include "etf/match/normalize.hpp"

namespace etf::verify {

std::string_view to_string(InstanceLabel label) {
  switch (label) {
    case InstanceLabel::HALLUCINATED: return "HALLUCINATED";
    case InstanceLabel::NOT_HALLUCINATED: return "NOT_HALLUCINATED";
    case InstanceLabel::INDETERMINATE: return "INDETERMINATE";
  }
  return "UNKNOWN";
}

std::optional<InstanceLabel> parse_instance_label(std::string_view text) {
  for (InstanceLabel l : {InstanceLabel::HALLUCINATED, InstanceLabel::NOT_HALLUCINATED, InstanceLabel::INDETERMINATE}) {
    if (match::iequals(text, to_string(l))) return l;
  }
  return std::nullopt;
}

std::string_view to_string(Reason reason) { return reason == Reason::INTRINSIC ? "INTRINSIC" : "EXTRINSIC"; }

SummaryReport aggregate(std::vector<TupleVerdict> tuples, std::vector<ExtrinsicFlag> extrinsic,
                        const AggregateOptions& options) {
  SummaryReport report;
  report.threshold = options.threshold;
  report.count_extrinsic = options.count_extrinsic;

  std::map<std::pair<ner::CharRange, Reason>, std::vector<std::string>> spans;
  auto note = [&](const ner::Sentence& s, Reason reason, const std::string& entity) {
    auto& names = spans[{s.range, reason}];
    if (std::find(names.begin(), names.end(), entity) == names.end()) names.push_back(entity);
  };

  int count = 0;
  for (const TupleVerdict& tv : tuples) {
    if (!tv.verdict.resolved()) {
      ++report.unresolved_count;
      continue;
    }
    if (effective(*tv.verdict.label) != Label::INCORRECT) continue;
    ++count;
    for (const ner::Sentence& s : tv.tuple.relevant_sentences) {
      note(s, Reason::INTRINSIC, match::normalize(tv.tuple.entity.surface));
    }
  }
  for (const ExtrinsicFlag& flag : extrinsic) {
    if (options.count_extrinsic) ++count;
    for (const ner::Sentence& s : flag.sentences) note(s, Reason::EXTRINSIC, match::normalize(flag.entity.surface));
  }

  report.hallucinated_entity_count = count;
  if (count >= options.threshold) {
    report.instance_label = InstanceLabel::HALLUCINATED;
  } else if (count + report.unresolved_count >= options.threshold) {
    report.instance_label = InstanceLabel::INDETERMINATE;
  } else {
    report.instance_label = InstanceLabel::NOT_HALLUCINATED;
  }

  for (auto& [key, names] : spans) report.localization.push_back({key.first, key.second, std::move(names)});
  report.tuples = std::move(tuples);
  report.extrinsic_flags = std::move(extrinsic);
  return report;
}

}  // namespace etf::verify
