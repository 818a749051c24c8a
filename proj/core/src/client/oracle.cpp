#include "etf/client/oracle.hpp"

#include "etf/errors.hpp"
#include "etf/match/normalize.hpp"

namespace etf::client {

OracleJudge::OracleJudge(const eval::DatasetRecord& record) : record_id_(record.id) {
  for (const eval::GoldEntity& e : record.gold_entities) {
    gold_.emplace(std::make_pair(match::normalize(e.name), e.ordinal), e.label);
  }
}

verify::Verdict OracleJudge::verify(const verify::IntentTuple& tuple, const code::SourceUnit&) {
  const std::string name = match::normalize(tuple.entity.surface);
  auto it = gold_.find({name, tuple.entity.ordinal});
  if (it == gold_.end()) {
    throw OracleMiss("no gold row for \"" + name + "\" #" + std::to_string(tuple.entity.ordinal) + " in record " +
                     record_id_);
  }
  verify::Verdict v;
  v.label = it->second;
  v.raw_backend_text = std::string(verify::to_string(it->second));
  return v;
}

GoldEntityExtractor::GoldEntityExtractor(const eval::DatasetRecord& record, bool drop_irrelevant) {
  for (const eval::GoldEntity& e : record.gold_entities) {
    if (drop_irrelevant && e.label == verify::Label::IRRELEVANT) continue;
    ner::SummaryEntity s;
    s.surface = e.name;
    s.tag = e.tag;
    s.ordinal = e.ordinal;
    entities_.push_back(std::move(s));
  }
}

std::vector<ner::SummaryEntity> GoldEntityExtractor::extract(const ner::Summary&) { return entities_; }

}  // namespace etf::client
