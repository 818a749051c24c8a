#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "etf/eval/dataset.hpp"
#include "etf/ner/extract.hpp"
#include "etf/verify/verdict.hpp"

namespace etf::client {

/// Judge answering with the human label of the gold row that has the same
/// normalized name and occurrence index. Throws OracleMiss otherwise.
class OracleJudge : public verify::JudgeBackend {
 public:
  explicit OracleJudge(const eval::DatasetRecord& record);

  verify::Verdict verify(const verify::IntentTuple& tuple, const code::SourceUnit& code) override;
  std::string_view name() const override { return "oracle"; }

 private:
  std::string record_id_;
  std::map<std::pair<std::string, int>, verify::Label> gold_;
};

/// Extractor returning the gold annotations as summary entities, with the
/// gold occurrence indices. IRRELEVANT rows are left out by default, as they
/// are dropped before scoring.
class GoldEntityExtractor : public ner::EntityExtractorBackend {
 public:
  explicit GoldEntityExtractor(const eval::DatasetRecord& record, bool drop_irrelevant = true);

  std::vector<ner::SummaryEntity> extract(const ner::Summary& summary) override;
  std::string_view name() const override { return "gold"; }
  bool provides_ordinals() const override { return true; }

 private:
  std::vector<ner::SummaryEntity> entities_;
};

}  // namespace etf::client
