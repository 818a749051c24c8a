#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <nlohmann/json.hpp>
#include <string>
#include <utility>
#include <vector>

#include "etf/ner/tagset.hpp"

namespace etf::eval {

/// A (surface, tag) pair; the surface is normalized on construction by the
/// loaders and by ner_eval.
struct NerPair {
  std::string surface;
  ner::Tag tag = ner::Tag::VARIABLE;
};

struct NerScores {
  double jaccard = 0.0;
  double type_f1 = 0.0;
  // Tallies behind the two scores, so records can be pooled.
  std::size_t pred_surfaces = 0;
  std::size_t gold_surfaces = 0;
  std::size_t common_surfaces = 0;
  std::size_t pred_typed = 0;  // (surface, tag) pairs on common surfaces
  std::size_t gold_typed = 0;
  std::size_t typed_hits = 0;
};

/// Jaccard over normalized surface sets; type F1 is the micro F1 of
/// (surface, tag) pairs restricted to surfaces both sides found. Two empty
/// inputs score 1.0 on both; no common surface gives type F1 0.
NerScores ner_eval(const std::vector<NerPair>& predicted, const std::vector<NerPair>& gold);

struct NerDocument {
  std::string id;
  std::string source_model;
  std::vector<NerPair> entities;
};

/// JSON lines of {"id", "source_model"?, "entities": [{"name"|"surface", "tag"}]}.
/// Dataset records are accepted too ("gold_entities" instead of "entities").
std::vector<NerDocument> load_ner_documents(const std::filesystem::path& path);

struct NerEvalReport {
  struct Row {
    std::string model;
    std::size_t records = 0;
    double mean_jaccard = 0.0;
    double type_f1 = 0.0;  // pooled over records
  };
  std::vector<Row> per_model;  // sorted by model name
  Row overall;
  std::vector<std::string> missing_predictions;  // gold ids absent from the predictions
  std::vector<std::string> unknown_predictions;  // predicted ids absent from gold
};

/// Pairs documents by id. The model of a pair is taken from gold, else from
/// the prediction, else "unknown".
NerEvalReport ner_eval_documents(const std::vector<NerDocument>& predicted, const std::vector<NerDocument>& gold);

nlohmann::ordered_json to_json(const NerEvalReport& report);
std::string render_table(const NerEvalReport& report);

}  // namespace etf::eval
