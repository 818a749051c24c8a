#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "etf/code/token.hpp"
#include "etf/ner/types.hpp"
#include "etf/verify/aggregate.hpp"
#include "etf/verify/verdict.hpp"

namespace etf::eval {

enum class Rating { GOOD, FAIR, POOR };

std::string_view to_string(Rating rating);
std::optional<Rating> parse_rating(std::string_view text);

enum class Taxonomy {
  HC1_VARIABLE,
  HC1_FUNCTION,
  HC1_LIBRARY,
  HC2_CONTEXTUAL,
  HC2_NONCONTEXTUAL,
  HC3_LENGTH,
  HC3_LEXICAL,
  HC3_LOGICAL,
  HC4_COMMENT,
  HC4_LOG,
};

std::string_view to_string(Taxonomy code);
std::optional<Taxonomy> parse_taxonomy(std::string_view text);

struct GoldEntity {
  std::string name;
  ner::Tag tag = ner::Tag::VARIABLE;
  std::vector<std::string> relevant_sentences;
  verify::Label label = verify::Label::CORRECT;
  std::optional<Taxonomy> taxonomy;
  int ordinal = 0;  // occurrence index of the normalized name within the record
};

struct DatasetRecord {
  std::string id;
  std::string source_model;
  std::string code;
  std::string summary;
  Rating summary_rating = Rating::GOOD;
  verify::InstanceLabel gold_instance_label = verify::InstanceLabel::NOT_HALLUCINATED;
  std::vector<GoldEntity> gold_entities;
  std::size_t line = 0;  // 1-based line in the source file, 0 when built in memory

  code::SourceUnit source_unit() const { return {id, code}; }
  ner::Summary summary_unit() const { return {id, summary, source_model}; }
};

enum class LoadMode { STRICT, LENIENT };

struct LoadIssue {
  std::size_t line = 0;
  std::string message;
};

struct LoadResult {
  std::vector<DatasetRecord> records;
  std::vector<LoadIssue> skipped;  // lenient mode only
};

/// Builds a record from one JSON object. Throws DatasetError on missing or
/// mistyped fields and InvariantViolation when the gold labels disagree.
DatasetRecord parse_record(const nlohmann::json& doc, std::size_t line = 0);

/// Checks the label invariants: the instance label is HALLUCINATED iff some
/// non-IRRELEVANT gold row is INCORRECT, and taxonomy codes sit only on
/// INCORRECT rows.
void validate_record(const DatasetRecord& record);

/// One JSON object per line; blank lines are ignored. Strict mode throws on
/// the first bad line, lenient mode skips it and records why. Duplicate ids
/// are an invariant violation.
LoadResult load_dataset(std::istream& in, LoadMode mode = LoadMode::STRICT);
LoadResult load_dataset(const std::filesystem::path& path, LoadMode mode = LoadMode::STRICT);

nlohmann::ordered_json to_json(const DatasetRecord& record);
std::string to_jsonl(const std::vector<DatasetRecord>& records);

struct DatasetTotals {
  std::size_t summaries = 0;
  std::size_t hallucinated = 0;
  std::size_t entities = 0;
  std::size_t correct = 0;
  std::size_t incorrect = 0;
  std::size_t irrelevant = 0;
};

DatasetTotals totals(const std::vector<DatasetRecord>& records);

/// Converts the flat layout (one JSON row per annotated entity, repeating
/// the summary fields) into records. Recognised row keys: summary_id | id,
/// model | source_model, code, summary, rating | summary_rating, entity |
/// name, entity_type | tag, label, relevant_sentence(s), taxonomy. The
/// instance label is derived from the rows. Rows without an entity only
/// declare the record. Input is a JSON array or JSON lines.
std::vector<DatasetRecord> convert_flat_rows(std::istream& in);

}  // namespace etf::eval
