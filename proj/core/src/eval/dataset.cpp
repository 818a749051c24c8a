#include "etf/eval/dataset.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "etf/errors.hpp"
#include "etf/match/normalize.hpp"

namespace etf::eval {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr std::array<std::pair<Taxonomy, std::string_view>, 10> kTaxonomyNames = {{
    {Taxonomy::HC1_VARIABLE, "HC1_VARIABLE"},
    {Taxonomy::HC1_FUNCTION, "HC1_FUNCTION"},
    {Taxonomy::HC1_LIBRARY, "HC1_LIBRARY"},
    {Taxonomy::HC2_CONTEXTUAL, "HC2_CONTEXTUAL"},
    {Taxonomy::HC2_NONCONTEXTUAL, "HC2_NONCONTEXTUAL"},
    {Taxonomy::HC3_LENGTH, "HC3_LENGTH"},
    {Taxonomy::HC3_LEXICAL, "HC3_LEXICAL"},
    {Taxonomy::HC3_LOGICAL, "HC3_LOGICAL"},
    {Taxonomy::HC4_COMMENT, "HC4_COMMENT"},
    {Taxonomy::HC4_LOG, "HC4_LOG"},
}};

const json& require(const json& doc, const char* key, std::size_t line) {
  auto it = doc.find(key);
  if (it == doc.end()) throw DatasetError(line, std::string("missing field \"") + key + "\"");
  return *it;
}

std::string require_string(const json& doc, const char* key, std::size_t line) {
  const json& v = require(doc, key, line);
  if (!v.is_string()) throw DatasetError(line, std::string("field \"") + key + "\" must be a string");
  return v.get<std::string>();
}

template <class T, class Parse>
T require_enum(const json& doc, const char* key, std::size_t line, Parse parse) {
  std::string text = require_string(doc, key, line);
  auto value = parse(text);
  if (!value) throw DatasetError(line, std::string("unknown ") + key + " \"" + text + "\"");
  return *value;
}

std::vector<std::string> string_list(const json& v, const char* key, std::size_t line) {
  if (v.is_string()) return {v.get<std::string>()};
  if (!v.is_array()) throw DatasetError(line, std::string("field \"") + key + "\" must be a list of strings");
  std::vector<std::string> out;
  for (const json& item : v) {
    if (!item.is_string()) throw DatasetError(line, std::string("field \"") + key + "\" must be a list of strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

std::optional<verify::InstanceLabel> parse_gold_instance(std::string_view text) {
  auto label = verify::parse_instance_label(text);
  if (label == verify::InstanceLabel::INDETERMINATE) return std::nullopt;
  return label;
}

void number_gold(std::vector<GoldEntity>& entities) {
  std::map<std::string, int> seen;
  for (GoldEntity& e : entities) e.ordinal = seen[match::normalize(e.name)]++;
}

const json* first_of(const json& row, std::initializer_list<const char*> keys) {
  for (const char* k : keys) {
    auto it = row.find(k);
    if (it != row.end() && !it->is_null()) return &*it;
  }
  return nullptr;
}

}  // namespace

std::string_view to_string(Rating rating) {
  switch (rating) {
    case Rating::GOOD: return "GOOD";
    case Rating::FAIR: return "FAIR";
    case Rating::POOR: return "POOR";
  }
  return "GOOD";
}

std::optional<Rating> parse_rating(std::string_view text) {
  for (Rating r : {Rating::GOOD, Rating::FAIR, Rating::POOR}) {
    if (match::iequals(text, to_string(r))) return r;
  }
  return std::nullopt;
}

std::string_view to_string(Taxonomy code) {
  for (const auto& [c, name] : kTaxonomyNames) {
    if (c == code) return name;
  }
  return "HC1_VARIABLE";
}

std::optional<Taxonomy> parse_taxonomy(std::string_view text) {
  for (const auto& [c, name] : kTaxonomyNames) {
    if (match::iequals(text, name)) return c;
  }
  return std::nullopt;
}

void validate_record(const DatasetRecord& record) {
  bool any_incorrect = false;
  for (const GoldEntity& e : record.gold_entities) {
    if (e.label == verify::Label::INCORRECT) any_incorrect = true;
    if (e.taxonomy && e.label != verify::Label::INCORRECT) {
      throw InvariantViolation(record.line, "taxonomy code on a non-INCORRECT row (" + e.name + ")");
    }
  }
  bool hallucinated = record.gold_instance_label == verify::InstanceLabel::HALLUCINATED;
  if (hallucinated != any_incorrect) {
    throw InvariantViolation(record.line, hallucinated ? "HALLUCINATED record without an INCORRECT entity"
                                                       : "INCORRECT entity in a NOT_HALLUCINATED record");
  }
}

DatasetRecord parse_record(const json& doc, std::size_t line) {
  if (!doc.is_object()) throw DatasetError(line, "record is not a JSON object");
  DatasetRecord r;
  r.line = line;
  r.id = require_string(doc, "id", line);
  r.source_model = require_string(doc, "source_model", line);
  r.code = require_string(doc, "code", line);
  r.summary = require_string(doc, "summary", line);
  r.summary_rating = require_enum<Rating>(doc, "summary_rating", line, parse_rating);
  r.gold_instance_label = require_enum<verify::InstanceLabel>(doc, "gold_instance_label", line, parse_gold_instance);
  const json& rows = require(doc, "gold_entities", line);
  if (!rows.is_array()) throw DatasetError(line, "field \"gold_entities\" must be a list");
  for (const json& row : rows) {
    if (!row.is_object()) throw DatasetError(line, "gold entity is not an object");
    GoldEntity e;
    e.name = require_string(row, "name", line);
    e.tag = require_enum<ner::Tag>(row, "tag", line, ner::parse_tag);
    e.label = require_enum<verify::Label>(row, "label", line, verify::parse_label);
    if (auto it = row.find("relevant_sentences"); it != row.end()) {
      e.relevant_sentences = string_list(*it, "relevant_sentences", line);
    }
    if (auto it = row.find("taxonomy"); it != row.end() && !it->is_null()) {
      e.taxonomy = require_enum<Taxonomy>(row, "taxonomy", line, parse_taxonomy);
    }
    r.gold_entities.push_back(std::move(e));
  }
  number_gold(r.gold_entities);
  validate_record(r);
  return r;
}

LoadResult load_dataset(std::istream& in, LoadMode mode) {
  LoadResult result;
  std::set<std::string> ids;
  std::string text;
  for (std::size_t line = 1; std::getline(in, text); ++line) {
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      json doc = json::parse(text, nullptr, false);
      if (doc.is_discarded()) throw DatasetError(line, "invalid JSON");
      DatasetRecord record = parse_record(doc, line);
      if (!ids.insert(record.id).second) throw InvariantViolation(line, "duplicate id \"" + record.id + "\"");
      result.records.push_back(std::move(record));
    } catch (const DatasetError& e) {
      if (mode == LoadMode::STRICT) throw;
      result.skipped.push_back({e.line(), e.what()});
    }
  }
  return result;
}

LoadResult load_dataset(const std::filesystem::path& path, LoadMode mode) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DatasetError(0, "cannot open dataset " + path.string());
  return load_dataset(in, mode);
}

ordered_json to_json(const DatasetRecord& record) {
  ordered_json j;
  j["id"] = record.id;
  j["source_model"] = record.source_model;
  j["code"] = record.code;
  j["summary"] = record.summary;
  j["summary_rating"] = to_string(record.summary_rating);
  j["gold_instance_label"] = verify::to_string(record.gold_instance_label);
  ordered_json rows = ordered_json::array();
  for (const GoldEntity& e : record.gold_entities) {
    ordered_json row;
    row["name"] = e.name;
    row["tag"] = ner::to_string(e.tag);
    row["relevant_sentences"] = e.relevant_sentences;
    row["label"] = verify::to_string(e.label);
    row["taxonomy"] = e.taxonomy ? ordered_json(to_string(*e.taxonomy)) : ordered_json(nullptr);
    rows.push_back(std::move(row));
  }
  j["gold_entities"] = std::move(rows);
  return j;
}

std::string to_jsonl(const std::vector<DatasetRecord>& records) {
  std::string out;
  for (const DatasetRecord& r : records) out += to_json(r).dump() + "\n";
  return out;
}

DatasetTotals totals(const std::vector<DatasetRecord>& records) {
  DatasetTotals t;
  t.summaries = records.size();
  for (const DatasetRecord& r : records) {
    if (r.gold_instance_label == verify::InstanceLabel::HALLUCINATED) ++t.hallucinated;
    for (const GoldEntity& e : r.gold_entities) {
      ++t.entities;
      switch (e.label) {
        case verify::Label::CORRECT: ++t.correct; break;
        case verify::Label::INCORRECT: ++t.incorrect; break;
        case verify::Label::IRRELEVANT: ++t.irrelevant; break;
      }
    }
  }
  return t;
}

std::vector<DatasetRecord> convert_flat_rows(std::istream& in) {
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  std::vector<std::pair<std::size_t, json>> rows;
  json whole = json::parse(text, nullptr, false);
  if (!whole.is_discarded() && whole.is_array()) {
    for (std::size_t i = 0; i < whole.size(); ++i) rows.emplace_back(i + 1, whole[i]);
  } else {
    std::istringstream lines(text);
    std::string line_text;
    for (std::size_t line = 1; std::getline(lines, line_text); ++line) {
      if (line_text.find_first_not_of(" \t\r") == std::string::npos) continue;
      json row = json::parse(line_text, nullptr, false);
      if (row.is_discarded()) throw DatasetError(line, "invalid JSON");
      rows.emplace_back(line, std::move(row));
    }
  }

  std::vector<DatasetRecord> records;
  std::map<std::string, std::size_t> index;
  for (const auto& [line, row] : rows) {
    if (!row.is_object()) throw DatasetError(line, "row is not a JSON object");
    auto str = [&, line = line](std::initializer_list<const char*> keys, bool required) -> std::string {
      const json* v = first_of(row, keys);
      if (!v) {
        if (required) throw DatasetError(line, std::string("missing field \"") + *keys.begin() + "\"");
        return {};
      }
      if (v->is_number_integer()) return std::to_string(v->get<long long>());
      if (!v->is_string()) throw DatasetError(line, std::string("field \"") + *keys.begin() + "\" must be a string");
      return v->get<std::string>();
    };

    std::string id = str({"summary_id", "id"}, true);
    auto [it, fresh] = index.emplace(id, records.size());
    if (fresh) {
      DatasetRecord r;
      r.id = id;
      r.line = line;
      r.source_model = str({"model", "source_model"}, true);
      r.code = str({"code"}, true);
      r.summary = str({"summary"}, true);
      std::string rating = str({"rating", "summary_rating"}, false);
      if (!rating.empty()) {
        auto parsed = parse_rating(rating);
        if (!parsed) throw DatasetError(line, "unknown rating \"" + rating + "\"");
        r.summary_rating = *parsed;
      }
      records.push_back(std::move(r));
    }
    DatasetRecord& record = records[it->second];

    std::string name = str({"entity", "name"}, false);
    if (name.empty()) continue;
    GoldEntity e;
    e.name = name;
    std::string tag = str({"entity_type", "tag"}, true);
    auto parsed_tag = ner::parse_tag(tag);
    if (!parsed_tag) throw DatasetError(line, "unknown tag \"" + tag + "\"");
    e.tag = *parsed_tag;
    std::string label = str({"label"}, true);
    auto parsed_label = verify::parse_label(label);
    if (!parsed_label) throw DatasetError(line, "unknown label \"" + label + "\"");
    e.label = *parsed_label;
    if (const json* s = first_of(row, {"relevant_sentences", "relevant_sentence"})) {
      e.relevant_sentences = string_list(*s, "relevant_sentences", line);
    }
    std::string taxonomy = str({"taxonomy"}, false);
    if (!taxonomy.empty()) {
      auto parsed = parse_taxonomy(taxonomy);
      if (!parsed) throw DatasetError(line, "unknown taxonomy \"" + taxonomy + "\"");
      e.taxonomy = *parsed;
    }
    record.gold_entities.push_back(std::move(e));
  }

  for (DatasetRecord& r : records) {
    number_gold(r.gold_entities);
    bool any_incorrect = std::any_of(r.gold_entities.begin(), r.gold_entities.end(),
                                     [](const GoldEntity& e) { return e.label == verify::Label::INCORRECT; });
    r.gold_instance_label =
        any_incorrect ? verify::InstanceLabel::HALLUCINATED : verify::InstanceLabel::NOT_HALLUCINATED;
    validate_record(r);
  }
  return records;
}

}  // namespace etf::eval
