#include "etf/eval/ner_eval.hpp"

#include <spdlog/fmt/fmt.h>

#include <algorithm>
#include <fstream>
#include <set>

#include "etf/errors.hpp"
#include "etf/eval/metrics.hpp"
#include "etf/match/normalize.hpp"

namespace etf::eval {

namespace {

double f1_of(std::size_t hits, std::size_t pred, std::size_t gold) {
  if (pred == 0 && gold == 0) return 1.0;
  if (hits == 0) return 0.0;
  double p = static_cast<double>(hits) / pred;
  double r = static_cast<double>(hits) / gold;
  return 2.0 * p * r / (p + r);
}

}  // namespace

NerScores ner_eval(const std::vector<NerPair>& predicted, const std::vector<NerPair>& gold) {
  std::set<std::string> pred_surfaces, gold_surfaces;
  std::set<std::pair<std::string, ner::Tag>> pred_typed, gold_typed;
  for (const NerPair& p : predicted) {
    std::string s = match::normalize(p.surface);
    pred_surfaces.insert(s);
    pred_typed.emplace(s, p.tag);
  }
  for (const NerPair& g : gold) {
    std::string s = match::normalize(g.surface);
    gold_surfaces.insert(s);
    gold_typed.emplace(s, g.tag);
  }

  NerScores scores;
  scores.pred_surfaces = pred_surfaces.size();
  scores.gold_surfaces = gold_surfaces.size();
  scores.jaccard = jaccard(pred_surfaces, gold_surfaces);
  std::set<std::string> common;
  std::set_intersection(pred_surfaces.begin(), pred_surfaces.end(), gold_surfaces.begin(), gold_surfaces.end(),
                        std::inserter(common, common.end()));
  scores.common_surfaces = common.size();
  for (const auto& pair : pred_typed) {
    if (!common.count(pair.first)) continue;
    ++scores.pred_typed;
    scores.typed_hits += gold_typed.count(pair);
  }
  for (const auto& pair : gold_typed) scores.gold_typed += common.count(pair.first);
  if (predicted.empty() && gold.empty()) {
    scores.type_f1 = 1.0;
  } else {
    scores.type_f1 = common.empty() ? 0.0 : f1_of(scores.typed_hits, scores.pred_typed, scores.gold_typed);
  }
  return scores;
}

std::vector<NerDocument> load_ner_documents(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<NerDocument> docs;
  std::string text;
  for (std::size_t line = 1; std::getline(in, text); ++line) {
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw DatasetError(line, "invalid JSON object");
    NerDocument doc;
    auto id = j.find("id");
    if (id == j.end() || !id->is_string()) throw DatasetError(line, "missing string field \"id\"");
    doc.id = id->get<std::string>();
    if (auto m = j.find("source_model"); m != j.end() && m->is_string()) doc.source_model = m->get<std::string>();
    auto list = j.find("entities");
    if (list == j.end()) list = j.find("gold_entities");
    if (list == j.end() || !list->is_array()) throw DatasetError(line, "missing list field \"entities\"");
    for (const auto& e : *list) {
      if (!e.is_object()) throw DatasetError(line, "entity is not an object");
      auto name = e.find("name");
      if (name == e.end()) name = e.find("surface");
      auto tag = e.find("tag");
      if (name == e.end() || !name->is_string() || tag == e.end() || !tag->is_string()) {
        throw DatasetError(line, "entity needs string fields \"name\" and \"tag\"");
      }
      auto parsed = ner::parse_tag(tag->get<std::string>());
      if (!parsed) throw DatasetError(line, "unknown tag \"" + tag->get<std::string>() + "\"");
      doc.entities.push_back({match::normalize(name->get<std::string>()), *parsed});
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

NerEvalReport ner_eval_documents(const std::vector<NerDocument>& predicted, const std::vector<NerDocument>& gold) {
  std::map<std::string, const NerDocument*> pred_by_id;
  for (const NerDocument& d : predicted) pred_by_id.emplace(d.id, &d);
  std::set<std::string> gold_ids;

  struct Pool {
    std::size_t records = 0;
    double jaccard_sum = 0.0;
    std::size_t hits = 0, pred = 0, gold = 0;
    bool all_empty = true;
  };
  std::map<std::string, Pool> pools;
  Pool total;
  NerEvalReport report;

  for (const NerDocument& g : gold) {
    gold_ids.insert(g.id);
    auto it = pred_by_id.find(g.id);
    if (it == pred_by_id.end()) {
      report.missing_predictions.push_back(g.id);
      continue;
    }
    const NerDocument& p = *it->second;
    std::string model = !g.source_model.empty() ? g.source_model : !p.source_model.empty() ? p.source_model : "unknown";
    NerScores s = ner_eval(p.entities, g.entities);
    for (Pool* pool : {&pools[model], &total}) {
      ++pool->records;
      pool->jaccard_sum += s.jaccard;
      pool->hits += s.typed_hits;
      pool->pred += s.pred_typed;
      pool->gold += s.gold_typed;
      pool->all_empty = pool->all_empty && p.entities.empty() && g.entities.empty();
    }
  }
  for (const NerDocument& p : predicted) {
    if (!gold_ids.count(p.id)) report.unknown_predictions.push_back(p.id);
  }

  auto row = [](const std::string& model, const Pool& pool) {
    NerEvalReport::Row r;
    r.model = model;
    r.records = pool.records;
    if (pool.records == 0) return r;
    r.mean_jaccard = pool.jaccard_sum / pool.records;
    r.type_f1 = pool.all_empty ? 1.0 : f1_of(pool.hits, pool.pred, pool.gold);
    return r;
  };
  for (const auto& [model, pool] : pools) report.per_model.push_back(row(model, pool));
  report.overall = row("overall", total);
  return report;
}

nlohmann::ordered_json to_json(const NerEvalReport& report) {
  auto row = [](const NerEvalReport::Row& r) {
    return nlohmann::ordered_json{
        {"model", r.model}, {"records", r.records}, {"mean_jaccard", r.mean_jaccard}, {"type_f1", r.type_f1}};
  };
  nlohmann::ordered_json j;
  j["per_model"] = nlohmann::ordered_json::array();
  for (const auto& r : report.per_model) j["per_model"].push_back(row(r));
  j["overall"] = row(report.overall);
  j["missing_predictions"] = report.missing_predictions;
  j["unknown_predictions"] = report.unknown_predictions;
  return j;
}

std::string render_table(const NerEvalReport& report) {
  std::size_t width = 7;
  for (const auto& r : report.per_model) width = std::max(width, r.model.size());
  std::string out = fmt::format("{:<{}}  {:>7}  {:>7}  {:>7}\n", "model", width, "records", "jaccard", "type_f1");
  auto line = [&](const NerEvalReport::Row& r) {
    out += fmt::format("{:<{}}  {:>7}  {:>7.4f}  {:>7.4f}\n", r.model, width, r.records, r.mean_jaccard, r.type_f1);
  };
  for (const auto& r : report.per_model) line(r);
  line(report.overall);
  for (const auto& id : report.missing_predictions) out += "missing prediction: " + id + "\n";
  for (const auto& id : report.unknown_predictions) out += "prediction without gold: " + id + "\n";
  return out;
}

}  // namespace etf::eval
