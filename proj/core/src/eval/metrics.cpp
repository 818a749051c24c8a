#include "etf/eval/metrics.hpp"

#include <spdlog/fmt/fmt.h>

#include <algorithm>

namespace etf::eval {

namespace {

double ratio(std::size_t num, std::size_t den) { return den == 0 ? 0.0 : static_cast<double>(num) / den; }

double harmonic(double p, double r) { return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r); }

}  // namespace

MetricsBundle macro_metrics(const std::vector<std::size_t>& gold, const std::vector<std::size_t>& predicted,
                            std::vector<std::string> classes, Averaging averaging) {
  if (gold.size() != predicted.size()) throw LengthMismatch("gold and predicted label counts differ");
  const std::size_t k = classes.size();
  MetricsBundle m;
  m.classes = std::move(classes);
  m.averaging = averaging;
  m.scored = gold.size();
  m.confusion.assign(k, std::vector<std::size_t>(k, 0));
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (gold[i] >= k || predicted[i] >= k) throw Error("label index out of range");
    ++m.confusion[gold[i]][predicted[i]];
  }

  std::size_t averaged = 0;
  for (std::size_t c = 0; c < k; ++c) {
    ClassScores s;
    s.label = m.classes[c];
    for (std::size_t o = 0; o < k; ++o) {
      s.support += m.confusion[c][o];
      s.predicted += m.confusion[o][c];
    }
    const std::size_t tp = m.confusion[c][c];
    s.precision = ratio(tp, s.predicted);
    s.recall = ratio(tp, s.support);
    s.f1 = harmonic(s.precision, s.recall);
    if (averaging == Averaging::FULL_ALPHABET || s.support > 0) {
      m.macro_precision += s.precision;
      m.macro_recall += s.recall;
      m.macro_f1 += s.f1;
      ++averaged;
    }
    m.per_class.push_back(std::move(s));
  }
  if (averaged > 0) {
    m.macro_precision /= averaged;
    m.macro_recall /= averaged;
    m.macro_f1 /= averaged;
  }
  return m;
}

MetricsBundle entity_level_metrics(const EntityPredictions& predictions, const std::vector<GoldEntityRow>& gold,
                                   Averaging averaging) {
  auto index = [](verify::Label l) -> std::size_t { return verify::effective(l) == verify::Label::CORRECT ? 0 : 1; };
  std::vector<std::size_t> g, p;
  std::size_t skipped = 0;
  for (const GoldEntityRow& row : gold) {
    if (row.label == verify::Label::IRRELEVANT) continue;
    auto it = predictions.find(row.key);
    if (it == predictions.end()) {
      throw AlignmentError("no prediction for gold entity " + row.key.name + "#" + std::to_string(row.key.ordinal) +
                           " in record " + row.key.record_id);
    }
    if (!it->second) {
      ++skipped;
      continue;
    }
    g.push_back(index(row.label));
    p.push_back(index(*it->second));
  }
  MetricsBundle m = macro_metrics(g, p, {"CORRECT", "INCORRECT"}, averaging);
  m.title = "Entity Level";
  m.skipped_indeterminate = skipped;
  return m;
}

MetricsBundle instance_level_metrics(const std::vector<verify::InstanceLabel>& predictions,
                                     const std::vector<verify::InstanceLabel>& gold, Averaging averaging) {
  if (predictions.size() != gold.size()) throw LengthMismatch("prediction and gold record counts differ");
  auto index = [](verify::InstanceLabel l) -> std::size_t { return l == verify::InstanceLabel::HALLUCINATED ? 0 : 1; };
  std::vector<std::size_t> g, p;
  std::size_t skipped = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (predictions[i] == verify::InstanceLabel::INDETERMINATE) {
      ++skipped;
      continue;
    }
    if (gold[i] == verify::InstanceLabel::INDETERMINATE) throw Error("gold instance label cannot be INDETERMINATE");
    g.push_back(index(gold[i]));
    p.push_back(index(predictions[i]));
  }
  MetricsBundle m = macro_metrics(g, p, {"HALLUCINATED", "NOT_HALLUCINATED"}, averaging);
  m.title = "Instance Level";
  m.skipped_indeterminate = skipped;
  return m;
}

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
  if (a.empty() && b.empty()) return 1.0;
  std::size_t common = 0;
  for (const std::string& s : a) common += b.count(s);
  return static_cast<double>(common) / static_cast<double>(a.size() + b.size() - common);
}

nlohmann::ordered_json to_json(const MetricsBundle& m) {
  nlohmann::ordered_json j;
  j["title"] = m.title;
  j["averaging"] = m.averaging == Averaging::GOLD_PRESENT ? "gold_present" : "full_alphabet";
  j["macro_precision"] = m.macro_precision;
  j["macro_recall"] = m.macro_recall;
  j["macro_f1"] = m.macro_f1;
  nlohmann::ordered_json classes = nlohmann::ordered_json::array();
  for (const ClassScores& s : m.per_class) {
    classes.push_back({{"label", s.label},
                       {"precision", s.precision},
                       {"recall", s.recall},
                       {"f1", s.f1},
                       {"support", s.support},
                       {"predicted", s.predicted}});
  }
  j["per_class"] = std::move(classes);
  j["confusion"] = {{"classes", m.classes}, {"rows_gold_cols_predicted", m.confusion}};
  j["scored"] = m.scored;
  j["skipped_indeterminate"] = m.skipped_indeterminate;
  return j;
}

std::string render_table(const MetricsBundle& m) {
  std::size_t width = 5;
  for (const std::string& c : m.classes) width = std::max(width, c.size());
  std::string out = fmt::format("{}\n", m.title);
  out += fmt::format("{:<{}}  {:>6}  {:>6}  {:>6}  {:>7}\n", "class", width, "P", "R", "F1", "support");
  for (const ClassScores& s : m.per_class) {
    out += fmt::format("{:<{}}  {:>6.4f}  {:>6.4f}  {:>6.4f}  {:>7}\n", s.label, width, s.precision, s.recall, s.f1,
                       s.support);
  }
  out += fmt::format("{:<{}}  {:>6.4f}  {:>6.4f}  {:>6.4f}  {:>7}\n", "macro", width, m.macro_precision, m.macro_recall,
                     m.macro_f1, m.scored);
  if (m.skipped_indeterminate > 0) out += fmt::format("skipped (indeterminate): {}\n", m.skipped_indeterminate);
  return out;
}

}  // namespace etf::eval
