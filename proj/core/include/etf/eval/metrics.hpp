#pragma once

#include <cstddef>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "etf/errors.hpp"
#include "etf/verify/aggregate.hpp"
#include "etf/verify/verdict.hpp"

namespace etf::eval {

enum class Averaging {
  GOLD_PRESENT,   // mean over classes with gold support
  FULL_ALPHABET,  // mean over every class; empty classes score 0
};

struct ClassScores {
  std::string label;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;    // gold count
  std::size_t predicted = 0;  // predicted count
};

struct MetricsBundle {
  std::string title;
  std::vector<std::string> classes;
  std::vector<ClassScores> per_class;
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f1 = 0.0;
  std::vector<std::vector<std::size_t>> confusion;  // [gold][predicted]
  std::size_t scored = 0;
  std::size_t skipped_indeterminate = 0;
  Averaging averaging = Averaging::GOLD_PRESENT;
};

/// Macro P/R/F1 over label indices into `classes`. A class never predicted
/// has precision 0; a class with no gold has recall 0.
MetricsBundle macro_metrics(const std::vector<std::size_t>& gold, const std::vector<std::size_t>& predicted,
                            std::vector<std::string> classes, Averaging averaging = Averaging::GOLD_PRESENT);

/// Key aligning a prediction with a gold row.
struct EntityKey {
  std::string record_id;
  std::string name;  // normalized surface
  int ordinal = 0;

  friend auto operator<=>(const EntityKey&, const EntityKey&) = default;
};

struct GoldEntityRow {
  EntityKey key;
  verify::Label label = verify::Label::CORRECT;
};

/// Missing value: the prediction was UNRESOLVED.
using EntityPredictions = std::map<EntityKey, std::optional<verify::Label>>;

/// Binary metrics over {CORRECT, INCORRECT}. Gold IRRELEVANT rows are
/// dropped, predicted IRRELEVANT counts as INCORRECT, UNRESOLVED predictions
/// are skipped. Throws AlignmentError when a scored gold row has no
/// prediction.
MetricsBundle entity_level_metrics(const EntityPredictions& predictions, const std::vector<GoldEntityRow>& gold,
                                   Averaging averaging = Averaging::GOLD_PRESENT);

/// Binary metrics over {HALLUCINATED, NOT_HALLUCINATED}; INDETERMINATE
/// predictions are skipped. Throws LengthMismatch on unequal inputs.
MetricsBundle instance_level_metrics(const std::vector<verify::InstanceLabel>& predictions,
                                     const std::vector<verify::InstanceLabel>& gold,
                                     Averaging averaging = Averaging::GOLD_PRESENT);

/// Cohen's kappa over two annotations of the same items. Returns 1.0 when
/// the expected agreement is 1. Throws LengthMismatch on unequal or empty
/// inputs.
template <class T>
double cohen_kappa(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.size() != b.size() || a.empty()) {
    throw LengthMismatch("cohen_kappa needs two non-empty sequences of equal length");
  }
  const double n = static_cast<double>(a.size());
  std::map<T, double> count_a, count_b;
  double agree = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    count_a[a[i]] += 1;
    count_b[b[i]] += 1;
    if (a[i] == b[i]) agree += 1;
  }
  double p_o = agree / n;
  double p_e = 0;
  for (const auto& [label, ca] : count_a) {
    if (auto it = count_b.find(label); it != count_b.end()) p_e += (ca / n) * (it->second / n);
  }
  if (p_e >= 1.0) return 1.0;
  return (p_o - p_e) / (1.0 - p_e);
}

/// |A ∩ B| / |A ∪ B|; two empty sets are identical (1.0).
double jaccard(const std::set<std::string>& a, const std::set<std::string>& b);

nlohmann::ordered_json to_json(const MetricsBundle& metrics);

/// Aligned plain-text table: one row per class, then the macro row.
std::string render_table(const MetricsBundle& metrics);

}  // namespace etf::eval
