#include "etf/verify/report.hpp"

#include <sstream>

#include "etf/match/normalize.hpp"

namespace etf::verify {
namespace {

using nlohmann::ordered_json;

ordered_json entity_json(const ner::SummaryEntity& e) {
  ordered_json j;
  j["surface"] = e.surface;
  j["tag"] = std::string(ner::to_string(e.tag));
  j["ordinal"] = e.ordinal;
  ordered_json spans = ordered_json::array();
  for (const ner::CharRange& r : e.spans) spans.push_back({r.begin, r.end});
  j["spans"] = std::move(spans);
  return j;
}

ordered_json sentences_json(const ner::SentenceList& sentences) {
  ordered_json out = ordered_json::array();
  for (const ner::Sentence& s : sentences) {
    ordered_json j;
    j["begin"] = s.range.begin;
    j["end"] = s.range.end;
    j["text"] = s.text;
    out.push_back(std::move(j));
  }
  return out;
}

template <typename T, typename F>
ordered_json array_of(const std::vector<T>& items, F&& fn) {
  ordered_json out = ordered_json::array();
  for (const T& item : items) out.push_back(fn(item));
  return out;
}

}  // namespace

ordered_json to_json(const SummaryReport& report, std::string_view summary_text) {
  ordered_json j;
  j["unit_id"] = report.unit_id;
  j["method"] = report.method;
  j["instance_label"] = std::string(to_string(report.instance_label));
  j["hallucinated_entity_count"] = report.hallucinated_entity_count;
  j["unresolved_count"] = report.unresolved_count;
  j["threshold"] = report.threshold;
  j["count_extrinsic"] = report.count_extrinsic;
  j["parse_mode"] = std::string(code::to_string(report.parse_mode));

  j["tuples"] = array_of(report.tuples, [](const TupleVerdict& tv) {
    ordered_json t;
    t["entity"] = entity_json(tv.tuple.entity);
    t["code_entity"] = {{"name", tv.tuple.code_entity.name},
                        {"kind", std::string(code::to_string(tv.tuple.code_entity.kind))}};
    t["relevant_sentences"] = sentences_json(tv.tuple.relevant_sentences);
    t["verdict"] = tv.verdict.label ? ordered_json(std::string(to_string(*tv.verdict.label))) : ordered_json("UNRESOLVED");
    if (tv.verdict.label) {
      t["effective_verdict"] = std::string(to_string(effective(*tv.verdict.label)));
    } else {
      t["effective_verdict"] = nullptr;
    }
    t["raw_backend_text"] = tv.verdict.raw_backend_text;
    t["attempts"] = tv.verdict.attempts;
    return t;
  });
  j["extrinsic_flags"] = array_of(report.extrinsic_flags, [](const ExtrinsicFlag& f) {
    ordered_json t;
    t["entity"] = entity_json(f.entity);
    t["sentences"] = sentences_json(f.sentences);
    return t;
  });
  j["fabricated"] = array_of(report.fabricated, entity_json);
  j["polysemous"] = array_of(report.polysemous, entity_json);
  j["nl_entities"] = array_of(report.nl_entities, entity_json);
  if (report.method == "direct") {
    j["direct_findings"] = array_of(report.direct_findings, [](const DirectFinding& f) {
      ordered_json t;
      t["entity_name"] = f.entity_name;
      t["relevant_sentence"] = f.relevant_sentence;
      t["grounded"] = f.grounded;
      return t;
    });
  }
  j["localization"] = array_of(report.localization, [&](const Localization& l) {
    ordered_json t;
    t["begin"] = l.range.begin;
    t["end"] = l.range.end;
    t["reason"] = std::string(to_string(l.reason));
    t["entities"] = l.entities;
    if (!summary_text.empty() && l.range.end <= summary_text.size()) {
      t["text"] = std::string(summary_text.substr(l.range.begin, l.range.size()));
    }
    return t;
  });
  j["taxonomy_hint"] = report.taxonomy_hint ? ordered_json(*report.taxonomy_hint) : ordered_json(nullptr);
  return j;
}

std::string render_text(const SummaryReport& report, std::string_view summary_text) {
  std::ostringstream os;
  os << "unit:            " << report.unit_id << "\n";
  os << "method:          " << report.method << "\n";
  os << "verdict:         " << to_string(report.instance_label) << " (count " << report.hallucinated_entity_count
     << ", threshold " << report.threshold << (report.count_extrinsic ? ", extrinsic counted" : "") << ")\n";
  if (report.unresolved_count > 0) os << "unresolved:      " << report.unresolved_count << "\n";
  if (report.parse_mode != code::ParseMode::FULL_AST) os << "parse mode:      " << code::to_string(report.parse_mode) << "\n";

  if (!report.tuples.empty()) {
    os << "\nentity verdicts:\n";
    for (const TupleVerdict& tv : report.tuples) {
      os << "  " << (tv.verdict.label ? to_string(*tv.verdict.label) : "UNRESOLVED") << "  "
         << match::normalize(tv.tuple.entity.surface) << " -> " << tv.tuple.code_entity.name << " ["
         << code::to_string(tv.tuple.code_entity.kind) << "]\n";
    }
  }
  if (!report.extrinsic_flags.empty()) {
    os << "\nungrounded entities:\n";
    for (const ExtrinsicFlag& f : report.extrinsic_flags) {
      os << "  " << f.entity.surface << " [" << ner::to_string(f.entity.tag) << "]\n";
    }
  }
  if (!report.direct_findings.empty()) {
    os << "\ndirect findings:\n";
    for (const DirectFinding& f : report.direct_findings) {
      os << "  " << f.entity_name << (f.grounded ? "" : " (not in summary)") << ": " << f.relevant_sentence << "\n";
    }
  }
  if (!report.fabricated.empty()) {
    os << "\nfabricated by NER:";
    for (const auto& e : report.fabricated) os << " " << e.surface;
    os << "\n";
  }
  if (!report.localization.empty()) {
    os << "\nlocalization:\n";
    for (const Localization& l : report.localization) {
      os << "  " << to_string(l.reason) << " [" << l.range.begin << "," << l.range.end << ")";
      if (!summary_text.empty() && l.range.end <= summary_text.size()) {
        os << " " << summary_text.substr(l.range.begin, l.range.size());
      }
      os << "\n";
    }
  }
  if (report.taxonomy_hint) os << "\ntaxonomy hint:   " << *report.taxonomy_hint << "\n";
  return os.str();
}

}  // namespace etf::verify
