#include "etf/verify/direct.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>
#include <regex>
#include <spdlog/spdlog.h>

#include "etf/errors.hpp"
#include "etf/match/normalize.hpp"
#include "etf/ner/sentences.hpp"
#include "etf/prompts.hpp"

namespace etf::verify {
namespace {

using nlohmann::json;

std::string quote_bare_keys(std::string_view text) {
  static const std::regex bare_key(R"(([\{,]\s*)(entity_name|relevant_sentence)\s*:)");
  return std::regex_replace(std::string(text), bare_key, "$1\"$2\":");
}

std::string field(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it != obj.end() && it->is_string() ? it->get<std::string>() : std::string();
}

}  // namespace

std::vector<DirectFinding> parse_direct_output(std::string_view response, std::string_view summary_text) {
  auto open = response.find('[');
  auto close = response.rfind(']');
  if (open == std::string_view::npos || close == std::string_view::npos || close < open) {
    throw MalformedBackendOutput("direct output has no bracketed list");
  }
  std::string_view list = response.substr(open, close - open + 1);
  json doc = json::parse(list, nullptr, false);
  if (doc.is_discarded()) doc = json::parse(quote_bare_keys(list), nullptr, false);
  if (doc.is_discarded() || !doc.is_array()) throw MalformedBackendOutput("direct output is not a JSON list");

  std::vector<DirectFinding> out;
  for (const json& item : doc) {
    if (!item.is_object()) throw MalformedBackendOutput("direct output item is not an object");
    DirectFinding f{field(item, "entity_name"), field(item, "relevant_sentence"), true};
    if (f.entity_name.empty() && f.relevant_sentence.empty()) continue;
    std::string bare = match::normalize(f.entity_name);
    f.grounded = !bare.empty() && summary_text.find(bare) != std::string_view::npos;
    out.push_back(std::move(f));
  }
  return out;
}

SummaryReport direct_verify(const code::SourceUnit& code, const ner::Summary& summary, client::ChatModel& model,
                            int max_attempts) {
  const std::string prompt = prompts::render_direct_evaluation(summary.text, code.text);
  std::vector<DirectFinding> findings;
  for (int attempt = 0;; ++attempt) {
    std::string response = model.complete(client::Role::DIRECT, prompt, attempt);
    try {
      findings = parse_direct_output(response, summary.text);
      break;
    } catch (const MalformedBackendOutput& e) {
      if (attempt + 1 >= max_attempts) throw;
      spdlog::warn("direct: malformed output for '{}' (attempt {}): {}", summary.id, attempt + 1, e.what());
    }
  }

  SummaryReport report;
  report.unit_id = summary.id;
  report.method = "direct";
  report.hallucinated_entity_count = static_cast<int>(findings.size());
  report.instance_label = findings.empty() ? InstanceLabel::NOT_HALLUCINATED : InstanceLabel::HALLUCINATED;

  const ner::SentenceList sentences = ner::segment_sentences(summary.text);
  for (const DirectFinding& f : findings) {
    std::string quoted = match::normalize(f.relevant_sentence);
    if (quoted.empty()) continue;
    for (const ner::Sentence& s : sentences) {
      if (s.text.find(quoted) == std::string::npos && quoted.find(s.text) == std::string::npos) continue;
      auto it = std::find_if(report.localization.begin(), report.localization.end(),
                             [&](const Localization& l) { return l.range == s.range; });
      if (it == report.localization.end()) {
        report.localization.push_back({s.range, Reason::INTRINSIC, {f.entity_name}});
      } else if (std::find(it->entities.begin(), it->entities.end(), f.entity_name) == it->entities.end()) {
        it->entities.push_back(f.entity_name);
      }
    }
  }
  std::sort(report.localization.begin(), report.localization.end(),
            [](const Localization& a, const Localization& b) { return a.range < b.range; });
  report.direct_findings = std::move(findings);
  return report;
}

}  // namespace etf::verify
