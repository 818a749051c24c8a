#include "etf/ner/extract.hpp"

#include <map>
#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "etf/errors.hpp"
#include "etf/match/normalize.hpp"
#include "etf/prompts.hpp"

namespace etf::ner {
namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

/// Removes a surrounding ```lang ... ``` fence if the response has one.
std::string_view strip_fence(std::string_view s) {
  s = trim(s);
  if (!s.starts_with("```")) return s;
  auto first_nl = s.find('\n');
  if (first_nl == std::string_view::npos) return s;
  s.remove_prefix(first_nl + 1);
  auto close = s.rfind("```");
  if (close != std::string_view::npos) s = s.substr(0, close);
  return trim(s);
}

void push(std::vector<SummaryEntity>& out, std::string_view surface, std::string_view tag_text) {
  std::string bare(trim(surface));
  if (bare.empty()) return;
  auto tag = parse_tag(tag_text);
  if (!tag) {
    spdlog::warn("ner: dropping '{}' with unknown tag '{}'", bare, tag_text);
    return;
  }
  out.push_back(SummaryEntity{std::move(bare), *tag, {}, 0});
}

std::string string_field(const json& obj, std::initializer_list<const char*> keys) {
  for (const char* k : keys) {
    auto it = obj.find(k);
    if (it != obj.end() && it->is_string()) return it->get<std::string>();
  }
  return {};
}

bool parse_json_list(std::string_view text, std::vector<SummaryEntity>& out) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) return false;
  if (doc.is_object()) {
    auto it = doc.find("entities");
    if (it == doc.end()) return false;
    doc = *it;
  }
  if (!doc.is_array()) return false;
  for (const json& item : doc) {
    if (item.is_array() && item.size() == 2 && item[0].is_string() && item[1].is_string()) {
      push(out, item[0].get<std::string>(), item[1].get<std::string>());
    } else if (item.is_object()) {
      std::string surface = string_field(item, {"entity", "entity_name", "name", "text", "surface"});
      std::string tag = string_field(item, {"entity_type", "type", "tag", "label"});
      if (surface.empty() || tag.empty()) return false;
      push(out, surface, tag);
    } else {
      return false;
    }
  }
  return true;
}

}  // namespace

std::vector<SummaryEntity> parse_ner_output(std::string_view response) {
  std::string_view body = strip_fence(response);
  std::vector<SummaryEntity> out;
  if (!body.empty() && (body.front() == '[' || body.front() == '{')) {
    if (parse_json_list(body, out)) return out;
    out.clear();
  }
  bool any_line = false;
  std::size_t start = 0;
  while (start <= body.size()) {
    std::size_t nl = body.find('\n', start);
    std::string_view line = body.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    auto sep = line.find("|||");
    if (sep != std::string_view::npos) {
      any_line = true;
      push(out, line.substr(0, sep), trim(line.substr(sep + 3)));
    }
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  if (!any_line) {
    throw MalformedBackendOutput("NER output is neither a JSON list nor 'entity ||| tag' lines");
  }
  return out;
}

void assign_ordinals(std::vector<SummaryEntity>& entities) {
  std::map<std::string, int> seen;
  for (SummaryEntity& e : entities) e.ordinal = seen[match::normalize(e.surface)]++;
}

std::vector<SummaryEntity> extract_entities(const Summary& summary, EntityExtractorBackend& backend) {
  if (trim(summary.text).empty()) throw EmptySummaryError();
  std::vector<SummaryEntity> out = backend.extract(summary);
  if (!backend.provides_ordinals()) assign_ordinals(out);
  return out;
}

std::vector<SummaryEntity> LlmEntityExtractor::extract(const Summary& summary) {
  const std::string prompt = prompts::render_ner(summary.text);
  for (int attempt = 0;; ++attempt) {
    std::string response = model_.complete(client::Role::NER, prompt, attempt);
    std::string_view body = trim(response);
    if (body == "[]") return {};
    try {
      return parse_ner_output(response);
    } catch (const MalformedBackendOutput& e) {
      if (attempt + 1 >= max_attempts_) throw;
      spdlog::warn("ner: malformed output for '{}' (attempt {}): {}", summary.id, attempt + 1, e.what());
    }
  }
}

}  // namespace etf::ner
