#include "etf/match/matcher.hpp"

#include <algorithm>
#include <array>

#include "etf/match/normalize.hpp"

namespace etf::match {
namespace {

using code::EntityKind;

constexpr std::array<EntityKind, 7> kPreference = {EntityKind::FUNCTION, EntityKind::CLASS,   EntityKind::DATA_TYPE,
                                                   EntityKind::VARIABLE, EntityKind::LIBRARY, EntityKind::VALUE,
                                                   EntityKind::ANNOTATION};

const code::CodeEntity* pick(const std::vector<const code::CodeEntity*>& candidates, ner::Tag tag) {
  if (candidates.empty()) return nullptr;
  for (EntityKind k : agreeing_kinds(tag)) {
    for (const code::CodeEntity* c : candidates) {
      if (c->kind == k) return c;
    }
  }
  for (EntityKind k : kPreference) {
    for (const code::CodeEntity* c : candidates) {
      if (c->kind == k) return c;
    }
  }
  return nullptr;
}

}  // namespace

std::vector<EntityKind> agreeing_kinds(ner::Tag tag) {
  switch (tag) {
    case ner::Tag::CLASS: return {EntityKind::CLASS, EntityKind::DATA_TYPE};
    case ner::Tag::DATA_TYPE: return {EntityKind::DATA_TYPE, EntityKind::CLASS};
    case ner::Tag::FUNCTION: return {EntityKind::FUNCTION};
    case ner::Tag::VARIABLE: return {EntityKind::VARIABLE};
    case ner::Tag::LIBRARY: return {EntityKind::LIBRARY};
    case ner::Tag::VALUE: return {EntityKind::VALUE};
    default: return {};
  }
}

std::optional<code::CodeEntity> match_entity(const ner::SummaryEntity& entity, const code::CodeEntitySet& code,
                                             const MatchOptions& options) {
  const std::string bare = normalize(entity.surface);
  if (bare.empty()) return std::nullopt;

  std::vector<const code::CodeEntity*> exact;
  std::vector<const code::CodeEntity*> folded;
  for (const code::CodeEntity& c : code.entities) {
    if (c.kind == EntityKind::KEYWORD) continue;
    if (c.name == bare) {
      exact.push_back(&c);
    } else if (options.lenient_case && iequals(c.name, bare)) {
      folded.push_back(&c);
    }
  }
  if (const code::CodeEntity* hit = pick(exact, entity.tag)) return *hit;
  if (const code::CodeEntity* hit = pick(folded, entity.tag)) return *hit;

  if (entity.tag == ner::Tag::VALUE) {
    if (auto wanted = integer_value(bare)) {
      for (const code::CodeEntity& c : code.entities) {
        if (c.kind == EntityKind::VALUE && integer_value(c.name) == wanted) return c;
      }
    }
  }
  return std::nullopt;
}

MatchResult partition(const std::vector<ner::SummaryEntity>& entities, const code::CodeEntitySet& code,
                      const MatchOptions& options) {
  MatchResult result;
  for (const ner::SummaryEntity& e : entities) {
    if (!ner::is_code_tag(e.tag)) {
      result.nl_entities.push_back(e);
    } else if (auto hit = match_entity(e, code, options)) {
      result.mapped.push_back({e, *hit});
    } else {
      result.unmapped.push_back(e);
    }
  }
  return result;
}

}  // namespace etf::match
