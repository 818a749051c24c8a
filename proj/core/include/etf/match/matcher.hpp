#pragma once

#include <optional>
#include <vector>

#include "etf/code/entities.hpp"
#include "etf/ner/types.hpp"

namespace etf::match {

struct MatchOptions {
  bool lenient_case = false;
};

struct MappedEntity {
  ner::SummaryEntity entity;
  code::CodeEntity code_entity;
};

struct MatchResult {
  std::vector<MappedEntity> mapped;
  std::vector<ner::SummaryEntity> unmapped;     // code-tagged, no counterpart in code
  std::vector<ner::SummaryEntity> nl_entities;  // natural-language tags, never grounded
};

/// Code entity kinds that agree with a summary tag, most specific first.
std::vector<code::EntityKind> agreeing_kinds(ner::Tag tag);

/// Finds the code entity named like the normalized surface. Keywords never
/// match. When several kinds share the name, a kind agreeing with the tag
/// wins, otherwise FUNCTION > CLASS > DATA_TYPE > VARIABLE > LIBRARY > VALUE >
/// ANNOTATION. VALUE-tagged surfaces also match integer literals of equal
/// value ("-1" and "-0x1"). With lenient_case an exact-case hit is still
/// preferred over a case-folded one.
std::optional<code::CodeEntity> match_entity(const ner::SummaryEntity& entity, const code::CodeEntitySet& code,
                                             const MatchOptions& options = {});

/// Natural-language tags go to nl_entities; everything else is routed by
/// match_entity. Input order is preserved within each list.
MatchResult partition(const std::vector<ner::SummaryEntity>& entities, const code::CodeEntitySet& code,
                      const MatchOptions& options = {});

}  // namespace etf::match
