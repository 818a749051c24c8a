#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "etf/code/token.hpp"

namespace etf::code {

enum class EntityKind { CLASS, FUNCTION, VARIABLE, LIBRARY, VALUE, DATA_TYPE, ANNOTATION, KEYWORD };

std::string_view to_string(EntityKind kind);
std::optional<EntityKind> parse_entity_kind(std::string_view text);

struct CodeEntity {
  std::string name;
  EntityKind kind = EntityKind::VARIABLE;
  SourcePosition location;  // first occurrence
  int occurrences = 1;
};

enum class ParseMode { FULL_AST, LEXICAL_FALLBACK };

std::string_view to_string(ParseMode mode);

struct CodeEntitySet {
  std::string unit_id;
  std::vector<CodeEntity> entities;  // ordered by location, then kind, then name
  ParseMode parse_mode = ParseMode::FULL_AST;
  std::string parse_error;  // set when parse_mode is LEXICAL_FALLBACK

  /// Entities whose name equals `name`, in kind order.
  std::vector<const CodeEntity*> named(std::string_view name) const;
  const CodeEntity* find(std::string_view name, EntityKind kind) const;
};

/// Parses the unit and classifies every named element. Falls back to a
/// token-level classification when the source does not parse.
/// Throws EmptySourceError for blank input.
CodeEntitySet extract_code_entities(const SourceUnit& unit);

}  // namespace etf::code
