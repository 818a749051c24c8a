#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace etf::ner {

/// The 19 entity tags: seven code tags followed by twelve natural-language tags.
enum class Tag {
  CLASS,
  VARIABLE,
  FUNCTION,
  LIBRARY,
  VALUE,
  DATA_TYPE,
  HTML_XML_TAG,
  APPLICATION,
  UI_ELEMENT,
  LANGUAGE,
  DATA_STRUCTURE,
  ALGORITHM,
  FILE_TYPE,
  FILE_NAME,
  VERSION,
  DEVICE,
  OS,
  WEBSITE,
  USER_NAME,
};

inline constexpr std::array<Tag, 19> kAllTags = {
    Tag::CLASS,          Tag::VARIABLE,  Tag::FUNCTION,  Tag::LIBRARY,   Tag::VALUE,
    Tag::DATA_TYPE,      Tag::HTML_XML_TAG, Tag::APPLICATION, Tag::UI_ELEMENT, Tag::LANGUAGE,
    Tag::DATA_STRUCTURE, Tag::ALGORITHM, Tag::FILE_TYPE, Tag::FILE_NAME, Tag::VERSION,
    Tag::DEVICE,         Tag::OS,        Tag::WEBSITE,   Tag::USER_NAME};

/// Canonical spelling, e.g. "DATA_TYPE".
std::string_view to_string(Tag tag);

/// Accepts the canonical spelling and the forms used in prompts and model
/// output: any case, spaces or hyphens for underscores, "HTML or XML TAG".
std::optional<Tag> parse_tag(std::string_view text);

bool is_code_tag(Tag tag);

}  // namespace etf::ner
