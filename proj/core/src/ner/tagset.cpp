#include "etf/ner/tagset.hpp"

#include <cctype>
#include <string>

namespace etf::ner {

std::string_view to_string(Tag tag) {
  switch (tag) {
    case Tag::CLASS: return "CLASS";
    case Tag::VARIABLE: return "VARIABLE";
    case Tag::FUNCTION: return "FUNCTION";
    case Tag::LIBRARY: return "LIBRARY";
    case Tag::VALUE: return "VALUE";
    case Tag::DATA_TYPE: return "DATA_TYPE";
    case Tag::HTML_XML_TAG: return "HTML_XML_TAG";
    case Tag::APPLICATION: return "APPLICATION";
    case Tag::UI_ELEMENT: return "UI_ELEMENT";
    case Tag::LANGUAGE: return "LANGUAGE";
    case Tag::DATA_STRUCTURE: return "DATA_STRUCTURE";
    case Tag::ALGORITHM: return "ALGORITHM";
    case Tag::FILE_TYPE: return "FILE_TYPE";
    case Tag::FILE_NAME: return "FILE_NAME";
    case Tag::VERSION: return "VERSION";
    case Tag::DEVICE: return "DEVICE";
    case Tag::OS: return "OS";
    case Tag::WEBSITE: return "WEBSITE";
    case Tag::USER_NAME: return "USER_NAME";
  }
  return "UNKNOWN";
}

std::optional<Tag> parse_tag(std::string_view text) {
  std::string key;
  for (char c : text) {
    unsigned char u = static_cast<unsigned char>(c);
    if (std::isalnum(u)) {
      key.push_back(static_cast<char>(std::toupper(u)));
    } else if (c == ' ' || c == '_' || c == '-' || c == '/') {
      if (!key.empty() && key.back() != '_') key.push_back('_');
    }
  }
  while (!key.empty() && key.back() == '_') key.pop_back();
  if (key == "HTML_OR_XML_TAG" || key == "HTML_XML_TAG" || key == "HTML_TAG" || key == "XML_TAG") {
    return Tag::HTML_XML_TAG;
  }
  if (key == "DATATYPE") return Tag::DATA_TYPE;
  if (key == "USERNAME") return Tag::USER_NAME;
  if (key == "FILENAME") return Tag::FILE_NAME;
  if (key == "FILETYPE") return Tag::FILE_TYPE;
  for (Tag t : kAllTags) {
    if (to_string(t) == key) return t;
  }
  return std::nullopt;
}

bool is_code_tag(Tag tag) { return static_cast<int>(tag) <= static_cast<int>(Tag::HTML_XML_TAG); }

}  // namespace etf::ner
