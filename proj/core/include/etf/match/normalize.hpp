#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace etf::match {

/// Canonical form of a summary mention: surrounding backticks and quotes
/// (straight or curly) removed, one trailing "()" or "[]" removed, trimmed.
/// Case is preserved.
std::string normalize(std::string_view surface);

/// Letters, digits, '_', '$' and any non-ASCII byte.
bool is_identifier_char(unsigned char c);

/// True when `text[pos, pos+len)` is not glued to a neighbouring identifier.
/// A side is only checked when the needle itself starts or ends with an
/// identifier character there.
bool at_boundary(std::string_view text, std::size_t pos, std::size_t len);

/// Offsets of every occurrence of `needle` in `text`. Overlapping matches are
/// reported. ASCII case folding when `ignore_case` is set.
std::vector<std::size_t> find_all(std::string_view text, std::string_view needle, bool bounded,
                                  bool ignore_case = false);

bool contains_bounded(std::string_view text, std::string_view needle, bool ignore_case = false);

bool iequals(std::string_view a, std::string_view b);

/// Integer value of a Java-style integer literal as written in text: optional
/// sign, decimal/hex/octal/binary digits, underscores, an optional L suffix.
std::optional<long long> integer_value(std::string_view text);

}  // namespace etf::match
