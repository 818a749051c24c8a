#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace etf::code {

/// A unit of Java source to analyse: one method, a class fragment, or a full
/// compilation unit.
struct SourceUnit {
  std::string id;
  std::string text;
};

/// Returns true when `text` holds at least one non-whitespace character.
bool has_content(std::string_view text);

enum class TokenCategory { Identifier, Keyword, Literal, Operator, Separator, Comment };

std::string_view to_string(TokenCategory category);

enum class LiteralKind { None, Integer, Floating, Character, String, TextBlock, Boolean, Null };

/// 1-based line and column.
struct SourcePosition {
  int line = 1;
  int column = 1;

  friend auto operator<=>(const SourcePosition&, const SourcePosition&) = default;
};

struct Token {
  std::string text;
  TokenCategory category = TokenCategory::Identifier;
  LiteralKind literal = LiteralKind::None;
  std::size_t offset = 0;  // byte offset into the source
  SourcePosition position;
  bool synthetic = false;  // inserted by the parser, not present in the source

  std::size_t end() const noexcept { return offset + text.size(); }
  bool is(TokenCategory c, std::string_view t) const noexcept {
    return category == c && text == t;
  }
};

struct LexDiagnostic {
  enum class Kind { UnterminatedString, UnterminatedCharacter, UnterminatedComment, InvalidCharacter };
  Kind kind;
  SourcePosition position;
  std::string message;
};

struct TokenStream {
  std::vector<Token> tokens;
  std::vector<LexDiagnostic> diagnostics;

  bool ok() const noexcept { return diagnostics.empty(); }
};

bool is_java_keyword(std::string_view word);

/// Splits Java source into tokens. Comments are kept as tokens. Lexical
/// errors are recorded in `diagnostics`; the offending token runs to the end
/// of its line and scanning resumes on the next line, so the stream always
/// covers the whole source.
TokenStream tokenize(const SourceUnit& unit);

/// Rebuilds the source by interleaving tokens with the original whitespace
/// between them. Returns the empty string if any gap holds non-whitespace.
std::string reconstruct(std::string_view source, const std::vector<Token>& tokens);

}  // namespace etf::code
