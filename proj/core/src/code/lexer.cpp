#include "etf/code/token.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace etf::code {
namespace {

constexpr std::array<std::string_view, 50> kKeywords = {
    "abstract", "assert",     "boolean",   "break",     "byte",      "case",
    "catch",    "char",       "class",     "const",     "continue",  "default",
    "do",       "double",     "else",      "enum",      "extends",   "final",
    "finally",  "float",      "for",       "goto",      "if",        "implements",
    "import",   "instanceof", "int",       "interface", "long",      "native",
    "new",      "package",    "private",   "protected", "public",    "return",
    "short",    "static",     "strictfp",  "super",     "switch",    "synchronized",
    "this",     "throw",      "throws",    "transient", "try",       "void",
    "volatile", "while"};

// Longest first so a greedy scan picks the longest operator.
constexpr std::array<std::string_view, 37> kOperators = {
    ">>>=", "<<=", ">>=", ">>>", "...", "->", "::", "++", "--", "&&", "||", "==", "!=",
    "<=",   ">=",  "+=",  "-=",  "*=",  "/=", "&=", "|=", "^=", "%=", "<<", ">>", "=",
    ">",    "<",   "!",   "~",   "?",   ":",  "+",  "-",  "*",  "/",  "&"};

constexpr std::string_view kSingleOperators = "|^%";
constexpr std::string_view kSeparators = "(){}[];,.@";

bool is_ident_start(unsigned char c) {
  return std::isalpha(c) || c == '_' || c == '$' || c >= 0x80;
}

bool is_ident_part(unsigned char c) { return is_ident_start(c) || std::isdigit(c); }

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f'; }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  TokenStream run() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (is_space(c)) {
        advance(1);
        continue;
      }
      start_ = pos_;
      start_pos_ = here_;
      lex_one();
    }
    return std::move(out_);
  }

 private:
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i) {
      if (src_[pos_] == '\n') {
        ++here_.line;
        here_.column = 1;
      } else {
        ++here_.column;
      }
      ++pos_;
    }
  }

  void advance_to_line_end() {
    while (pos_ < src_.size() && src_[pos_] != '\n') advance(1);
    // A trailing '\r' belongs to the line break, not to the token.
    while (pos_ > start_ && src_[pos_ - 1] == '\r') {
      --pos_;
      --here_.column;
    }
  }

  void emit(TokenCategory category, LiteralKind literal = LiteralKind::None) {
    Token t;
    t.text = std::string(src_.substr(start_, pos_ - start_));
    t.category = category;
    t.literal = literal;
    t.offset = start_;
    t.position = start_pos_;
    out_.tokens.push_back(std::move(t));
  }

  void diagnose(LexDiagnostic::Kind kind, std::string message) {
    out_.diagnostics.push_back({kind, start_pos_, std::move(message)});
  }

  void lex_one() {
    unsigned char c = static_cast<unsigned char>(peek());
    if (c == '/' && peek(1) == '/') {
      advance_to_line_end();
      emit(TokenCategory::Comment);
      return;
    }
    if (c == '/' && peek(1) == '*') {
      lex_block_comment();
      return;
    }
    if (is_ident_start(c)) {
      while (pos_ < src_.size() && is_ident_part(static_cast<unsigned char>(peek()))) advance(1);
      std::string_view word = src_.substr(start_, pos_ - start_);
      if (word == "true" || word == "false") {
        emit(TokenCategory::Literal, LiteralKind::Boolean);
      } else if (word == "null") {
        emit(TokenCategory::Literal, LiteralKind::Null);
      } else if (is_java_keyword(word)) {
        emit(TokenCategory::Keyword);
      } else {
        emit(TokenCategory::Identifier);
      }
      return;
    }
    if (std::isdigit(c) || (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
      lex_number();
      return;
    }
    if (c == '"') {
      if (peek(1) == '"' && peek(2) == '"') {
        lex_text_block();
      } else {
        lex_quoted('"', LiteralKind::String, LexDiagnostic::Kind::UnterminatedString);
      }
      return;
    }
    if (c == '\'') {
      lex_quoted('\'', LiteralKind::Character, LexDiagnostic::Kind::UnterminatedCharacter);
      return;
    }
    // "..." and "::" are separators in Java; check before the operator table.
    std::string_view rest = src_.substr(pos_);
    if (rest.starts_with("...") || rest.starts_with("::")) {
      advance(rest.starts_with("...") ? 3 : 2);
      emit(TokenCategory::Separator);
      return;
    }
    if (kSeparators.find(static_cast<char>(c)) != std::string_view::npos) {
      advance(1);
      emit(TokenCategory::Separator);
      return;
    }
    for (std::string_view op : kOperators) {
      if (rest.starts_with(op)) {
        advance(op.size());
        emit(TokenCategory::Operator);
        return;
      }
    }
    if (kSingleOperators.find(static_cast<char>(c)) != std::string_view::npos) {
      advance(1);
      emit(TokenCategory::Operator);
      return;
    }
    advance(1);
    diagnose(LexDiagnostic::Kind::InvalidCharacter,
             std::string("unexpected character '") + static_cast<char>(c) + "'");
    emit(TokenCategory::Operator);
  }

  void lex_block_comment() {
    std::size_t close = src_.find("*/", pos_ + 2);
    if (close == std::string_view::npos) {
      diagnose(LexDiagnostic::Kind::UnterminatedComment, "unterminated block comment");
      advance_to_line_end();
    } else {
      advance(close + 2 - pos_);
    }
    emit(TokenCategory::Comment);
  }

  void lex_quoted(char quote, LiteralKind kind, LexDiagnostic::Kind error) {
    advance(1);
    while (pos_ < src_.size()) {
      char ch = peek();
      if (ch == '\\' && pos_ + 1 < src_.size() && src_[pos_ + 1] != '\n') {
        advance(2);
        continue;
      }
      if (ch == quote) {
        advance(1);
        emit(TokenCategory::Literal, kind);
        return;
      }
      if (ch == '\n') break;
      advance(1);
    }
    diagnose(error, quote == '"' ? "unterminated string literal" : "unterminated character literal");
    advance_to_line_end();
    emit(TokenCategory::Literal, kind);
  }

  void lex_text_block() {
    std::size_t search = pos_ + 3;
    while (true) {
      std::size_t close = src_.find("\"\"\"", search);
      if (close == std::string_view::npos) {
        diagnose(LexDiagnostic::Kind::UnterminatedString, "unterminated text block");
        advance_to_line_end();
        emit(TokenCategory::Literal, LiteralKind::TextBlock);
        return;
      }
      // An escaped quote does not close the block.
      std::size_t slashes = 0;
      while (close - slashes > search && src_[close - slashes - 1] == '\\') ++slashes;
      if (slashes % 2 == 0) {
        advance(close + 3 - pos_);
        emit(TokenCategory::Literal, LiteralKind::TextBlock);
        return;
      }
      search = close + 1;
    }
  }

  void lex_number() {
    auto digits = [&](auto pred) {
      while (pos_ < src_.size() && (pred(static_cast<unsigned char>(peek())) || peek() == '_')) {
        advance(1);
      }
    };
    auto is_dec = [](unsigned char ch) { return std::isdigit(ch) != 0; };
    auto is_hex = [](unsigned char ch) { return std::isxdigit(ch) != 0; };
    bool floating = false;

    if (peek() == '0' && (peek(1) == 'x' || peek(1) == 'X')) {
      advance(2);
      digits(is_hex);
      if (peek() == '.') {
        floating = true;
        advance(1);
        digits(is_hex);
      }
      if (peek() == 'p' || peek() == 'P') {
        floating = true;
        advance(1);
        if (peek() == '+' || peek() == '-') advance(1);
        digits(is_dec);
      }
    } else if (peek() == '0' && (peek(1) == 'b' || peek(1) == 'B')) {
      advance(2);
      digits([](unsigned char ch) { return ch == '0' || ch == '1'; });
    } else {
      digits(is_dec);
      if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
        floating = true;
        advance(1);
        digits(is_dec);
      } else if (peek() == '.' && ((!std::isalpha(static_cast<unsigned char>(peek(1))) && peek(1) != '.' &&
                                    peek(1) != '_') ||
                                   (std::string_view("dDfF").find(peek(1)) != std::string_view::npos &&
                                    !is_ident_part(static_cast<unsigned char>(peek(2)))))) {
        // "1." is a valid double literal, but "1.foo" and "1..2" are not ours.
        floating = true;
        advance(1);
      }
      if (peek() == 'e' || peek() == 'E') {
        char sign = peek(1);
        if (std::isdigit(static_cast<unsigned char>(sign)) ||
            ((sign == '+' || sign == '-') && std::isdigit(static_cast<unsigned char>(peek(2))))) {
          floating = true;
          advance(sign == '+' || sign == '-' ? 2 : 1);
          digits(is_dec);
        }
      }
    }
    char suffix = peek();
    if (suffix == 'l' || suffix == 'L') {
      advance(1);
    } else if (suffix == 'f' || suffix == 'F' || suffix == 'd' || suffix == 'D') {
      floating = true;
      advance(1);
    }
    emit(TokenCategory::Literal, floating ? LiteralKind::Floating : LiteralKind::Integer);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t start_ = 0;
  SourcePosition here_{1, 1};
  SourcePosition start_pos_{1, 1};
  TokenStream out_;
};

}  // namespace

bool has_content(std::string_view text) {
  return std::any_of(text.begin(), text.end(),
                     [](char c) { return !std::isspace(static_cast<unsigned char>(c)); });
}

std::string_view to_string(TokenCategory category) {
  switch (category) {
    case TokenCategory::Identifier: return "identifier";
    case TokenCategory::Keyword: return "keyword";
    case TokenCategory::Literal: return "literal";
    case TokenCategory::Operator: return "operator";
    case TokenCategory::Separator: return "separator";
    case TokenCategory::Comment: return "comment";
  }
  return "unknown";
}

bool is_java_keyword(std::string_view word) {
  return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

TokenStream tokenize(const SourceUnit& unit) { return Lexer(unit.text).run(); }

std::string reconstruct(std::string_view source, const std::vector<Token>& tokens) {
  std::string out;
  out.reserve(source.size());
  std::size_t cursor = 0;
  for (const Token& t : tokens) {
    if (t.synthetic) continue;
    if (t.offset < cursor) return {};
    std::string_view gap = source.substr(cursor, t.offset - cursor);
    if (!std::all_of(gap.begin(), gap.end(), is_space)) return {};
    out.append(gap);
    out.append(t.text);
    cursor = t.end();
  }
  std::string_view tail = source.substr(std::min(cursor, source.size()));
  if (!std::all_of(tail.begin(), tail.end(), is_space)) return {};
  out.append(tail);
  return out;
}

}  // namespace etf::code
