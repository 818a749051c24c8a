#include "etf/match/normalize.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <limits>

namespace etf::match {
namespace {

constexpr std::array<std::string_view, 7> kQuotes = {"`", "\"", "'", "“", "”", "‘", "’"};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool strip_quote_prefix(std::string_view& s) {
  for (std::string_view q : kQuotes) {
    if (s.starts_with(q)) {
      s.remove_prefix(q.size());
      return true;
    }
  }
  return false;
}

bool strip_quote_suffix(std::string_view& s) {
  for (std::string_view q : kQuotes) {
    if (s.ends_with(q)) {
      s.remove_suffix(q.size());
      return true;
    }
  }
  return false;
}

char fold(char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); }

}  // namespace

std::string normalize(std::string_view surface) {
  std::string_view s = trim(surface);
  while (strip_quote_prefix(s)) s = trim(s);
  while (strip_quote_suffix(s)) s = trim(s);
  if (s.ends_with("()") || s.ends_with("[]")) s.remove_suffix(2);
  return std::string(trim(s));
}

bool is_identifier_char(unsigned char c) { return std::isalnum(c) || c == '_' || c == '$' || c >= 0x80; }

bool at_boundary(std::string_view text, std::size_t pos, std::size_t len) {
  if (len == 0 || pos + len > text.size()) return false;
  auto ident = [&](std::size_t i) { return is_identifier_char(static_cast<unsigned char>(text[i])); };
  if (ident(pos) && pos > 0 && ident(pos - 1)) return false;
  std::size_t last = pos + len - 1;
  if (ident(last) && last + 1 < text.size() && ident(last + 1)) return false;
  return true;
}

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (fold(a[i]) != fold(b[i])) return false;
  }
  return true;
}

std::vector<std::size_t> find_all(std::string_view text, std::string_view needle, bool bounded, bool ignore_case) {
  std::vector<std::size_t> out;
  if (needle.empty() || needle.size() > text.size()) return out;
  for (std::size_t pos = 0; pos + needle.size() <= text.size(); ++pos) {
    std::string_view window = text.substr(pos, needle.size());
    bool hit = ignore_case ? iequals(window, needle) : window == needle;
    if (hit && (!bounded || at_boundary(text, pos, needle.size()))) out.push_back(pos);
  }
  return out;
}

bool contains_bounded(std::string_view text, std::string_view needle, bool ignore_case) {
  return !find_all(text, needle, true, ignore_case).empty();
}

std::optional<long long> integer_value(std::string_view text) {
  std::string_view s = trim(text);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!s.empty() && (s.back() == 'l' || s.back() == 'L')) s.remove_suffix(1);
  int base = 10;
  if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
    base = 16;
    s.remove_prefix(2);
  } else if (s.size() > 2 && s[0] == '0' && (s[1] == 'b' || s[1] == 'B')) {
    base = 2;
    s.remove_prefix(2);
  } else if (s.size() > 1 && s[0] == '0') {
    base = 8;
    s.remove_prefix(1);
  }
  if (s.empty() || s.front() == '_' || s.back() == '_') return std::nullopt;
  std::string digits;
  for (char c : s) {
    if (c != '_') digits.push_back(c);
  }
  unsigned long long value = 0;
  auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value, base);
  if (ec != std::errc() || end != digits.data() + digits.size()) return std::nullopt;
  if (value > static_cast<unsigned long long>(std::numeric_limits<long long>::max())) return std::nullopt;
  long long v = static_cast<long long>(value);
  return negative ? -v : v;
}

}  // namespace etf::match
