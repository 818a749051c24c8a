#include "etf/ner/sentences.hpp"

#include <array>
#include <cctype>
#include <string>

namespace etf::ner {
namespace {

constexpr std::array<std::string_view, 5> kAbbreviations = {"e.g", "i.e", "etc", "vs", "cf"};

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v'; }
bool is_space(char c) { return is_blank(c) || c == '\n'; }
bool is_terminator(char c) { return c == '.' || c == '!' || c == '?'; }

bool closes_quote(std::string_view rest) {
  for (std::string_view q : {"\"", "'", ")", "”", "’"}) {
    if (rest.starts_with(q)) return true;
  }
  return false;
}

std::size_t quote_width(std::string_view rest) {
  for (std::string_view q : {"”", "’"}) {
    if (rest.starts_with(q)) return q.size();
  }
  return 1;
}

/// The word immediately before `dot`, letters and inner dots only, lowercased.
std::string word_before(std::string_view text, std::size_t dot) {
  std::size_t start = dot;
  while (start > 0 && (std::isalpha(static_cast<unsigned char>(text[start - 1])) || text[start - 1] == '.')) {
    --start;
  }
  std::string out;
  for (std::size_t i = start; i < dot; ++i) out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(text[i]))));
  return out;
}

/// "1." or "12." standing alone at the start of a line.
bool is_enumerator(std::string_view text, std::size_t dot) {
  std::size_t i = dot;
  while (i > 0 && std::isdigit(static_cast<unsigned char>(text[i - 1]))) --i;
  if (i == dot) return false;
  while (i > 0 && is_blank(text[i - 1])) --i;
  return i == 0 || text[i - 1] == '\n';
}

class Segmenter {
 public:
  explicit Segmenter(std::string_view text) : text_(text) {}

  SentenceList run() {
    std::size_t start = 0;
    int depth = 0;
    bool in_tick = false;
    for (std::size_t i = 0; i < text_.size(); ++i) {
      char c = text_[i];
      if (c == '\n') {
        emit(start, i);
        start = i + 1;
        depth = 0;
        in_tick = false;
        continue;
      }
      if (c == '`') in_tick = !in_tick;
      if (in_tick) continue;
      if (c == '(') ++depth;
      if (c == ')' && depth > 0) --depth;
      if (depth > 0 || !is_terminator(c)) continue;
      if (c == '.' && (is_enumerator(text_, i) || is_abbreviation(i))) continue;

      std::size_t end = i + 1;
      while (end < text_.size() && is_terminator(text_[end])) ++end;
      while (end < text_.size() && closes_quote(text_.substr(end))) end += quote_width(text_.substr(end));
      if (end < text_.size()) {
        if (!is_blank(text_[end])) continue;
        std::size_t next = end;
        while (next < text_.size() && is_blank(text_[next])) ++next;
        if (next < text_.size() && text_[next] != '\n' && !std::isupper(static_cast<unsigned char>(text_[next]))) {
          continue;
        }
      }
      emit(start, end);
      start = end;
      i = end - 1;
    }
    emit(start, text_.size());
    return std::move(out_);
  }

 private:
  bool is_abbreviation(std::size_t dot) const {
    std::string word = word_before(text_, dot);
    for (std::string_view a : kAbbreviations) {
      if (word == a) return true;
    }
    return false;
  }

  void emit(std::size_t begin, std::size_t end) {
    while (begin < end && is_space(text_[begin])) ++begin;
    while (end > begin && is_space(text_[end - 1])) --end;
    if (begin < end) out_.push_back(Sentence{std::string(text_.substr(begin, end - begin)), {begin, end}});
  }

  std::string_view text_;
  SentenceList out_;
};

}  // namespace

SentenceList segment_sentences(std::string_view text) { return Segmenter(text).run(); }

}  // namespace etf::ner
