#include "etf/ner/heuristic.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>

#include "etf/match/normalize.hpp"

namespace etf::ner {
namespace {

bool is_upper(char c) { return std::isupper(static_cast<unsigned char>(c)) != 0; }
bool is_lower(char c) { return std::islower(static_cast<unsigned char>(c)) != 0; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }
bool word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$'; }

bool is_identifier(std::string_view s) {
  if (s.empty() || is_digit(s.front())) return false;
  return std::all_of(s.begin(), s.end(), word_char);
}

bool is_dotted_path(std::string_view s) {
  if (s.find('.') == std::string_view::npos) return false;
  std::size_t start = 0;
  int segments = 0;
  while (start <= s.size()) {
    std::size_t dot = s.find('.', start);
    std::string_view seg = s.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start);
    // Single-letter segments are abbreviations such as "e.g".
    if (seg.size() < 2 || !is_identifier(seg)) return false;
    ++segments;
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return segments >= 2;
}

bool is_value_literal(std::string_view s) {
  if (s == "true" || s == "false" || s == "null") return true;
  if (match::integer_value(s)) return true;
  std::string_view body = s;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
  bool digit = false;
  for (char c : body) {
    if (is_digit(c)) {
      digit = true;
    } else if (c != '.' && c != '_' && c != 'e' && c != 'E' && c != 'f' && c != 'F' && c != 'd' && c != 'D') {
      return false;
    }
  }
  return digit;
}

/// Tag implied by the shape of a word, if the word looks like code at all.
std::optional<Tag> shape_tag(std::string_view word, bool parens, bool brackets) {
  if (parens) return Tag::FUNCTION;
  if (is_dotted_path(word)) return Tag::LIBRARY;
  if (!is_identifier(word)) return std::nullopt;
  if (word.front() == '_') return Tag::VARIABLE;
  bool has_lower = std::any_of(word.begin(), word.end(), is_lower);
  bool has_upper_tail = std::any_of(word.begin() + 1, word.end(), is_upper);
  bool has_underscore = word.find('_') != std::string_view::npos;
  if (!has_lower && has_underscore) return Tag::VARIABLE;  // SCREAMING_SNAKE
  if (is_upper(word.front()) && has_lower && has_upper_tail) return Tag::CLASS;
  if (is_lower(word.front()) && (has_upper_tail || has_underscore)) return Tag::VARIABLE;
  if (brackets) return Tag::VARIABLE;
  return std::nullopt;
}

/// Tag for text the author explicitly marked as code with backticks or quotes.
std::optional<Tag> marked_tag(std::string_view content) {
  bool parens = content.ends_with("()");
  bool brackets = content.ends_with("[]");
  std::string_view bare = (parens || brackets) ? content.substr(0, content.size() - 2) : content;
  if (bare.empty()) return std::nullopt;
  if (is_value_literal(bare)) return Tag::VALUE;
  if (auto t = shape_tag(bare, parens, brackets)) return t;
  if (is_identifier(bare)) return is_upper(bare.front()) ? Tag::CLASS : Tag::VARIABLE;
  return std::nullopt;
}

class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  std::vector<SummaryEntity> run() {
    scan_backticks();
    scan_quotes();
    scan_words();
    std::stable_sort(found_.begin(), found_.end(),
                     [](const Found& a, const Found& b) { return a.position < b.position; });
    std::vector<SummaryEntity> out;
    std::set<std::string> seen;
    for (Found& f : found_) {
      if (seen.insert(f.surface).second) out.push_back(SummaryEntity{std::move(f.surface), f.tag, {}, 0});
    }
    return out;
  }

 private:
  struct Found {
    std::size_t position;
    std::string surface;
    Tag tag;
  };

  bool covered(std::size_t pos) const {
    return std::any_of(covered_.begin(), covered_.end(),
                       [&](const auto& r) { return r.first <= pos && pos < r.second; });
  }

  void add(std::size_t pos, std::string_view content, Tag tag) {
    std::string bare = match::normalize(content);
    if (!bare.empty()) found_.push_back({pos, std::move(bare), tag});
  }

  void scan_backticks() {
    std::size_t i = 0;
    while ((i = text_.find('`', i)) != std::string_view::npos) {
      std::size_t close = i + 1;
      while (close < text_.size() && text_[close] != '`' && text_[close] != '\n' &&
             !(text_[close] == '"' || text_[close] == '\'')) {
        ++close;
      }
      if (close >= text_.size() || text_[close] == '\n') {
        i += 1;
        continue;
      }
      std::string_view content = text_.substr(i + 1, close - i - 1);
      bool mixed_close = text_[close] != '`';
      // A quote only closes the span for a single identifier, as in `jedis".
      if (mixed_close && !is_identifier(content)) {
        i += 1;
        continue;
      }
      if (auto tag = marked_tag(content)) add(i + 1, content, *tag);
      covered_.emplace_back(i, close + 1);
      i = close + 1;
    }
  }

  void scan_quotes() {
    static constexpr std::pair<std::string_view, std::string_view> kPairs[] = {
        {"\"", "\""}, {"'", "'"}, {"“", "”"}, {"‘", "’"}};
    for (auto [open, close] : kPairs) {
      std::size_t i = 0;
      while ((i = text_.find(open, i)) != std::string_view::npos) {
        std::size_t start = i + open.size();
        if (covered(i) || (i > 0 && word_char(text_[i - 1]))) {
          i = start;
          continue;
        }
        std::size_t end = text_.find(close, start);
        if (end == std::string_view::npos) break;
        std::string_view content = text_.substr(start, end - start);
        std::size_t after = end + close.size();
        bool closed_cleanly = after >= text_.size() || !word_char(text_[after]);
        std::string_view bare = content;
        if (bare.ends_with("()") || bare.ends_with("[]")) bare.remove_suffix(2);
        if (closed_cleanly && is_identifier(bare)) {
          if (auto tag = marked_tag(content)) add(start, content, *tag);
          covered_.emplace_back(i, after);
          i = after;
        } else {
          i = start;
        }
      }
    }
  }

  void scan_words() {
    std::size_t i = 0;
    while (i < text_.size()) {
      if (!word_char(text_[i]) || covered(i)) {
        ++i;
        continue;
      }
      std::size_t start = i;
      while (i < text_.size() && (word_char(text_[i]) || (text_[i] == '.' && i + 1 < text_.size() &&
                                                           word_char(text_[i + 1])))) {
        ++i;
      }
      std::string_view word = text_.substr(start, i - start);
      bool parens = text_.substr(i).starts_with("()");
      bool brackets = text_.substr(i).starts_with("[]");
      if (auto tag = shape_tag(word, parens, brackets)) {
        if (parens && word.find('.') != std::string_view::npos) {
          // Keep the invoked member of a dotted call such as a.b().
          std::size_t dot = word.rfind('.');
          add(start + dot + 1, word.substr(dot + 1), *tag);
        } else {
          add(start, word, *tag);
        }
      }
    }
  }

  std::string_view text_;
  std::vector<std::pair<std::size_t, std::size_t>> covered_;
  std::vector<Found> found_;
};

}  // namespace

std::vector<SummaryEntity> extract_entities_heuristic(const Summary& summary) {
  return Scanner(summary.text).run();
}

}  // namespace etf::ner
