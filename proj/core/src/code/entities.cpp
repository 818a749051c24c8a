#include "etf/code/entities.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "etf/code/syntax.hpp"
#include "etf/errors.hpp"

namespace etf::code {
namespace {

class Collector {
 public:
  void add(const std::string& name, EntityKind kind, SourcePosition pos) {
    if (name.empty()) return;
    auto [it, inserted] = entries_.try_emplace({name, kind}, CodeEntity{name, kind, pos, 1});
    if (!inserted) {
      it->second.occurrences += 1;
      it->second.location = std::min(it->second.location, pos);
    }
  }

  std::vector<CodeEntity> take() {
    std::vector<CodeEntity> out;
    out.reserve(entries_.size());
    for (auto& [key, entity] : entries_) out.push_back(std::move(entity));
    std::sort(out.begin(), out.end(), [](const CodeEntity& a, const CodeEntity& b) {
      if (a.location != b.location) return a.location < b.location;
      if (a.kind != b.kind) return a.kind < b.kind;
      return a.name < b.name;
    });
    return out;
  }

 private:
  std::map<std::pair<std::string, EntityKind>, CodeEntity> entries_;
};

std::string last_segment(const std::string& dotted) {
  auto dot = dotted.rfind('.');
  return dot == std::string::npos ? std::string() : dotted.substr(dot + 1);
}

/// `Pattern` in `Pattern.compile(...)` names a type; `LOG` in `LOG.info` does not.
bool looks_like_type_name(std::string_view name) {
  if (name.empty() || !std::isupper(static_cast<unsigned char>(name.front()))) return false;
  return std::any_of(name.begin(), name.end(),
                     [](char c) { return std::islower(static_cast<unsigned char>(c)); });
}

void walk(const SyntaxNode& node, Collector& out) {
  auto dotted = [&](EntityKind kind) {
    out.add(node.name, kind, node.position);
    out.add(last_segment(node.name), kind, node.position);
  };
  switch (node.kind) {
    case NodeKind::ClassDecl:
      if (!node.synthetic) out.add(node.name, EntityKind::CLASS, node.position);
      break;
    case NodeKind::ConstructorDecl:
      out.add(node.name, EntityKind::CLASS, node.position);
      break;
    case NodeKind::MethodDecl:
    case NodeKind::Invocation:
    case NodeKind::MethodReference:
      out.add(node.name, EntityKind::FUNCTION, node.position);
      break;
    case NodeKind::EnumConstant:
    case NodeKind::FieldDecl:
    case NodeKind::Parameter:
    case NodeKind::LocalVariable:
    case NodeKind::FieldAccess:
      out.add(node.name, EntityKind::VARIABLE, node.position);
      break;
    case NodeKind::NameRef:
      out.add(node.name,
              node.qualifier && looks_like_type_name(node.name) ? EntityKind::DATA_TYPE : EntityKind::VARIABLE,
              node.position);
      break;
    case NodeKind::TypeParameter:
      out.add(node.name, EntityKind::DATA_TYPE, node.position);
      break;
    case NodeKind::TypeRef:
      dotted(EntityKind::DATA_TYPE);
      break;
    case NodeKind::ObjectCreation:
      dotted(EntityKind::CLASS);
      break;
    case NodeKind::Import:
      dotted(EntityKind::LIBRARY);
      break;
    case NodeKind::Annotation:
      out.add(node.name, EntityKind::ANNOTATION, node.position);
      break;
    case NodeKind::Literal:
      out.add(node.name, EntityKind::VALUE, node.position);
      break;
    case NodeKind::CompilationUnit:
    case NodeKind::Package:
    case NodeKind::Lambda:
    case NodeKind::Block:
      break;
  }
  for (const SyntaxNode& child : node.children) walk(child, out);
}

std::string literal_value(const Token& t) {
  std::string_view text = t.text;
  switch (t.literal) {
    case LiteralKind::TextBlock:
      text.remove_prefix(std::min<std::size_t>(3, text.size()));
      if (text.ends_with("\"\"\"")) text.remove_suffix(3);
      return std::string(text);
    case LiteralKind::String:
    case LiteralKind::Character: {
      char quote = text.front();
      text.remove_prefix(1);
      if (!text.empty() && text.back() == quote) text.remove_suffix(1);
      return std::string(text);
    }
    default:
      return std::string(text);
  }
}

void collect_tokens(const TokenStream& stream, Collector& out, bool fallback) {
  const auto& toks = stream.tokens;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    const Token& t = toks[i];
    if (t.category == TokenCategory::Keyword) {
      out.add(t.text, EntityKind::KEYWORD, t.position);
      continue;
    }
    if (!fallback) continue;
    if (t.category == TokenCategory::Identifier) {
      out.add(t.text, EntityKind::VARIABLE, t.position);
    } else if (t.category == TokenCategory::Literal) {
      bool numeric = t.literal == LiteralKind::Integer || t.literal == LiteralKind::Floating;
      if (numeric && i > 0 && toks[i - 1].is(TokenCategory::Operator, "-") && toks[i - 1].end() == t.offset) {
        out.add("-" + t.text, EntityKind::VALUE, toks[i - 1].position);
      } else {
        out.add(literal_value(t), EntityKind::VALUE, t.position);
      }
    }
  }
}

}  // namespace

std::string_view to_string(EntityKind kind) {
  switch (kind) {
    case EntityKind::CLASS: return "CLASS";
    case EntityKind::FUNCTION: return "FUNCTION";
    case EntityKind::VARIABLE: return "VARIABLE";
    case EntityKind::LIBRARY: return "LIBRARY";
    case EntityKind::VALUE: return "VALUE";
    case EntityKind::DATA_TYPE: return "DATA_TYPE";
    case EntityKind::ANNOTATION: return "ANNOTATION";
    case EntityKind::KEYWORD: return "KEYWORD";
  }
  return "UNKNOWN";
}

std::optional<EntityKind> parse_entity_kind(std::string_view text) {
  for (EntityKind k : {EntityKind::CLASS, EntityKind::FUNCTION, EntityKind::VARIABLE, EntityKind::LIBRARY,
                       EntityKind::VALUE, EntityKind::DATA_TYPE, EntityKind::ANNOTATION, EntityKind::KEYWORD}) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

std::string_view to_string(ParseMode mode) {
  return mode == ParseMode::FULL_AST ? "FULL_AST" : "LEXICAL_FALLBACK";
}

std::vector<const CodeEntity*> CodeEntitySet::named(std::string_view name) const {
  std::vector<const CodeEntity*> out;
  for (const CodeEntity& e : entities) {
    if (e.name == name) out.push_back(&e);
  }
  std::sort(out.begin(), out.end(), [](const CodeEntity* a, const CodeEntity* b) { return a->kind < b->kind; });
  return out;
}

const CodeEntity* CodeEntitySet::find(std::string_view name, EntityKind kind) const {
  for (const CodeEntity& e : entities) {
    if (e.kind == kind && e.name == name) return &e;
  }
  return nullptr;
}

CodeEntitySet extract_code_entities(const SourceUnit& unit) {
  if (!has_content(unit.text)) throw EmptySourceError();
  CodeEntitySet set;
  set.unit_id = unit.id;
  TokenStream stream = tokenize(unit);
  Collector out;
  try {
    ParseResult parsed = parse(stream);
    walk(parsed.root, out);
    collect_tokens(stream, out, false);
  } catch (const ParseError& e) {
    set.parse_mode = ParseMode::LEXICAL_FALLBACK;
    set.parse_error = e.what();
    out = Collector();
    collect_tokens(stream, out, true);
  }
  set.entities = out.take();
  return set;
}

}  // namespace etf::code
