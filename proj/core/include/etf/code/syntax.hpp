#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "etf/code/token.hpp"
#include "etf/errors.hpp"

namespace etf::code {

enum class NodeKind {
  CompilationUnit,
  Package,
  Import,
  ClassDecl,      // class, interface, enum, record, @interface
  EnumConstant,
  MethodDecl,
  ConstructorDecl,
  FieldDecl,
  Parameter,      // method, catch, lambda and record parameters
  LocalVariable,  // includes enhanced-for, resource and pattern variables
  TypeParameter,
  TypeRef,
  Annotation,
  Invocation,
  ObjectCreation,
  NameRef,
  FieldAccess,
  MethodReference,
  Literal,
  Lambda,
  Block,
};

std::string_view to_string(NodeKind kind);

/// One node of the Java syntax tree. Only nodes that carry a name or group
/// named children are materialised; statements and operators are not.
struct SyntaxNode {
  NodeKind kind = NodeKind::Block;
  std::string name;
  SourcePosition position;
  bool synthetic = false;
  // NameRef only: the reference is the qualifier of a member access.
  bool qualifier = false;
  std::vector<SyntaxNode> children;

  SyntaxNode() = default;
  SyntaxNode(NodeKind k, std::string n, SourcePosition p) : kind(k), name(std::move(n)), position(p) {}

  SyntaxNode& add(SyntaxNode child) {
    children.push_back(std::move(child));
    return children.back();
  }
};

/// Parse failure; carries the first token the grammar could not accept.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, Token offending)
      : Error(what + " at " + std::to_string(offending.position.line) + ":" +
              std::to_string(offending.position.column) + " near '" + offending.text + "'"),
        token_(std::move(offending)) {}

  const Token& token() const noexcept { return token_; }

 private:
  Token token_;
};

/// Name of the class synthesised around isolated members.
inline constexpr std::string_view kWrapperClassName = "__Wrapper__";

struct ParseResult {
  SyntaxNode root;
  bool wrapped = false;  // members were parsed inside the synthetic wrapper
};

/// Parses a compilation unit. When the text is not a compilation unit, it is
/// retried as the body of `class __Wrapper__ { ... }` and finally as the
/// statements of a method body. Throws ParseError with the token reached by
/// the first attempt if every attempt fails, or if tokenisation reported
/// diagnostics.
ParseResult parse(const SourceUnit& unit);

/// Same as above on an already tokenised stream.
ParseResult parse(const TokenStream& stream);

}  // namespace etf::code
