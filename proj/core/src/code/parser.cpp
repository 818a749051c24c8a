#include <algorithm>
#include <array>
#include <optional>

#include "etf/code/syntax.hpp"

namespace etf::code {
namespace {

constexpr std::array<std::string_view, 8> kPrimitiveTypes = {
    "boolean", "byte", "char", "short", "int", "long", "float", "double"};

constexpr std::array<std::string_view, 11> kModifierKeywords = {
    "public", "protected", "private", "static",   "abstract", "final",
    "native", "synchronized", "transient", "volatile", "strictfp"};

constexpr std::array<std::string_view, 12> kAssignOps = {
    "=", "+=", "-=", "*=", "/=", "&=", "|=", "^=", "%=", "<<=", ">>=", ">>>="};

bool is_primitive(std::string_view word) {
  return std::find(kPrimitiveTypes.begin(), kPrimitiveTypes.end(), word) != kPrimitiveTypes.end();
}

int binary_precedence(std::string_view op) {
  if (op == "||") return 1;
  if (op == "&&") return 2;
  if (op == "|") return 3;
  if (op == "^") return 4;
  if (op == "&") return 5;
  if (op == "==" || op == "!=") return 6;
  if (op == "<" || op == ">" || op == "<=" || op == ">=") return 7;
  if (op == "<<" || op == ">>" || op == ">>>") return 8;
  if (op == "+" || op == "-") return 9;
  if (op == "*" || op == "/" || op == "%") return 10;
  return 0;
}

/// Joins identifier and dot tokens into a dotted name when they are written
/// without gaps; otherwise only the last segment is returned, so that names
/// always occur verbatim in the source.
std::string dotted_name(const std::vector<const Token*>& parts) {
  if (parts.empty()) return {};
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0 && parts[i - 1]->end() != parts[i]->offset) return parts.back()->text;
    out += parts[i]->text;
  }
  return out;
}

class Parser {
 public:
  explicit Parser(const std::vector<Token>& all) {
    for (const Token& t : all) {
      if (t.category != TokenCategory::Comment) toks_.push_back(t);
    }
    eof_.text = "";
    eof_.category = TokenCategory::Separator;
    if (!toks_.empty()) {
      eof_.offset = toks_.back().end();
      eof_.position = toks_.back().position;
      eof_.position.column += static_cast<int>(toks_.back().text.size());
    }
    eof_.synthetic = true;
  }

  SyntaxNode compilation_unit() {
    reset();
    SyntaxNode root(NodeKind::CompilationUnit, "", {1, 1});
    std::vector<SyntaxNode> annotations = modifiers();
    if (at_kw("package")) {
      advance();
      auto [name, pos] = qualified_name();
      expect_sep(";");
      for (auto& a : annotations) root.add(std::move(a));
      annotations.clear();
      root.add(SyntaxNode(NodeKind::Package, name, pos));
    } else {
      if (!annotations.empty() || pos_ != 0) {
        // Annotations belong to the first type declaration.
        type_declaration(root, std::move(annotations));
      }
    }
    while (at_kw("import")) {
      advance();
      bool is_static = false;
      if (at_kw("static")) {
        advance();
        is_static = true;
      }
      std::vector<const Token*> parts{&expect_ident()};
      bool wildcard = false;
      while (at_sep(".")) {
        if (la(1).is(TokenCategory::Operator, "*")) {
          advance(2);
          wildcard = true;
          break;
        }
        parts.push_back(&cur());
        advance();
        parts.push_back(&expect_ident());
      }
      expect_sep(";");
      SyntaxNode node(NodeKind::Import, dotted_name(parts), parts.front()->position);
      node.qualifier = wildcard || is_static;
      root.add(std::move(node));
    }
    while (!at_eof()) {
      if (at_sep(";")) {
        advance();
        continue;
      }
      type_declaration(root, modifiers());
    }
    return root;
  }

  SyntaxNode wrapped_members() {
    reset();
    SyntaxNode root(NodeKind::CompilationUnit, "", {1, 1});
    SyntaxNode wrapper(NodeKind::ClassDecl, std::string(kWrapperClassName), {1, 1});
    wrapper.synthetic = true;
    while (!at_eof()) class_body_declaration(wrapper, kWrapperClassName, false);
    root.add(std::move(wrapper));
    return root;
  }

  SyntaxNode wrapped_statements() {
    reset();
    SyntaxNode root(NodeKind::CompilationUnit, "", {1, 1});
    SyntaxNode wrapper(NodeKind::ClassDecl, std::string(kWrapperClassName), {1, 1});
    wrapper.synthetic = true;
    SyntaxNode body(NodeKind::Block, "", {1, 1});
    body.synthetic = true;
    while (!at_eof()) block_statement(body);
    wrapper.add(std::move(body));
    root.add(std::move(wrapper));
    return root;
  }

  const Token& furthest() const { return furthest_ < toks_.size() ? toks_[furthest_] : eof_; }

 private:
  struct State {
    std::size_t pos;
    std::size_t gt;
  };

  // ---- token access ------------------------------------------------------

  void reset() {
    pos_ = 0;
    gt_ = 0;
  }

  State save() const { return {pos_, gt_}; }
  void restore(State s) {
    pos_ = s.pos;
    gt_ = s.gt;
  }

  bool at_eof() const { return pos_ >= toks_.size(); }

  const Token& cur() const { return pos_ < toks_.size() ? toks_[pos_] : eof_; }
  const Token& la(std::size_t n) const {
    return pos_ + n < toks_.size() ? toks_[pos_ + n] : eof_;
  }

  std::string_view cur_text() const {
    std::string_view t = cur().text;
    return gt_ > 0 ? t.substr(gt_) : t;
  }

  void advance(std::size_t n = 1) {
    for (std::size_t i = 0; i < n; ++i) {
      if (pos_ < toks_.size()) ++pos_;
      gt_ = 0;
    }
    furthest_ = std::max(furthest_, pos_);
  }

  bool at_sep(std::string_view t) const {
    return gt_ == 0 && cur().is(TokenCategory::Separator, t);
  }
  bool at_op(std::string_view t) const {
    return cur().category == TokenCategory::Operator && cur_text() == t;
  }
  bool at_kw(std::string_view t) const { return gt_ == 0 && cur().is(TokenCategory::Keyword, t); }
  bool at_ident() const { return gt_ == 0 && cur().category == TokenCategory::Identifier; }
  bool at_ident(std::string_view t) const {
    return gt_ == 0 && cur().is(TokenCategory::Identifier, t);
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, cur());
  }

  void expect_sep(std::string_view t) {
    if (!at_sep(t)) fail("expected '" + std::string(t) + "'");
    advance();
  }

  void expect_op(std::string_view t) {
    if (!at_op(t) || gt_ != 0) fail("expected '" + std::string(t) + "'");
    advance();
  }

  void expect_kw(std::string_view t) {
    if (!at_kw(t)) fail("expected '" + std::string(t) + "'");
    advance();
  }

  const Token& expect_ident() {
    if (!at_ident()) fail("expected identifier");
    const Token& t = cur();
    advance();
    return t;
  }

  bool at_close_angle() const {
    if (cur().category != TokenCategory::Operator) return false;
    std::string_view t = cur_text();
    return t == ">" || t == ">>" || t == ">>>";
  }

  void expect_close_angle() {
    if (!at_close_angle()) fail("expected '>'");
    if (cur_text().size() == 1) {
      advance();
    } else {
      ++gt_;
    }
  }

  // ---- names, annotations, modifiers --------------------------------------

  std::pair<std::string, SourcePosition> qualified_name() {
    std::vector<const Token*> parts{&expect_ident()};
    while (at_sep(".") && la(1).category == TokenCategory::Identifier) {
      parts.push_back(&cur());
      advance();
      parts.push_back(&expect_ident());
    }
    return {dotted_name(parts), parts.front()->position};
  }

  SyntaxNode annotation() {
    expect_sep("@");
    auto [name, pos] = qualified_name();
    SyntaxNode node(NodeKind::Annotation, name, pos);
    if (at_sep("(")) {
      advance();
      if (!at_sep(")")) {
        if (at_ident() && la(1).is(TokenCategory::Operator, "=")) {
          while (true) {
            expect_ident();
            expect_op("=");
            element_value(node);
            if (!at_sep(",")) break;
            advance();
          }
        } else {
          element_value(node);
        }
      }
      expect_sep(")");
    }
    return node;
  }

  void element_value(SyntaxNode& owner) {
    if (at_sep("@")) {
      owner.add(annotation());
    } else if (at_sep("{")) {
      advance();
      while (!at_sep("}")) {
        element_value(owner);
        if (!at_sep(",")) break;
        advance();
      }
      expect_sep("}");
    } else {
      conditional(owner, false);
    }
  }

  bool at_annotation() const {
    return at_sep("@") && !la(1).is(TokenCategory::Keyword, "interface");
  }

  std::vector<SyntaxNode> annotations() {
    std::vector<SyntaxNode> out;
    while (at_annotation()) out.push_back(annotation());
    return out;
  }

  bool at_modifier() const {
    if (gt_ != 0) return false;
    if (cur().category == TokenCategory::Keyword) {
      std::string_view t = cur().text;
      if (std::find(kModifierKeywords.begin(), kModifierKeywords.end(), t) != kModifierKeywords.end())
        return true;
      // `default` is a modifier on interface methods but a label in switches.
      return t == "default" && !la(1).is(TokenCategory::Operator, ":") &&
             !la(1).is(TokenCategory::Operator, "->");
    }
    if (at_ident("sealed")) {
      const Token& next = la(1);
      return next.category == TokenCategory::Keyword || next.category == TokenCategory::Identifier;
    }
    if (at_ident("non") && la(1).is(TokenCategory::Operator, "-") &&
        la(2).is(TokenCategory::Identifier, "sealed")) {
      return true;
    }
    return false;
  }

  /// Consumes modifiers and annotations in any order; returns the annotations.
  std::vector<SyntaxNode> modifiers() {
    std::vector<SyntaxNode> out;
    while (true) {
      if (at_annotation()) {
        out.push_back(annotation());
      } else if (at_ident("non") && at_modifier()) {
        advance(3);
      } else if (at_modifier()) {
        advance();
      } else {
        break;
      }
    }
    return out;
  }

  // ---- types ---------------------------------------------------------------

  /// Parses a type and appends TypeRef nodes to `owner`. Returns true when
  /// the type is a primitive (array dimensions included).
  bool type(SyntaxNode& owner, bool allow_void = false) {
    for (auto& a : annotations()) owner.add(std::move(a));
    bool primitive = false;
    if (cur().category == TokenCategory::Keyword &&
        (is_primitive(cur().text) || (allow_void && cur().text == "void"))) {
      owner.add(SyntaxNode(NodeKind::TypeRef, cur().text, cur().position));
      advance();
      primitive = true;
    } else {
      class_type(owner, false);
    }
    dims();
    return primitive;
  }

  void dims() {
    while (true) {
      State s = save();
      for (auto& a : annotations()) (void)a;
      if (at_sep("[") && la(1).is(TokenCategory::Separator, "]")) {
        advance(2);
      } else {
        restore(s);
        break;
      }
    }
  }

  /// ClassType: Ident [TypeArgs] { . Ident [TypeArgs] }
  void class_type(SyntaxNode& owner, bool allow_diamond) {
    std::vector<const Token*> parts;
    SyntaxNode node(NodeKind::TypeRef, "", cur().position);
    const Token& first = expect_ident();
    parts.push_back(&first);
    bool broken = false;
    if (at_op("<")) {
      type_arguments(node, allow_diamond);
      broken = true;
    }
    while (at_sep(".") && (la(1).category == TokenCategory::Identifier || la(1).is(TokenCategory::Separator, "@"))) {
      const Token* dot = &cur();
      advance();
      for (auto& a : annotations()) node.add(std::move(a));
      const Token& seg = expect_ident();
      if (broken) {
        parts = {&seg};
        broken = false;
      } else {
        parts.push_back(dot);
        parts.push_back(&seg);
      }
      if (at_op("<")) {
        type_arguments(node, allow_diamond);
        broken = true;
      }
    }
    node.name = dotted_name(parts);
    if (node.name == "var") {
      // Local variable type inference, not a type reference.
      for (auto& c : node.children) owner.add(std::move(c));
      return;
    }
    owner.add(std::move(node));
  }

  void type_arguments(SyntaxNode& owner, bool allow_diamond) {
    expect_op("<");
    if (at_close_angle()) {
      if (!allow_diamond) fail("empty type arguments");
      expect_close_angle();
      return;
    }
    while (true) {
      for (auto& a : annotations()) owner.add(std::move(a));
      if (at_op("?")) {
        advance();
        if (at_kw("extends") || at_kw("super")) {
          advance();
          type(owner);
        }
      } else {
        type(owner);
      }
      if (!at_sep(",")) break;
      advance();
    }
    expect_close_angle();
  }

  void type_parameters(SyntaxNode& owner) {
    expect_op("<");
    while (true) {
      for (auto& a : annotations()) owner.add(std::move(a));
      const Token& name = expect_ident();
      SyntaxNode& param = owner.add(SyntaxNode(NodeKind::TypeParameter, name.text, name.position));
      if (at_kw("extends")) {
        advance();
        class_type(param, false);
        while (at_op("&")) {
          advance();
          class_type(param, false);
        }
      }
      if (!at_sep(",")) break;
      advance();
    }
    expect_close_angle();
  }

  void type_list(SyntaxNode& owner) {
    class_type(owner, false);
    while (at_sep(",")) {
      advance();
      class_type(owner, false);
    }
  }

  // ---- declarations --------------------------------------------------------

  bool at_record_header() const {
    return at_ident("record") && la(1).category == TokenCategory::Identifier &&
           (la(2).is(TokenCategory::Separator, "(") || la(2).is(TokenCategory::Operator, "<"));
  }

  bool at_type_declaration() const {
    return at_kw("class") || at_kw("interface") || at_kw("enum") ||
           (at_sep("@") && la(1).is(TokenCategory::Keyword, "interface")) || at_record_header();
  }

  void type_declaration(SyntaxNode& owner, std::vector<SyntaxNode> annotations) {
    if (!at_type_declaration()) fail("expected type declaration");
    bool is_enum = at_kw("enum");
    bool is_record = at_record_header();
    bool is_annotation_type = at_sep("@");
    advance(is_annotation_type ? 2 : 1);
    const Token& name = expect_ident();
    SyntaxNode decl(NodeKind::ClassDecl, name.text, name.position);
    for (auto& a : annotations) decl.add(std::move(a));
    if (at_op("<")) type_parameters(decl);
    if (is_record) {
      expect_sep("(");
      while (!at_sep(")")) {
        formal_parameter(decl);
        if (!at_sep(",")) break;
        advance();
      }
      expect_sep(")");
    }
    if (at_kw("extends")) {
      advance();
      type_list(decl);
    }
    if (at_kw("implements")) {
      advance();
      type_list(decl);
    }
    if (at_ident("permits")) {
      advance();
      type_list(decl);
    }
    if (is_enum) {
      enum_body(decl);
    } else {
      class_body(decl, name.text, is_record);
    }
    owner.add(std::move(decl));
  }

  void enum_body(SyntaxNode& decl) {
    expect_sep("{");
    while (!at_sep(";") && !at_sep("}")) {
      std::vector<SyntaxNode> notes = annotations();
      const Token& name = expect_ident();
      SyntaxNode& constant = decl.add(SyntaxNode(NodeKind::EnumConstant, name.text, name.position));
      for (auto& a : notes) constant.add(std::move(a));
      if (at_sep("(")) arguments(constant);
      if (at_sep("{")) class_body(constant, name.text, false);
      if (!at_sep(",")) break;
      advance();
    }
    if (at_sep(";")) {
      advance();
      while (!at_sep("}")) {
        if (at_eof()) fail("unterminated enum body");
        class_body_declaration(decl, decl.name, false);
      }
    }
    expect_sep("}");
  }

  void class_body(SyntaxNode& decl, std::string_view class_name, bool is_record) {
    expect_sep("{");
    while (!at_sep("}")) {
      if (at_eof()) fail("unterminated class body");
      class_body_declaration(decl, class_name, is_record);
    }
    expect_sep("}");
  }

  void class_body_declaration(SyntaxNode& decl, std::string_view class_name, bool is_record) {
    if (at_sep(";")) {
      advance();
      return;
    }
    if (at_sep("{")) {
      SyntaxNode& init = decl.add(SyntaxNode(NodeKind::Block, "", cur().position));
      block(init);
      return;
    }
    if (at_kw("static") && la(1).is(TokenCategory::Separator, "{")) {
      advance();
      SyntaxNode& init = decl.add(SyntaxNode(NodeKind::Block, "", cur().position));
      block(init);
      return;
    }
    std::vector<SyntaxNode> notes = modifiers();
    if (at_type_declaration()) {
      type_declaration(decl, std::move(notes));
      return;
    }
    SyntaxNode generic_holder;
    if (at_op("<")) type_parameters(generic_holder);

    // Constructor: Ident '(' ; compact record constructor: Ident '{'
    if (at_ident() && (la(1).is(TokenCategory::Separator, "(") ||
                       (is_record && cur().text == class_name && la(1).is(TokenCategory::Separator, "{")))) {
      const Token& name = expect_ident();
      SyntaxNode ctor(NodeKind::ConstructorDecl, name.text, name.position);
      for (auto& a : notes) ctor.add(std::move(a));
      for (auto& c : generic_holder.children) ctor.add(std::move(c));
      if (at_sep("(")) formal_parameters(ctor);
      throws_clause(ctor);
      block(ctor);
      decl.add(std::move(ctor));
      return;
    }

    SyntaxNode type_holder;
    type(type_holder, true);
    const Token& name = expect_ident();
    if (at_sep("(")) {
      SyntaxNode method(NodeKind::MethodDecl, name.text, name.position);
      for (auto& a : notes) method.add(std::move(a));
      for (auto& c : generic_holder.children) method.add(std::move(c));
      for (auto& c : type_holder.children) method.add(std::move(c));
      formal_parameters(method);
      dims();
      throws_clause(method);
      if (at_kw("default")) {
        advance();
        element_value(method);
        expect_sep(";");
      } else if (at_sep(";")) {
        advance();
      } else {
        block(method);
      }
      decl.add(std::move(method));
      return;
    }
    SyntaxNode field(NodeKind::FieldDecl, name.text, name.position);
    for (auto& a : notes) field.add(std::move(a));
    for (auto& c : type_holder.children) field.add(std::move(c));
    dims();
    if (at_op("=")) {
      advance();
      variable_initializer(field);
    }
    decl.add(std::move(field));
    while (at_sep(",")) {
      advance();
      const Token& next = expect_ident();
      SyntaxNode& more = decl.add(SyntaxNode(NodeKind::FieldDecl, next.text, next.position));
      dims();
      if (at_op("=")) {
        advance();
        variable_initializer(more);
      }
    }
    expect_sep(";");
  }

  void formal_parameters(SyntaxNode& owner) {
    expect_sep("(");
    while (!at_sep(")")) {
      formal_parameter(owner);
      if (!at_sep(",")) break;
      advance();
    }
    expect_sep(")");
  }

  void formal_parameter(SyntaxNode& owner) {
    std::vector<SyntaxNode> notes = modifiers();
    SyntaxNode holder;
    type(holder);
    for (auto& a : notes) owner.add(std::move(a));
    for (auto& c : holder.children) owner.add(std::move(c));
    for (auto& a : annotations()) owner.add(std::move(a));
    if (at_sep("...")) advance();
    if (at_kw("this")) {
      // Receiver parameter.
      advance();
      return;
    }
    if (at_ident() && la(1).is(TokenCategory::Separator, ".") && la(2).is(TokenCategory::Keyword, "this")) {
      advance(3);
      return;
    }
    const Token& name = expect_ident();
    owner.add(SyntaxNode(NodeKind::Parameter, name.text, name.position));
    dims();
  }

  void throws_clause(SyntaxNode& owner) {
    if (!at_kw("throws")) return;
    advance();
    type_list(owner);
  }

  void variable_initializer(SyntaxNode& owner) {
    if (at_sep("{")) {
      array_initializer(owner);
    } else {
      expression(owner);
    }
  }

  void array_initializer(SyntaxNode& owner) {
    expect_sep("{");
    while (!at_sep("}")) {
      variable_initializer(owner);
      if (!at_sep(",")) break;
      advance();
    }
    expect_sep("}");
  }

  // ---- statements ------------------------------------------------------------

  void block(SyntaxNode& owner) {
    expect_sep("{");
    while (!at_sep("}")) {
      if (at_eof()) fail("unterminated block");
      block_statement(owner);
    }
    expect_sep("}");
  }

  /// Attempts `[final|@A] Type Ident` followed by a declarator terminator.
  /// On success the type nodes and annotations are appended to `owner`.
  bool try_local_variable_head(SyntaxNode& owner, std::initializer_list<std::string_view> follow) {
    State s = save();
    try {
      SyntaxNode holder;
      for (auto& a : modifiers()) holder.add(std::move(a));
      type(holder);
      if (!at_ident()) {
        restore(s);
        return false;
      }
      const Token& next = la(1);
      bool ok = std::any_of(follow.begin(), follow.end(), [&](std::string_view f) {
        return (next.category == TokenCategory::Operator || next.category == TokenCategory::Separator) &&
               next.text == f;
      });
      if (!ok) {
        restore(s);
        return false;
      }
      for (auto& c : holder.children) owner.add(std::move(c));
      return true;
    } catch (const ParseError&) {
      restore(s);
      return false;
    }
  }

  void local_variable_declarators(SyntaxNode& owner) {
    while (true) {
      const Token& name = expect_ident();
      SyntaxNode& var = owner.add(SyntaxNode(NodeKind::LocalVariable, name.text, name.position));
      dims();
      if (at_op("=")) {
        advance();
        variable_initializer(var);
      }
      if (!at_sep(",")) break;
      advance();
    }
  }

  bool at_local_class() {
    State s = save();
    bool result = false;
    try {
      (void)modifiers();
      result = at_kw("class") || at_kw("interface") || at_kw("enum") || at_record_header();
    } catch (const ParseError&) {
    }
    restore(s);
    return result;
  }

  void block_statement(SyntaxNode& owner) {
    if (at_local_class()) {
      std::vector<SyntaxNode> notes = modifiers();
      type_declaration(owner, std::move(notes));
      return;
    }
    bool yield_stmt = at_ident("yield") && !la(1).is(TokenCategory::Operator, "=") &&
                      !la(1).is(TokenCategory::Separator, ".") && !la(1).is(TokenCategory::Separator, "(") &&
                      !la(1).is(TokenCategory::Separator, "[");
    bool labeled = at_ident() && la(1).is(TokenCategory::Operator, ":");
    if (!yield_stmt && !labeled && try_local_variable_head(owner, {"=", ";", ",", "["})) {
      local_variable_declarators(owner);
      expect_sep(";");
      return;
    }
    statement(owner);
  }

  void statement(SyntaxNode& owner) {
    if (at_sep("{")) {
      block(owner);
      return;
    }
    if (at_sep(";")) {
      advance();
      return;
    }
    if (at_ident() && la(1).is(TokenCategory::Operator, ":")) {
      advance(2);
      statement(owner);
      return;
    }
    if (at_ident("yield") && !la(1).is(TokenCategory::Operator, "=") &&
        !la(1).is(TokenCategory::Separator, ".") && !la(1).is(TokenCategory::Separator, "(")) {
      advance();
      expression(owner);
      expect_sep(";");
      return;
    }
    if (cur().category == TokenCategory::Keyword && gt_ == 0) {
      std::string_view kw = cur().text;
      if (kw == "if") {
        advance();
        par_expression(owner);
        statement(owner);
        if (at_kw("else")) {
          advance();
          statement(owner);
        }
        return;
      }
      if (kw == "while") {
        advance();
        par_expression(owner);
        statement(owner);
        return;
      }
      if (kw == "do") {
        advance();
        statement(owner);
        expect_kw("while");
        par_expression(owner);
        expect_sep(";");
        return;
      }
      if (kw == "for") {
        advance();
        for_statement(owner);
        return;
      }
      if (kw == "try") {
        advance();
        try_statement(owner);
        return;
      }
      if (kw == "switch") {
        advance();
        par_expression(owner);
        switch_body(owner);
        return;
      }
      if (kw == "synchronized") {
        advance();
        par_expression(owner);
        block(owner);
        return;
      }
      if (kw == "return") {
        advance();
        if (!at_sep(";")) expression(owner);
        expect_sep(";");
        return;
      }
      if (kw == "throw") {
        advance();
        expression(owner);
        expect_sep(";");
        return;
      }
      if (kw == "break" || kw == "continue") {
        advance();
        if (at_ident()) advance();
        expect_sep(";");
        return;
      }
      if (kw == "assert") {
        advance();
        expression(owner);
        if (at_op(":")) {
          advance();
          expression(owner);
        }
        expect_sep(";");
        return;
      }
    }
    expression(owner);
    expect_sep(";");
  }

  void par_expression(SyntaxNode& owner) {
    expect_sep("(");
    expression(owner);
    expect_sep(")");
  }

  void for_statement(SyntaxNode& owner) {
    expect_sep("(");
    if (try_local_variable_head(owner, {":"})) {
      const Token& name = expect_ident();
      owner.add(SyntaxNode(NodeKind::LocalVariable, name.text, name.position));
      expect_op(":");
      expression(owner);
      expect_sep(")");
      statement(owner);
      return;
    }
    if (!at_sep(";")) {
      if (try_local_variable_head(owner, {"=", ";", ",", "["})) {
        local_variable_declarators(owner);
      } else {
        expression_list(owner);
      }
    }
    expect_sep(";");
    if (!at_sep(";")) expression(owner);
    expect_sep(";");
    if (!at_sep(")")) expression_list(owner);
    expect_sep(")");
    statement(owner);
  }

  void expression_list(SyntaxNode& owner) {
    expression(owner);
    while (at_sep(",")) {
      advance();
      expression(owner);
    }
  }

  void try_statement(SyntaxNode& owner) {
    bool has_resources = false;
    if (at_sep("(")) {
      has_resources = true;
      advance();
      while (!at_sep(")")) {
        if (try_local_variable_head(owner, {"="})) {
          const Token& name = expect_ident();
          SyntaxNode& var = owner.add(SyntaxNode(NodeKind::LocalVariable, name.text, name.position));
          expect_op("=");
          expression(var);
        } else {
          expression(owner);
        }
        if (!at_sep(";")) break;
        advance();
      }
      expect_sep(")");
    }
    block(owner);
    bool handled = false;
    while (at_kw("catch")) {
      handled = true;
      advance();
      expect_sep("(");
      for (auto& a : modifiers()) owner.add(std::move(a));
      class_type(owner, false);
      while (at_op("|")) {
        advance();
        class_type(owner, false);
      }
      const Token& name = expect_ident();
      owner.add(SyntaxNode(NodeKind::Parameter, name.text, name.position));
      expect_sep(")");
      block(owner);
    }
    if (at_kw("finally")) {
      handled = true;
      advance();
      block(owner);
    }
    if (!handled && !has_resources) fail("try without catch or finally");
  }

  void switch_body(SyntaxNode& owner) {
    expect_sep("{");
    while (!at_sep("}")) {
      if (at_eof()) fail("unterminated switch");
      bool arrow = false;
      if (at_kw("default")) {
        advance();
      } else if (at_kw("case")) {
        advance();
        while (true) {
          case_label(owner);
          if (!at_sep(",")) break;
          advance();
        }
      } else {
        fail("expected 'case' or 'default'");
      }
      if (at_op("->")) {
        arrow = true;
        advance();
      } else {
        expect_op(":");
      }
      if (arrow) {
        if (at_sep("{")) {
          block(owner);
        } else if (at_kw("throw")) {
          statement(owner);
        } else {
          expression(owner);
          expect_sep(";");
        }
      } else {
        while (!at_kw("case") && !at_kw("default") && !at_sep("}")) {
          if (at_eof()) fail("unterminated switch");
          block_statement(owner);
        }
        // `default` may also be a modifier-less label followed by ':'.
      }
    }
    expect_sep("}");
  }

  void case_label(SyntaxNode& owner) {
    if (at_kw("default")) {
      advance();
      return;
    }
    // Type pattern: `case Foo f ->`
    State s = save();
    try {
      SyntaxNode holder;
      type(holder);
      if (at_ident() && (la(1).is(TokenCategory::Operator, "->") || la(1).is(TokenCategory::Operator, ":") ||
                         la(1).is(TokenCategory::Identifier, "when"))) {
        const Token& name = expect_ident();
        for (auto& c : holder.children) owner.add(std::move(c));
        owner.add(SyntaxNode(NodeKind::LocalVariable, name.text, name.position));
        if (at_ident("when")) {
          advance();
          conditional(owner, false);
        }
        return;
      }
    } catch (const ParseError&) {
    }
    restore(s);
    conditional(owner, false);
  }

  // ---- expressions -----------------------------------------------------------

  void expression(SyntaxNode& owner) {
    if (try_lambda(owner)) return;
    conditional(owner, true);
    if (cur().category == TokenCategory::Operator && gt_ == 0 &&
        std::find(kAssignOps.begin(), kAssignOps.end(), cur().text) != kAssignOps.end()) {
      advance();
      expression(owner);
    }
  }

  /// Returns the offset of the ')' matching the '(' at the current position.
  std::optional<std::size_t> matching_paren() const {
    int depth = 0;
    for (std::size_t i = pos_; i < toks_.size(); ++i) {
      const Token& t = toks_[i];
      if (t.category != TokenCategory::Separator) continue;
      if (t.text == "(") ++depth;
      if (t.text == ")" && --depth == 0) return i;
    }
    return std::nullopt;
  }

  bool try_lambda(SyntaxNode& owner) {
    if (gt_ != 0) return false;
    if (at_ident() && la(1).is(TokenCategory::Operator, "->")) {
      SyntaxNode& lambda = owner.add(SyntaxNode(NodeKind::Lambda, "", cur().position));
      lambda.add(SyntaxNode(NodeKind::Parameter, cur().text, cur().position));
      advance(2);
      lambda_body(lambda);
      return true;
    }
    if (!at_sep("(")) return false;
    auto close = matching_paren();
    if (!close || *close + 1 >= toks_.size() || !toks_[*close + 1].is(TokenCategory::Operator, "->")) {
      return false;
    }
    SyntaxNode& lambda = owner.add(SyntaxNode(NodeKind::Lambda, "", cur().position));
    advance();
    while (!at_sep(")")) {
      if (at_ident() && (la(1).is(TokenCategory::Separator, ",") || la(1).is(TokenCategory::Separator, ")"))) {
        lambda.add(SyntaxNode(NodeKind::Parameter, cur().text, cur().position));
        advance();
      } else {
        formal_parameter(lambda);
      }
      if (!at_sep(",")) break;
      advance();
    }
    expect_sep(")");
    expect_op("->");
    lambda_body(lambda);
    return true;
  }

  void lambda_body(SyntaxNode& lambda) {
    if (at_sep("{")) {
      block(lambda);
    } else {
      expression(lambda);
    }
  }

  void conditional(SyntaxNode& owner, bool allow_lambda) {
    binary(owner, 1);
    if (at_op("?") && gt_ == 0) {
      advance();
      if (!(allow_lambda && try_lambda(owner))) conditional(owner, allow_lambda);
      expect_op(":");
      if (!(allow_lambda && try_lambda(owner))) conditional(owner, allow_lambda);
    }
  }

  void binary(SyntaxNode& owner, int min_precedence) {
    unary(owner);
    while (true) {
      if (at_kw("instanceof")) {
        if (7 < min_precedence) return;
        advance();
        if (at_kw("final")) advance();
        type(owner);
        if (at_ident()) {
          owner.add(SyntaxNode(NodeKind::LocalVariable, cur().text, cur().position));
          advance();
        }
        continue;
      }
      if (cur().category != TokenCategory::Operator) return;
      std::string_view op = cur_text();
      int prec = binary_precedence(op);
      if (prec == 0 || prec < min_precedence) return;
      if (gt_ != 0) fail("unexpected '>'");
      advance();
      binary(owner, prec + 1);
    }
  }

  bool at_cast() {
    if (!at_sep("(")) return false;
    State s = save();
    try {
      advance();
      SyntaxNode holder;
      bool primitive = type(holder);
      while (at_op("&")) {
        advance();
        class_type(holder, false);
      }
      if (!at_sep(")")) {
        restore(s);
        return false;
      }
      advance();
      bool result = false;
      if (primitive) {
        result = !at_eof() && !at_sep(")") && !at_sep(";") && !at_sep(",") &&
                 !(cur().category == TokenCategory::Operator && binary_precedence(cur().text) > 0 &&
                   cur().text != "+" && cur().text != "-");
      } else {
        const Token& t = cur();
        result = t.category == TokenCategory::Identifier || t.category == TokenCategory::Literal ||
                 t.is(TokenCategory::Separator, "(") || t.is(TokenCategory::Operator, "!") ||
                 t.is(TokenCategory::Operator, "~") || t.is(TokenCategory::Keyword, "this") ||
                 t.is(TokenCategory::Keyword, "super") || t.is(TokenCategory::Keyword, "new") ||
                 t.is(TokenCategory::Keyword, "switch") ||
                 (t.category == TokenCategory::Keyword && is_primitive(t.text));
      }
      restore(s);
      return result;
    } catch (const ParseError&) {
      restore(s);
      return false;
    }
  }

  void unary(SyntaxNode& owner) {
    if (gt_ == 0 && cur().category == TokenCategory::Operator) {
      std::string_view op = cur().text;
      if (op == "-" && la(1).category == TokenCategory::Literal &&
          (la(1).literal == LiteralKind::Integer || la(1).literal == LiteralKind::Floating) &&
          cur().end() == la(1).offset) {
        const Token& minus = cur();
        owner.add(SyntaxNode(NodeKind::Literal, minus.text + la(1).text, minus.position));
        advance(2);
        postfix_selectors(owner, std::nullopt);
        return;
      }
      if (op == "+" || op == "-" || op == "++" || op == "--" || op == "!" || op == "~") {
        advance();
        unary(owner);
        return;
      }
    }
    if (at_cast()) {
      advance();
      type(owner);
      while (at_op("&")) {
        advance();
        class_type(owner, false);
      }
      expect_sep(")");
      if (!try_lambda(owner)) unary(owner);
      return;
    }
    postfix(owner);
  }

  void postfix(SyntaxNode& owner) {
    std::optional<std::size_t> last = primary(owner);
    postfix_selectors(owner, last);
  }

  void postfix_selectors(SyntaxNode& owner, std::optional<std::size_t> last) {
    while (true) {
      if (at_sep(".")) {
        advance();
        mark_qualifier(owner, last);
        if (at_op("<")) {
          SyntaxNode holder;
          type_arguments(holder, false);
          for (auto& c : holder.children) owner.add(std::move(c));
        }
        if (at_ident()) {
          const Token& name = cur();
          advance();
          if (at_sep("(")) {
            owner.add(SyntaxNode(NodeKind::Invocation, name.text, name.position));
            last = owner.children.size() - 1;
            arguments(owner);
          } else {
            owner.add(SyntaxNode(NodeKind::FieldAccess, name.text, name.position));
            last = owner.children.size() - 1;
          }
          continue;
        }
        if (at_kw("new")) {
          advance();
          creator(owner);
          last.reset();
          continue;
        }
        if (at_kw("this") || at_kw("class")) {
          advance();
          last.reset();
          continue;
        }
        if (at_kw("super")) {
          advance();
          last.reset();
          if (at_sep("(")) arguments(owner);
          continue;
        }
        fail("unexpected token after '.'");
      }
      if (at_sep("[")) {
        advance();
        expression(owner);
        expect_sep("]");
        last.reset();
        continue;
      }
      if (at_sep("::")) {
        advance();
        mark_qualifier(owner, last);
        if (at_op("<")) {
          SyntaxNode holder;
          type_arguments(holder, false);
          for (auto& c : holder.children) owner.add(std::move(c));
        }
        if (at_kw("new")) {
          advance();
        } else {
          const Token& name = expect_ident();
          owner.add(SyntaxNode(NodeKind::MethodReference, name.text, name.position));
        }
        last.reset();
        continue;
      }
      if (gt_ == 0 && (at_op("++") || at_op("--"))) {
        advance();
        continue;
      }
      return;
    }
  }

  static void mark_qualifier(SyntaxNode& owner, std::optional<std::size_t> last) {
    if (last && *last < owner.children.size() && owner.children[*last].kind == NodeKind::NameRef) {
      owner.children[*last].qualifier = true;
    }
  }

  void arguments(SyntaxNode& owner) {
    expect_sep("(");
    while (!at_sep(")")) {
      expression(owner);
      if (!at_sep(",")) break;
      advance();
    }
    expect_sep(")");
  }

  std::optional<std::size_t> primary(SyntaxNode& owner) {
    const Token& t = cur();
    if (gt_ != 0) fail("unexpected '>'");
    switch (t.category) {
      case TokenCategory::Literal: {
        std::string value = t.text;
        if (t.literal == LiteralKind::String || t.literal == LiteralKind::Character) {
          value = value.substr(1, value.size() >= 2 ? value.size() - 2 : 0);
        } else if (t.literal == LiteralKind::TextBlock) {
          value = value.size() >= 6 ? value.substr(3, value.size() - 6) : std::string();
        }
        if (!value.empty()) owner.add(SyntaxNode(NodeKind::Literal, value, t.position));
        advance();
        return std::nullopt;
      }
      case TokenCategory::Identifier: {
        advance();
        if (at_sep("(")) {
          owner.add(SyntaxNode(NodeKind::Invocation, t.text, t.position));
          std::size_t idx = owner.children.size() - 1;
          arguments(owner);
          return idx;
        }
        // Generic type used as a method reference target: List<String>::new
        if (at_op("<")) {
          State s = save();
          try {
            SyntaxNode holder;
            type_arguments(holder, false);
            if (at_sep("::")) {
              SyntaxNode& ref = owner.add(SyntaxNode(NodeKind::TypeRef, t.text, t.position));
              for (auto& c : holder.children) ref.add(std::move(c));
              return std::nullopt;
            }
          } catch (const ParseError&) {
          }
          restore(s);
        }
        if (at_sep("[") && la(1).is(TokenCategory::Separator, "]")) {
          // Array type in `Foo[].class` or `Foo[]::new`.
          dims();
          owner.add(SyntaxNode(NodeKind::TypeRef, t.text, t.position));
          return std::nullopt;
        }
        owner.add(SyntaxNode(NodeKind::NameRef, t.text, t.position));
        return owner.children.size() - 1;
      }
      case TokenCategory::Keyword: {
        if (t.text == "this") {
          advance();
          if (at_sep("(")) arguments(owner);
          return std::nullopt;
        }
        if (t.text == "super") {
          advance();
          if (at_sep("(")) arguments(owner);
          return std::nullopt;
        }
        if (t.text == "new") {
          advance();
          creator(owner);
          return std::nullopt;
        }
        if (t.text == "switch") {
          advance();
          par_expression(owner);
          switch_body(owner);
          return std::nullopt;
        }
        if (is_primitive(t.text) || t.text == "void") {
          owner.add(SyntaxNode(NodeKind::TypeRef, t.text, t.position));
          advance();
          dims();
          if (!at_sep(".") && !at_sep("::")) fail("expected '.class'");
          return std::nullopt;
        }
        break;
      }
      case TokenCategory::Separator: {
        if (t.text == "(") {
          advance();
          expression(owner);
          expect_sep(")");
          return std::nullopt;
        }
        break;
      }
      default:
        break;
    }
    fail("expected expression");
  }

  void creator(SyntaxNode& owner) {
    SyntaxNode holder;
    if (at_op("<")) type_arguments(holder, false);
    for (auto& a : annotations()) owner.add(std::move(a));
    if (cur().category == TokenCategory::Keyword && is_primitive(cur().text)) {
      owner.add(SyntaxNode(NodeKind::TypeRef, cur().text, cur().position));
      advance();
      array_creator_rest(owner);
      return;
    }
    SyntaxNode type_holder;
    class_type(type_holder, true);
    if (at_sep("[")) {
      for (auto& c : type_holder.children) owner.add(std::move(c));
      array_creator_rest(owner);
      return;
    }
    if (type_holder.children.empty()) fail("expected class type");
    SyntaxNode created = std::move(type_holder.children.back());
    type_holder.children.pop_back();
    created.kind = NodeKind::ObjectCreation;
    for (auto& c : holder.children) created.add(std::move(c));
    for (auto& c : type_holder.children) owner.add(std::move(c));
    arguments(created);
    if (at_sep("{")) class_body(created, created.name, false);
    owner.add(std::move(created));
  }

  void array_creator_rest(SyntaxNode& owner) {
    bool sized = false;
    while (at_sep("[")) {
      advance();
      if (at_sep("]")) {
        advance();
        continue;
      }
      sized = true;
      expression(owner);
      expect_sep("]");
    }
    if (!sized) array_initializer(owner);
  }

  std::vector<Token> toks_;
  Token eof_;
  std::size_t pos_ = 0;
  std::size_t gt_ = 0;
  std::size_t furthest_ = 0;
};

bool looks_like_compilation_unit(const std::vector<Token>& tokens) {
  // Skip leading comments, annotations and modifiers.
  std::size_t i = 0;
  auto sig = [&](std::size_t k) -> const Token* {
    std::size_t seen = 0;
    for (const Token& t : tokens) {
      if (t.category == TokenCategory::Comment) continue;
      if (seen++ == k) return &t;
    }
    return nullptr;
  };
  while (const Token* t = sig(i)) {
    if (t->is(TokenCategory::Keyword, "package") || t->is(TokenCategory::Keyword, "import") ||
        t->is(TokenCategory::Keyword, "class") || t->is(TokenCategory::Keyword, "interface") ||
        t->is(TokenCategory::Keyword, "enum")) {
      return true;
    }
    if (t->category == TokenCategory::Keyword &&
        std::find(kModifierKeywords.begin(), kModifierKeywords.end(), t->text) != kModifierKeywords.end()) {
      ++i;
      continue;
    }
    if (t->is(TokenCategory::Separator, "@")) {
      const Token* next = sig(i + 1);
      if (next && next->is(TokenCategory::Keyword, "interface")) return true;
      i += 2;
      // Skip a parenthesised annotation argument list.
      const Token* open = sig(i);
      if (open && open->is(TokenCategory::Separator, "(")) {
        int depth = 0;
        while (const Token* x = sig(i)) {
          ++i;
          if (x->is(TokenCategory::Separator, "(")) ++depth;
          if (x->is(TokenCategory::Separator, ")") && --depth == 0) break;
        }
      }
      continue;
    }
    if (t->is(TokenCategory::Identifier, "record")) return true;
    return false;
  }
  return false;
}

}  // namespace

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::CompilationUnit: return "CompilationUnit";
    case NodeKind::Package: return "Package";
    case NodeKind::Import: return "Import";
    case NodeKind::ClassDecl: return "ClassDecl";
    case NodeKind::EnumConstant: return "EnumConstant";
    case NodeKind::MethodDecl: return "MethodDecl";
    case NodeKind::ConstructorDecl: return "ConstructorDecl";
    case NodeKind::FieldDecl: return "FieldDecl";
    case NodeKind::Parameter: return "Parameter";
    case NodeKind::LocalVariable: return "LocalVariable";
    case NodeKind::TypeParameter: return "TypeParameter";
    case NodeKind::TypeRef: return "TypeRef";
    case NodeKind::Annotation: return "Annotation";
    case NodeKind::Invocation: return "Invocation";
    case NodeKind::ObjectCreation: return "ObjectCreation";
    case NodeKind::NameRef: return "NameRef";
    case NodeKind::FieldAccess: return "FieldAccess";
    case NodeKind::MethodReference: return "MethodReference";
    case NodeKind::Literal: return "Literal";
    case NodeKind::Lambda: return "Lambda";
    case NodeKind::Block: return "Block";
  }
  return "Unknown";
}

ParseResult parse(const TokenStream& stream) {
  if (!stream.ok()) {
    const LexDiagnostic& d = stream.diagnostics.front();
    Token at;
    for (const Token& t : stream.tokens) {
      if (t.position == d.position) {
        at = t;
        break;
      }
    }
    at.position = d.position;
    throw ParseError(d.message, at);
  }

  Parser parser(stream.tokens);
  std::optional<ParseError> first_error;
  const bool cu_first = looks_like_compilation_unit(stream.tokens);

  auto attempt = [&](auto&& fn, bool wrapped) -> std::optional<ParseResult> {
    try {
      SyntaxNode root = fn();
      return ParseResult{std::move(root), wrapped};
    } catch (const ParseError& e) {
      if (!first_error) first_error = e;
      return std::nullopt;
    }
  };

  if (cu_first) {
    if (auto r = attempt([&] { return parser.compilation_unit(); }, false)) return std::move(*r);
  }
  if (auto r = attempt([&] { return parser.wrapped_members(); }, true)) return std::move(*r);
  if (auto r = attempt([&] { return parser.wrapped_statements(); }, true)) return std::move(*r);
  throw *first_error;
}

ParseResult parse(const SourceUnit& unit) {
  if (!has_content(unit.text)) throw EmptySourceError();
  return parse(tokenize(unit));
}

}  // namespace etf::code
