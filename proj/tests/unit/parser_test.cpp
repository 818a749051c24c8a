#include <gtest/gtest.h>

#include <functional>

#include "etf/code/syntax.hpp"
#include "etf/errors.hpp"
#include "test_util.hpp"

using namespace etf::code;
using etf::test::unit;

namespace {

void walk(const SyntaxNode& n, const std::function<void(const SyntaxNode&)>& fn) {
  fn(n);
  for (const auto& c : n.children) walk(c, fn);
}

std::vector<const SyntaxNode*> nodes_of(const SyntaxNode& root, NodeKind kind) {
  std::vector<const SyntaxNode*> out;
  walk(root, [&](const SyntaxNode& n) {
    if (n.kind == kind) out.push_back(&n);
  });
  return out;
}

const SyntaxNode* first_of(const SyntaxNode& root, NodeKind kind, std::string_view name) {
  for (const SyntaxNode* n : nodes_of(root, kind)) {
    if (n->name == name) return n;
  }
  return nullptr;
}

}  // namespace

TEST(Parser, EmptyClassBody) {
  auto r = parse(unit("class A {}"));
  EXPECT_FALSE(r.wrapped);
  auto classes = nodes_of(r.root, NodeKind::ClassDecl);
  ASSERT_EQ(classes.size(), 1u);
  EXPECT_EQ(classes[0]->name, "A");
  EXPECT_FALSE(classes[0]->synthetic);
  EXPECT_TRUE(classes[0]->children.empty());
}

TEST(Parser, IsolatedMethodIsWrapped) {
  auto r = parse(unit(etf::test::read_text(etf::test::data_dir() / "code" / "example1.java")));
  EXPECT_TRUE(r.wrapped);
  auto classes = nodes_of(r.root, NodeKind::ClassDecl);
  ASSERT_EQ(classes.size(), 1u);
  EXPECT_TRUE(classes[0]->synthetic);
  EXPECT_EQ(classes[0]->name, kWrapperClassName);

  auto methods = nodes_of(r.root, NodeKind::MethodDecl);
  ASSERT_EQ(methods.size(), 1u);
  EXPECT_EQ(methods[0]->name, "int16");
  const SyntaxNode* column = first_of(r.root, NodeKind::LocalVariable, "column");
  ASSERT_NE(column, nullptr);
  EXPECT_NE(first_of(r.root, NodeKind::TypeRef, "ColumnInt16"), nullptr);
  EXPECT_EQ(nodes_of(r.root, NodeKind::LocalVariable).size(), 1u);
}

TEST(Parser, GetJobIdParameter) {
  auto r = parse(unit(etf::test::read_text(etf::test::data_dir() / "code" / "figure1.java")));
  const SyntaxNode* m = first_of(r.root, NodeKind::MethodDecl, "getJobID");
  ASSERT_NE(m, nullptr);
  EXPECT_NE(first_of(*m, NodeKind::Parameter, "jobName"), nullptr);
}

TEST(Parser, StatementsAreWrappedInASyntheticBody) {
  auto r = parse(unit("int x = 16; x++;"));
  EXPECT_TRUE(r.wrapped);
  EXPECT_NE(first_of(r.root, NodeKind::LocalVariable, "x"), nullptr);
}

TEST(Parser, CompilationUnit) {
  auto r = parse(unit("package a.b;\nimport java.util.List;\nimport static java.lang.Math.max;\n"
                      "public class C<T extends Comparable<T>> implements Runnable {\n"
                      "  private List<T> items;\n  @Override public void run() { items.clear(); }\n}\n"));
  EXPECT_FALSE(r.wrapped);
  EXPECT_NE(first_of(r.root, NodeKind::Package, "a.b"), nullptr);
  EXPECT_NE(first_of(r.root, NodeKind::Import, "java.util.List"), nullptr);
  EXPECT_NE(first_of(r.root, NodeKind::Import, "java.lang.Math.max"), nullptr);
  EXPECT_NE(first_of(r.root, NodeKind::TypeParameter, "T"), nullptr);
  EXPECT_NE(first_of(r.root, NodeKind::FieldDecl, "items"), nullptr);
  EXPECT_NE(first_of(r.root, NodeKind::Annotation, "Override"), nullptr);
  EXPECT_NE(first_of(r.root, NodeKind::Invocation, "clear"), nullptr);
}

TEST(Parser, NestedGenericsCloseOnShiftTokens) {
  auto r = parse(unit("Map<String, List<Set<Integer>>> m = new HashMap<>();\nm.clear();"));
  EXPECT_NE(first_of(r.root, NodeKind::LocalVariable, "m"), nullptr);
  EXPECT_NE(first_of(r.root, NodeKind::TypeRef, "Integer"), nullptr);
  EXPECT_NE(first_of(r.root, NodeKind::ObjectCreation, "HashMap"), nullptr);
}

TEST(Parser, LambdasCastsAndMethodReferences) {
  auto r = parse(unit("Object o = (Runnable) () -> {};\n"
                      "names.stream().map(String::trim).filter(s -> !s.isEmpty()).count();"));
  EXPECT_NE(first_of(r.root, NodeKind::Lambda, ""), nullptr);
  EXPECT_NE(first_of(r.root, NodeKind::MethodReference, "trim"), nullptr);
  EXPECT_NE(first_of(r.root, NodeKind::Invocation, "isEmpty"), nullptr);
  EXPECT_NE(first_of(r.root, NodeKind::TypeRef, "Runnable"), nullptr);
}

TEST(Parser, EnumsRecordsAndSwitchExpressions) {
  auto r = parse(unit("enum Color { RED, GREEN; }\n"
                      "record Point(int x, int y) { Point { if (x < 0) throw new IllegalArgumentException(); } }\n"
                      "class U { int f(Color c) { return switch (c) { case RED -> 1; default -> { yield 2; } }; } }"));
  EXPECT_FALSE(r.wrapped);
  EXPECT_NE(first_of(r.root, NodeKind::EnumConstant, "GREEN"), nullptr);
  EXPECT_NE(first_of(r.root, NodeKind::ClassDecl, "Point"), nullptr);
  EXPECT_NE(first_of(r.root, NodeKind::MethodDecl, "f"), nullptr);
}

TEST(Parser, TryWithResourcesAndMultiCatch) {
  auto r = parse(unit("try (InputStream in = open(); var out = sink()) { copy(in, out); }\n"
                      "catch (IOException | RuntimeException e) { log(e); } finally { done(); }"));
  EXPECT_NE(first_of(r.root, NodeKind::LocalVariable, "in"), nullptr);
  EXPECT_NE(first_of(r.root, NodeKind::TypeRef, "RuntimeException"), nullptr);
  EXPECT_NE(first_of(r.root, NodeKind::Invocation, "done"), nullptr);
}

TEST(Parser, TruncatedSourceThrowsWithToken) {
  try {
    parse(unit(etf::test::read_text(etf::test::data_dir() / "code" / "hc4.java")));
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.token().position.line, 1);
    EXPECT_EQ(e.token().text, "...");
  }
}

TEST(Parser, LexerDiagnosticsAreParseErrors) { EXPECT_THROW(parse(unit("String s = \"open")), ParseError); }

TEST(Parser, BlankSourceIsEmptySource) { EXPECT_THROW(parse(unit(" \n\t ")), etf::EmptySourceError); }
