#include <gtest/gtest.h>

#include "etf/match/matcher.hpp"
#include "test_util.hpp"

using namespace etf::match;
using etf::code::EntityKind;
using etf::ner::SummaryEntity;
using etf::ner::Tag;

namespace {

etf::code::CodeEntitySet figure1() {
  return etf::code::extract_code_entities(
      etf::test::unit(etf::test::read_text(etf::test::data_dir() / "code" / "figure1.java")));
}

std::vector<std::string> names(const std::vector<SummaryEntity>& es) {
  std::vector<std::string> out;
  for (const auto& e : es) out.push_back(e.surface);
  return out;
}

}  // namespace

TEST(Matcher, FunctionMapsToFunction) {
  auto m = match_entity({"getJobID", Tag::FUNCTION}, figure1());
  ASSERT_TRUE(m);
  EXPECT_EQ(m->name, "getJobID");
  EXPECT_EQ(m->kind, EntityKind::FUNCTION);
}

TEST(Matcher, NoPartialIdentifierMatch) {
  auto code = etf::code::extract_code_entities(etf::test::unit("void f() throws HubException { }"));
  EXPECT_FALSE(match_entity({"Hub", Tag::LIBRARY}, code));
}

TEST(Matcher, MultiWordMentionDoesNotMatchCamelCase) {
  auto code = etf::code::extract_code_entities(
      etf::test::unit("void run(Connection c) throws SQLException { PreparedStatement ps = c.prepareStatement(q); }"));
  EXPECT_FALSE(match_entity({"prepared statement", Tag::CLASS}, code));
}

TEST(Matcher, KeywordsNeverMatch) {
  auto code = etf::code::extract_code_entities(etf::test::unit("return this;"));
  EXPECT_FALSE(match_entity({"this", Tag::VARIABLE}, code));
  EXPECT_FALSE(match_entity({"return", Tag::FUNCTION}, code));
}

TEST(Matcher, KindPreference) {
  auto code = etf::code::extract_code_entities(etf::test::unit("class Foo { Foo Foo() { return null; } }"));
  auto by_tag = match_entity({"Foo", Tag::DATA_TYPE}, code);
  ASSERT_TRUE(by_tag);
  EXPECT_EQ(by_tag->kind, EntityKind::DATA_TYPE);
  auto fallback = match_entity({"Foo", Tag::VALUE}, code);
  ASSERT_TRUE(fallback);
  EXPECT_EQ(fallback->kind, EntityKind::FUNCTION);
}

TEST(Matcher, NegativeLiteralEquivalence) {
  auto code = etf::code::extract_code_entities(etf::test::unit("int f() { return -0x1; }"));
  auto m = match_entity({"-1", Tag::VALUE}, code);
  ASSERT_TRUE(m);
  EXPECT_EQ(m->kind, EntityKind::VALUE);
  EXPECT_FALSE(match_entity({"-1", Tag::VARIABLE}, code));
}

TEST(Matcher, LenientCasePrefersExact) {
  auto code = etf::code::extract_code_entities(etf::test::unit("int Count; int count;"));
  EXPECT_FALSE(match_entity({"COUNT", Tag::VARIABLE}, code));
  auto m = match_entity({"count", Tag::VARIABLE}, code, {.lenient_case = true});
  ASSERT_TRUE(m);
  EXPECT_EQ(m->name, "count");
  EXPECT_TRUE(match_entity({"COUNT", Tag::VARIABLE}, code, {.lenient_case = true}));
}

TEST(Partition, FigureOne) {
  std::vector<SummaryEntity> es = {{"getJobID", Tag::FUNCTION}, {"jobName", Tag::VARIABLE},
                                   {"jobStatus", Tag::VARIABLE}, {"database", Tag::LIBRARY}};
  auto r = partition(es, figure1());
  std::vector<std::string> mapped;
  for (const auto& m : r.mapped) mapped.push_back(m.entity.surface);
  EXPECT_EQ(mapped, (std::vector<std::string>{"getJobID", "jobName"}));
  EXPECT_EQ(names(r.unmapped), (std::vector<std::string>{"jobStatus", "database"}));
  EXPECT_TRUE(r.nl_entities.empty());
}

TEST(Partition, Empty) {
  auto r = partition({}, figure1());
  EXPECT_TRUE(r.mapped.empty());
  EXPECT_TRUE(r.unmapped.empty());
  EXPECT_TRUE(r.nl_entities.empty());
}

TEST(Partition, NaturalLanguageTagsAreExempt) {
  auto r = partition({{"Java", Tag::LANGUAGE}, {"getJobID", Tag::APPLICATION}}, figure1());
  EXPECT_TRUE(r.mapped.empty());
  EXPECT_TRUE(r.unmapped.empty());
  EXPECT_EQ(names(r.nl_entities), (std::vector<std::string>{"Java", "getJobID"}));
}

TEST(Partition, HtmlTagsAreGroundedLikeCode) {
  auto code = etf::code::extract_code_entities(etf::test::unit("String t = \"div\"; int body;"));
  auto r = partition({{"body", Tag::HTML_XML_TAG}, {"span", Tag::HTML_XML_TAG}}, code);
  EXPECT_EQ(r.mapped.size(), 1u);
  EXPECT_EQ(names(r.unmapped), (std::vector<std::string>{"span"}));
}
