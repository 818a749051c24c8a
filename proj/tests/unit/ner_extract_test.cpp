#include <gtest/gtest.h>

#include "etf/errors.hpp"
#include "etf/ner/extract.hpp"
#include "etf/prompts.hpp"
#include "test_util.hpp"

using namespace etf::ner;
using etf::client::Role;
using etf::test::ScriptedModel;

namespace {

std::vector<std::pair<std::string, Tag>> surfaces(const std::vector<SummaryEntity>& es) {
  std::vector<std::pair<std::string, Tag>> out;
  for (const auto& e : es) out.emplace_back(e.surface, e.tag);
  return out;
}

const char* kExample1Summary =
    "The method `int16` adds a column of data type int16 (16-bit integer) to the row. "
    "It creates a ColumnInt16 object with the given name and size (16 bits).";

}  // namespace

TEST(NerOutput, LineFormat) {
  auto es = parse_ner_output("jobStatus ||| VARIABLE\ndatabase ||| LIBRARY\n");
  std::vector<std::pair<std::string, Tag>> want = {{"jobStatus", Tag::VARIABLE}, {"database", Tag::LIBRARY}};
  EXPECT_EQ(surfaces(es), want);
}

TEST(NerOutput, JsonObjectsAndPairs) {
  auto a = parse_ner_output(R"([{"entity": "int16", "type": "DATA TYPE"}, {"name": "ColumnInt16", "tag": "CLASS"}])");
  std::vector<std::pair<std::string, Tag>> want = {{"int16", Tag::DATA_TYPE}, {"ColumnInt16", Tag::CLASS}};
  EXPECT_EQ(surfaces(a), want);
  auto b = parse_ner_output(R"({"entities": [["int16", "DATA_TYPE"], ["ColumnInt16", "CLASS"]]})");
  EXPECT_EQ(surfaces(b), want);
}

TEST(NerOutput, FencedResponse) {
  auto es = parse_ner_output("```json\n[[\"Java\", \"LANGUAGE\"]]\n```");
  ASSERT_EQ(es.size(), 1u);
  EXPECT_EQ(es[0].tag, Tag::LANGUAGE);
}

TEST(NerOutput, EmptyList) { EXPECT_TRUE(parse_ner_output("[]").empty()); }

TEST(NerOutput, UnknownTagsAreDropped) {
  auto es = parse_ner_output("foo ||| METHOD\nbar ||| FUNCTION");
  ASSERT_EQ(es.size(), 1u);
  EXPECT_EQ(es[0].surface, "bar");
}

TEST(NerOutput, ProseIsMalformed) {
  EXPECT_THROW(parse_ner_output("I found no entities worth mentioning."), etf::MalformedBackendOutput);
}

TEST(NerOrdinals, CountPerNormalizedSurface) {
  std::vector<SummaryEntity> es = {{"x", Tag::VARIABLE}, {"`x`", Tag::VARIABLE}, {"y", Tag::VARIABLE}, {"x()", Tag::FUNCTION}};
  assign_ordinals(es);
  EXPECT_EQ(es[0].ordinal, 0);
  EXPECT_EQ(es[1].ordinal, 1);
  EXPECT_EQ(es[2].ordinal, 0);
  EXPECT_EQ(es[3].ordinal, 2);
}

TEST(LlmExtractor, QuotedVariableFromFigureOne) {
  ScriptedModel model([](Role, const std::string&, int) { return std::string("jobStatus ||| VARIABLE"); });
  LlmEntityExtractor ex(model);
  auto es = extract_entities({"f1", "It stores the \"jobStatus\" in a variable.", ""}, ex);
  ASSERT_EQ(es.size(), 1u);
  EXPECT_EQ(es[0].surface, "jobStatus");
  EXPECT_EQ(es[0].tag, Tag::VARIABLE);
}

TEST(LlmExtractor, RowBuilderSummary) {
  ScriptedModel model([](Role role, const std::string& prompt, int) {
    EXPECT_EQ(role, Role::NER);
    EXPECT_NE(prompt.find("ColumnInt16 object"), std::string::npos);
    return std::string("int16 ||| FUNCTION\nint16 ||| DATA TYPE\nColumnInt16 ||| CLASS\n");
  });
  LlmEntityExtractor ex(model);
  auto es = extract_entities({"e1", kExample1Summary, ""}, ex);
  auto got = surfaces(es);
  EXPECT_NE(std::find(got.begin(), got.end(), std::pair<std::string, Tag>{"int16", Tag::DATA_TYPE}), got.end());
  EXPECT_NE(std::find(got.begin(), got.end(), std::pair<std::string, Tag>{"ColumnInt16", Tag::CLASS}), got.end());
  EXPECT_EQ(es[1].ordinal, 1);
}

TEST(LlmExtractor, EmptyListReply) {
  ScriptedModel model([](Role, const std::string&, int) { return std::string(" [] "); });
  LlmEntityExtractor ex(model);
  EXPECT_TRUE(extract_entities({"s", "Returns a value.", ""}, ex).empty());
}

TEST(LlmExtractor, RetriesMalformedThenSucceeds) {
  ScriptedModel model([](Role, const std::string&, int attempt) {
    return attempt < 2 ? std::string("sorry") : std::string("x ||| VARIABLE");
  });
  LlmEntityExtractor ex(model, 3);
  EXPECT_EQ(extract_entities({"s", "Sets x.", ""}, ex).size(), 1u);
  auto calls = model.calls();
  ASSERT_EQ(calls.size(), 3u);
  EXPECT_EQ(calls[0].attempt, 0);
  EXPECT_EQ(calls[2].attempt, 2);
}

TEST(LlmExtractor, SurfacesMalformedAfterLimit) {
  ScriptedModel model([](Role, const std::string&, int) { return std::string("sorry"); });
  LlmEntityExtractor ex(model, 2);
  EXPECT_THROW(extract_entities({"s", "Sets x.", ""}, ex), etf::MalformedBackendOutput);
  EXPECT_EQ(model.calls().size(), 2u);
}

TEST(LlmExtractor, BlankSummaryIsRejectedBeforeAnyCall) {
  ScriptedModel model([](Role, const std::string&, int) { return std::string("[]"); });
  LlmEntityExtractor ex(model);
  EXPECT_THROW(extract_entities({"s", "  \n", ""}, ex), etf::EmptySummaryError);
  EXPECT_TRUE(model.calls().empty());
}
