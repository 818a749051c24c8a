#include <gtest/gtest.h>

#include "etf/ner/sentences.hpp"
#include "etf/prompts.hpp"
#include "etf/verify/verdict.hpp"
#include "test_util.hpp"

using namespace etf::verify;
using etf::client::Role;
using etf::test::ScriptedModel;

namespace {

IntentTuple int16_tuple() {
  const std::string text = "The method adds a column of data type int16 (16-bit integer) to the row.";
  etf::ner::SummaryEntity e{"int16", etf::ner::Tag::DATA_TYPE, {{38, 43}}};
  etf::code::CodeEntity ce{"int16", etf::code::EntityKind::FUNCTION, {1, 19}, 1};
  return IntentTuple{"ex1", e, ce, etf::ner::segment_sentences(text)};
}

etf::code::SourceUnit example1() {
  return etf::test::unit(etf::test::read_text(etf::test::data_dir() / "code" / "example1.java"), "ex1");
}

}  // namespace

TEST(ParseVerdict, FirstWholeWordCaseInsensitive) {
  EXPECT_EQ(parse_verdict("INCORRECT"), Label::INCORRECT);
  EXPECT_EQ(parse_verdict("Label: \"correct\"."), Label::CORRECT);
  EXPECT_EQ(parse_verdict("irrelevant, not CORRECT"), Label::IRRELEVANT);
  EXPECT_EQ(parse_verdict("[\"INCORRECT\"]"), Label::INCORRECT);
}

TEST(ParseVerdict, SubstringsDoNotCount) {
  EXPECT_FALSE(parse_verdict("The description is incorrectly phrased"));
  EXPECT_FALSE(parse_verdict("CORRECTNESS unclear"));
  EXPECT_FALSE(parse_verdict(""));
}

TEST(Effective, IrrelevantIsIncorrect) {
  EXPECT_EQ(effective(Label::IRRELEVANT), Label::INCORRECT);
  EXPECT_EQ(effective(Label::CORRECT), Label::CORRECT);
}

TEST(LlmJudge, RendersPromptAndParses) {
  ScriptedModel model([](Role role, const std::string& prompt, int) {
    EXPECT_EQ(role, Role::JUDGE);
    EXPECT_NE(prompt.find("description of 'int16'"), std::string::npos);
    EXPECT_NE(prompt.find("data type int16 (16-bit integer)"), std::string::npos);
    EXPECT_NE(prompt.find("ColumnInt16 column"), std::string::npos);
    return std::string("INCORRECT");
  });
  LlmJudge judge(model);
  Verdict v = verify_tuple(int16_tuple(), example1(), judge);
  EXPECT_EQ(v.label, Label::INCORRECT);
  EXPECT_EQ(v.raw_backend_text, "INCORRECT");
  EXPECT_EQ(v.attempts, 1);
}

TEST(LlmJudge, PromptMatchesTemplate) {
  ScriptedModel model([](Role, const std::string&, int) { return std::string("CORRECT"); });
  LlmJudge judge(model);
  auto t = int16_tuple();
  verify_tuple(t, example1(), judge);
  EXPECT_EQ(model.calls().at(0).prompt, etf::prompts::render_intent_verification("int16", t.context(), example1().text));
}

TEST(LlmJudge, UnparseableBecomesUnresolved) {
  ScriptedModel model([](Role, const std::string&, int) { return std::string("It depends."); });
  LlmJudge judge(model, 3);
  Verdict v = verify_tuple(int16_tuple(), example1(), judge);
  EXPECT_FALSE(v.resolved());
  EXPECT_EQ(v.attempts, 3);
  auto calls = model.calls();
  ASSERT_EQ(calls.size(), 3u);
  EXPECT_EQ(calls[1].attempt, 1);
}

TEST(LlmJudge, RetryCanResolve) {
  ScriptedModel model([](Role, const std::string&, int attempt) {
    return attempt == 0 ? std::string("Hmm") : std::string("IRRELEVANT");
  });
  LlmJudge judge(model);
  Verdict v = verify_tuple(int16_tuple(), example1(), judge);
  EXPECT_EQ(v.label, Label::IRRELEVANT);
  EXPECT_EQ(v.attempts, 2);
}
