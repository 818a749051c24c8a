#include <gtest/gtest.h>

#include "etf/ner/extract.hpp"
#include "etf/prompts.hpp"
#include "test_util.hpp"

using namespace etf::prompts;

TEST(Prompts, SummaryGenerationSections) {
  std::string code = etf::test::read_text(etf::test::data_dir() / "code" / "example1.java");
  std::string p = render_summary_generation(code);
  EXPECT_NE(p.find("1. Inputs and outputs of the method"), std::string::npos);
  EXPECT_NE(p.find("2. Business purpose"), std::string::npos);
  EXPECT_NE(p.find("3. Detailed functional summary of the method."), std::string::npos);
  EXPECT_NE(p.find("```\n" + code + "\n```"), std::string::npos);
  EXPECT_EQ(p.find("{CODE}"), std::string::npos);
}

TEST(Prompts, IntentVerificationPlaceholders) {
  std::string p = render_intent_verification("jobName", "Takes jobName.", "int f(String jobName) {}");
  EXPECT_NE(p.find("description of 'jobName'"), std::string::npos);
  EXPECT_NE(p.find("[\"CORRECT\", \"INCORRECT\", \"IRRELEVANT\"]"), std::string::npos);
  EXPECT_NE(p.find("Description:\nTakes jobName.\n[CODE]\nint f(String jobName) {}\n[/CODE]"), std::string::npos);
}

TEST(Prompts, NerLabelsAndExample) {
  std::string p = render_ner("Calls foo.");
  EXPECT_NE(p.find("Code Entities: CLASS, VARIABLE, FUNCTION, LIBRARY, VALUE, DATA TYPE, and HTML or XML TAG"),
            std::string::npos);
  EXPECT_NE(p.find(std::string(kNerIncontextExample)), std::string::npos);
  EXPECT_TRUE(p.ends_with("Now consider the summary describing the code below:\nCalls foo."));
}

TEST(Prompts, InContextExampleParsesWithEveryTagKnown) {
  std::string_view ex = kNerIncontextExample;
  auto body = ex.substr(ex.find("Output:\n") + 8);
  auto es = etf::ner::parse_ner_output(body);
  EXPECT_EQ(es.size(), 8u);
}

TEST(Prompts, DirectEvaluationFormat) {
  std::string p = render_direct_evaluation("S.", "C;");
  EXPECT_NE(p.find("[{entity_name:\"\", relevant_sentence:\"\"}]"), std::string::npos);
  EXPECT_TRUE(p.ends_with("Summary:\nS.\n\nCode:\nC;"));
}

TEST(Prompts, SubstitutionIsSinglePass) {
  EXPECT_EQ(substitute("<{CODE}>", {{kCode, "{CODE}"}}), "<{CODE}>");
  EXPECT_EQ(substitute("{SUMMARY}/{CODE}", {{kSummary, "{CODE}"}, {kCode, "x"}}), "{CODE}/x");
}
