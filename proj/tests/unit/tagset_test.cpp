#include <gtest/gtest.h>

#include <set>

#include "etf/ner/tagset.hpp"

using namespace etf::ner;

TEST(Tagset, NineteenDistinctTags) {
  std::set<std::string_view> names;
  for (Tag t : kAllTags) names.insert(to_string(t));
  EXPECT_EQ(names.size(), 19u);
}

TEST(Tagset, SevenCodeTags) {
  int code = 0;
  for (Tag t : kAllTags) code += is_code_tag(t) ? 1 : 0;
  EXPECT_EQ(code, 7);
  EXPECT_TRUE(is_code_tag(Tag::HTML_XML_TAG));
  EXPECT_FALSE(is_code_tag(Tag::LANGUAGE));
  EXPECT_FALSE(is_code_tag(Tag::DATA_STRUCTURE));
}

TEST(Tagset, CanonicalNamesRoundTrip) {
  for (Tag t : kAllTags) EXPECT_EQ(parse_tag(to_string(t)), t) << to_string(t);
}

TEST(Tagset, PromptSpellingsParse) {
  EXPECT_EQ(parse_tag("DATA TYPE"), Tag::DATA_TYPE);
  EXPECT_EQ(parse_tag("data-type"), Tag::DATA_TYPE);
  EXPECT_EQ(parse_tag("HTML or XML TAG"), Tag::HTML_XML_TAG);
  EXPECT_EQ(parse_tag(" Ui Element "), Tag::UI_ELEMENT);
  EXPECT_EQ(parse_tag("user name"), Tag::USER_NAME);
}

TEST(Tagset, UnknownTagsAreRejected) {
  EXPECT_FALSE(parse_tag("METHOD"));
  EXPECT_FALSE(parse_tag(""));
  EXPECT_FALSE(parse_tag("CLASSES"));
}
