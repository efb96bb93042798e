/*
 * Copyright 2026 The morltune Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "morltune/kv_text.h"

#include "gtest/gtest.h"
#include "morltune/errors.h"

namespace morltune {
namespace {

TEST(KeyValueTextTest, ParsesKeysCommentsAndContinuations) {
  const auto kv = KeyValueText::Parse(
      "# comment\n"
      "name = dst\n"
      "\n"
      "layout =\n"
      "  ab\n"
      "   cd  \n"
      "gamma = 0.99\n");
  EXPECT_EQ(kv.Require("name"), "dst");
  EXPECT_EQ(SplitLines(kv.Require("layout")), (std::vector<std::string>{"ab", "cd"}));
  EXPECT_DOUBLE_EQ(ParseDouble(kv.Require("gamma"), "gamma"), 0.99);
  EXPECT_FALSE(kv.Has("missing"));
  EXPECT_THROW(kv.Require("missing"), ConfigError);
}

TEST(KeyValueTextTest, RejectsDuplicatesAndBadLines) {
  EXPECT_THROW(KeyValueText::Parse("a = 1\na = 2\n"), ConfigError);
  EXPECT_THROW(KeyValueText::Parse("no equals sign\n"), ConfigError);
  EXPECT_THROW(KeyValueText::Parse("  orphan continuation\n"), ConfigError);
}

TEST(KeyValueTextTest, SetOverridesAndPrefixLookup) {
  auto kv = KeyValueText::Parse("space.b = x\nspace.a = y\nother = z\n");
  kv.Set("other", "w");
  EXPECT_EQ(kv.Require("other"), "w");
  EXPECT_EQ(kv.KeysWithPrefix("space."), (std::vector<std::string>{"space.a", "space.b"}));
}

TEST(KeyValueTextTest, NumberParsers) {
  EXPECT_EQ(ParseInt("42", "n"), 42);
  EXPECT_THROW(ParseInt("4.2", "n"), ConfigError);
  EXPECT_THROW(ParseDouble("nan", "x"), ConfigError);
  EXPECT_THROW(ParseDouble("1e", "x"), ConfigError);
  EXPECT_TRUE(ParseBool("true", "b"));
  EXPECT_FALSE(ParseBool("false", "b"));
  EXPECT_EQ(ParseDoubleList("0, -50", "ref"), (std::vector<double>{0.0, -50.0}));
  EXPECT_EQ(ParseIntList("0..3, 7", "seeds"), (std::vector<int64_t>{0, 1, 2, 3, 7}));
  EXPECT_THROW(ParseIntList("3..1", "seeds"), ConfigError);
}

}  // namespace
}  // namespace morltune
