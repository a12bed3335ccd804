/*
 * Copyright (C) 2026 The fairdiv Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include <sstream>

#include "fairdiv/json_io.hpp"

using namespace fairdiv;

namespace {

Rational q(const char* text) { return parse_rational(text); }

}  // namespace

TEST(JsonIo, ValuationRoundTrip) {
  auto v = random_dense_valuation(7, DensityBounds{0, Rational(2)}, 4);
  Json doc = valuation_json(v);
  EXPECT_EQ(doc["type"], "piecewise_constant");
  EXPECT_EQ(valuation_from_json(doc), v);
  auto list = valuations_from_text("[" + doc.dump() + "," + doc.dump() + "]");
  ASSERT_EQ(list.size(), 2u);
  EXPECT_EQ(list[1], v);
  auto wrapped = valuations_from_text("{\"valuations\": [" + doc.dump() + "]}");
  ASSERT_EQ(wrapped.size(), 1u);
}

TEST(JsonIo, AcceptsDecimalAndIntegerFields) {
  auto v = valuations_from_text(R"({"type":"piecewise_constant","segments":[{"end":"0.5","density":1},{"end":1,"density":"1"}]})");
  EXPECT_EQ(v.at(0).eval(0, q("1/2")), q("1/2"));
}

TEST(JsonIo, NonNormalizedIsLoadError) {
  try {
    valuations_from_text(R"([{"type":"piecewise_constant","segments":[{"end":"1","density":"3/2"}]}])");
    FAIL();
  } catch (const LoadError& e) {
    EXPECT_EQ(e.where(), "/0");
    EXPECT_NE(std::string(e.what()).find("mass"), std::string::npos);
  }
}

TEST(JsonIo, FieldDiagnostics) {
  try {
    valuations_from_text(R"({"valuations":[{"type":"piecewise_constant","segments":[{"end":"1/2","density":"x"}]}]})");
    FAIL();
  } catch (const LoadError& e) {
    EXPECT_EQ(e.where(), "/valuations/0/segments/0/density");
  }
  try {
    valuations_from_text(R"({"type":"piecewise_constant","segments":[{"density":"1"}]})");
    FAIL();
  } catch (const LoadError& e) {
    EXPECT_EQ(e.where(), "/segments/0/end");
  }
  EXPECT_THROW(valuations_from_text(R"({"type":"tree"})"), LoadError);
  EXPECT_THROW(valuations_from_text(R"({"type":"piecewise_constant","segments":[]})"), LoadError);
}

TEST(JsonIo, SyntaxErrorReportsLineAndColumn) {
  try {
    valuations_from_text("{\n  \"type\": \"piecewise_constant\",\n  \"segments\": [ ,\n}");
    FAIL();
  } catch (const LoadError& e) {
    EXPECT_EQ(e.where().rfind("line 3, column", 0), 0u) << e.where();
  }
}

TEST(JsonIo, AllocationRoundTrip) {
  Allocation a{{Piece::normalize({Interval(0, q("1/4")), Interval(q("1/2"), q("3/4"))}),
                Piece::normalize({Interval(q("1/4"), q("1/2")), Interval(q("3/4"), 1)})}};
  Json doc = allocation_json(a);
  Allocation back = allocation_from_json(doc);
  ASSERT_EQ(back.pieces.size(), 2u);
  EXPECT_EQ(back.pieces[0], a.pieces[0]);
  EXPECT_EQ(back.pieces[1], a.pieces[1]);
  EXPECT_EQ(doc["pieces"][0][1][0], "1/2");
  EXPECT_THROW(allocation_from_json(Json::parse(R"({"pieces":[[["1/2"]]]})")), LoadError);
}

TEST(JsonIo, TreeSpec) {
  TreeSpec spec{60, 9, false};
  TreeSpec back = tree_spec_from_json(tree_spec_json(spec));
  EXPECT_EQ(back.k, 60u);
  EXPECT_EQ(back.seed, 9u);
  EXPECT_FALSE(back.permissive);
  EXPECT_THROW(tree_spec_from_json(Json::parse(R"({"type":"balanced_value_tree","k":-1})")), LoadError);
}

TEST(JsonIo, QueryLogLines) {
  std::vector<ExactValuationPtr> vs{std::make_shared<PiecewiseConstantValuation>(PiecewiseConstantValuation::uniform())};
  ExactReferee ref(vs);
  ref.eval(0, q("1/3"), q("1/2"));
  ref.cut(0, q("3/4"), q("1/2"));
  std::ostringstream out;
  write_query_log(out, ref.log());
  std::istringstream lines(out.str());
  std::string first;
  std::string second;
  std::getline(lines, first);
  std::getline(lines, second);
  EXPECT_EQ(Json::parse(first)["answer"], "1/6");
  EXPECT_TRUE(Json::parse(second)["answer"].is_null());
  EXPECT_EQ(Json::parse(second)["mass"], "1/2");
}

TEST(JsonIo, TranscriptAndRefutation) {
  AdversarySession s(TreeParams(20));
  s.answer_eval(0, q("1/2"));
  s.answer_cut(q("1/3"), Real(1) / 5);
  std::ostringstream out;
  write_transcript(out, s);
  std::istringstream lines(out.str());
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    Json doc = Json::parse(line);
    EXPECT_TRUE(doc.contains("reveals"));
    EXPECT_TRUE(doc.contains("max_revealed_heavy"));
    ++count;
  }
  EXPECT_EQ(count, 2);
  Json cannot = refutation_json(CannotRefute{"over threshold"});
  EXPECT_FALSE(cannot["refuted"].get<bool>());
}
