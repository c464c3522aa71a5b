// Copyright 2026 The sdist Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sdist/serialize.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "sdist/distribution.hpp"

namespace sdist {
namespace {

using nlohmann::json;

constexpr double kInf = std::numeric_limits<double>::infinity();

TEST(FormatReal, TenSignificantDigits) {
  EXPECT_EQ(format_real(7.22110019484251387), "7.221100195");
  EXPECT_EQ(format_real(10), "10");
  EXPECT_EQ(format_real(-0.125), "-0.125");
  EXPECT_EQ(format_real(1e-20), "1e-20");
  EXPECT_EQ(format_real(kInf), "+inf");
  EXPECT_EQ(format_real(-kInf), "-inf");
  EXPECT_EQ(format_real(std::nan("")), "nan");
}

TEST(RealJson, InfinitiesAsStrings) {
  EXPECT_EQ(real_to_json(kInf), "+inf");
  EXPECT_EQ(real_to_json(-kInf), "-inf");
  EXPECT_EQ(real_to_json(2.5), 2.5);
  EXPECT_EQ(real_from_json(json("+inf")), kInf);
  EXPECT_EQ(real_from_json(json("inf")), kInf);
  EXPECT_EQ(real_from_json(json("-inf")), -kInf);
  EXPECT_EQ(real_from_json(json(3)), 3.0);
  EXPECT_THROW(real_from_json(json("big")), std::invalid_argument);
  EXPECT_THROW(real_from_json(json::array()), std::invalid_argument);
}

TEST(ParamsJson, RoundTripAtFullPrecision) {
  const SParams p(0.3, 0.1 + 0.2, 1.0 / 3.0, -0.7, std::sqrt(2.0));
  EXPECT_EQ(params_from_json(json::parse(to_json(p).dump())), p);
}

TEST(ParamsJson, DefaultsAndNesting) {
  const json j = {{"x0", 1}, {"alpha", 2}, {"g", 0.5}, {"h", 3}};
  EXPECT_EQ(params_from_json(j), SParams(0.5, 1, 2, 0.5, 3));
  EXPECT_EQ(params_from_json(json{{"params", j}, {"stage1", json::object()}}),
            SParams(0.5, 1, 2, 0.5, 3));
}

TEST(ParamsJson, Rejections) {
  EXPECT_THROW(params_from_json(json::array()), std::invalid_argument);
  EXPECT_THROW(params_from_json(json{{"x0", 1}, {"alpha", 2}, {"g", 0.5}}),
               std::invalid_argument);
  EXPECT_THROW(
      params_from_json(json{{"x0", 1}, {"alpha", -2}, {"g", 0.5}, {"h", 3}}),
      std::invalid_argument);
}

TEST(CaseJson, Fields) {
  EXPECT_EQ(to_json(classify(2, 3)),
            (json{{"case", "VI"}, {"generic", false}, {"degeneracy_index", 1}}));
  EXPECT_TRUE(to_json(classify(0.7, 3))["degeneracy_index"].is_null());
}

TEST(SupportJson, Fields) {
  const json j = to_json(support(SParams(0.5, 100, 0.2, 1, 3)));
  EXPECT_EQ(j["left"], "-inf");
  EXPECT_EQ(j["right"], "+inf");
  EXPECT_EQ(j["left_slope"], to_string(LeftSlope::NotApplicable));
}

TEST(FitJson, OptionalRefineBlock) {
  FitResult r;
  EXPECT_FALSE(to_json(r).contains("refine"));
  r.refine = RefineResult{};
  r.refine->accepted = true;
  const json j = to_json(r);
  EXPECT_TRUE(j["refine"]["accepted"].get<bool>());
  EXPECT_EQ(params_from_json(j), r.params);
}

}  // namespace
}  // namespace sdist
