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

#include "sdist/oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "reference.hpp"
#include "sdist/distribution.hpp"

namespace sdist {
namespace {

const SParams kNormalLike(0.5, 10, 1, 0.7, 3);

TEST(Oracle, InitialLevelIsInitialValue) {
  EXPECT_EQ(oracle_quantile(kNormalLike, 0.5), 10);
}

TEST(Oracle, ApproachesZeroQuantileFromAbove) {
  OdeConfig cfg;
  cfg.step_count = 1'000'000;
  double prev = oracle_quantile(kNormalLike, 0.001, cfg);
  EXPECT_GT(prev, 7.2211);
  for (double F : {1e-4, 1e-5, 1e-6}) {
    const double x = oracle_quantile(kNormalLike, F, cfg);
    EXPECT_LT(x, prev);
    EXPECT_GT(x, 7.2211);
    prev = x;
  }
  EXPECT_LT(prev - 7.2211, 0.06);
}

TEST(Oracle, MatchesCaseVClosedForm) {
  const SParams p(0.5, 100, 0.2, 1, 3);
  EXPECT_NEAR(oracle_quantile(p, 0.9), quantile(p, 0.9), 1e-8);
}

TEST(Oracle, FourthOrderConvergence) {
  const SParams p(0.5, 0, 1, 1.5, 4);
  const double exact = quantile(p, 0.9);
  OdeConfig coarse;
  coarse.step_count = 100;
  OdeConfig fine;
  fine.step_count = 200;
  const double e1 = std::abs(oracle_quantile(p, 0.9, coarse) - exact);
  const double e2 = std::abs(oracle_quantile(p, 0.9, fine) - exact);
  EXPECT_GT(e1 / e2, 12.0);
  EXPECT_LT(e1 / e2, 20.0);
}

TEST(Oracle, AgreesWithClosedFormAcrossCases) {
  const SParams sets[] = {
      {0.5, 10, 1, 0.7, 3},   {0.5, 100, 0.2, 1, 3}, {0.5, 100, 0.2, 1.5, 4},
      {0.5, 0, 2, -0.5, 2},   {0.5, 5, 1, 0, 3},     {0.5, 0, 1, 2, 3},
      {0.5, 0, 1, 2.5, 3},    {0.5, 0, 1, 2.2, 2.7}, {0.2, 3, 0.5, 0.4, 5},
      {0.7, -4, 3, 0.1, 8},
  };
  std::vector<double> levels;
  for (int i = 1; i < 100; ++i) levels.push_back(i / 100.0);
  for (const auto& p : sets) {
    const auto ode = oracle_quantiles(p, levels);
    for (std::size_t i = 0; i < levels.size(); ++i) {
      const double x = quantile(p, levels[i]);
      EXPECT_NEAR(ode[i], x, 1e-6 * (1 + std::abs(x)))
          << "g=" << p.g() << " h=" << p.h() << " F=" << levels[i];
    }
  }
}

TEST(Oracle, BatchKeepsRequestOrder) {
  const std::vector<double> levels = {0.9, 0.1, 0.5, 0.3, 0.7};
  const auto batch = oracle_quantiles(kNormalLike, levels);
  for (std::size_t i = 0; i < levels.size(); ++i) {
    EXPECT_NEAR(batch[i], oracle_quantile(kNormalLike, levels[i]), 1e-12);
  }
  EXPECT_LT(batch[1], batch[3]);
  EXPECT_LT(batch[3], batch[2]);
}

TEST(Oracle, ConfigValidation) {
  OdeConfig cfg;
  EXPECT_NO_THROW(validate(cfg, 0.5));
  cfg.step_count = 99;
  EXPECT_THROW(validate(cfg, 0.5), std::invalid_argument);
  cfg = {};
  cfg.f_floor = 0;
  EXPECT_THROW(validate(cfg, 0.5), std::invalid_argument);
  cfg = {};
  cfg.f_ceil = 1;
  EXPECT_THROW(validate(cfg, 0.5), std::invalid_argument);
  cfg = {};
  cfg.f_floor = 0.6;
  EXPECT_THROW(validate(cfg, 0.5), std::invalid_argument);
  EXPECT_THROW(oracle_quantile(kNormalLike, 1e-7), std::invalid_argument);
  EXPECT_THROW(oracle_quantile(kNormalLike, 1 - 1e-7), std::invalid_argument);
}

TEST(UpperTail, AgreesWithQuadrature) {
  for (const auto& [g, h] : std::vector<std::pair<double, double>>{
           {0.7, 3}, {1.5, 4}, {-0.5, 2}, {2, 3}, {0.5, 0.502}, {5, 6}}) {
    const double gamma = h - g;
    const double a = std::pow(0.99, 1 / gamma);
    for (double b : {0.999, 0.999999}) {
      const double ref = testing::quad_shape_integral(g, h, a, b);
      EXPECT_NEAR(upper_tail_integral(g, h, a, b), ref, 1e-10 * std::abs(ref))
          << "g=" << g << " h=" << h << " b=" << b;
    }
  }
}

TEST(UpperTail, ExactAntiderivativesDeepInTail) {
  const double b = 1 - 1e-10;
  // g = 2, h = 3: -1/x + ln x - ln(1 - x).
  auto vi = [](double x) { return -1 / x + std::log(x) - std::log1p(-x); };
  EXPECT_NEAR(upper_tail_integral(2, 3, 0.99, b), vi(b) - vi(0.99), 1e-11);
  // g = 0, h = 1: -ln(1 - x).
  EXPECT_NEAR(upper_tail_integral(0, 1, 0.99, b),
              std::log1p(-0.99) - std::log1p(-b), 1e-12);
}

TEST(UpperTail, SignFollowsDirection) {
  const double up = upper_tail_integral(0.7, 3, 0.99, 0.9999);
  EXPECT_GT(up, 0);
  EXPECT_NEAR(upper_tail_integral(0.7, 3, 0.9999, 0.99), -up, 1e-15 * up);
  EXPECT_THROW(upper_tail_integral(0.7, 3, 0.99, 1), std::invalid_argument);
  EXPECT_THROW(upper_tail_integral(3, 3, 0.9, 0.99), std::invalid_argument);
}

}  // namespace
}  // namespace sdist
