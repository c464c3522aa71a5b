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

#ifndef SDIST_PARAMS_HPP_
#define SDIST_PARAMS_HPP_

#include <optional>
#include <string>
#include <string_view>

namespace sdist {

inline constexpr double kDefaultF0 = 0.5;
inline constexpr double kDegeneracyTolerance = 1e-9;

/// Parameters of S[f0, x0, alpha, g, h], the distribution defined by
/// dF/dX = alpha (F^g - F^h) with F(x0) = f0.
///
/// Immutable value type. Construction validates alpha > 0, h > g and
/// 0 < f0 < 1 and throws std::invalid_argument otherwise.
class SParams {
 public:
  SParams(double f0, double x0, double alpha, double g, double h);

  double f0() const { return f0_; }
  double x0() const { return x0_; }
  double alpha() const { return alpha_; }
  double g() const { return g_; }
  double h() const { return h_; }

  /// h - g, always positive.
  double gamma() const { return h_ - g_; }
  /// 1 - g.
  double lambda() const { return 1.0 - g_; }

  SParams with_x0(double x0) const { return {f0_, x0, alpha_, g_, h_}; }
  SParams with_alpha(double alpha) const { return {f0_, x0_, alpha, g_, h_}; }
  SParams with_shapes(double g, double h) const {
    return {f0_, x0_, alpha_, g, h};
  }

  friend bool operator==(const SParams&, const SParams&) = default;

 private:
  double f0_;
  double x0_;
  double alpha_;
  double g_;
  double h_;
};

/// Regions of the (g, h) half plane. I-IV are generic and differ in the
/// left tail; V (g = 1) and VI (k-th degeneracy line, k >= 1) are the
/// nongeneric solutions with a logarithmic term.
enum class CaseVariant { I, II, III, IV, V, VI };

struct CaseClass {
  CaseVariant variant = CaseVariant::I;
  // Degeneracy index: 0 for V, N >= 1 for VI, empty otherwise.
  std::optional<int> degeneracy_index;

  bool generic() const {
    return variant != CaseVariant::V && variant != CaseVariant::VI;
  }
  friend bool operator==(const CaseClass&, const CaseClass&) = default;
};

std::string_view to_string(CaseVariant variant);

enum class LeftSlope { Zero, Alpha, Infinite, NotApplicable };

std::string_view to_string(LeftSlope slope);

struct Support {
  double left = 0.0;   // finite or -inf
  double right = 0.0;  // always +inf
  LeftSlope left_slope = LeftSlope::NotApplicable;
};

}  // namespace sdist

#endif  // SDIST_PARAMS_HPP_
