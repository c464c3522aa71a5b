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

#include "sdist/params.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sdist {

SParams::SParams(double f0, double x0, double alpha, double g, double h)
    : f0_(f0), x0_(x0), alpha_(alpha), g_(g), h_(h) {
  std::ostringstream err;
  if (!std::isfinite(f0) || !std::isfinite(x0) || !std::isfinite(alpha) ||
      !std::isfinite(g) || !std::isfinite(h)) {
    err << "parameters must be finite";
  } else if (!(f0 > 0.0 && f0 < 1.0)) {
    err << "f0 must lie in (0, 1), got " << f0;
  } else if (!(alpha > 0.0)) {
    err << "alpha must be positive, got " << alpha;
  } else if (!(h > g)) {
    err << "h must exceed g, got g=" << g << " h=" << h;
  }
  const std::string msg = err.str();
  if (!msg.empty()) throw std::invalid_argument(msg);
}

std::string_view to_string(CaseVariant variant) {
  switch (variant) {
    case CaseVariant::I: return "I";
    case CaseVariant::II: return "II";
    case CaseVariant::III: return "III";
    case CaseVariant::IV: return "IV";
    case CaseVariant::V: return "V";
    case CaseVariant::VI: return "VI";
  }
  return "?";
}

std::string_view to_string(LeftSlope slope) {
  switch (slope) {
    case LeftSlope::Zero: return "zero";
    case LeftSlope::Alpha: return "alpha";
    case LeftSlope::Infinite: return "infinite";
    case LeftSlope::NotApplicable: return "not-applicable";
  }
  return "?";
}

}  // namespace sdist
