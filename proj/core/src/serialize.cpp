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

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace sdist {

using nlohmann::json;

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "+inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

json real_to_json(double x) {
  if (std::isinf(x)) return x > 0 ? "+inf" : "-inf";
  return x;
}

double real_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "+inf" || s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  throw std::invalid_argument("expected a number, got " + j.dump());
}

json to_json(const SParams& p) {
  return {{"f0", p.f0()},
          {"x0", p.x0()},
          {"alpha", p.alpha()},
          {"g", p.g()},
          {"h", p.h()}};
}

SParams params_from_json(const json& j) {
  if (!j.is_object()) {
    throw std::invalid_argument("parameters must be a JSON object");
  }
  if (j.contains("params")) return params_from_json(j.at("params"));
  auto field = [&j](const char* name) {
    if (!j.contains(name)) {
      throw std::invalid_argument(std::string("missing parameter \"") + name +
                                  "\"");
    }
    return real_from_json(j.at(name));
  };
  const double f0 = j.contains("f0") ? field("f0") : kDefaultF0;
  return SParams(f0, field("x0"), field("alpha"), field("g"), field("h"));
}

json to_json(const CaseClass& c) {
  json out = {{"case", std::string(to_string(c.variant))},
              {"generic", c.generic()}};
  out["degeneracy_index"] =
      c.degeneracy_index ? json(*c.degeneracy_index) : json(nullptr);
  return out;
}

json to_json(const Support& s) {
  return {{"left", real_to_json(s.left)},
          {"right", real_to_json(s.right)},
          {"left_slope", std::string(to_string(s.left_slope))}};
}

json to_json(const FitResult& r) {
  json out;
  out["params"] = to_json(r.params);
  out["stage1"] = {{"alpha", r.stage1.alpha},
                   {"g", r.stage1.g},
                   {"h", r.stage1.h},
                   {"residual_ss", r.stage1.residual_ss},
                   {"converged", r.stage1.converged}};
  out["stage2"] = {{"alpha", r.stage2.alpha},
                   {"x0", r.stage2.x0},
                   {"residual_ss", r.stage2.residual_ss},
                   {"iterations", r.stage2.iterations},
                   {"converged", r.stage2.converged}};
  if (r.refine) {
    out["refine"] = {{"alpha", r.refine->alpha},
                     {"x0", r.refine->x0},
                     {"g", r.refine->g},
                     {"h", r.refine->h},
                     {"residual_ss", r.refine->residual_ss},
                     {"iterations", r.refine->iterations},
                     {"converged", r.refine->converged},
                     {"accepted", r.refine->accepted}};
  }
  return out;
}

}  // namespace sdist
