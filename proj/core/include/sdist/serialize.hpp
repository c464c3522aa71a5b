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

// JSON and text forms shared by the library and the command-line tool.
// Extended reals are written as the strings "-inf" / "+inf".

#ifndef SDIST_SERIALIZE_HPP_
#define SDIST_SERIALIZE_HPP_

#include <string>

#include <nlohmann/json.hpp>

#include "sdist/fitter.hpp"
#include "sdist/params.hpp"

namespace sdist {

/// 10 significant digits ("%.10g"), or "-inf" / "+inf" / "nan".
std::string format_real(double x);

/// A number, or the string "-inf" / "+inf" for infinities.
nlohmann::json real_to_json(double x);
/// Accepts numbers and the strings "-inf", "+inf", "inf".
double real_from_json(const nlohmann::json& j);

/// {"f0":…, "x0":…, "alpha":…, "g":…, "h":…}
nlohmann::json to_json(const SParams& p);

/// Reads a parameter object. Also accepts an object carrying it under a
/// "params" key (the fit output). f0 defaults to 0.5. Throws
/// std::invalid_argument on missing fields or invalid values.
SParams params_from_json(const nlohmann::json& j);

nlohmann::json to_json(const CaseClass& c);
nlohmann::json to_json(const Support& s);
nlohmann::json to_json(const FitResult& r);

}  // namespace sdist

#endif  // SDIST_SERIALIZE_HPP_
