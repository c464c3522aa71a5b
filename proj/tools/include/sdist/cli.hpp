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

// Command-line front end. `run` is the whole program minus process setup,
// so tests can drive it with in-memory streams.

#ifndef SDIST_CLI_HPP_
#define SDIST_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace sdist::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command. `args` excludes the program name. `in` is read only by
/// `fit` when no --input is given.
int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err);

}  // namespace sdist::cli

#endif  // SDIST_CLI_HPP_
