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

// Inverse-transform sampling through the closed-form quantile.

#ifndef SDIST_SAMPLER_HPP_
#define SDIST_SAMPLER_HPP_

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "sdist/params.hpp"

namespace sdist {

inline constexpr std::string_view kGeneratorId = "mt19937_64/seed_seq";
// Uniform draws are clamped to [eps, 1 - eps] so no draw maps to +-inf.
inline constexpr double kUniformClamp = 1e-15;

struct SampleRequest {
  SParams params;
  std::size_t n = 1;
  std::uint64_t seed = 0;
};

/// Owns one generator stream. Not thread safe; independent streams for
/// parallel generation come from distinct (seed, stream) pairs.
class Sampler {
 public:
  Sampler(SParams params, std::uint64_t seed, std::uint64_t stream = 0);

  /// Next uniform in [kUniformClamp, 1 - kUniformClamp]. The mapping from
  /// raw generator output is fixed, so streams are bit-reproducible.
  double next_uniform();
  double next();
  std::vector<double> draw(std::size_t n);

  const SParams& params() const { return params_; }

 private:
  SParams params_;
  std::mt19937_64 engine_;
};

/// x_i = quantile(params, u_i), i = 1..n, in draw order.
/// Throws std::invalid_argument when n == 0.
std::vector<double> sample(const SampleRequest& request);

/// Piecewise cubic Hermite interpolant of the quantile for bulk sampling.
///
/// Knots are uniform in t = ln(F / (1 - F)) over [-t_max, t_max] and carry
/// the exact slope dX/dt = F (1 - F) / pdf_at_F, so the interpolant is C1
/// and monotone wherever the cubic is. Levels outside the knot range fall
/// back to the exact quantile. max_error_F() is measured at build time at
/// every interval midpoint as |F(table(u)) - u| (to first order in the
/// quantile error); for the parameter sets in the test suite it is below
/// 1e-8 with the default 1024 knots.
class QuantileTable {
 public:
  static QuantileTable build(const SParams& params, std::size_t knots = 1024,
                             double t_max = 12.0);

  double operator()(double u) const;
  double max_error_F() const { return max_error_F_; }
  std::size_t knots() const { return t_.size(); }

 private:
  explicit QuantileTable(SParams params) : params_(params) {}

  SParams params_;
  std::vector<double> t_;
  std::vector<double> x_;
  std::vector<double> slope_;  // dX/dt
  double t_lo_ = 0.0;
  double t_step_ = 0.0;
  double max_error_F_ = 0.0;
};

}  // namespace sdist

#endif  // SDIST_SAMPLER_HPP_
