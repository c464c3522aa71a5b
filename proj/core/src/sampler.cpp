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

#include "sdist/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sdist/distribution.hpp"

namespace sdist {
namespace {

std::seed_seq make_seed_seq(std::uint64_t seed, std::uint64_t stream) {
  return std::seed_seq{
      static_cast<std::uint32_t>(seed & 0xffffffffu),
      static_cast<std::uint32_t>(seed >> 32),
      static_cast<std::uint32_t>(stream & 0xffffffffu),
      static_cast<std::uint32_t>(stream >> 32),
  };
}

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream) {
  auto seq = make_seed_seq(seed, stream);
  return std::mt19937_64(seq);
}

double logistic(double t) { return 1.0 / (1.0 + std::exp(-t)); }

}  // namespace

Sampler::Sampler(SParams params, std::uint64_t seed, std::uint64_t stream)
    : params_(params), engine_(make_engine(seed, stream)) {}

double Sampler::next_uniform() {
  // Top 53 bits, centred in their cell: never exactly 0 or 1.
  const std::uint64_t bits = engine_() >> 11;
  const double u = (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
  return std::clamp(u, kUniformClamp, 1.0 - kUniformClamp);
}

double Sampler::next() { return quantile(params_, next_uniform()); }

std::vector<double> Sampler::draw(std::size_t n) {
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(next());
  return out;
}

std::vector<double> sample(const SampleRequest& request) {
  if (request.n == 0) throw std::invalid_argument("sample: n must be >= 1");
  Sampler sampler(request.params, request.seed);
  return sampler.draw(request.n);
}

QuantileTable QuantileTable::build(const SParams& params, std::size_t knots,
                                   double t_max) {
  if (knots < 4) throw std::invalid_argument("quantile table: knots < 4");
  if (!(t_max > 0.0)) throw std::invalid_argument("quantile table: t_max");
  QuantileTable table(params);
  table.t_lo_ = -t_max;
  table.t_step_ = 2.0 * t_max / static_cast<double>(knots - 1);
  table.t_.resize(knots);
  table.x_.resize(knots);
  table.slope_.resize(knots);
  for (std::size_t i = 0; i < knots; ++i) {
    const double t = table.t_lo_ + table.t_step_ * static_cast<double>(i);
    const double F = logistic(t);
    table.t_[i] = t;
    table.x_[i] = quantile(params, F);
    table.slope_[i] = F * (1.0 - F) / pdf_at_F(params, F);
  }
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < knots; ++i) {
    const double u = logistic(table.t_[i] + 0.5 * table.t_step_);
    const double err = std::abs(table(u) - quantile(params, u));
    worst = std::max(worst, err * pdf_at_F(params, u));
  }
  table.max_error_F_ = worst;
  return table;
}

double QuantileTable::operator()(double u) const {
  if (!(u > 0.0 && u < 1.0)) return quantile(params_, u);
  const double t = std::log(u) - std::log1p(-u);
  const double pos = (t - t_lo_) / t_step_;
  if (!(pos >= 0.0) || pos >= static_cast<double>(t_.size() - 1)) {
    return quantile(params_, u);
  }
  const auto i = static_cast<std::size_t>(pos);
  const double s = pos - static_cast<double>(i);
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
  const double h10 = s3 - 2.0 * s2 + s;
  const double h01 = -2.0 * s3 + 3.0 * s2;
  const double h11 = s3 - s2;
  return h00 * x_[i] + h10 * t_step_ * slope_[i] + h01 * x_[i + 1] +
         h11 * t_step_ * slope_[i + 1];
}

}  // namespace sdist
