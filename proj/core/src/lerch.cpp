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

#include "sdist/lerch.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sdist {
namespace {

constexpr double kPoleTolerance = 1e-12;
constexpr double kAcceleratedFrom = 0.999;
constexpr long kMaxTerms = 50'000'000;

bool near_nonpositive_integer(double v) {
  if (v > kPoleTolerance) return false;
  return std::abs(v - std::round(v)) < kPoleTolerance;
}

void check_z(double z) {
  if (!(std::abs(z) < 1.0)) {
    throw std::invalid_argument("lerch: |z| must be < 1, got z=" +
                                std::to_string(z));
  }
}

}  // namespace

int default_lerch_shift(double v) {
  const double need = std::ceil(1.0 - v);
  return need > 100.0 ? static_cast<int>(need) : 100;
}

LerchSum lerch_sum(const LerchArgs& args) {
  const double z = args.z;
  const double v = args.v;
  check_z(z);
  if (!(args.tol > 0.0)) {
    throw std::invalid_argument("lerch: tol must be positive");
  }
  if (near_nonpositive_integer(v)) {
    throw std::invalid_argument(
        "lerch: v is a nonpositive integer (degenerate parameters), v=" +
        std::to_string(v));
  }

  LerchSum out;
  if (z == 0.0) {
    out.value = 1.0 / v;
    out.terms = 1;
    return out;
  }

  const double az = std::abs(z);
  const double tail_factor = az / (1.0 - az);
  const bool accelerate = z > kAcceleratedFrom;
  const double one_minus_z = 1.0 - z;
  // Terms are only monotone in magnitude once v + n > 0.
  const long monotone_from =
      v > 0.0 ? 0 : static_cast<long>(std::ceil(-v)) + 1;

  double sum = 0.0;
  double comp = 0.0;  // Kahan compensation
  double zn = 1.0;
  double prev_term = 0.0;
  for (long n = 0; n < kMaxTerms; ++n) {
    const double term = zn / (v + static_cast<double>(n));
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    out.terms = n + 1;

    if (n >= monotone_from) {
      const double bound = args.tol * std::abs(sum);
      const double aterm = std::abs(term);
      if (aterm <= bound && aterm * tail_factor <= bound) {
        out.value = sum;
        return out;
      }
      if (accelerate && n > monotone_from + 2 && prev_term != 0.0) {
        // Aitken delta-squared on the last three partial sums. The first
        // order error of the geometric tail cancels; what is left is
        // O(t_n z / ((1-z)^3 (n+v)^2)).
        const double ratio = term / prev_term;
        const double extrapolated = sum + term * ratio / (1.0 - ratio);
        const double nv = v + static_cast<double>(n);
        const double residual = 10.0 * aterm * z /
                                (one_minus_z * one_minus_z * one_minus_z *
                                 nv * nv);
        if (residual <= args.tol * std::abs(extrapolated)) {
          out.value = extrapolated;
          out.accelerated = true;
          return out;
        }
      }
    }
    prev_term = term;
    zn *= z;
  }
  out.value = sum;
  return out;
}

double lerch_phi(const LerchArgs& args) { return lerch_sum(args).value; }

double lerch_phi_shifted(double z, double v, int m) {
  check_z(z);
  if (m < 1) throw std::invalid_argument("lerch: shift m must be >= 1");
  double head = 0.0;
  double zi = 1.0;
  for (int i = 0; i < m; ++i) {
    const double denom = v + static_cast<double>(i);
    if (std::abs(denom) < kPoleTolerance) {
      throw std::invalid_argument(
          "lerch: v + i vanishes for i=" + std::to_string(i) +
          "; use the nongeneric solution");
    }
    head += zi / denom;
    zi *= z;
  }
  // zi == z^m here.
  if (zi == 0.0) return head;
  return head + zi * lerch_phi({z, v + static_cast<double>(m), 1e-14});
}

}  // namespace sdist
