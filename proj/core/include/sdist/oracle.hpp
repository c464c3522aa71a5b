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

// Numerical reference for the quantile: classical fourth-order Runge-Kutta
// integration of dX/dF = 1 / (alpha (F^g - F^h)), X(f0) = x0, on a uniform
// F grid. Deliberately shares no code with the closed-form evaluation.

#ifndef SDIST_ORACLE_HPP_
#define SDIST_ORACLE_HPP_

#include <span>
#include <vector>

#include "sdist/params.hpp"

namespace sdist {

struct OdeConfig {
  // Steps across [f_floor, f_ceil]; the grid spacing is
  // (f_ceil - f_floor) / step_count.
  long step_count = 100'000;
  double f_floor = 1e-6;
  double f_ceil = 1.0 - 1e-6;
};

/// Throws std::invalid_argument unless 0 < f_floor < f0 < f_ceil < 1 and
/// step_count >= 100.
void validate(const OdeConfig& cfg, double f0);

/// X(F) by integration from (f0, x0). F must lie in [f_floor, f_ceil].
double oracle_quantile(const SParams& p, double F, const OdeConfig& cfg = {});

/// Same as oracle_quantile for each level, sharing one sweep outward from
/// f0 in each direction. Results are in the order of `levels`.
std::vector<double> oracle_quantiles(const SParams& p,
                                     std::span<const double> levels,
                                     const OdeConfig& cfg = {});

/// I(f_from -> f_to) (see distribution.hpp) for levels close to 1, computed
/// by RK4 in w = -ln(1 - F^gamma). In that variable the integrand is
/// (1 - e^-w)^((1 - h)/gamma) / gamma, smooth and bounded, so the
/// logarithmic singularity at F = 1 costs nothing. Intended for
/// F^gamma >= 0.5; f_to may not be 1.
double upper_tail_integral(double g, double h, double f_from, double f_to);

}  // namespace sdist

#endif  // SDIST_ORACLE_HPP_
