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

// Lerch transcendent Phi(z, 1, v) = sum_{n>=0} z^n / (v + n) for |z| < 1.
//
// Only the s = 1 member of the family is provided; it is the only one the
// S-distribution quantile needs. For z > 0.999 the direct series is slow and
// the summation switches to an Aitken-extrapolated stopping rule.

#ifndef SDIST_LERCH_HPP_
#define SDIST_LERCH_HPP_

namespace sdist {

struct LerchArgs {
  double z = 0.0;
  double v = 1.0;
  double tol = 1e-12;  // relative truncation tolerance
};

struct LerchSum {
  double value = 0.0;
  long terms = 0;      // number of series terms summed
  bool accelerated = false;
};

// Shift used by the recurrence when v is negative or close to a pole:
// max(100, ceil(1 - v)), so that m + v > 0.
int default_lerch_shift(double v);

// Series value together with the number of terms it took. Throws
// std::invalid_argument when |z| >= 1, tol <= 0 or v is within 1e-12 of a
// nonpositive integer.
LerchSum lerch_sum(const LerchArgs& args);

double lerch_phi(const LerchArgs& args);

// Phi(z, 1, v) = z^m Phi(z, 1, m + v) + sum_{i<m} z^i / (v + i).
// z is taken already exponentiated. Throws std::invalid_argument if some
// |v + i| < 1e-12 for i in [0, m), if m < 1 or if |z| >= 1.
double lerch_phi_shifted(double z, double v, int m);

}  // namespace sdist

#endif  // SDIST_LERCH_HPP_
