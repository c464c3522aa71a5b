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

// Constrained design: fix all parameters but one and solve for the last so
// that the distribution has a prescribed quantile, X(f_star) = x_star.
// With f_star = 0 this pins the zero quantile of a g < 1 distribution, i.e.
// P(X <= x_star) = 0.

#ifndef SDIST_DESIGNER_HPP_
#define SDIST_DESIGNER_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

#include "sdist/params.hpp"

namespace sdist {

struct QuantileConstraint {
  double f_star = 0.0;  // in [0, 1)
  double x_star = 0.0;
};

/// Thrown when no parameter value can satisfy the constraint.
class DesignError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// x0 = x_star - I(f0 -> f_star) / alpha. Closed form.
double solve_x0(const QuantileConstraint& c, double f0, double alpha,
                double g, double h);

/// alpha = I(f0 -> f_star) / (x_star - x0). Closed form; uses the exact
/// 1/alpha scaling of every centred quantile.
double solve_alpha(const QuantileConstraint& c, double f0, double x0,
                   double g, double h);

enum class ShapeParam { G, H };

std::string_view to_string(ShapeParam which);

struct ShapeSolution {
  double value = 0.0;
  int sign_changes = 0;         // found by the bracket scan
  bool multiple_roots = false;  // sign_changes > 1
  double scan_lo = 0.0;
  double scan_hi = 0.0;
};

/// Solves X(f_star) = x_star for g (other_shape is h) or for h (other_shape
/// is g). Scans a 200-point grid for sign changes of the residual, then
/// polishes the bracket nearest the scan midpoint with Brent's method.
ShapeSolution solve_shape(ShapeParam which, const QuantileConstraint& c,
                          double f0, double x0, double alpha,
                          double other_shape);

}  // namespace sdist

#endif  // SDIST_DESIGNER_HPP_
