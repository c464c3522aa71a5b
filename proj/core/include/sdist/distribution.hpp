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

// Closed-form evaluation of the S-distribution.
//
// The quantile is X(F) = x0 + I(f0 -> F) / alpha with
//
//   I(a -> b) = integral_a^b dxi / (xi^g (1 - xi^gamma)).
//
// Expanding 1 / (1 - xi^gamma) and integrating term by term gives, off the
// degeneracy lines, a Lerch-transcendent closed form; on the lines g = 1 and
// k gamma - g + 1 = 0 one term turns into a logarithm. Everything in this
// header is a pure function of its arguments.

#ifndef SDIST_DISTRIBUTION_HPP_
#define SDIST_DISTRIBUTION_HPP_

#include <optional>
#include <string_view>

#include "sdist/params.hpp"

namespace sdist {

// The Lerch series is used up to a level of F^gamma between these two
// bounds; the remaining stretch towards F = 1 is integrated numerically.
// The switch sits at the lowest level where the tail integrand is flat,
// which is kTailSwitchMin for ordinary shapes.
inline constexpr double kTailSwitchMin = 0.99;
inline constexpr double kUpperTailZ = 0.9999;
// Lines closer than this in |k gamma - g + 1| (but not exact hits) are
// evaluated through the shifted Lerch recurrence.
inline constexpr double kNearDegeneracy = 1e-6;
inline constexpr double kCdfTolerance = 1e-12;
inline constexpr double kCdfEpsilon = 1e-15;

/// Classifies (g, h). Throws std::invalid_argument when h <= g or
/// deg_tol <= 0.
CaseClass classify(double g, double h,
                   double deg_tol = kDegeneracyTolerance);
CaseClass classify(const SParams& p);

/// How a quantile value was produced.
enum class QuantileRoute {
  Boundary,        // F in {0, 1}, or F == f0
  Generic,         // direct Lerch series
  GenericShifted,  // Lerch shift recurrence (2g > h + 1 or near a line)
  CaseV,           // g = 1 closed form
  CaseVI,          // logarithmic k-th degeneracy series
  UpperTailOde,    // F^gamma past the switch, numerical tail integration
};

std::string_view to_string(QuantileRoute route);

struct QuantileEval {
  double value = 0.0;
  QuantileRoute route = QuantileRoute::Boundary;
  // Set when the closed form could not be used all the way to F and part
  // of the value came from the numerical tail integrator.
  bool precision_fallback = false;
};

/// I(f_from -> f_to) for shape (g, h); may be +-inf at the endpoints 0
/// and 1. Both cumulative levels must lie in [0, 1].
double shape_integral(double g, double h, double f_from, double f_to);

/// Quantile X(F) for F in [0, 1]; -inf at F = 0 for g >= 1, +inf at F = 1.
/// Throws std::invalid_argument for F outside [0, 1].
double quantile(const SParams& p, double F);
QuantileEval quantile_detailed(const SParams& p, double F);

/// Finite zero quantile X(0) when g < 1, -inf otherwise.
double left_endpoint(const SParams& p);
Support support(const SParams& p);

/// Cumulative F(x) by safeguarded Newton iteration on the quantile.
double cdf(const SParams& p, double x, double tol = kCdfTolerance);

/// alpha (F^g - F^h) with F = cdf(p, x); 0 outside the support.
double pdf(const SParams& p, double x);

/// alpha (F^g - F^h), with the limits at F = 0 (0, alpha or +inf by the
/// sign of g) and F = 1 (0).
double pdf_at_F(const SParams& p, double F);

/// Cumulative level of the density maximum, (g/h)^(1/(h-g)), when the
/// density has an interior mode (0 < g < h); empty otherwise.
std::optional<double> mode_cumulative(const SParams& p);

}  // namespace sdist

#endif  // SDIST_DISTRIBUTION_HPP_
