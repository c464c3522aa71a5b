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

#include "sdist/designer.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_roots.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>
#include <vector>

#include "sdist/distribution.hpp"

namespace sdist {
namespace {

constexpr int kScanPoints = 200;
constexpr double kRootTolerance = 1e-12;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_constraint(const QuantileConstraint& c) {
  if (!(c.f_star >= 0.0 && c.f_star < 1.0)) {
    std::ostringstream err;
    err << "constraint level must lie in [0, 1), got " << c.f_star;
    throw std::invalid_argument(err.str());
  }
  if (!std::isfinite(c.x_star)) {
    throw std::invalid_argument("constraint value must be finite");
  }
}

void check_shapes(double g, double h) {
  if (!(h > g)) {
    std::ostringstream err;
    err << "h must exceed g, got g=" << g << " h=" << h;
    throw std::invalid_argument(err.str());
  }
}

void check_f0(double f0) {
  if (!(f0 > 0.0 && f0 < 1.0)) {
    throw std::invalid_argument("f0 must lie in (0, 1)");
  }
}

void require_finite_left(const QuantileConstraint& c, double g, double h) {
  if (c.f_star != 0.0) return;
  const CaseVariant v = classify(g, h).variant;
  if (v == CaseVariant::I || v == CaseVariant::V || v == CaseVariant::VI) {
    std::ostringstream err;
    err << "X(0) constraint needs g < 1 (finite left endpoint), got g=" << g;
    throw DesignError(err.str());
  }
}

struct Residual {
  ShapeParam which;
  QuantileConstraint c;
  double f0;
  double x0;
  double alpha;
  double other;

  double operator()(double s) const {
    const double g = which == ShapeParam::G ? s : other;
    const double h = which == ShapeParam::G ? other : s;
    if (!(h > g)) return kNaN;
    return quantile(SParams(f0, x0, alpha, g, h), c.f_star) - c.x_star;
  }
};

double gsl_residual(double s, void* data) {
  return (*static_cast<const Residual*>(data))(s);
}

double sign_of(double r) { return r > 0.0 ? 1.0 : (r < 0.0 ? -1.0 : 0.0); }

// Brent on [lo, hi] with residuals of opposite sign. Infinite endpoint
// residuals are first bisected away.
double polish(const Residual& res, double lo, double hi) {
  double rlo = res(lo);
  double rhi = res(hi);
  for (int i = 0; i < 200 && (!std::isfinite(rlo) || !std::isfinite(rhi));
       ++i) {
    const double mid = 0.5 * (lo + hi);
    const double rmid = res(mid);
    if (rmid == 0.0) return mid;
    if (sign_of(rmid) == sign_of(rlo)) {
      lo = mid;
      rlo = rmid;
    } else {
      hi = mid;
      rhi = rmid;
    }
    if (hi - lo <= kRootTolerance) return 0.5 * (lo + hi);
  }

  gsl_set_error_handler_off();
  std::unique_ptr<gsl_root_fsolver, decltype(&gsl_root_fsolver_free)> solver(
      gsl_root_fsolver_alloc(gsl_root_fsolver_brent), &gsl_root_fsolver_free);
  gsl_function fn{&gsl_residual, const_cast<Residual*>(&res)};
  if (gsl_root_fsolver_set(solver.get(), &fn, lo, hi) != GSL_SUCCESS) {
    throw DesignError("shape solve: root bracket rejected");
  }
  double root = 0.5 * (lo + hi);
  for (int iter = 0; iter < 500; ++iter) {
    if (gsl_root_fsolver_iterate(solver.get()) != GSL_SUCCESS) break;
    root = gsl_root_fsolver_root(solver.get());
    const double a = gsl_root_fsolver_x_lower(solver.get());
    const double b = gsl_root_fsolver_x_upper(solver.get());
    if (gsl_root_test_interval(a, b, kRootTolerance, 0.0) == GSL_SUCCESS) {
      break;
    }
  }
  return root;
}

// Puts a solution that landed on a degeneracy line exactly on it.
double snap_to_line(ShapeParam which, double value, double other) {
  const double g = which == ShapeParam::G ? value : other;
  const double h = which == ShapeParam::G ? other : value;
  const CaseClass cls = classify(g, h);
  if (cls.variant == CaseVariant::V) {
    return which == ShapeParam::G ? 1.0 : value;
  }
  if (cls.variant == CaseVariant::VI) {
    const double n = *cls.degeneracy_index;
    if (which == ShapeParam::G) return (n * h + 1.0) / (n + 1.0);
    return g + (g - 1.0) / n;
  }
  return value;
}

}  // namespace

std::string_view to_string(ShapeParam which) {
  return which == ShapeParam::G ? "g" : "h";
}

double solve_x0(const QuantileConstraint& c, double f0, double alpha,
                double g, double h) {
  check_constraint(c);
  check_f0(f0);
  check_shapes(g, h);
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  require_finite_left(c, g, h);
  return c.x_star - shape_integral(g, h, f0, c.f_star) / alpha;
}

double solve_alpha(const QuantileConstraint& c, double f0, double x0,
                   double g, double h) {
  check_constraint(c);
  check_f0(f0);
  check_shapes(g, h);
  if (!std::isfinite(x0)) throw std::invalid_argument("x0 must be finite");
  require_finite_left(c, g, h);
  if (c.x_star == x0) {
    throw DesignError("alpha solve: x_star equals x0, no finite alpha");
  }
  if (c.f_star == f0) {
    throw DesignError("alpha solve: f_star equals f0, alpha is free");
  }
  const double integral = shape_integral(g, h, f0, c.f_star);
  const double alpha = integral / (c.x_star - x0);
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    std::ostringstream err;
    err << "alpha solve: x_star - x0 = " << (c.x_star - x0)
        << " has the wrong sign for f_star=" << c.f_star << " (f0=" << f0
        << ")";
    throw DesignError(err.str());
  }
  return alpha;
}

ShapeSolution solve_shape(ShapeParam which, const QuantileConstraint& c,
                          double f0, double x0, double alpha,
                          double other_shape) {
  check_constraint(c);
  check_f0(f0);
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  if (!std::isfinite(x0) || !std::isfinite(other_shape)) {
    throw std::invalid_argument("x0 and the fixed shape must be finite");
  }

  ShapeSolution out;
  if (which == ShapeParam::G) {
    out.scan_lo = -5.0;
    out.scan_hi = std::min(other_shape, 5.0);
  } else {
    out.scan_lo = other_shape;
    out.scan_hi = other_shape + 50.0;
  }
  if (!(out.scan_hi > out.scan_lo)) {
    throw DesignError("shape solve: empty scan interval");
  }

  const Residual res{which, c, f0, x0, alpha, other_shape};
  std::vector<double> grid(kScanPoints);
  std::vector<double> values(kScanPoints);
  for (int i = 0; i < kScanPoints; ++i) {
    grid[i] = out.scan_lo + (out.scan_hi - out.scan_lo) * (i + 1.0) /
                                (kScanPoints + 1.0);
    values[i] = res(grid[i]);
  }

  // Brackets [grid[i], grid[j]] between consecutive comparable residuals.
  struct Bracket {
    double lo;
    double hi;
    bool exact;
  };
  std::vector<Bracket> brackets;
  int prev = -1;
  for (int i = 0; i < kScanPoints; ++i) {
    if (std::isnan(values[i])) continue;
    if (values[i] == 0.0) {
      brackets.push_back({grid[i], grid[i], true});
    } else if (prev >= 0 && values[prev] != 0.0 &&
               sign_of(values[prev]) != sign_of(values[i])) {
      brackets.push_back({grid[prev], grid[i], false});
    }
    prev = i;
  }

  if (brackets.empty()) {
    std::ostringstream err;
    err << "shape solve: no root for " << to_string(which) << " in ("
        << out.scan_lo << ", " << out.scan_hi << "); residual sign is ";
    int first = -1;
    int last = -1;
    for (int i = 0; i < kScanPoints; ++i) {
      if (std::isnan(values[i])) continue;
      if (first < 0) first = i;
      last = i;
    }
    if (first < 0) {
      err << "undefined everywhere";
    } else {
      err << (values[first] > 0 ? "+" : "-") << " at " << grid[first]
          << " and " << (values[last] > 0 ? "+" : "-") << " at "
          << grid[last];
    }
    throw DesignError(err.str());
  }

  const double centre = 0.5 * (out.scan_lo + out.scan_hi);
  const Bracket& best = *std::min_element(
      brackets.begin(), brackets.end(), [centre](const auto& a, const auto& b) {
        return std::abs(0.5 * (a.lo + a.hi) - centre) <
               std::abs(0.5 * (b.lo + b.hi) - centre);
      });
  out.sign_changes = static_cast<int>(brackets.size());
  out.multiple_roots = brackets.size() > 1;
  const double root = best.exact ? best.lo : polish(res, best.lo, best.hi);
  out.value = snap_to_line(which, root, other_shape);
  return out;
}

}  // namespace sdist
