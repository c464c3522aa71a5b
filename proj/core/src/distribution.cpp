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

#include "sdist/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "sdist/lerch.hpp"
#include "sdist/oracle.hpp"

namespace sdist {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLerchTol = 1e-15;
constexpr double kSeriesTol = 1e-14;
constexpr long kSeriesCap = 1'000'000;

// Everything the closed form needs about (g, h), computed once per call.
struct Shape {
  double g;
  double h;
  double gamma;
  double lambda;
  double v;  // 1 + lambda / gamma
  CaseClass cls;
  bool shifted = false;
  int shift = 0;
};

// Distance |k gamma - g + 1| to the nearest degeneracy line with k >= 1.
double line_distance(double g, double gamma) {
  if (g <= 1.0) return kInf;
  const double k = std::max(1.0, std::round((g - 1.0) / gamma));
  double best = kInf;
  for (double kk = std::max(1.0, k - 1.0); kk <= k + 1.0; kk += 1.0) {
    best = std::min(best, std::abs(kk * gamma - g + 1.0));
  }
  return best;
}

Shape make_shape(double g, double h) {
  Shape s{g, h, h - g, 1.0 - g, 0.0, classify(g, h), false, 0};
  s.v = 1.0 + s.lambda / s.gamma;
  if (s.cls.generic()) {
    const bool near_line = line_distance(g, s.gamma) <= kNearDegeneracy;
    const bool near_one = std::abs(s.lambda) <= kNearDegeneracy;
    s.shifted = s.v < 0.0 || (near_line && !near_one);
    if (s.shifted) s.shift = default_lerch_shift(s.v);
  }
  return s;
}

// (b^e - a^e) / e for 0 <= a, b; the e -> 0 limit is ln(b / a).
double power_difference(double e, double a, double b) {
  if (a == 0.0 || b == 0.0) {
    // x^e / e (or ln x) with the value at x == 0 being 0 for e > 0 and
    // -inf otherwise.
    auto antiderivative = [e](double x) {
      if (x == 0.0) return e > 0.0 ? 0.0 : -kInf;
      return e == 0.0 ? std::log(x) : std::pow(x, e) / e;
    };
    return antiderivative(b) - antiderivative(a);
  }
  const double la = std::log(a);
  const double lb = std::log(b);
  if (e == 0.0) return lb - la;
  return std::exp(e * la) * std::expm1(e * (lb - la)) / e;
}

// x^e * Phi(x^gamma, 1, v) / gamma, with the x == 0 value 0 (e > 0).
double lerch_part(const Shape& s, double e, double v, double x) {
  if (x == 0.0) return 0.0;
  const double z = std::pow(x, s.gamma);
  return std::pow(x, e) * lerch_phi({z, v, kLerchTol}) / s.gamma;
}

double generic_direct(const Shape& s, double a, double b) {
  const double e1 = s.lambda + s.gamma;
  return power_difference(s.lambda, a, b) +
         (lerch_part(s, e1, s.v, b) - lerch_part(s, e1, s.v, a));
}

// Shifted form: the first shift + 1 series terms are taken one at a time as
// power differences, the rest through Phi(z, 1, shift + v).
double generic_shifted(const Shape& s, double a, double b) {
  double total = 0.0;
  for (int k = 0; k <= s.shift; ++k) {
    total += power_difference(k * s.gamma + s.lambda, a, b);
  }
  const double e_tail = (s.shift + 1) * s.gamma + s.lambda;
  const double v_tail = s.v + s.shift;
  return total + (lerch_part(s, e_tail, v_tail, b) -
                  lerch_part(s, e_tail, v_tail, a));
}

double case_v(const Shape& s, double a, double b) {
  const double la = std::log(a);
  const double lb = std::log(b);
  const double za = std::exp(s.gamma * la);
  const double zb = std::exp(s.gamma * lb);
  return (lb - la) + (std::log1p(-za) - std::log1p(-zb)) / s.gamma;
}

double case_vi(const Shape& s, double a, double b) {
  const int n_line = *s.cls.degeneracy_index;
  double total = std::log(b) - std::log(a);
  for (int k = 0; k < n_line; ++k) {
    total += power_difference(k * s.gamma + s.lambda, a, b);
  }
  // k > N: exponents are positive; advance the powers by z each step.
  const double za = std::pow(a, s.gamma);
  const double zb = std::pow(b, s.gamma);
  double e = (n_line + 1) * s.gamma + s.lambda;
  double pa = std::pow(a, e);
  double pb = std::pow(b, e);
  for (long k = n_line + 1; k < kSeriesCap; ++k) {
    const double term = (pb - pa) / e;
    total += term;
    if (std::abs(term) < kSeriesTol * std::abs(total)) break;
    pa *= za;
    pb *= zb;
    e += s.gamma;
  }
  return total;
}

// Closed form for 0 <= a < b with b^gamma <= kUpperTailZ.
double closed_form(const Shape& s, double a, double b, QuantileRoute* route) {
  switch (s.cls.variant) {
    case CaseVariant::V:
      *route = QuantileRoute::CaseV;
      return case_v(s, a, b);
    case CaseVariant::VI:
      *route = QuantileRoute::CaseVI;
      return case_vi(s, a, b);
    default:
      break;
  }
  if (s.shifted) {
    *route = QuantileRoute::GenericShifted;
    return generic_shifted(s, a, b);
  }
  *route = QuantileRoute::Generic;
  return generic_direct(s, a, b);
}

bool infinite_left_tail(const CaseClass& c) {
  return c.variant == CaseVariant::I || c.variant == CaseVariant::V ||
         c.variant == CaseVariant::VI;
}

// Value of F^gamma above which the tail integrator takes over: the lowest
// level in [kTailSwitchMin, kUpperTailZ] where the log-slope of the w-space
// integrand, |1 - h| / gamma * (1 - z) / z, is at most kTailSlope.
double tail_switch(const Shape& s) {
  constexpr double kTailSlope = 1.0;
  const double slope = std::abs(1.0 - s.h) / s.gamma;
  if (slope == 0.0) return kTailSwitchMin;
  return std::clamp(1.0 / (1.0 + kTailSlope / slope), kTailSwitchMin,
                    kUpperTailZ);
}

// I(a -> b) for a < b, route reported for the closed-form part.
double ordered_integral(const Shape& s, double a, double b,
                        QuantileRoute* route, bool* fallback) {
  if (b == 1.0) {
    *route = QuantileRoute::Boundary;
    return kInf;
  }
  if (a == 0.0 && infinite_left_tail(s.cls)) {
    *route = QuantileRoute::Boundary;
    return kInf;
  }
  if (s.cls.variant == CaseVariant::V) return closed_form(s, a, b, route);

  const double za = std::pow(a, s.gamma);
  const double zb = std::pow(b, s.gamma);
  const double z_switch = tail_switch(s);
  if (zb <= z_switch) return closed_form(s, a, b, route);

  *fallback = true;
  if (za >= z_switch) {
    *route = QuantileRoute::UpperTailOde;
    return upper_tail_integral(s.g, s.h, a, b);
  }
  const double split = std::pow(z_switch, 1.0 / s.gamma);
  const double head = closed_form(s, a, split, route);
  *route = QuantileRoute::UpperTailOde;
  return head + upper_tail_integral(s.g, s.h, split, b);
}

double integral_impl(double g, double h, double from, double to,
                     QuantileRoute* route, bool* fallback) {
  if (!(from >= 0.0 && from <= 1.0) || !(to >= 0.0 && to <= 1.0)) {
    std::ostringstream err;
    err << "cumulative levels must lie in [0, 1], got " << from << " and "
        << to;
    throw std::invalid_argument(err.str());
  }
  *route = QuantileRoute::Boundary;
  if (from == to) return 0.0;
  const Shape s = make_shape(g, h);
  if (from < to) return ordered_integral(s, from, to, route, fallback);
  return -ordered_integral(s, to, from, route, fallback);
}

}  // namespace

CaseClass classify(double g, double h, double deg_tol) {
  if (!(h > g)) {
    std::ostringstream err;
    err << "classify: h must exceed g, got g=" << g << " h=" << h;
    throw std::invalid_argument(err.str());
  }
  if (!(deg_tol > 0.0)) {
    throw std::invalid_argument("classify: deg_tol must be positive");
  }
  if (std::abs(g - 1.0) <= deg_tol) return {CaseVariant::V, 0};
  if (g > 1.0) {
    const double gamma = h - g;
    const double k = std::round((g - 1.0) / gamma);
    if (k >= 1.0 && k < 2147483647.0 &&
        std::abs(k * gamma - g + 1.0) <= deg_tol) {
      return {CaseVariant::VI, static_cast<int>(k)};
    }
    return {CaseVariant::I, std::nullopt};
  }
  if (std::abs(g) <= deg_tol) return {CaseVariant::III, std::nullopt};
  if (g > 0.0) return {CaseVariant::II, std::nullopt};
  return {CaseVariant::IV, std::nullopt};
}

CaseClass classify(const SParams& p) { return classify(p.g(), p.h()); }

std::string_view to_string(QuantileRoute route) {
  switch (route) {
    case QuantileRoute::Boundary: return "boundary";
    case QuantileRoute::Generic: return "generic";
    case QuantileRoute::GenericShifted: return "generic-shifted";
    case QuantileRoute::CaseV: return "case-v";
    case QuantileRoute::CaseVI: return "case-vi";
    case QuantileRoute::UpperTailOde: return "upper-tail-ode";
  }
  return "?";
}

double shape_integral(double g, double h, double f_from, double f_to) {
  QuantileRoute route;
  bool fallback = false;
  return integral_impl(g, h, f_from, f_to, &route, &fallback);
}

QuantileEval quantile_detailed(const SParams& p, double F) {
  if (!(F >= 0.0 && F <= 1.0)) {
    std::ostringstream err;
    err << "quantile: F must lie in [0, 1], got " << F;
    throw std::invalid_argument(err.str());
  }
  QuantileEval out;
  if (F == p.f0()) {
    out.value = p.x0();
    return out;
  }
  const double integral = integral_impl(p.g(), p.h(), p.f0(), F, &out.route,
                                        &out.precision_fallback);
  out.value = p.x0() + integral / p.alpha();
  return out;
}

double quantile(const SParams& p, double F) {
  return quantile_detailed(p, F).value;
}

double left_endpoint(const SParams& p) { return quantile(p, 0.0); }

Support support(const SParams& p) {
  Support s;
  s.left = left_endpoint(p);
  s.right = kInf;
  switch (classify(p).variant) {
    case CaseVariant::II: s.left_slope = LeftSlope::Zero; break;
    case CaseVariant::III: s.left_slope = LeftSlope::Alpha; break;
    case CaseVariant::IV: s.left_slope = LeftSlope::Infinite; break;
    default: s.left_slope = LeftSlope::NotApplicable; break;
  }
  return s;
}

double pdf_at_F(const SParams& p, double F) {
  if (!(F >= 0.0 && F <= 1.0)) {
    std::ostringstream err;
    err << "pdf_at_F: F must lie in [0, 1], got " << F;
    throw std::invalid_argument(err.str());
  }
  if (F == 1.0) return 0.0;
  if (F == 0.0) {
    const CaseVariant c = classify(p).variant;
    if (c == CaseVariant::III) return p.alpha();
    return p.g() < 0.0 ? kInf : 0.0;
  }
  const double lf = std::log(F);
  return p.alpha() * std::exp(p.g() * lf) * -std::expm1(p.gamma() * lf);
}

double cdf(const SParams& p, double x, double tol) {
  if (std::isnan(x)) throw std::invalid_argument("cdf: x is NaN");
  if (!(tol > 0.0)) throw std::invalid_argument("cdf: tol must be positive");
  if (x == kInf) return 1.0;
  if (x == -kInf) return 0.0;
  if (x == p.x0()) return p.f0();

  const double left = left_endpoint(p);
  if (x <= left) return 0.0;

  double lo;
  double hi;
  if (x < p.x0()) {
    lo = kCdfEpsilon;
    hi = p.f0();
    // Extend the bracket geometrically for points deep in the left tail.
    while (quantile(p, lo) > x) {
      if (lo < 1e-290) return lo;
      hi = lo;
      lo *= 1e-15;
    }
  } else {
    // Levels near 1 go through the tail integrator, whose cost grows with
    // -ln(1 - F), so the upper bracket is widened in stages.
    lo = p.f0();
    hi = lo;
    // The first two stages stay inside the cheap part of the Lerch series.
    const double inv_gamma = 1.0 / p.gamma();
    for (double gap : {-std::expm1(inv_gamma * std::log(0.9)),
                       -std::expm1(inv_gamma * std::log(kTailSwitchMin)),
                       1e-3, 1e-6, 1e-9, 1e-12, kCdfEpsilon}) {
      if (1.0 - gap <= lo) continue;
      hi = 1.0 - gap;
      if (quantile(p, hi) >= x) break;
      lo = hi;
    }
    if (hi == lo) return hi;
  }

  double F = p.f0() + (x - p.x0()) * pdf_at_F(p, p.f0());
  if (!(F > lo && F < hi)) F = 0.5 * (lo + hi);
  for (int iter = 0; iter < 400; ++iter) {
    const double r = quantile(p, F) - x;
    if (r == 0.0) return F;
    if (r > 0.0) {
      hi = F;
    } else {
      lo = F;
    }
    double next = F - r * pdf_at_F(p, F);
    if (!(next > lo && next < hi)) {
      next = hi > 1e3 * lo ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
    }
    const double step = std::abs(next - F);
    F = next;
    if (step <= tol * std::min(1.0, F) || hi - lo <= tol * std::min(1.0, lo)) {
      break;
    }
  }
  return F;
}

double pdf(const SParams& p, double x) {
  if (std::isnan(x)) throw std::invalid_argument("pdf: x is NaN");
  if (std::isinf(x)) return 0.0;
  const double left = left_endpoint(p);
  if (x < left) return 0.0;
  if (x == left) return pdf_at_F(p, 0.0);
  return pdf_at_F(p, cdf(p, x));
}

std::optional<double> mode_cumulative(const SParams& p) {
  if (!(p.g() > 0.0)) return std::nullopt;
  return std::pow(p.g() / p.h(), 1.0 / p.gamma());
}

}  // namespace sdist
