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

#include "sdist/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace sdist {
namespace {

constexpr double kTailStep = 0.02;

// One classical RK4 step of dX/dF = rhs(F). The right-hand side does not
// depend on X, so the stages collapse to Simpson weights.
template <typename Rhs>
double rk4_step(const Rhs& rhs, double F, double step) {
  const double k1 = rhs(F);
  const double k2 = rhs(F + 0.5 * step);
  const double k3 = k2;
  const double k4 = rhs(F + step);
  return step * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
}

template <typename Rhs>
double integrate_uniform(const Rhs& rhs, double from, double to,
                         double spacing) {
  const double span = to - from;
  if (span == 0.0) return 0.0;
  const long steps =
      std::max(1L, static_cast<long>(std::ceil(std::abs(span) / spacing)));
  const double step = span / static_cast<double>(steps);
  double x = 0.0;
  for (long i = 0; i < steps; ++i) {
    x += rk4_step(rhs, from + static_cast<double>(i) * step, step);
  }
  return x;
}

void check_level(const OdeConfig& cfg, double F) {
  if (!(F >= cfg.f_floor && F <= cfg.f_ceil)) {
    std::ostringstream err;
    err << "oracle: F=" << F << " outside [" << cfg.f_floor << ", "
        << cfg.f_ceil << "]";
    throw std::invalid_argument(err.str());
  }
}

}  // namespace

void validate(const OdeConfig& cfg, double f0) {
  if (!(cfg.f_floor > 0.0 && cfg.f_floor < f0 && f0 < cfg.f_ceil &&
        cfg.f_ceil < 1.0)) {
    throw std::invalid_argument(
        "oracle: need 0 < f_floor < f0 < f_ceil < 1");
  }
  if (cfg.step_count < 100) {
    throw std::invalid_argument("oracle: step_count must be >= 100");
  }
}

double oracle_quantile(const SParams& p, double F, const OdeConfig& cfg) {
  const double level = F;
  return oracle_quantiles(p, std::span<const double>(&level, 1), cfg).front();
}

std::vector<double> oracle_quantiles(const SParams& p,
                                     std::span<const double> levels,
                                     const OdeConfig& cfg) {
  validate(cfg, p.f0());
  for (double F : levels) check_level(cfg, F);

  const double alpha = p.alpha();
  const double g = p.g();
  const double h = p.h();
  auto rhs = [alpha, g, h](double F) {
    return 1.0 / (alpha * (std::pow(F, g) - std::pow(F, h)));
  };
  const double spacing =
      (cfg.f_ceil - cfg.f_floor) / static_cast<double>(cfg.step_count);

  std::vector<std::size_t> order(levels.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return levels[a] < levels[b];
  });

  std::vector<double> out(levels.size(), p.x0());
  // Upward sweep.
  double at = p.f0();
  double x = p.x0();
  for (std::size_t idx : order) {
    if (levels[idx] < p.f0()) continue;
    x += integrate_uniform(rhs, at, levels[idx], spacing);
    at = levels[idx];
    out[idx] = x;
  }
  // Downward sweep.
  at = p.f0();
  x = p.x0();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (levels[*it] >= p.f0()) continue;
    x += integrate_uniform(rhs, at, levels[*it], spacing);
    at = levels[*it];
    out[*it] = x;
  }
  return out;
}

double upper_tail_integral(double g, double h, double f_from, double f_to) {
  if (!(h > g)) throw std::invalid_argument("upper tail: need h > g");
  if (!(f_from > 0.0 && f_from < 1.0 && f_to > 0.0 && f_to < 1.0)) {
    throw std::invalid_argument("upper tail: levels must lie in (0, 1)");
  }
  const double gamma = h - g;
  const double exponent = (1.0 - h) / gamma;
  auto to_w = [gamma](double F) {
    return -std::log(-std::expm1(gamma * std::log(F)));
  };
  auto rhs = [gamma, exponent](double w) {
    return std::exp(exponent * std::log1p(-std::exp(-w))) / gamma;
  };
  // The integrand's log-slope |exponent| e^-w / (1 - e^-w) decays like
  // e^-w. Where it exceeds 1/4 the step is shrunk in proportion, one
  // ln 2 segment at a time.
  const double w_from = to_w(f_from);
  const double w_to = to_w(f_to);
  double w = std::min(w_from, w_to);
  const double w_end = std::max(w_from, w_to);
  double total = 0.0;
  while (w < w_end) {
    const double slope = std::abs(exponent) / std::expm1(w);
    const bool steep = 4.0 * slope > 1.0;
    const double next = steep ? std::min(w_end, w + std::log(2.0)) : w_end;
    total += integrate_uniform(rhs, w, next,
                               kTailStep / std::max(1.0, 4.0 * slope));
    w = next;
  }
  return w_from <= w_to ? total : -total;
}

}  // namespace sdist
