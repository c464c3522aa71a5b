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

#include "sdist/fitter.hpp"

#include <gsl/gsl_blas.h>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_matrix.h>
#include <gsl/gsl_multifit_nlinear.h>
#include <gsl/gsl_multimin.h>
#include <gsl/gsl_vector.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>
#include <utility>

#include "sdist/distribution.hpp"

namespace sdist {
namespace {

// Stage 1 search box and multi-start seeds (g, h).
constexpr double kGMin = -2.0;
constexpr double kGMax = 3.0;
constexpr double kHMax = 20.0;
constexpr double kMinGap = 1e-3;
constexpr std::array<std::pair<double, double>, 4> kShapeSeeds = {
    {{0.5, 2.0}, {0.7, 2.9}, {1.0, 3.0}, {0.3, 5.0}}};
constexpr double kOutOfBox = 1e30;
constexpr int kSimplexIterations = 20'000;
constexpr int kSimplexRestarts = 8;
constexpr double kSimplexSize = 1e-12;

constexpr int kStage2Iterations = 200;
constexpr double kStage2StepTol = 1e-10;

// Linear-interpolation sample quantile of sorted data.
double sorted_quantile(std::span<const double> sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

std::vector<double> sorted_copy(std::span<const double> data) {
  std::vector<double> out(data.begin(), data.end());
  for (double x : out) {
    if (!std::isfinite(x)) {
      throw std::invalid_argument("observations must be finite");
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

template <typename Fn>
auto with_stage(const char* stage, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const FitError&) {
    throw;
  } catch (const std::exception& e) {
    throw FitError(stage, e.what());
  }
}

// --- stage 1 ---------------------------------------------------------------

struct Stage1Data {
  std::span<const double> F;
  std::span<const double> f;
};

double stage1_objective(double log_alpha, double g, double h,
                        const Stage1Data& d) {
  if (!(g > kGMin && g < kGMax && h > g + kMinGap && h < kHMax)) {
    return kOutOfBox;
  }
  const double alpha = std::exp(log_alpha);
  double ss = 0.0;
  for (std::size_t i = 0; i < d.F.size(); ++i) {
    const double r = d.f[i] - alpha * (std::pow(d.F[i], g) -
                                       std::pow(d.F[i], h));
    ss += r * r;
  }
  return ss;
}

double stage1_gsl(const gsl_vector* v, void* params) {
  return stage1_objective(gsl_vector_get(v, 0), gsl_vector_get(v, 1),
                          gsl_vector_get(v, 2),
                          *static_cast<const Stage1Data*>(params));
}

struct SimplexOutcome {
  std::array<double, 3> x{};
  double value = 0.0;
  bool converged = false;
};

using Minimizer =
    std::unique_ptr<gsl_multimin_fminimizer,
                    decltype(&gsl_multimin_fminimizer_free)>;
using Vector = std::unique_ptr<gsl_vector, decltype(&gsl_vector_free)>;

Vector make_vector(std::span<const double> values) {
  Vector v(gsl_vector_alloc(values.size()), &gsl_vector_free);
  for (std::size_t i = 0; i < values.size(); ++i) {
    gsl_vector_set(v.get(), i, values[i]);
  }
  return v;
}

// One Nelder-Mead run, restarted from its own optimum until a restart no
// longer improves the objective.
SimplexOutcome run_simplex(const Stage1Data& data,
                           std::array<double, 3> start) {
  gsl_multimin_function fn{&stage1_gsl, 3,
                           const_cast<Stage1Data*>(&data)};
  SimplexOutcome out{start, stage1_objective(start[0], start[1], start[2],
                                             data),
                     false};
  std::array<double, 3> step = {0.2, 0.1, 0.3};
  for (int restart = 0; restart < kSimplexRestarts; ++restart) {
    Minimizer m(gsl_multimin_fminimizer_alloc(
                    gsl_multimin_fminimizer_nmsimplex2, 3),
                &gsl_multimin_fminimizer_free);
    Vector x = make_vector(out.x);
    Vector s = make_vector(step);
    gsl_multimin_fminimizer_set(m.get(), &fn, x.get(), s.get());
    bool converged = false;
    for (int iter = 0; iter < kSimplexIterations; ++iter) {
      if (gsl_multimin_fminimizer_iterate(m.get()) != GSL_SUCCESS) break;
      const double size = gsl_multimin_fminimizer_size(m.get());
      if (gsl_multimin_test_size(size, kSimplexSize) == GSL_SUCCESS) {
        converged = true;
        break;
      }
    }
    const double value = gsl_multimin_fminimizer_minimum(m.get());
    const gsl_vector* best = gsl_multimin_fminimizer_x(m.get());
    const double previous = out.value;
    if (value <= out.value) {
      out.value = value;
      for (std::size_t i = 0; i < 3; ++i) out.x[i] = gsl_vector_get(best, i);
    }
    out.converged = converged;
    if (converged && !(out.value < previous * (1.0 - 1e-12))) break;
    step = {0.02, 0.01, 0.03};
  }
  return out;
}

double max_shape_density(double g, double h) {
  const double mode = std::pow(g / h, 1.0 / (h - g));
  return std::pow(mode, g) - std::pow(mode, h);
}

// --- stage 2 ---------------------------------------------------------------

double residual_ss(std::span<const double> x, std::span<const double> c,
                   double alpha, double x0) {
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = x[i] - x0 - c[i] / alpha;
    ss += r * r;
  }
  return ss;
}

// --- refinement --------------------------------------------------------------

struct RefineData {
  std::span<const double> x;
  std::span<const double> F;
};

constexpr double kRefinePenalty = 1e10;
constexpr double kEdgeGap = 10.0 * kMinGap;
constexpr double kRefineDiffStep = 1.49e-8;  // about sqrt(DBL_EPSILON)

SParams refine_params(const gsl_vector* theta) {
  const double alpha = std::exp(gsl_vector_get(theta, 0));
  const double x0 = gsl_vector_get(theta, 1);
  const double g = gsl_vector_get(theta, 2);
  const double gamma = std::exp(gsl_vector_get(theta, 3));
  return SParams(kDefaultF0, x0, alpha, g, g + gamma);
}

bool refine_inside(const gsl_vector* theta) {
  const double log_alpha = gsl_vector_get(theta, 0);
  const double g = gsl_vector_get(theta, 2);
  const double log_gamma = gsl_vector_get(theta, 3);
  return std::isfinite(gsl_vector_get(theta, 1)) && g > -5.0 && g < 5.0 &&
         log_gamma > std::log(1e-3) && log_gamma < std::log(50.0) &&
         std::abs(log_alpha) < 50.0;
}

// Residuals x_i - X(F_i); the model values go to `model` when given.
void refine_eval(const gsl_vector* theta, const RefineData& d,
                 gsl_vector* out, std::vector<double>* model) {
  if (!refine_inside(theta)) {
    gsl_vector_set_all(out, kRefinePenalty);
    if (model) model->assign(d.x.size(), kRefinePenalty);
    return;
  }
  const SParams p = refine_params(theta);
  if (model) model->resize(d.x.size());
  for (std::size_t i = 0; i < d.x.size(); ++i) {
    const double q = quantile(p, d.F[i]);
    gsl_vector_set(out, i, std::isfinite(q) ? d.x[i] - q : kRefinePenalty);
    if (model) (*model)[i] = q;
  }
}

int refine_residuals(const gsl_vector* theta, void* params, gsl_vector* out) {
  refine_eval(theta, *static_cast<const RefineData*>(params), out, nullptr);
  return GSL_SUCCESS;
}

// Jacobian of the residuals. X = x0 + c / alpha, so the log-alpha column is
// X - x0 and the x0 column is -1; the shape columns are forward
// differences (backward at the box edge).
int refine_jacobian(const gsl_vector* theta, void* params, gsl_matrix* jac) {
  const auto& d = *static_cast<const RefineData*>(params);
  const std::size_t n = d.x.size();
  gsl_matrix_set_zero(jac);
  if (!refine_inside(theta)) return GSL_SUCCESS;

  Vector base(gsl_vector_alloc(n), &gsl_vector_free);
  std::vector<double> model;
  refine_eval(theta, d, base.get(), &model);
  const double x0 = gsl_vector_get(theta, 1);
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(model[i]) || model[i] == kRefinePenalty) continue;
    gsl_matrix_set(jac, i, 0, model[i] - x0);
    gsl_matrix_set(jac, i, 1, -1.0);
  }

  Vector shifted(gsl_vector_alloc(theta->size), &gsl_vector_free);
  Vector perturbed(gsl_vector_alloc(n), &gsl_vector_free);
  for (std::size_t j = 2; j < 4; ++j) {
    gsl_vector_memcpy(shifted.get(), theta);
    const double t = gsl_vector_get(theta, j);
    double step = kRefineDiffStep * std::max(1.0, std::abs(t));
    gsl_vector_set(shifted.get(), j, t + step);
    if (!refine_inside(shifted.get())) {
      step = -step;
      gsl_vector_set(shifted.get(), j, t + step);
    }
    refine_eval(shifted.get(), d, perturbed.get(), nullptr);
    for (std::size_t i = 0; i < n; ++i) {
      gsl_matrix_set(jac, i, j,
                     (gsl_vector_get(perturbed.get(), i) -
                      gsl_vector_get(base.get(), i)) /
                         step);
    }
  }
  return GSL_SUCCESS;
}

}  // namespace

FitError::FitError(std::string stage, const std::string& message)
    : std::runtime_error(stage + ": " + message), stage_(std::move(stage)) {}

std::size_t auto_bin_count(std::span<const double> data) {
  const std::vector<double> sorted = sorted_copy(data);
  const double n = static_cast<double>(sorted.size());
  const double range = sorted.back() - sorted.front();
  const double iqr =
      sorted_quantile(sorted, 0.75) - sorted_quantile(sorted, 0.25);
  if (!(iqr > 0.0) || !(range > 0.0)) {
    // Sturges when the IQR collapses.
    return static_cast<std::size_t>(std::ceil(std::log2(n))) + 1;
  }
  const double width = 2.0 * iqr * std::cbrt(1.0 / n);
  const double bins = std::ceil(range / width);
  return static_cast<std::size_t>(std::clamp(bins, 1.0, 10'000.0));
}

Histogram build_histogram(std::span<const double> data,
                          std::optional<std::size_t> bins) {
  if (data.size() < kMinFitSamples) {
    std::ostringstream err;
    err << "need at least " << kMinFitSamples << " observations, got "
        << data.size();
    throw FitError("histogram", err.str());
  }
  const std::vector<double> sorted = sorted_copy(data);
  const double lo = sorted.front();
  const double hi = sorted.back();
  if (!(hi > lo)) throw FitError("histogram", "data has zero range");
  if (bins && *bins == 0) throw FitError("histogram", "bin count must be >= 1");
  const std::size_t count = bins ? *bins : auto_bin_count(sorted);
  const double width = (hi - lo) / static_cast<double>(count);

  Histogram hist;
  hist.bin_edges.resize(count + 1);
  for (std::size_t i = 0; i <= count; ++i) {
    hist.bin_edges[i] = lo + width * static_cast<double>(i);
  }
  hist.bin_edges.back() = hi;

  std::vector<std::size_t> counts(count, 0);
  for (double x : sorted) {
    auto idx = static_cast<std::size_t>((x - lo) / width);
    counts[std::min(idx, count - 1)] += 1;
  }
  const double n = static_cast<double>(sorted.size());
  hist.f_values.resize(count);
  hist.F_values.resize(count);
  double running = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double w = hist.bin_edges[i + 1] - hist.bin_edges[i];
    hist.f_values[i] = static_cast<double>(counts[i]) / (n * w);
    running += hist.f_values[i] * w;
    hist.F_values[i] = std::min(running, 1.0);
  }
  return hist;
}

Stage1Result stage1_fit(const Histogram& hist) {
  std::vector<double> F;
  std::vector<double> f;
  for (std::size_t i = 0; i < hist.bins(); ++i) {
    const double Fi = hist.F_values[i];
    // The last bin sits at F = 1 where the model density vanishes.
    if (Fi > 0.0 && Fi < 1.0 - 1e-12) {
      F.push_back(Fi);
      f.push_back(hist.f_values[i]);
    }
  }
  return stage1_fit(F, f);
}

Stage1Result stage1_fit(std::span<const double> F_values,
                        std::span<const double> f_values) {
  if (F_values.size() != f_values.size()) {
    throw std::invalid_argument("stage1: F and f lengths differ");
  }
  if (F_values.size() < 5) {
    throw FitError("stage1", "need at least 5 bins with 0 < F < 1");
  }
  for (std::size_t i = 0; i < F_values.size(); ++i) {
    if (!(F_values[i] > 0.0 && F_values[i] < 1.0) ||
        !std::isfinite(f_values[i])) {
      throw std::invalid_argument("stage1: need 0 < F_i < 1, finite f_i");
    }
  }
  gsl_set_error_handler_off();
  const double f_max = *std::max_element(f_values.begin(), f_values.end());
  const Stage1Data data{F_values, f_values};

  Stage1Result out;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& [g0, h0] : kShapeSeeds) {
    const double alpha0 = std::max(f_max, 1e-12) / max_shape_density(g0, h0);
    const SimplexOutcome run =
        run_simplex(data, {std::log(alpha0), g0, h0});
    if (run.converged) ++out.starts_converged;
    if (run.value < best) {
      best = run.value;
      out.alpha = std::exp(run.x[0]);
      out.g = run.x[1];
      out.h = run.x[2];
      out.residual_ss = run.value;
    }
  }
  out.converged = out.starts_converged > 0;
  if (!out.converged || !(best < kOutOfBox)) {
    std::ostringstream err;
    err << "simplex did not converge from any start; best residual " << best
        << " at alpha=" << out.alpha << " g=" << out.g << " h=" << out.h;
    throw FitError("stage1", err.str());
  }
  return out;
}

std::vector<double> plotting_positions(std::size_t n) {
  std::vector<double> F(n);
  for (std::size_t i = 0; i < n; ++i) {
    F[i] = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
  }
  return F;
}

double quantile_residual_ss(std::span<const double> sorted_data,
                            const SParams& params) {
  const std::vector<double> F = plotting_positions(sorted_data.size());
  double ss = 0.0;
  for (std::size_t i = 0; i < F.size(); ++i) {
    const double r = sorted_data[i] - quantile(params, F[i]);
    ss += r * r;
  }
  return ss;
}

Stage2Result stage2_fit(std::span<const double> sorted_data, double g,
                        double h, double init_alpha, double init_x0) {
  if (sorted_data.size() < 2) {
    throw std::invalid_argument("stage2: need at least 2 observations");
  }
  if (!std::is_sorted(sorted_data.begin(), sorted_data.end())) {
    throw std::invalid_argument("stage2: data must be sorted");
  }
  if (!(init_alpha > 0.0) || !std::isfinite(init_x0)) {
    throw std::invalid_argument("stage2: need init_alpha > 0, finite x0");
  }
  if (!(h > g)) throw std::invalid_argument("stage2: need h > g");

  // X(F_i) = x0 + c_i / alpha, with c_i independent of (alpha, x0).
  const std::vector<double> F = plotting_positions(sorted_data.size());
  std::vector<double> c(F.size());
  for (std::size_t i = 0; i < F.size(); ++i) {
    c[i] = shape_integral(g, h, kDefaultF0, F[i]);
  }

  Stage2Result out;
  out.alpha = init_alpha;
  out.x0 = init_x0;
  out.residual_ss = residual_ss(sorted_data, c, out.alpha, out.x0);
  out.residual_trajectory.push_back(out.residual_ss);

  for (int iter = 0; iter < kStage2Iterations; ++iter) {
    out.iterations = iter + 1;
    // Normal equations for r_i = x_i - x0 - c_i / alpha.
    double jaa = 0.0;
    double jax = 0.0;
    double jxx = 0.0;
    double ga = 0.0;
    double gx = 0.0;
    const double a2 = out.alpha * out.alpha;
    for (std::size_t i = 0; i < c.size(); ++i) {
      const double r = sorted_data[i] - out.x0 - c[i] / out.alpha;
      const double da = c[i] / a2;
      const double dx = -1.0;
      jaa += da * da;
      jax += da * dx;
      jxx += dx * dx;
      ga += da * r;
      gx += dx * r;
    }
    const double det = jaa * jxx - jax * jax;
    if (!(std::abs(det) > 0.0)) {
      throw FitError("stage2", "singular Gauss-Newton system");
    }
    const double step_a = -(jxx * ga - jax * gx) / det;
    const double step_x = -(-jax * ga + jaa * gx) / det;

    double scale = 1.0;
    bool accepted = false;
    double alpha_new = out.alpha;
    double x0_new = out.x0;
    double ss_new = out.residual_ss;
    for (int halving = 0; halving < 60; ++halving, scale *= 0.5) {
      alpha_new = out.alpha + scale * step_a;
      x0_new = out.x0 + scale * step_x;
      if (!(alpha_new > 0.0)) continue;
      ss_new = residual_ss(sorted_data, c, alpha_new, x0_new);
      if (ss_new <= out.residual_ss) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      // No descent along the Gauss-Newton direction: at a minimum to
      // working precision.
      out.converged = true;
      break;
    }
    const double rel_a = std::abs(alpha_new - out.alpha) / out.alpha;
    const double rel_x =
        std::abs(x0_new - out.x0) / std::max(1.0, std::abs(out.x0));
    out.alpha = alpha_new;
    out.x0 = x0_new;
    out.residual_ss = ss_new;
    out.residual_trajectory.push_back(ss_new);
    if (rel_a < kStage2StepTol && rel_x < kStage2StepTol) {
      out.converged = true;
      break;
    }
  }
  if (!out.converged) {
    std::ostringstream err;
    err << "Gauss-Newton did not converge in " << kStage2Iterations
        << " iterations; last alpha=" << out.alpha << " x0=" << out.x0
        << " residual trajectory:";
    for (double r : out.residual_trajectory) err << ' ' << r;
    throw FitError("stage2", err.str());
  }
  return out;
}

RefineResult refine_fit(std::span<const double> sorted_data,
                        const SParams& start) {
  if (start.f0() != kDefaultF0) {
    throw std::invalid_argument("refine: f0 must be 0.5");
  }
  if (!std::is_sorted(sorted_data.begin(), sorted_data.end())) {
    throw std::invalid_argument("refine: data must be sorted");
  }
  gsl_set_error_handler_off();
  const std::vector<double> F = plotting_positions(sorted_data.size());
  RefineData data{sorted_data, F};

  const std::size_t n = sorted_data.size();
  constexpr std::size_t kParams = 4;
  RefineResult out;
  if (n <= kParams) throw std::invalid_argument("refine: too few points");

  gsl_multifit_nlinear_fdf fdf{};
  fdf.f = &refine_residuals;
  fdf.df = &refine_jacobian;
  fdf.fvv = nullptr;
  fdf.n = n;
  fdf.p = kParams;
  fdf.params = &data;

  gsl_multifit_nlinear_parameters fit_params =
      gsl_multifit_nlinear_default_parameters();
  std::unique_ptr<gsl_multifit_nlinear_workspace,
                  decltype(&gsl_multifit_nlinear_free)>
      work(gsl_multifit_nlinear_alloc(gsl_multifit_nlinear_trust,
                                      &fit_params, n, kParams),
           &gsl_multifit_nlinear_free);

  const std::array<double, kParams> theta0 = {
      std::log(start.alpha()), start.x0(), start.g(), std::log(start.gamma())};
  Vector theta = make_vector(theta0);
  gsl_multifit_nlinear_init(theta.get(), &fdf, work.get());

  int info = 0;
  const int status = gsl_multifit_nlinear_driver(
      200, 1e-12, 1e-12, 1e-14, nullptr, nullptr, &info, work.get());
  const gsl_vector* solution = gsl_multifit_nlinear_position(work.get());
  const gsl_vector* residual = gsl_multifit_nlinear_residual(work.get());
  double ss = 0.0;
  gsl_blas_ddot(residual, residual, &ss);

  out.iterations = static_cast<int>(gsl_multifit_nlinear_niter(work.get()));
  out.converged = status == GSL_SUCCESS;
  out.residual_ss = ss;
  const SParams fitted = refine_params(solution);
  out.alpha = fitted.alpha();
  out.x0 = fitted.x0();
  out.g = fitted.g();
  out.h = fitted.h();
  return out;
}

FitResult fit(std::span<const double> data, const FitConfig& config) {
  if (data.size() < kMinFitSamples) {
    std::ostringstream err;
    err << "need at least " << kMinFitSamples << " observations, got "
        << data.size();
    throw FitError("histogram", err.str());
  }
  const std::vector<double> sorted =
      with_stage("histogram", [&] { return sorted_copy(data); });
  const Histogram hist = with_stage(
      "histogram", [&] { return build_histogram(sorted, config.bins); });

  FitResult result;
  result.stage1 = with_stage("stage1", [&] { return stage1_fit(hist); });
  const double median = sorted_quantile(sorted, 0.5);
  result.stage2 = with_stage("stage2", [&] {
    return stage2_fit(sorted, result.stage1.g, result.stage1.h,
                      result.stage1.alpha, median);
  });
  result.params = SParams(kDefaultF0, result.stage2.x0, result.stage2.alpha,
                          result.stage1.g, result.stage1.h);

  if (config.refine) {
    RefineResult refined = with_stage("refine", [&] {
      RefineResult best = refine_fit(sorted, result.params);
      // Pinned against the smallest admissible gap: retry from the standard
      // shape seeds and keep the lowest residual.
      if (best.h - best.g < kEdgeGap) {
        for (const auto& [g0, h0] : kShapeSeeds) {
          try {
            const Stage2Result s2 =
                stage2_fit(sorted, g0, h0, result.stage1.alpha, median);
            const RefineResult r = refine_fit(
                sorted, SParams(kDefaultF0, s2.x0, s2.alpha, g0, h0));
            if (r.residual_ss < best.residual_ss) best = r;
          } catch (const std::exception&) {
            // A failed seed leaves the current best in place.
          }
        }
      }
      return best;
    });
    if (refined.residual_ss < result.stage2.residual_ss &&
        std::isfinite(refined.residual_ss)) {
      refined.accepted = true;
      result.params = SParams(kDefaultF0, refined.x0, refined.alpha,
                              refined.g, refined.h);
    }
    result.refine = refined;
  }
  return result;
}

}  // namespace sdist
