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

// Fitting an S-distribution to a sample.
//
//   1. Unit-area histogram; each bin gives a density height f_i and the
//      running cumulative F_i at its right edge.
//   2. Stage 1: nonlinear regression f_i ~ alpha (F_i^g - F_i^h) for a
//      first estimate of (alpha, g, h).
//   3. Stage 2: g and h fixed, least squares between the order statistics
//      and the model quantiles at plotting positions, over (alpha, x0) with
//      f0 = 0.5 so x0 estimates the median.
//   4. Optional joint refinement of the same quantile objective over all of
//      (alpha, x0, g, h), started from the stage 2 solution. A refinement
//      that ends at h - g < 0.01 is repeated from the stage 1 shape seeds;
//      the lowest residual wins, and is kept only if it beats stage 2.

#ifndef SDIST_FITTER_HPP_
#define SDIST_FITTER_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sdist/params.hpp"

namespace sdist {

inline constexpr std::size_t kMinFitSamples = 20;

struct Histogram {
  std::vector<double> bin_edges;  // B + 1 increasing edges
  std::vector<double> f_values;   // B unit-area heights
  std::vector<double> F_values;   // B cumulative values at right edges

  std::size_t bins() const { return f_values.size(); }
};

struct Stage1Result {
  double alpha = 0.0;
  double g = 0.0;
  double h = 0.0;
  double residual_ss = 0.0;
  bool converged = false;
  int starts_converged = 0;
};

struct Stage2Result {
  double alpha = 0.0;
  double x0 = 0.0;
  double residual_ss = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> residual_trajectory;  // one entry per accepted step
};

struct RefineResult {
  double alpha = 0.0;
  double x0 = 0.0;
  double g = 0.0;
  double h = 0.0;
  double residual_ss = 0.0;
  int iterations = 0;
  bool converged = false;
  bool accepted = false;  // improved on stage 2 and was kept
};

struct FitConfig {
  std::optional<std::size_t> bins;  // empty: Freedman-Diaconis width
  bool refine = true;
};

struct FitResult {
  SParams params{kDefaultF0, 0.0, 1.0, 0.5, 2.0};
  Stage1Result stage1;
  Stage2Result stage2;
  std::optional<RefineResult> refine;
};

/// Failure inside the fitting pipeline, tagged with the stage that raised
/// it ("histogram", "stage1", "stage2" or "refine").
class FitError : public std::runtime_error {
 public:
  FitError(std::string stage, const std::string& message);
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

/// Unit-area histogram of `data`. Needs at least 20 points and a nonzero
/// range. Without `bins` the width is 2 IQR n^(-1/3).
Histogram build_histogram(std::span<const double> data,
                          std::optional<std::size_t> bins = std::nullopt);

/// Freedman-Diaconis bin count for `data` (at least 1).
std::size_t auto_bin_count(std::span<const double> data);

/// Stage 1 on a histogram: uses the bins with 0 < F_i < 1 (at least 5).
Stage1Result stage1_fit(const Histogram& hist);

/// Stage 1 on explicit (F_i, f_i) pairs.
Stage1Result stage1_fit(std::span<const double> F_values,
                        std::span<const double> f_values);

/// Plotting positions (i - 0.5) / n, i = 1..n.
std::vector<double> plotting_positions(std::size_t n);

/// Stage 2. `sorted_data` must be nondecreasing.
Stage2Result stage2_fit(std::span<const double> sorted_data, double g,
                        double h, double init_alpha, double init_x0);

/// Stage 2 objective sum_i (x_(i) - X(F_i))^2 for S[0.5, x0, alpha, g, h].
double quantile_residual_ss(std::span<const double> sorted_data,
                            const SParams& params);

/// Joint refinement from `start` (f0 must be 0.5).
RefineResult refine_fit(std::span<const double> sorted_data,
                        const SParams& start);

/// Full pipeline. Throws FitError for fewer than 20 points or when a stage
/// fails.
FitResult fit(std::span<const double> data, const FitConfig& config = {});

}  // namespace sdist

#endif  // SDIST_FITTER_HPP_
