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

#include "sdist/cli.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sdist/designer.hpp"
#include "sdist/distribution.hpp"
#include "sdist/fitter.hpp"
#include "sdist/lerch.hpp"
#include "sdist/oracle.hpp"
#include "sdist/sampler.hpp"
#include "sdist/serialize.hpp"

namespace sdist::cli {
namespace {

using nlohmann::json;

// Bad flags or flag combinations; exit status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { Plain, Csv, Json };

constexpr std::size_t kCurvePoints = 512;
constexpr double kCurveFMin = 0.001;
constexpr double kCurveFMax = 0.999;
constexpr std::size_t kOraclePoints = 99;
constexpr double kOracleFMin = 0.01;
constexpr double kOracleFMax = 0.99;

struct ParamFlag {
  const char* flag;
  const char* key;
  double value = 0.0;
  CLI::Option* option = nullptr;
};

// Parameter values gathered from --params and the individual flags.
// Flags win over the file.
struct Partial {
  double f0 = kDefaultF0;
  std::optional<double> x0, alpha, g, h;
};

struct Options {
  ParamFlag f0{"--f0", "f0"};
  ParamFlag x0{"--x0", "x0"};
  ParamFlag alpha{"--alpha", "alpha"};
  ParamFlag g{"--g", "g"};
  ParamFlag h{"--h", "h"};
  std::string params_path;
  std::string format;
  bool verbose = false;

  std::array<ParamFlag*, 5> all() { return {&f0, &x0, &alpha, &g, &h}; }
};

std::optional<double> flag_value(const ParamFlag& f) {
  if (f.option != nullptr && f.option->count() > 0) return f.value;
  return std::nullopt;
}

json read_json_file(const std::string& path, const char* flag) {
  std::ifstream file(path);
  if (!file) {
    throw UsageError(std::string(flag) + ": cannot open '" + path + "'");
  }
  try {
    return json::parse(file);
  } catch (const json::exception& e) {
    throw UsageError(std::string(flag) + ": " + e.what());
  }
}

Partial gather(const Options& opt) {
  Partial p;
  if (!opt.params_path.empty()) {
    json j = read_json_file(opt.params_path, "--params");
    if (j.is_object() && j.contains("params")) j = j.at("params");
    if (!j.is_object()) throw UsageError("--params: expected a JSON object");
    auto take = [&j](const char* key) -> std::optional<double> {
      if (!j.contains(key)) return std::nullopt;
      try {
        return real_from_json(j.at(key));
      } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--params: field \"") + key +
                         "\": " + e.what());
      }
    };
    if (auto v = take("f0")) p.f0 = *v;
    p.x0 = take("x0");
    p.alpha = take("alpha");
    p.g = take("g");
    p.h = take("h");
  }
  if (auto v = flag_value(opt.f0)) p.f0 = *v;
  if (auto v = flag_value(opt.x0)) p.x0 = v;
  if (auto v = flag_value(opt.alpha)) p.alpha = v;
  if (auto v = flag_value(opt.g)) p.g = v;
  if (auto v = flag_value(opt.h)) p.h = v;

  auto finite = [](const std::optional<double>& v, const char* flag) {
    if (v && !std::isfinite(*v)) {
      throw UsageError(std::string(flag) + ": must be finite");
    }
  };
  if (!(p.f0 > 0.0 && p.f0 < 1.0)) {
    throw UsageError("--f0: must lie in (0, 1)");
  }
  finite(p.x0, "--x0");
  finite(p.alpha, "--alpha");
  finite(p.g, "--g");
  finite(p.h, "--h");
  if (p.alpha && !(*p.alpha > 0.0)) throw UsageError("--alpha: must be > 0");
  if (p.g && p.h && !(*p.h > *p.g)) throw UsageError("--h: must exceed --g");
  return p;
}

double need(const std::optional<double>& v, const char* flag) {
  if (!v) throw UsageError("missing required flag " + std::string(flag));
  return *v;
}

SParams full_params(const Partial& p) {
  return SParams(p.f0, need(p.x0, "--x0"), need(p.alpha, "--alpha"),
                 need(p.g, "--g"), need(p.h, "--h"));
}

Format parse_format(const std::string& name, Format fallback) {
  if (name.empty()) return fallback;
  if (name == "plain") return Format::Plain;
  if (name == "csv") return Format::Csv;
  return Format::Json;
}

// Real-valued JSON field with infinities spelled out.
json jreal(double x) { return real_to_json(x); }

// Rows of numbers under named columns. Plain prints the last column only.
void emit_table(std::ostream& out, Format fmt,
                const std::vector<std::string>& columns,
                const std::vector<std::vector<double>>& rows) {
  switch (fmt) {
    case Format::Plain:
      for (const auto& row : rows) out << format_real(row.back()) << '\n';
      break;
    case Format::Csv:
      for (std::size_t c = 0; c < columns.size(); ++c) {
        out << (c ? "," : "") << columns[c];
      }
      out << '\n';
      for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
          out << (c ? "," : "") << format_real(row[c]);
        }
        out << '\n';
      }
      break;
    case Format::Json: {
      json arr = json::array();
      for (const auto& row : rows) {
        json obj;
        for (std::size_t c = 0; c < row.size(); ++c) {
          obj[columns[c]] = jreal(row[c]);
        }
        arr.push_back(obj);
      }
      out << arr.dump(2) << '\n';
      break;
    }
  }
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t points) {
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i) {
    grid[i] = points == 1 ? lo
                          : lo + (hi - lo) * static_cast<double>(i) /
                                     static_cast<double>(points - 1);
  }
  return grid;
}

void check_grid(double lo, double hi, std::size_t points, const char* lo_flag,
                const char* hi_flag) {
  if (!(lo >= 0.0 && lo <= 1.0)) {
    throw UsageError(std::string(lo_flag) + ": must lie in [0, 1]");
  }
  if (!(hi >= 0.0 && hi <= 1.0)) {
    throw UsageError(std::string(hi_flag) + ": must lie in [0, 1]");
  }
  if (!(hi > lo)) {
    throw UsageError(std::string(hi_flag) + ": must exceed " + lo_flag);
  }
  if (points < 2) throw UsageError("--points: must be >= 2");
}

std::ofstream open_output(const std::string& path, const char* flag) {
  std::ofstream file(path);
  if (!file) {
    throw UsageError(std::string(flag) + ": cannot write '" + path + "'");
  }
  return file;
}

void provenance(std::ostream& err, const std::string& command,
                const Partial& p) {
  OdeConfig ode;
  err << "# sdist " << command << '\n'
      << "# f0 " << format_real(p.f0)
      << (p.f0 == kDefaultF0 ? " (default)" : "") << '\n'
      << "# degeneracy_tolerance " << format_real(kDegeneracyTolerance) << '\n'
      << "# near_degeneracy_band " << format_real(kNearDegeneracy) << '\n'
      << "# lerch_tolerance " << format_real(LerchArgs{}.tol) << '\n'
      << "# lerch_shift max(100, ceil(1 - v)) (" << default_lerch_shift(1.0)
      << " at v = 1)\n"
      << "# upper_tail_switch F^gamma in [" << format_real(kTailSwitchMin)
      << ", " << format_real(kUpperTailZ) << "] by shape\n"
      << "# cdf_tolerance " << format_real(kCdfTolerance) << '\n'
      << "# cdf_bracket_epsilon " << format_real(kCdfEpsilon) << '\n'
      << "# ode_steps " << ode.step_count << '\n'
      << "# ode_range [" << format_real(ode.f_floor) << ", "
      << format_real(ode.f_ceil) << "]\n"
      << "# curve_grid " << kCurvePoints << " points on ["
      << format_real(kCurveFMin) << ", " << format_real(kCurveFMax) << "]\n"
      << "# oracle_grid " << kOraclePoints << " points on ["
      << format_real(kOracleFMin) << ", " << format_real(kOracleFMax)
      << "]\n"
      << "# generator " << kGeneratorId << '\n'
      << "# uniform_clamp " << format_real(kUniformClamp) << '\n'
      << "# fit_min_samples " << kMinFitSamples << '\n'
      << "# fit_bins 2 IQR n^(-1/3) width (default)\n"
      << "# fit_plotting_positions (i - 0.5) / n\n";
}

// ---------------------------------------------------------------------------
// Subcommands

void cmd_quantile(const Options& opt, const std::vector<double>& levels,
                  std::ostream& out, std::ostream& err) {
  const SParams p = full_params(gather(opt));
  std::vector<std::vector<double>> rows;
  for (double F : levels) {
    const QuantileEval q = quantile_detailed(p, F);
    if (opt.verbose) {
      err << "# F " << format_real(F) << " route " << to_string(q.route)
          << (q.precision_fallback ? " (tail integration)" : "") << '\n';
    }
    rows.push_back({F, q.value});
  }
  emit_table(out, parse_format(opt.format, Format::Plain), {"F", "X"}, rows);
}

void cmd_cdf(const Options& opt, const std::vector<double>& xs,
             std::ostream& out) {
  const SParams p = full_params(gather(opt));
  std::vector<std::vector<double>> rows;
  for (double x : xs) rows.push_back({x, cdf(p, x)});
  emit_table(out, parse_format(opt.format, Format::Plain), {"x", "F"}, rows);
}

void cmd_pdf(const Options& opt, const std::vector<double>& xs,
             const std::vector<double>& levels, std::ostream& out) {
  const SParams p = full_params(gather(opt));
  if (xs.empty() == levels.empty()) {
    throw UsageError("pdf: give exactly one of --x or --F");
  }
  std::vector<std::vector<double>> rows;
  if (!xs.empty()) {
    for (double x : xs) rows.push_back({x, pdf(p, x)});
    emit_table(out, parse_format(opt.format, Format::Plain), {"x", "pdf"},
               rows);
  } else {
    for (double F : levels) {
      if (!(F >= 0.0 && F <= 1.0)) {
        throw std::invalid_argument("pdf: F must lie in [0, 1]");
      }
      rows.push_back({F, pdf_at_F(p, F)});
    }
    emit_table(out, parse_format(opt.format, Format::Plain), {"F", "pdf"},
               rows);
  }
}

void cmd_classify(const Options& opt, std::ostream& out) {
  const Partial partial = gather(opt);
  const double g = need(partial.g, "--g");
  const double h = need(partial.h, "--h");
  const CaseClass cls = classify(g, h);
  std::optional<SParams> p;
  if (partial.x0 && partial.alpha) p = full_params(partial);
  std::optional<Support> sup;
  std::optional<double> mode;
  if (p) {
    sup = support(*p);
    mode = mode_cumulative(*p);
  } else if (g > 0.0) {
    mode = std::pow(g / h, 1.0 / (h - g));
  }
  const std::string index =
      cls.degeneracy_index ? std::to_string(*cls.degeneracy_index) : "none";
  const std::string mode_s = mode ? format_real(*mode) : "none";

  switch (parse_format(opt.format, Format::Json)) {
    case Format::Plain:
      out << "case " << to_string(cls.variant) << '\n'
          << "degeneracy_index " << index << '\n';
      if (sup) {
        out << "left " << format_real(sup->left) << '\n'
            << "right " << format_real(sup->right) << '\n'
            << "left_slope " << to_string(sup->left_slope) << '\n';
      }
      out << "mode_F " << mode_s << '\n';
      break;
    case Format::Csv:
      out << "case,degeneracy_index,left,right,left_slope,mode_F\n"
          << to_string(cls.variant) << ',' << index << ','
          << (sup ? format_real(sup->left) : "") << ','
          << (sup ? format_real(sup->right) : "") << ','
          << (sup ? std::string(to_string(sup->left_slope)) : "") << ','
          << mode_s << '\n';
      break;
    case Format::Json: {
      json j = to_json(cls);
      j["g"] = g;
      j["h"] = h;
      if (p) j["params"] = to_json(*p);
      if (sup) j["support"] = to_json(*sup);
      j["mode_F"] = mode ? json(*mode) : json(nullptr);
      out << j.dump(2) << '\n';
      break;
    }
  }
}

struct DesignFlags {
  std::string solve;
  double f_star = 0.0;
  double x_star = 0.0;
};

void cmd_design(const Options& opt, const DesignFlags& d, std::ostream& out,
                std::ostream& err) {
  const ParamFlag* solved = d.solve == "x0"      ? &opt.x0
                            : d.solve == "alpha" ? &opt.alpha
                            : d.solve == "g"     ? &opt.g
                                                 : &opt.h;
  if (flag_value(*solved)) {
    throw UsageError(std::string(solved->flag) + ": conflicts with --solve " +
                     d.solve);
  }
  Partial partial = gather(opt);
  const QuantileConstraint c{d.f_star, d.x_star};
  double value = 0.0;
  std::optional<ShapeSolution> shape;
  if (d.solve == "x0") {
    const double alpha = need(partial.alpha, "--alpha");
    const double g = need(partial.g, "--g");
    const double h = need(partial.h, "--h");
    value = solve_x0(c, partial.f0, alpha, g, h);
    partial.x0 = value;
  } else if (d.solve == "alpha") {
    const double x0 = need(partial.x0, "--x0");
    const double g = need(partial.g, "--g");
    const double h = need(partial.h, "--h");
    value = solve_alpha(c, partial.f0, x0, g, h);
    partial.alpha = value;
  } else {
    const double x0 = need(partial.x0, "--x0");
    const double alpha = need(partial.alpha, "--alpha");
    const bool for_g = d.solve == "g";
    const double other = for_g ? need(partial.h, "--h") : need(partial.g, "--g");
    shape = solve_shape(for_g ? ShapeParam::G : ShapeParam::H, c, partial.f0,
                        x0, alpha, other);
    value = shape->value;
    (for_g ? partial.g : partial.h) = value;
  }
  const SParams p = full_params(partial);
  const double achieved = quantile(p, c.f_star);
  if (shape && shape->multiple_roots) {
    err << "warning: " << shape->sign_changes
        << " sign changes in the scan; returned the root nearest the scan "
           "midpoint\n";
  }
  switch (parse_format(opt.format, Format::Json)) {
    case Format::Plain:
      out << format_real(value) << '\n';
      break;
    case Format::Csv:
      out << "solve,value,f_star,x_star,achieved_x\n"
          << d.solve << ',' << format_real(value) << ','
          << format_real(c.f_star) << ',' << format_real(c.x_star) << ','
          << format_real(achieved) << '\n';
      break;
    case Format::Json: {
      json j;
      j["solve"] = d.solve;
      j["value"] = value;
      j["params"] = to_json(p);
      j["verification"] = {{"f_star", c.f_star},
                           {"x_star", c.x_star},
                           {"achieved_x", jreal(achieved)}};
      if (shape) {
        j["scan"] = {{"lo", shape->scan_lo},
                     {"hi", shape->scan_hi},
                     {"sign_changes", shape->sign_changes},
                     {"multiple_roots", shape->multiple_roots}};
      }
      out << j.dump(2) << '\n';
      break;
    }
  }
}

struct SampleFlags {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::string metadata_path;
  std::string output_path;
  bool table = false;
};

void cmd_sample(const Options& opt, const SampleFlags& s, std::ostream& out) {
  const SParams p = full_params(gather(opt));
  std::vector<double> values;
  std::optional<QuantileTable> table;
  if (s.table) {
    table = QuantileTable::build(p);
    Sampler sampler(p, s.seed);
    values.reserve(s.n);
    for (std::size_t i = 0; i < s.n; ++i) {
      values.push_back((*table)(sampler.next_uniform()));
    }
  } else {
    values = sample(SampleRequest{p, s.n, s.seed});
  }

  std::ofstream file;
  if (!s.output_path.empty()) file = open_output(s.output_path, "--output");
  std::ostream& sink = s.output_path.empty() ? out : file;
  switch (parse_format(opt.format, Format::Plain)) {
    case Format::Plain:
      for (double x : values) sink << format_real(x) << '\n';
      break;
    case Format::Csv:
      sink << "x\n";
      for (double x : values) sink << format_real(x) << '\n';
      break;
    case Format::Json:
      sink << json(values).dump() << '\n';
      break;
  }

  if (!s.metadata_path.empty()) {
    json meta = {{"params", to_json(p)},
                 {"n", s.n},
                 {"seed", s.seed},
                 {"generator", std::string(kGeneratorId)},
                 {"uniform_clamp", kUniformClamp},
                 {"method", s.table ? "table" : "exact"}};
    if (table) {
      meta["table_knots"] = table->knots();
      meta["table_max_error_F"] = table->max_error_F();
    }
    open_output(s.metadata_path, "--metadata") << meta.dump(2) << '\n';
  }
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::optional<double> parse_real(const std::string& field) {
  if (field.empty()) return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (end != field.c_str() + field.size() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

// One observation per line; a CSV line contributes its first field. The
// first nonblank line may be a header.
std::vector<double> read_observations(std::istream& in) {
  std::vector<double> data;
  std::vector<long> bad;
  std::string line;
  long number = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++number;
    std::string field = trim(line);
    if (field.empty()) continue;
    field = trim(field.substr(0, field.find(',')));
    const auto v = parse_real(field);
    if (v) {
      data.push_back(*v);
    } else if (!first) {
      bad.push_back(number);
    }
    first = false;
  }
  if (!bad.empty()) {
    std::ostringstream msg;
    msg << "fit: non-numeric input on line" << (bad.size() > 1 ? "s " : " ");
    for (std::size_t i = 0; i < bad.size() && i < 20; ++i) {
      msg << (i ? ", " : "") << bad[i];
    }
    if (bad.size() > 20) msg << ", ...";
    throw std::invalid_argument(msg.str());
  }
  return data;
}

void write_curve(std::ostream& out, Format fmt, const SParams& p,
                 const std::vector<double>& grid) {
  std::vector<std::vector<double>> rows;
  rows.reserve(grid.size());
  for (double F : grid) rows.push_back({F, quantile(p, F), pdf_at_F(p, F)});
  if (fmt == Format::Plain) {
    for (const auto& r : rows) {
      out << format_real(r[0]) << ' ' << format_real(r[1]) << ' '
          << format_real(r[2]) << '\n';
    }
    return;
  }
  emit_table(out, fmt, {"F", "X", "pdf"}, rows);
}

struct FitFlags {
  std::string input_path;
  std::size_t bins = 0;
  bool no_refine = false;
  std::string curve_path;
};

void cmd_fit(const Options& opt, const FitFlags& f, std::istream& in,
             std::ostream& out, std::ostream& err) {
  std::vector<double> data;
  if (f.input_path.empty()) {
    data = read_observations(in);
  } else {
    std::ifstream file(f.input_path);
    if (!file) throw UsageError("--input: cannot open '" + f.input_path + "'");
    data = read_observations(file);
  }
  FitConfig config;
  if (f.bins > 0) config.bins = f.bins;
  config.refine = !f.no_refine;
  const FitResult r = fit(data, config);
  if (opt.verbose) {
    err << "# observations " << data.size() << '\n'
        << "# stage2_iterations " << r.stage2.iterations << '\n';
  }
  const SParams& p = r.params;
  switch (parse_format(opt.format, Format::Json)) {
    case Format::Plain:
      out << "f0 " << format_real(p.f0()) << '\n'
          << "x0 " << format_real(p.x0()) << '\n'
          << "alpha " << format_real(p.alpha()) << '\n'
          << "g " << format_real(p.g()) << '\n'
          << "h " << format_real(p.h()) << '\n';
      break;
    case Format::Csv:
      out << "f0,x0,alpha,g,h\n"
          << format_real(p.f0()) << ',' << format_real(p.x0()) << ','
          << format_real(p.alpha()) << ',' << format_real(p.g()) << ','
          << format_real(p.h()) << '\n';
      break;
    case Format::Json:
      out << to_json(r).dump(2) << '\n';
      break;
  }
  if (!f.curve_path.empty()) {
    auto file = open_output(f.curve_path, "--curve");
    write_curve(file, Format::Csv, p,
                uniform_grid(kCurveFMin, kCurveFMax, kCurvePoints));
  }
}

struct GridFlags {
  std::size_t points = 0;
  double f_min = 0.0;
  double f_max = 0.0;
  std::vector<double> explicit_grid;
  long steps = OdeConfig{}.step_count;
};

void cmd_curve(const Options& opt, const GridFlags& gf, std::ostream& out) {
  const SParams p = full_params(gather(opt));
  std::vector<double> grid = gf.explicit_grid;
  if (grid.empty()) {
    check_grid(gf.f_min, gf.f_max, gf.points, "--F-min", "--F-max");
    grid = uniform_grid(gf.f_min, gf.f_max, gf.points);
  }
  write_curve(out, parse_format(opt.format, Format::Csv), p, grid);
}

void cmd_oracle_check(const Options& opt, const GridFlags& gf,
                      std::ostream& out) {
  const SParams p = full_params(gather(opt));
  check_grid(gf.f_min, gf.f_max, gf.points, "--F-min", "--F-max");
  OdeConfig cfg;
  cfg.step_count = gf.steps;
  if (!(gf.f_min >= cfg.f_floor && gf.f_max <= cfg.f_ceil)) {
    throw UsageError("--F-min/--F-max: must lie within [" +
                     format_real(cfg.f_floor) + ", " +
                     format_real(cfg.f_ceil) + "]");
  }
  const std::vector<double> grid = uniform_grid(gf.f_min, gf.f_max, gf.points);
  const std::vector<double> ode = oracle_quantiles(p, grid, cfg);
  double max_abs = 0.0;
  double max_rel = 0.0;
  double worst_F = grid.front();
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = quantile(p, grid[i]);
    const double diff = std::abs(x - ode[i]);
    const double rel = diff / (1.0 + std::abs(x));
    max_abs = std::max(max_abs, diff);
    if (rel > max_rel) {
      max_rel = rel;
      worst_F = grid[i];
    }
    rows.push_back({grid[i], x, ode[i], rel});
  }
  switch (parse_format(opt.format, Format::Plain)) {
    case Format::Plain:
      out << format_real(max_rel) << '\n';
      break;
    case Format::Csv:
      emit_table(out, Format::Csv, {"F", "analytical", "oracle", "deviation"},
                 rows);
      break;
    case Format::Json:
      out << json{{"max_abs_deviation", max_abs},
                  {"max_rel_deviation", max_rel},
                  {"worst_F", worst_F},
                  {"points", grid.size()},
                  {"steps", cfg.step_count}}
                 .dump(2)
          << '\n';
      break;
  }
}

void add_param_flags(CLI::App& app, Options& opt) {
  for (ParamFlag* f : opt.all()) {
    f->option = app.add_option(f->flag, f->value,
                               std::string("S-distribution parameter ") +
                                   f->key);
  }
  opt.f0.option->description("cumulative level at x0 (default 0.5)");
  app.add_option("--params", opt.params_path,
                 "JSON file with parameters (fit output accepted)");
  app.add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "plain"}));
  app.add_flag("--verbose", opt.verbose,
               "print defaults and tolerances to stderr");
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err) {
  CLI::App app{"S-distribution toolkit", "sdist"};
  app.set_help_flag("--help", "print help and exit");
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  add_param_flags(app, opt);

  std::vector<double> levels;
  std::vector<double> xs;

  auto* quantile_cmd = app.add_subcommand("quantile", "quantile X(F)");
  quantile_cmd->add_option("--F", levels, "cumulative levels")->required();

  auto* cdf_cmd = app.add_subcommand("cdf", "cumulative F(x)");
  cdf_cmd->add_option("--x", xs, "values")->required();

  auto* pdf_cmd = app.add_subcommand("pdf", "density at x or at level F");
  pdf_cmd->add_option("--x", xs, "values");
  pdf_cmd->add_option("--F", levels, "cumulative levels");

  app.add_subcommand("classify", "case, support and mode of (g, h)");

  DesignFlags design;
  auto* design_cmd =
      app.add_subcommand("design", "solve one parameter for X(F*) = x*");
  design_cmd->add_option("--solve", design.solve, "parameter to solve for")
      ->required()
      ->check(CLI::IsMember({"x0", "alpha", "g", "h"}));
  design_cmd->add_option("--constraint-F", design.f_star, "level F*")
      ->required();
  design_cmd->add_option("--constraint-x", design.x_star, "value x*")
      ->required();

  SampleFlags samp;
  auto* sample_cmd =
      app.add_subcommand("sample", "inverse-transform random sample");
  sample_cmd->add_option("--n", samp.n, "sample size")
      ->required()
      ->check(CLI::Range(std::size_t{1}, std::numeric_limits<std::size_t>::max()));
  sample_cmd->add_option("--seed", samp.seed, "generator seed");
  sample_cmd->add_option("--metadata", samp.metadata_path,
                         "write JSON metadata to this path");
  sample_cmd->add_option("--output", samp.output_path,
                         "write values to this path");
  sample_cmd->add_flag("--table", samp.table,
                       "interpolated quantile table instead of exact");

  FitFlags fitf;
  auto* fit_cmd = app.add_subcommand("fit", "two-stage fit to observations");
  fit_cmd->add_option("--input", fitf.input_path,
                      "observations, one per line (default stdin)");
  fit_cmd->add_option("--bins", fitf.bins, "histogram bins")
      ->check(CLI::Range(std::size_t{1}, std::numeric_limits<std::size_t>::max()));
  fit_cmd->add_flag("--no-refine", fitf.no_refine,
                    "skip the joint refinement step");
  fit_cmd->add_option("--curve", fitf.curve_path,
                      "write the fitted curve as CSV to this path");

  GridFlags curve{kCurvePoints, kCurveFMin, kCurveFMax, {}};
  auto* curve_cmd = app.add_subcommand("curve", "(F, X, pdf) on a grid");
  curve_cmd->add_option("--points", curve.points, "grid points");
  curve_cmd->add_option("--F-min", curve.f_min, "lowest level");
  curve_cmd->add_option("--F-max", curve.f_max, "highest level");
  curve_cmd->add_option("--grid", curve.explicit_grid, "explicit levels");

  GridFlags oracle{kOraclePoints, kOracleFMin, kOracleFMax, {}};
  auto* oracle_cmd = app.add_subcommand(
      "oracle-check", "max closed-form vs RK4 deviation on a grid");
  oracle_cmd->add_option("--points", oracle.points, "grid points");
  oracle_cmd->add_option("--F-min", oracle.f_min, "lowest level");
  oracle_cmd->add_option("--F-max", oracle.f_max, "highest level");
  oracle_cmd->add_option("--steps", oracle.steps, "RK4 steps");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (opt.verbose) provenance(err, command, gather(opt));
    if (command == "quantile") {
      cmd_quantile(opt, levels, out, err);
    } else if (command == "cdf") {
      cmd_cdf(opt, xs, out);
    } else if (command == "pdf") {
      cmd_pdf(opt, xs, levels, out);
    } else if (command == "classify") {
      cmd_classify(opt, out);
    } else if (command == "design") {
      cmd_design(opt, design, out, err);
    } else if (command == "sample") {
      cmd_sample(opt, samp, out);
    } else if (command == "fit") {
      cmd_fit(opt, fitf, in, out, err);
    } else if (command == "curve") {
      cmd_curve(opt, curve, out);
    } else {
      cmd_oracle_check(opt, oracle, out);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  out.flush();
  return kExitOk;
}

}  // namespace sdist::cli
