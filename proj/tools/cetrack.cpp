// Copyright 2026 The cetrack Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cetrack/eval.hpp"
#include "cetrack/io.hpp"

namespace {

using namespace cetrack;

bool log_verbose() {
  const char* env = std::getenv("CETRACK_LOG");
  return env != nullptr && std::string_view(env) == "debug";
}

void log_debug(const std::string& message) {
  if (log_verbose()) std::cerr << "cetrack: " << message << "\n";
}

struct CommonOpts {
  std::string input;
  std::string class_label = "car";
  std::optional<int> dimension;
  std::string perspective = "ego";
  std::string out;
  std::string format;
  int threads = 0;
};

void add_common(CLI::App* cmd, CommonOpts& opts, const char* default_format) {
  cmd->add_option("--input", opts.input, "Frame-stream file (one JSON frame per line)")
      ->required();
  cmd->add_option("--class", opts.class_label,
                  "Object category to evaluate (default: car)");
  cmd->add_option("--dim", opts.dimension,
                  "Force 2D (BEV) or 3D evaluation; defaults to the data")
      ->check(CLI::IsMember({2, 3}));
  cmd->add_option("--perspective", opts.perspective,
                  "Corner selection: ego or object")
      ->check(CLI::IsMember({"ego", "object"}));
  cmd->add_option("--out", opts.out, "Output path (default: stdout)");
  if (default_format != nullptr) {
    opts.format = default_format;
    cmd->add_option("--format", opts.format,
                    "Output format: structured (JSON) or tabular (CSV)")
        ->check(CLI::IsMember({"structured", "tabular"}));
  }
  cmd->add_option("--threads", opts.threads,
                  "Worker threads across scenes (0 = all cores)")
      ->check(CLI::NonNegativeNumber);
}

Perspective parse_perspective(const std::string& name) {
  const auto p = perspective_from_name(name);
  if (!p) throw std::invalid_argument("unknown perspective '" + name + "'");
  return *p;
}

std::vector<Metric> parse_metric_list(const std::string& csv) {
  std::vector<Metric> metrics;
  std::stringstream stream(csv);
  std::string token;
  while (std::getline(stream, token, ',')) {
    if (token.empty()) continue;
    const auto m = metric_from_name(token);
    if (!m) {
      throw std::invalid_argument("unknown metric '" + token +
                                  "' (expected ce, iou, or cpd)");
    }
    metrics.push_back(*m);
  }
  if (metrics.empty()) throw std::invalid_argument("empty metric list");
  return metrics;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write output file: " + path);
  file << content;
  if (!file) throw std::runtime_error("error while writing: " + path);
}

EvalConfig make_eval_config(const CommonOpts& opts,
                            const std::vector<Metric>& metrics,
                            std::optional<double> gate_override) {
  EvalConfig config;
  config.class_label = opts.class_label;
  config.metrics = metrics;
  config.gate_override = gate_override;
  config.dimension = opts.dimension;
  config.perspective = parse_perspective(opts.perspective);
  config.threads = opts.threads;
  return config;
}

std::vector<Scene> load_input(const CommonOpts& opts) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<Scene> scenes = load_frames(opts.input);
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);
  log_debug("parsed " + std::to_string(scenes.size()) + " scene(s) from " +
            opts.input + " in " + std::to_string(elapsed.count()) + " ms");
  return scenes;
}

int run_evaluate(const CommonOpts& opts, const std::string& metric_csv,
                 std::optional<double> threshold) {
  const std::vector<Scene> scenes = load_input(opts);
  const EvalConfig config =
      make_eval_config(opts, parse_metric_list(metric_csv), threshold);
  const EvalReport report = evaluate(scenes, config);
  write_output(opts.out, opts.format == "tabular" ? report_to_csv(report)
                                                  : report_to_json(report));
  return 0;
}

int run_compare(const CommonOpts& opts, std::optional<double> ce_threshold,
                std::optional<double> iou_threshold) {
  const std::vector<Scene> scenes = load_input(opts);
  const EvalConfig config =
      make_eval_config(opts, {Metric::kContour}, ce_threshold);
  const EvalReport report = evaluate(scenes, config);
  const std::vector<MetricRecord> records =
      assigned_records(report.per_metric.front());

  const auto defaults = default_thresholds(opts.class_label);
  QuadrantSummary summary;
  if (ce_threshold) {
    summary.ce_threshold = *ce_threshold;
  } else if (defaults) {
    summary.ce_threshold = defaults->ce_gate;
  } else {
    throw std::invalid_argument("no default CE threshold for class '" +
                                opts.class_label + "'; pass --threshold");
  }
  if (iou_threshold) {
    summary.iou_threshold = *iou_threshold;
  } else if (defaults) {
    summary.iou_threshold = defaults->iou_gate;
  } else {
    throw std::invalid_argument("no default IoU threshold for class '" +
                                opts.class_label + "'; pass --iou-threshold");
  }
  summary.counts =
      quadrant_classify(records, summary.ce_threshold, summary.iou_threshold);
  write_output(opts.out,
               opts.format == "tabular"
                   ? quadrants_to_csv(opts.class_label, summary)
                   : quadrants_to_json(opts.class_label, summary));
  return 0;
}

int run_bins(const CommonOpts& opts, const std::string& by,
             const std::string& metric_csv, std::optional<double> threshold) {
  const std::vector<Scene> scenes = load_input(opts);
  const EvalConfig config =
      make_eval_config(opts, parse_metric_list(metric_csv), threshold);
  const EvalReport report = evaluate(scenes, config);
  std::string content;
  if (opts.format == "structured") {
    content = bins_to_json(report, by);
  } else {
    content = by == "yaw" ? yaw_bins_to_csv(report)
                          : distance_bins_to_csv(report);
  }
  write_output(opts.out, content);
  return 0;
}

int run_scatter(const CommonOpts& opts, const std::string& x_name,
                const std::string& y_name, std::optional<double> max_ce,
                std::optional<double> threshold) {
  const auto x = field_from_name(x_name);
  const auto y = field_from_name(y_name);
  if (!x || !y) {
    throw std::invalid_argument(
        "scatter fields must be one of ce, iou, cpd, tde, eod, gt_to_ego, "
        "yaw_error");
  }
  const std::vector<Scene> scenes = load_input(opts);
  const EvalConfig config =
      make_eval_config(opts, {Metric::kContour}, threshold);
  const EvalReport report = evaluate(scenes, config);
  std::vector<MetricRecord> records =
      assigned_records(report.per_metric.front());
  if (max_ce) {
    std::erase_if(records,
                  [&](const MetricRecord& r) { return r.ce > *max_ce; });
  }
  write_output(opts.out, scatter_csv(records, *x, *y));
  return 0;
}

int run_correlate(const CommonOpts& opts, std::optional<double> window,
                  std::optional<double> threshold) {
  const std::vector<Scene> scenes = load_input(opts);
  const EvalConfig config =
      make_eval_config(opts, {Metric::kContour}, threshold);
  const EvalReport report = evaluate(scenes, config);
  std::vector<MetricRecord> records =
      assigned_records(report.per_metric.front());

  CorrelationSummary summary;
  if (window) {
    summary.ce_window = *window;
  } else if (const auto defaults = default_thresholds(opts.class_label)) {
    summary.ce_window = defaults->ce_window;
  } else {
    throw std::invalid_argument("no default CE window for class '" +
                                opts.class_label + "'; pass --window");
  }
  std::erase_if(records, [&](const MetricRecord& r) {
    return r.ce > summary.ce_window;
  });
  summary.count = static_cast<std::int64_t>(records.size());
  summary.ce_iou = correlate(records, MetricField::kCe, MetricField::kIou);
  summary.ce_cpd = correlate(records, MetricField::kCe, MetricField::kCpd);
  summary.iou_cpd = correlate(records, MetricField::kIou, MetricField::kCpd);
  write_output(opts.out,
               opts.format == "tabular"
                   ? correlations_to_csv(opts.class_label, summary)
                   : correlations_to_json(opts.class_label, summary));
  return 0;
}

int run_filter_scenes(const CommonOpts& opts, const SceneFilter& filter,
                      std::optional<double> threshold) {
  const std::vector<Scene> scenes = load_input(opts);
  const std::vector<Scene> selected =
      filter_scenes(scenes, filter, opts.class_label, threshold,
                    parse_perspective(opts.perspective), opts.dimension);
  std::string out;
  for (const Scene& scene : selected) {
    out += scene.id;
    out += '\n';
  }
  write_output(opts.out, out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ego-centric multi-object tracking evaluation toolkit"};
  app.require_subcommand(1);
  // Defaults may come from a TOML/INI file with one section per subcommand,
  // e.g. [evaluate]\nclass = "truck". Command-line flags take precedence.
  app.set_config("--config", "",
                 "Read defaults from a TOML/INI config file (one section per "
                 "subcommand)");

  CommonOpts evaluate_opts;
  std::string evaluate_metrics = "ce,iou,cpd";
  std::optional<double> evaluate_threshold;
  CLI::App* cmd_evaluate = app.add_subcommand(
      "evaluate", "Functional error accounting (FTP/FFP/FFN/FID, FTPR)");
  add_common(cmd_evaluate, evaluate_opts, "structured");
  cmd_evaluate->add_option("--metric", evaluate_metrics,
                           "Comma-separated criteria: ce, iou, cpd");
  cmd_evaluate->add_option(
      "--threshold", evaluate_threshold,
      "Gate override (meters for ce/cpd, IoU value for iou); single metric only");

  CommonOpts compare_opts;
  std::optional<double> compare_ce;
  std::optional<double> compare_iou;
  CLI::App* cmd_compare = app.add_subcommand(
      "compare", "Match-quality quadrants across the CE and IoU thresholds");
  add_common(cmd_compare, compare_opts, "structured");
  cmd_compare->add_option("--threshold", compare_ce,
                          "CE threshold (default: class gate)");
  cmd_compare->add_option("--iou-threshold", compare_iou,
                          "IoU threshold (default: class gate)");

  CommonOpts bins_opts;
  std::string bins_by;
  std::string bins_metrics = "ce,iou,cpd";
  std::optional<double> bins_threshold;
  CLI::App* cmd_bins = app.add_subcommand(
      "bins", "Binned functional counts and statistics");
  add_common(cmd_bins, bins_opts, "tabular");
  cmd_bins->add_option("--by", bins_by, "Binning key: distance or yaw")
      ->required()
      ->check(CLI::IsMember({"distance", "yaw"}));
  cmd_bins->add_option("--metric", bins_metrics,
                       "Comma-separated criteria: ce, iou, cpd");
  cmd_bins->add_option("--threshold", bins_threshold,
                       "Gate override; single metric only");

  CommonOpts scatter_opts;
  std::string scatter_x = "ce";
  std::string scatter_y = "iou";
  std::optional<double> scatter_max_ce;
  std::optional<double> scatter_threshold;
  CLI::App* cmd_scatter = app.add_subcommand(
      "scatter", "Per-match metric pairs as CSV (plot-ready)");
  add_common(cmd_scatter, scatter_opts, nullptr);
  cmd_scatter->add_option("--x", scatter_x, "X field (default: ce)");
  cmd_scatter->add_option("--y", scatter_y, "Y field (default: iou)");
  cmd_scatter->add_option("--max-ce", scatter_max_ce,
                          "Keep only pairs with CE below this window");
  cmd_scatter->add_option("--threshold", scatter_threshold,
                          "CE gate override (affects gating, not the rows)");

  CommonOpts correlate_opts;
  std::optional<double> correlate_window;
  std::optional<double> correlate_threshold;
  CLI::App* cmd_correlate = app.add_subcommand(
      "correlate", "Pearson correlations among CE, IoU, and CPD");
  add_common(cmd_correlate, correlate_opts, "structured");
  cmd_correlate->add_option("--window", correlate_window,
                            "CE window in meters (default: class window)");
  cmd_correlate->add_option("--threshold", correlate_threshold,
                            "CE gate override for the matching pass");

  CommonOpts filter_opts;
  SceneFilter scene_filter;
  std::optional<double> filter_threshold;
  CLI::App* cmd_filter = app.add_subcommand(
      "filter-scenes",
      "Select scenes by yaw error, ego proximity, and frame count");
  add_common(cmd_filter, filter_opts, nullptr);
  cmd_filter->add_option("--min-yaw", scene_filter.min_yaw_error_deg,
                         "Minimum yaw error in degrees (default: 10)");
  cmd_filter->add_option("--max-dist", scene_filter.max_proximity,
                         "Proximity ceiling in meters (default: 30)");
  cmd_filter->add_option("--min-frames", scene_filter.min_frames,
                         "Minimum frames per scene (default: 10)");
  cmd_filter->add_option("--threshold", filter_threshold,
                         "CE gate override for the matching pass");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_evaluate->parsed()) {
      return run_evaluate(evaluate_opts, evaluate_metrics, evaluate_threshold);
    }
    if (cmd_compare->parsed()) {
      return run_compare(compare_opts, compare_ce, compare_iou);
    }
    if (cmd_bins->parsed()) {
      return run_bins(bins_opts, bins_by, bins_metrics, bins_threshold);
    }
    if (cmd_scatter->parsed()) {
      return run_scatter(scatter_opts, scatter_x, scatter_y, scatter_max_ce,
                         scatter_threshold);
    }
    if (cmd_correlate->parsed()) {
      return run_correlate(correlate_opts, correlate_window,
                           correlate_threshold);
    }
    if (cmd_filter->parsed()) {
      return run_filter_scenes(filter_opts, scene_filter, filter_threshold);
    }
  } catch (const std::exception& e) {
    std::cerr << "cetrack: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
