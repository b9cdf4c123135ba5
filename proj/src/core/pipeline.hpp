#pragma once

#include <functional>

#include "core/evaluation.hpp"

namespace eotrack {

/// Runs tasks on a bounded worker pool; 0 jobs means hardware concurrency.
/// The first exception thrown by a task is rethrown after all workers join.
void parallel_run(const std::vector<std::function<void()>>& tasks, int jobs);

struct CompareConfig {
  std::vector<Method> methods{Method::GeoExtended, Method::IdealExtended,
                              Method::ActiveOnly, Method::PointTarget};
  int particle_count = 1000;
  int ideal_samples = 50;
  int runs = 20;
  int jobs = 0;
  std::string out_dir;  // empty: keep everything in memory
  std::function<void(const std::string&)> progress;
};

/// Full Monte-Carlo comparison: per run one fresh dataset (shared across
/// methods), one filter run per (method, run), then aggregation. With an
/// output directory set, writes scenario.json, per-run dataset/track CSVs,
/// report.json and per-variant plot-ready CSV exports.
Report run_compare(const Scenario& s, const CompareConfig& cfg);

}  // namespace eotrack
