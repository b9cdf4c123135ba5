#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "core/tracker.hpp"

namespace eotrack {

/// Monte-Carlo runs of one method: tracks[k] was produced on truths[k].
struct RunBatch {
  std::vector<TrackOutput> tracks;
  std::vector<GroundTruth> truths;
};

double position_error(const Vec2& estimate, const Vec2& truth);

/// Per-step RMSE of the device position across runs.
std::vector<double> rmse_per_step(const RunBatch& batch);

/// Empirical CDF over all (run, step) position errors: sorted
/// (error, cumulative fraction) pairs.
std::vector<std::pair<double, double>> error_cdf(const RunBatch& batch);

struct OlosWindow {
  int from = 0;
  int to = 0;
  int blocked_count = 0;
};

struct VariantSummary {
  double avg_rmse = 0.0;           // mean over steps of the per-step RMSE
  double mean_step_seconds = 0.0;  // mean over all runs and steps
  double p50 = 0.0;
  double p90 = 0.0;
  long degeneracy_events = 0;
  long total_steps = 0;
  std::vector<double> rmse_per_step;
  std::vector<std::pair<double, double>> cdf;
};

VariantSummary summarize_batch(const RunBatch& batch);

struct Report {
  int runs = 0;
  int particle_count = 0;
  std::vector<OlosWindow> olos_windows;
  std::map<std::string, VariantSummary> variants;
};

std::vector<OlosWindow> olos_windows_of(const Scenario& s);

std::string report_to_json(const Report& report);
void save_report(const Report& report, const std::string& path);

/// Compact fixed-width text table of the per-variant headline numbers.
std::string report_table(const Report& report);

}  // namespace eotrack
