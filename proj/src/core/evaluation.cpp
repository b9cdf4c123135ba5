#include "core/evaluation.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "core/errors.hpp"

namespace eotrack {

using nlohmann::json;

double position_error(const Vec2& estimate, const Vec2& truth) {
  return (estimate - truth).norm();
}

namespace {

void check_batch(const RunBatch& batch) {
  if (batch.tracks.empty()) throw std::invalid_argument("evaluation: empty batch");
  if (batch.tracks.size() != batch.truths.size()) {
    throw std::invalid_argument("evaluation: tracks and truths differ in run count");
  }
  const std::size_t n = batch.tracks.front().steps.size();
  for (std::size_t k = 0; k < batch.tracks.size(); ++k) {
    if (batch.tracks[k].steps.size() != n ||
        batch.truths[k].steps.size() != n) {
      throw std::invalid_argument("evaluation: runs differ in step count");
    }
  }
}

}  // namespace

std::vector<double> rmse_per_step(const RunBatch& batch) {
  check_batch(batch);
  const std::size_t num_steps = batch.tracks.front().steps.size();
  const std::size_t runs = batch.tracks.size();

  std::vector<double> out(num_steps, 0.0);
  for (std::size_t n = 0; n < num_steps; ++n) {
    double sum_sq = 0.0;
    for (std::size_t k = 0; k < runs; ++k) {
      const double e = position_error(batch.tracks[k].steps[n].device,
                                      batch.truths[k].steps[n].device);
      sum_sq += e * e;
    }
    out[n] = std::sqrt(sum_sq / runs);
  }
  return out;
}

std::vector<std::pair<double, double>> error_cdf(const RunBatch& batch) {
  check_batch(batch);
  std::vector<double> errors;
  for (std::size_t k = 0; k < batch.tracks.size(); ++k) {
    for (std::size_t n = 0; n < batch.tracks[k].steps.size(); ++n) {
      errors.push_back(position_error(batch.tracks[k].steps[n].device,
                                      batch.truths[k].steps[n].device));
    }
  }
  std::sort(errors.begin(), errors.end());
  std::vector<std::pair<double, double>> cdf;
  cdf.reserve(errors.size());
  for (std::size_t i = 0; i < errors.size(); ++i) {
    cdf.emplace_back(errors[i], double(i + 1) / errors.size());
  }
  return cdf;
}

VariantSummary summarize_batch(const RunBatch& batch) {
  VariantSummary s;
  s.rmse_per_step = rmse_per_step(batch);
  s.cdf = error_cdf(batch);

  double rmse_sum = 0.0;
  for (double v : s.rmse_per_step) rmse_sum += v;
  s.avg_rmse = s.rmse_per_step.empty() ? 0.0 : rmse_sum / s.rmse_per_step.size();

  double sec_sum = 0.0;
  long steps = 0;
  for (const auto& t : batch.tracks) {
    for (const auto& st : t.steps) {
      sec_sum += st.seconds;
      ++steps;
    }
    s.degeneracy_events += static_cast<long>(t.degeneracy_steps.size());
  }
  s.total_steps = steps;
  s.mean_step_seconds = steps > 0 ? sec_sum / steps : 0.0;

  auto quantile = [&](double q) {
    if (s.cdf.empty()) return 0.0;
    const std::size_t idx = std::min(
        s.cdf.size() - 1,
        static_cast<std::size_t>(std::ceil(q * s.cdf.size())) -
            (q > 0.0 ? 1 : 0));
    return s.cdf[idx].first;
  };
  s.p50 = quantile(0.5);
  s.p90 = quantile(0.9);
  return s;
}

std::vector<OlosWindow> olos_windows_of(const Scenario& s) {
  std::vector<OlosWindow> out;
  for (const auto& w : s.blockage) {
    out.push_back({w.from, w.to, static_cast<int>(w.anchor_ids.size())});
  }
  return out;
}

std::string report_to_json(const Report& report) {
  json j;
  j["runs"] = report.runs;
  j["particles"] = report.particle_count;

  json olos = json::array();
  for (const auto& w : report.olos_windows) {
    olos.push_back({{"from", w.from}, {"to", w.to}, {"blocked", w.blocked_count}});
  }
  j["olos_windows"] = olos;

  json variants;
  for (const auto& [name, s] : report.variants) {
    json v;
    v["avg_rmse_m"] = s.avg_rmse;
    v["mean_step_seconds"] = s.mean_step_seconds;
    v["p50_m"] = s.p50;
    v["p90_m"] = s.p90;
    v["degeneracy_events"] = s.degeneracy_events;
    v["total_steps"] = s.total_steps;
    v["rmse_per_step"] = s.rmse_per_step;
    json cdf = json::array();
    for (const auto& [e, f] : s.cdf) cdf.push_back(json::array({e, f}));
    v["cdf"] = cdf;
    variants[name] = v;
  }
  j["variants"] = variants;
  return j.dump(2) + "\n";
}

void save_report(const Report& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write report file: " + path);
  out << report_to_json(report);
  if (!out) throw IoError("failed writing report file: " + path);
}

std::string report_table(const Report& report) {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%-12s %12s %12s %10s %10s\n", "variant",
                "avg RMSE [m]", "s/step", "p50 [m]", "p90 [m]");
  out += buf;
  for (const auto& [name, s] : report.variants) {
    std::snprintf(buf, sizeof(buf), "%-12s %12.3f %12.4f %10.3f %10.3f\n",
                  name.c_str(), s.avg_rmse, s.mean_step_seconds, s.p50, s.p90);
    out += buf;
  }
  return out;
}

}  // namespace eotrack
