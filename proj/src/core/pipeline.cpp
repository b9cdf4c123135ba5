#include "core/pipeline.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include "core/dataset_io.hpp"
#include "core/errors.hpp"

namespace eotrack {

namespace fs = std::filesystem;

void parallel_run(const std::vector<std::function<void()>>& tasks, int jobs) {
  if (tasks.empty()) return;
  if (jobs <= 0) {
    jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  }
  jobs = std::min<int>(jobs, static_cast<int>(tasks.size()));

  std::atomic<std::size_t> next{0};
  std::mutex err_mutex;
  std::exception_ptr first_error;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      try {
        tasks[i]();
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };

  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);
}

namespace {

std::string run_dir_name(int k) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "run_%03d", k);
  return buf;
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write file: " + path);
  out << content;
  if (!out) throw IoError("failed writing file: " + path);
}

}  // namespace

Report run_compare(const Scenario& s, const CompareConfig& cfg) {
  validate_scenario(s);
  if (cfg.runs < 1) throw std::invalid_argument("compare: runs must be >= 1");
  if (cfg.particle_count < 1) throw std::invalid_argument("compare: particles must be >= 1");
  if (cfg.methods.empty()) throw std::invalid_argument("compare: no methods given");

  auto note = [&](const std::string& msg) {
    if (cfg.progress) cfg.progress(msg);
  };

  const bool writing = !cfg.out_dir.empty();
  if (writing) {
    fs::create_directories(fs::path(cfg.out_dir) / "runs");
    save_scenario(s, (fs::path(cfg.out_dir) / "scenario.json").string());
  }

  // One dataset per run, shared by every method.
  std::vector<Dataset> datasets(cfg.runs);
  {
    std::vector<std::function<void()>> tasks;
    for (int k = 0; k < cfg.runs; ++k) {
      tasks.push_back([&, k] {
        datasets[k] = simulate(s, derive_seed(s.seed, "dataset", k));
      });
    }
    parallel_run(tasks, cfg.jobs);
  }
  note("simulated " + std::to_string(cfg.runs) + " datasets");

  if (writing) {
    for (int k = 0; k < cfg.runs; ++k) {
      const fs::path dir = fs::path(cfg.out_dir) / "runs" / run_dir_name(k);
      fs::create_directories(dir);
      save_dataset(datasets[k], s, (dir / "dataset.csv").string(),
                   (dir / "truth.csv").string());
    }
  }

  std::vector<std::vector<TrackOutput>> outputs(
      cfg.methods.size(), std::vector<TrackOutput>(cfg.runs));
  {
    std::mutex progress_mutex;
    std::vector<std::function<void()>> tasks;
    for (std::size_t v = 0; v < cfg.methods.size(); ++v) {
      for (int k = 0; k < cfg.runs; ++k) {
        tasks.push_back([&, v, k] {
          const Method method = cfg.methods[v];
          TrackerConfig tc;
          tc.method = method;
          tc.particle_count = cfg.particle_count;
          tc.ideal_samples = cfg.ideal_samples;
          tc.ess_threshold = s.tracker.ess_threshold;
          tc.mu_los = s.tracker.mu_los;
          tc.seed = derive_seed(s.seed, "filter",
                                static_cast<std::uint64_t>(method), k);
          const auto t0 = std::chrono::steady_clock::now();
          outputs[v][k] = run_filter(datasets[k], s, tc);
          const auto t1 = std::chrono::steady_clock::now();
          if (cfg.progress) {
            char buf[128];
            std::snprintf(buf, sizeof(buf), "%s run %d/%d done (%.1f s)",
                          method_name(method), k + 1, cfg.runs,
                          std::chrono::duration<double>(t1 - t0).count());
            std::lock_guard<std::mutex> lock(progress_mutex);
            cfg.progress(buf);
          }
        });
      }
    }
    parallel_run(tasks, cfg.jobs);
  }

  Report report;
  report.runs = cfg.runs;
  report.particle_count = cfg.particle_count;
  report.olos_windows = olos_windows_of(s);

  for (std::size_t v = 0; v < cfg.methods.size(); ++v) {
    RunBatch batch;
    batch.tracks = outputs[v];
    for (int k = 0; k < cfg.runs; ++k) batch.truths.push_back(datasets[k].truth);
    report.variants[method_name(cfg.methods[v])] = summarize_batch(batch);
  }

  if (writing) {
    for (std::size_t v = 0; v < cfg.methods.size(); ++v) {
      const std::string name = method_name(cfg.methods[v]);
      for (int k = 0; k < cfg.runs; ++k) {
        const fs::path dir = fs::path(cfg.out_dir) / "runs" / run_dir_name(k);
        save_track(outputs[v][k], (dir / ("track_" + name + ".csv")).string());
      }
      const auto& summary = report.variants.at(name);
      std::string rmse_csv = "n,rmse_m\n";
      for (std::size_t n = 0; n < summary.rmse_per_step.size(); ++n) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%zu,%.9g\n", n + 1,
                      summary.rmse_per_step[n]);
        rmse_csv += buf;
      }
      write_text((fs::path(cfg.out_dir) / ("rmse_" + name + ".csv")).string(),
                 rmse_csv);

      std::string cdf_csv = "error_m,cumulative_fraction\n";
      for (const auto& [e, f] : summary.cdf) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.9g,%.9g\n", e, f);
        cdf_csv += buf;
      }
      write_text((fs::path(cfg.out_dir) / ("cdf_" + name + ".csv")).string(),
                 cdf_csv);
    }
    save_report(report, (fs::path(cfg.out_dir) / "report.json").string());
  }
  note("comparison complete");
  return report;
}

}  // namespace eotrack
