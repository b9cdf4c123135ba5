// eot — command-line front end for the eotrack shared library.
//
// Subcommands:
//   simulate   synthesize a measurement dataset + ground truth
//   track      run the particle filter on an existing dataset
//   compare    full Monte-Carlo method comparison with report
//
// Everything goes through the public C API in eotrack/eotrack.h.

#include <CLI11.hpp>
#include <eotrack/eotrack.h>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct ScenarioDeleter {
  void operator()(eot_scenario* s) const { eot_scenario_destroy(s); }
};
struct DatasetDeleter {
  void operator()(eot_dataset* d) const { eot_dataset_destroy(d); }
};
struct TrackDeleter {
  void operator()(eot_track* t) const { eot_track_destroy(t); }
};
struct ReportDeleter {
  void operator()(eot_report* r) const { eot_report_destroy(r); }
};

using ScenarioPtr = std::unique_ptr<eot_scenario, ScenarioDeleter>;
using DatasetPtr = std::unique_ptr<eot_dataset, DatasetDeleter>;
using TrackPtr = std::unique_ptr<eot_track, TrackDeleter>;
using ReportPtr = std::unique_ptr<eot_report, ReportDeleter>;

[[noreturn]] void die(eot_status status, const std::string& context) {
  std::cerr << "eot: " << context << ": " << eot_status_name(status) << ": "
            << eot_last_error() << "\n";
  std::exit(static_cast<int>(status));
}

void check(eot_status status, const std::string& context) {
  if (status != EOT_OK) die(status, context);
}

ScenarioPtr load_scenario_arg(const std::string& path, std::uint64_t seed,
                              bool seed_given) {
  eot_scenario* raw = nullptr;
  if (path.empty()) {
    check(eot_scenario_create_default(&raw), "default scenario");
  } else {
    check(eot_scenario_load(path.c_str(), &raw), "load scenario " + path);
  }
  ScenarioPtr s(raw);
  if (seed_given) check(eot_scenario_set_seed(s.get(), seed), "set seed");
  return s;
}

void progress_to_stderr(const char* message, void*) {
  std::cerr << "  " << message << "\n";
}

std::vector<std::string> split_variants(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (!token.empty()) out.push_back(token);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multistatic extended-object tracking: simulation, particle-"
               "filter tracking and method comparison."};
  app.require_subcommand(1);
  app.footer(std::string("Scenario file format:\n") + eot_scenario_schema_help());

  std::string scenario_path;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string out_dir = "out";

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--scenario", scenario_path,
                    "Scenario JSON file (omit for the built-in default)");
    cmd->add_option("--seed", seed, "Master seed (overrides the scenario seed)")
        ->each([&](const std::string&) { seed_given = true; });
    cmd->add_option("--out", out_dir, "Output directory")->capture_default_str();
  };

  auto* sim = app.add_subcommand("simulate",
                                 "Synthesize dataset.csv + truth.csv (and echo "
                                 "the scenario) into --out");
  add_common(sim);

  auto* track = app.add_subcommand(
      "track", "Run the tracker on an existing dataset directory");
  add_common(track);
  std::string dataset_dir;
  std::string variants = "geo";
  int particles = 1000;
  int ideal_samples = 50;
  int runs = 1;
  int jobs = 0;
  track->add_option("--dataset", dataset_dir,
                    "Directory holding dataset.csv and truth.csv")
      ->required();
  track->add_option("--variants", variants,
                    "Comma-separated list: geo,ideal,active-only,point")
      ->capture_default_str();
  track->add_option("--particles", particles, "Particle count")->capture_default_str();
  track->add_option("--ideal-samples", ideal_samples,
                    "Monte-Carlo draws for the ideal variant")
      ->capture_default_str();
  track->add_option("--runs", runs, "Filter repetitions per variant")
      ->capture_default_str();

  auto* cmp = app.add_subcommand(
      "compare", "Simulate, track every variant over Monte-Carlo runs and "
                 "write report.json");
  add_common(cmp);
  std::string cmp_variants = "geo,ideal,active-only,point";
  int cmp_particles = 1000;
  int cmp_ideal_samples = 50;
  int cmp_runs = 20;
  cmp->add_option("--variants", cmp_variants, "Comma-separated variant list")
      ->capture_default_str();
  cmp->add_option("--particles", cmp_particles, "Particle count")->capture_default_str();
  cmp->add_option("--ideal-samples", cmp_ideal_samples,
                  "Monte-Carlo draws for the ideal variant")
      ->capture_default_str();
  cmp->add_option("--runs", cmp_runs, "Monte-Carlo runs")->capture_default_str();
  cmp->add_option("--jobs", jobs, "Worker threads (0: all cores)")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  ScenarioPtr scenario = load_scenario_arg(scenario_path, seed, seed_given);

  if (sim->parsed()) {
    fs::create_directories(out_dir);
    eot_dataset* raw = nullptr;
    check(eot_simulate(scenario.get(), &raw), "simulate");
    DatasetPtr dataset(raw);
    const fs::path dir(out_dir);
    check(eot_scenario_save(scenario.get(), (dir / "scenario.json").string().c_str()),
          "write scenario.json");
    check(eot_dataset_save(dataset.get(), (dir / "dataset.csv").string().c_str(),
                           (dir / "truth.csv").string().c_str()),
          "write dataset");
    std::cerr << "eot: wrote " << eot_dataset_num_measurements(dataset.get())
              << " measurements over " << eot_dataset_num_steps(dataset.get())
              << " steps to " << out_dir << "\n";
    return 0;
  }

  if (track->parsed()) {
    const fs::path in_dir(dataset_dir);
    eot_dataset* raw = nullptr;
    check(eot_dataset_load((in_dir / "dataset.csv").string().c_str(),
                           (in_dir / "truth.csv").string().c_str(),
                           scenario.get(), &raw),
          "load dataset from " + dataset_dir);
    DatasetPtr dataset(raw);

    fs::create_directories(out_dir);
    for (const auto& variant : split_variants(variants)) {
      for (int k = 0; k < runs; ++k) {
        eot_track_options opts;
        eot_track_options_init(&opts);
        opts.variant = variant.c_str();
        opts.particles = particles;
        opts.ideal_samples = ideal_samples;
        opts.run_index = k;
        eot_track* traw = nullptr;
        check(eot_track_run(scenario.get(), dataset.get(), &opts, &traw),
              "track " + variant);
        TrackPtr result(traw);

        char name[128];
        std::snprintf(name, sizeof(name), "track_%s_run_%03d.csv",
                      variant.c_str(), k);
        check(eot_track_save(result.get(), (fs::path(out_dir) / name).string().c_str()),
              "write track output");
        std::cerr << "eot: " << variant << " run " << k << ": "
                  << eot_track_num_steps(result.get()) << " steps, "
                  << eot_track_degeneracy_events(result.get())
                  << " degeneracy events\n";
      }
    }
    return 0;
  }

  if (cmp->parsed()) {
    eot_compare_options opts;
    eot_compare_options_init(&opts);
    opts.variants = cmp_variants.c_str();
    opts.particles = cmp_particles;
    opts.ideal_samples = cmp_ideal_samples;
    opts.runs = cmp_runs;
    opts.jobs = jobs;
    opts.progress = progress_to_stderr;

    eot_report* raw = nullptr;
    check(eot_compare_run(scenario.get(), &opts, out_dir.c_str(), &raw),
          "compare");
    ReportPtr report(raw);

    const long need = eot_report_render_table(report.get(), nullptr, 0);
    std::string table(static_cast<std::size_t>(need) + 1, '\0');
    eot_report_render_table(report.get(), table.data(), table.size());
    table.resize(static_cast<std::size_t>(need));
    std::cout << table;
    std::cerr << "eot: report written to " << (fs::path(out_dir) / "report.json")
              << "\n";
    return 0;
  }

  return 0;
}
