// Exercises the public shared-library surface only (eotrack/eotrack.h).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <eotrack/eotrack.h>

#include <cmath>
#include <filesystem>
#include <string>

namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::path("capi_tmp") / name) {
    fs::create_directories(path);
  }
  std::string file(const std::string& n) const { return (path / n).string(); }
};

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(eot_version()).size() > 0);
  CHECK(std::string(eot_status_name(EOT_OK)) == "ok");
  CHECK(std::string(eot_status_name(EOT_ERR_IO)) == "io error");
}

TEST_CASE("scenario lifecycle") {
  eot_scenario* s = nullptr;
  REQUIRE(eot_scenario_create_default(&s) == EOT_OK);
  CHECK(eot_scenario_num_steps(s) == 180);
  CHECK(eot_scenario_num_anchors(s) == 3);
  CHECK(eot_scenario_seed(s) == 1);
  CHECK(eot_scenario_set_seed(s, 42) == EOT_OK);
  CHECK(eot_scenario_seed(s) == 42);
  CHECK(std::string(eot_scenario_schema_help()).find("blockage") != std::string::npos);

  SUBCASE("save and reload round trip") {
    TempDir dir("scenario");
    REQUIRE(eot_scenario_save(s, dir.file("scenario.json").c_str()) == EOT_OK);
    eot_scenario* back = nullptr;
    REQUIRE(eot_scenario_load(dir.file("scenario.json").c_str(), &back) == EOT_OK);
    CHECK(eot_scenario_seed(back) == 42);
    CHECK(eot_scenario_num_steps(back) == 180);
    eot_scenario_destroy(back);
  }

  SUBCASE("missing file reports an io error with a message") {
    eot_scenario* nope = nullptr;
    CHECK(eot_scenario_load("does/not/exist.json", &nope) == EOT_ERR_IO);
    CHECK(std::string(eot_last_error()).size() > 0);
    CHECK(nope == nullptr);
  }

  eot_scenario_destroy(s);
}

TEST_CASE("simulate, save, load, track") {
  eot_scenario* s = nullptr;
  REQUIRE(eot_scenario_create_default(&s) == EOT_OK);

  eot_dataset* ds = nullptr;
  REQUIRE(eot_simulate(s, &ds) == EOT_OK);
  CHECK(eot_dataset_num_steps(ds) == 180);
  CHECK(eot_dataset_num_measurements(ds) > 5000);

  TempDir dir("dataset");
  REQUIRE(eot_dataset_save(ds, dir.file("dataset.csv").c_str(),
                           dir.file("truth.csv").c_str()) == EOT_OK);

  eot_dataset* back = nullptr;
  REQUIRE(eot_dataset_load(dir.file("dataset.csv").c_str(),
                           dir.file("truth.csv").c_str(), s, &back) == EOT_OK);
  CHECK(eot_dataset_num_measurements(back) == eot_dataset_num_measurements(ds));
  CHECK(eot_dataset_num_steps(back) == 180);

  SUBCASE("tracking produces finite per-step positions") {
    eot_track_options opts;
    eot_track_options_init(&opts);
    opts.particles = 80;
    eot_track* track = nullptr;
    REQUIRE(eot_track_run(s, ds, &opts, &track) == EOT_OK);
    CHECK(eot_track_num_steps(track) == 180);
    CHECK(eot_track_degeneracy_events(track) >= 0);
    double x = 0.0, y = 0.0;
    REQUIRE(eot_track_position(track, 0, &x, &y) == EOT_OK);
    CHECK(std::isfinite(x));
    CHECK(std::isfinite(y));
    CHECK(eot_track_position(track, 180, &x, &y) == EOT_ERR_INVALID_ARGUMENT);
    REQUIRE(eot_track_save(track, dir.file("track.csv").c_str()) == EOT_OK);
    CHECK(fs::exists(dir.file("track.csv")));
    eot_track_destroy(track);
  }

  SUBCASE("unknown variant is rejected") {
    eot_track_options opts;
    eot_track_options_init(&opts);
    opts.variant = "bogus";
    eot_track* track = nullptr;
    CHECK(eot_track_run(s, ds, &opts, &track) == EOT_ERR_INVALID_ARGUMENT);
    CHECK(std::string(eot_last_error()).find("bogus") != std::string::npos);
  }

  eot_dataset_destroy(back);
  eot_dataset_destroy(ds);
  eot_scenario_destroy(s);
}

TEST_CASE("compare smoke run emits all declared files") {
  eot_scenario* s = nullptr;
  REQUIRE(eot_scenario_create_default(&s) == EOT_OK);

  TempDir dir("compare");
  eot_compare_options opts;
  eot_compare_options_init(&opts);
  opts.variants = "geo";
  opts.particles = 200;
  opts.runs = 2;

  eot_report* report = nullptr;
  REQUIRE(eot_compare_run(s, &opts, dir.path.string().c_str(), &report) == EOT_OK);

  CHECK(fs::exists(dir.file("scenario.json")));
  CHECK(fs::exists(dir.file("report.json")));
  CHECK(fs::exists(dir.file("rmse_geo.csv")));
  CHECK(fs::exists(dir.file("cdf_geo.csv")));
  CHECK(fs::exists(dir.path / "runs" / "run_000" / "dataset.csv"));
  CHECK(fs::exists(dir.path / "runs" / "run_000" / "truth.csv"));
  CHECK(fs::exists(dir.path / "runs" / "run_001" / "track_geo.csv"));

  double rmse = 0.0;
  REQUIRE(eot_report_avg_rmse(report, "geo", &rmse) == EOT_OK);
  CHECK(std::isfinite(rmse));
  CHECK(rmse > 0.0);

  double seconds = 0.0;
  REQUIRE(eot_report_mean_step_seconds(report, "geo", &seconds) == EOT_OK);
  CHECK(seconds > 0.0);

  CHECK(eot_report_avg_rmse(report, "ideal", &rmse) == EOT_ERR_INVALID_ARGUMENT);

  const long need = eot_report_render_table(report, nullptr, 0);
  CHECK(need > 0);
  std::string table(static_cast<std::size_t>(need) + 1, '\0');
  eot_report_render_table(report, table.data(), table.size());
  CHECK(table.find("geo") != std::string::npos);

  eot_report_destroy(report);
  eot_scenario_destroy(s);
}
