#include <doctest.h>

#include "core/evaluation.hpp"
#include "test_support.hpp"

using namespace eotrack;

namespace {

TrackOutput track_from_positions(const std::vector<Vec2>& devices) {
  TrackOutput t;
  for (std::size_t n = 0; n < devices.size(); ++n) {
    StepEstimate e;
    e.step = static_cast<int>(n + 1);
    e.device = devices[n];
    e.seconds = 0.01;
    e.ess = 100.0;
    t.steps.push_back(e);
  }
  return t;
}

GroundTruth truth_from_positions(const std::vector<Vec2>& devices) {
  GroundTruth gt;
  for (const Vec2& m : devices) {
    TruthStep st;
    st.device = m;
    gt.steps.push_back(st);
  }
  return gt;
}

}  // namespace

TEST_CASE("position_error") {
  CHECK(position_error(Vec2(1, 2), Vec2(1, 2)) == doctest::Approx(0.0));
  CHECK(position_error(Vec2(0, 0), Vec2(3, 4)) == doctest::Approx(5.0));
  CHECK(position_error(Vec2(3, 4), Vec2(0, 0)) ==
        doctest::Approx(position_error(Vec2(0, 0), Vec2(3, 4))));
}

TEST_CASE("rmse_per_step") {
  SUBCASE("single run reduces to the absolute error") {
    RunBatch batch;
    batch.truths.push_back(truth_from_positions({Vec2(0, 0), Vec2(1, 0)}));
    batch.tracks.push_back(track_from_positions({Vec2(0.3, 0.4), Vec2(1, 0)}));
    const auto rmse = rmse_per_step(batch);
    REQUIRE(rmse.size() == 2);
    CHECK(rmse[0] == doctest::Approx(0.5));
    CHECK(rmse[1] == doctest::Approx(0.0));
  }

  SUBCASE("constant error across runs is preserved") {
    RunBatch batch;
    for (int k = 0; k < 4; ++k) {
      batch.truths.push_back(truth_from_positions({Vec2(0, 0)}));
      batch.tracks.push_back(track_from_positions({Vec2(0.0, 0.25)}));
    }
    CHECK(rmse_per_step(batch)[0] == doctest::Approx(0.25));
  }

  SUBCASE("matches a brute-force recomputation and dominates the mean error") {
    Rng rng(66);
    RunBatch batch;
    const int runs = 6, steps = 9;
    for (int k = 0; k < runs; ++k) {
      std::vector<Vec2> truth, est;
      for (int n = 0; n < steps; ++n) {
        truth.emplace_back(draw_uniform(rng, -3, 3), draw_uniform(rng, -3, 3));
        est.emplace_back(truth.back() +
                         Vec2(draw_normal(rng, 0.3), draw_normal(rng, 0.3)));
      }
      batch.truths.push_back(truth_from_positions(truth));
      batch.tracks.push_back(track_from_positions(est));
    }

    const auto rmse = rmse_per_step(batch);
    for (int n = 0; n < steps; ++n) {
      double sq = 0.0, mean_err = 0.0;
      for (int k = 0; k < runs; ++k) {
        const double e = (batch.tracks[k].steps[n].device -
                          batch.truths[k].steps[n].device)
                             .norm();
        sq += e * e;
        mean_err += e;
      }
      CHECK(std::abs(rmse[n] - std::sqrt(sq / runs)) < 1e-12);
      CHECK(rmse[n] + 1e-12 >= mean_err / runs);  // Jensen direction
    }
  }

  SUBCASE("empty batch is rejected") {
    RunBatch batch;
    CHECK_THROWS_AS(rmse_per_step(batch), std::invalid_argument);
  }
}

TEST_CASE("error_cdf") {
  SUBCASE("single value is a step function") {
    RunBatch batch;
    batch.truths.push_back(truth_from_positions({Vec2(0, 0)}));
    batch.tracks.push_back(track_from_positions({Vec2(0.0, 0.7)}));
    const auto cdf = error_cdf(batch);
    REQUIRE(cdf.size() == 1);
    CHECK(cdf[0].first == doctest::Approx(0.7));
    CHECK(cdf[0].second == doctest::Approx(1.0));
  }

  SUBCASE("valid distribution function with the median in the middle") {
    Rng rng(99);
    RunBatch batch;
    std::vector<double> errors;
    std::vector<Vec2> truth, est;
    for (int n = 0; n < 101; ++n) {
      truth.emplace_back(0.0, 0.0);
      const double e = draw_uniform(rng, 0.0, 2.0);
      errors.push_back(e);
      est.emplace_back(e, 0.0);
    }
    batch.truths.push_back(truth_from_positions(truth));
    batch.tracks.push_back(track_from_positions(est));

    const auto cdf = error_cdf(batch);
    REQUIRE(cdf.size() == errors.size());
    for (std::size_t i = 1; i < cdf.size(); ++i) {
      CHECK(cdf[i].first >= cdf[i - 1].first);
      CHECK(cdf[i].second > cdf[i - 1].second);
    }
    CHECK(cdf.front().second > 0.0);
    CHECK(cdf.back().second == doctest::Approx(1.0));

    std::sort(errors.begin(), errors.end());
    const VariantSummary summary = summarize_batch(batch);
    CHECK(summary.p50 == doctest::Approx(errors[50]));
  }
}

TEST_CASE("summarize_batch") {
  Rng rng(123);
  RunBatch batch;
  for (int k = 0; k < 3; ++k) {
    std::vector<Vec2> truth, est;
    for (int n = 0; n < 20; ++n) {
      truth.emplace_back(n * 0.1, 0.0);
      est.emplace_back(n * 0.1 + draw_normal(rng, 0.2), draw_normal(rng, 0.2));
    }
    batch.truths.push_back(truth_from_positions(truth));
    batch.tracks.push_back(track_from_positions(est));
  }

  const VariantSummary a = summarize_batch(batch);
  const VariantSummary b = summarize_batch(batch);

  SUBCASE("pure function of its inputs") {
    CHECK(a.avg_rmse == b.avg_rmse);
    CHECK(a.mean_step_seconds == b.mean_step_seconds);
    CHECK(a.cdf == b.cdf);
  }

  SUBCASE("avg rmse is the mean of the per-step curve") {
    double acc = 0.0;
    for (double v : a.rmse_per_step) acc += v;
    CHECK(a.avg_rmse == doctest::Approx(acc / a.rmse_per_step.size()));
    CHECK(a.avg_rmse > 0.0);
    CHECK(a.total_steps == 60);
  }
}

TEST_CASE("report serialization") {
  Scenario s = default_scenario();
  Report report;
  report.runs = 2;
  report.particle_count = 100;
  report.olos_windows = olos_windows_of(s);

  RunBatch batch;
  batch.truths.push_back(truth_from_positions({Vec2(0, 0), Vec2(1, 1)}));
  batch.tracks.push_back(track_from_positions({Vec2(0.1, 0), Vec2(1, 1.2)}));
  report.variants["geo"] = summarize_batch(batch);
  report.variants["point"] = summarize_batch(batch);

  const std::string json_a = report_to_json(report);
  CHECK(json_a.find("\"olos_windows\"") != std::string::npos);
  CHECK(json_a.find("\"avg_rmse_m\"") != std::string::npos);
  CHECK(json_a.find("\"geo\"") != std::string::npos);

  SUBCASE("ordering stable under input permutation") {
    Report flipped;
    flipped.runs = report.runs;
    flipped.particle_count = report.particle_count;
    flipped.olos_windows = report.olos_windows;
    flipped.variants["point"] = report.variants.at("point");
    flipped.variants["geo"] = report.variants.at("geo");
    CHECK(report_to_json(flipped) == json_a);
  }

  SUBCASE("table lists every variant") {
    const std::string table = report_table(report);
    CHECK(table.find("geo") != std::string::npos);
    CHECK(table.find("point") != std::string::npos);
  }

  SUBCASE("olos windows mirror the blockage schedule") {
    REQUIRE(report.olos_windows.size() == 4);
    CHECK(report.olos_windows[0].from == 31);
    CHECK(report.olos_windows[0].to == 60);
    CHECK(report.olos_windows[0].blocked_count == 3);
    CHECK(report.olos_windows[2].blocked_count == 1);
  }
}
