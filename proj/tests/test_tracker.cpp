#include <doctest.h>

#include <numeric>

#include "core/tracker.hpp"
#include "test_support.hpp"

using namespace eotrack;

namespace {

ParticleSet uniform_set(std::vector<AugmentedState> states) {
  ParticleSet ps;
  ps.weights.assign(states.size(), 1.0 / states.size());
  ps.states = std::move(states);
  return ps;
}

AugmentedState state_at(double x, double y) {
  AugmentedState s;
  s.kin.position = Vec2(x, y);
  s.bias = BiasState(0.2, 0.5);
  s.extent = ExtentGeo{0.3, 0.1};
  return s;
}

double weight_sum(const ParticleSet& ps) {
  return std::accumulate(ps.weights.begin(), ps.weights.end(), 0.0);
}

}  // namespace

TEST_CASE("method names round trip") {
  for (Method m : {Method::GeoExtended, Method::IdealExtended,
                   Method::ActiveOnly, Method::PointTarget}) {
    CHECK(parse_method(method_name(m)) == m);
  }
  CHECK(!parse_method("bogus").has_value());
  CHECK(parse_method_list("geo,ideal,geo").size() == 2);
  CHECK_THROWS_AS(parse_method_list("geo,nope"), std::invalid_argument);
  CHECK_THROWS_AS(parse_method_list(""), std::invalid_argument);
}

TEST_CASE("predict") {
  TrackerConfig cfg;
  cfg.method = Method::GeoExtended;
  MotionParams motion;
  motion.dt = 0.1;
  Rng rng(123);

  SUBCASE("noiseless prediction is the deterministic shift") {
    MotionParams still;
    still.dt = 0.1;
    still.accel_std = 0.0;
    still.bias_range_walk_std = 0.0;
    still.bias_angle_walk_std = 0.0;
    still.radius_walk_std = 0.0;
    still.width_walk_std = 0.0;

    AugmentedState y = state_at(1.0, 2.0);
    y.kin.velocity = Vec2(2.0, -1.0);
    ParticleSet ps = uniform_set({y, y});
    const std::vector<double> before = ps.weights;
    predict(ps, still, cfg, rng);
    for (const auto& st : ps.states) {
      CHECK(st.kin.position.x() == doctest::Approx(1.2));
      CHECK(st.kin.position.y() == doctest::Approx(1.9));
    }
    CHECK(ps.weights == before);
  }

  SUBCASE("invariants preserved under noisy prediction") {
    std::vector<AugmentedState> states(500, state_at(0.0, 0.0));
    ParticleSet ps = uniform_set(std::move(states));
    for (int step = 0; step < 20; ++step) predict(ps, motion, cfg, rng);
    for (const auto& st : ps.states) {
      CHECK(st.bias.range >= 0.0);
      CHECK(st.bias.angle > -kPi);
      CHECK(st.bias.angle <= kPi);
      CHECK(st.extent.radius > 0.0);
      CHECK(st.extent.width > 0.0);
    }
  }

  SUBCASE("point-target variant keeps the extent frozen") {
    TrackerConfig point = cfg;
    point.method = Method::PointTarget;
    ParticleSet ps = uniform_set({state_at(0, 0)});
    const ExtentGeo before = ps.states[0].extent;
    predict(ps, motion, point, rng);
    CHECK(ps.states[0].extent.radius == before.radius);
    CHECK(ps.states[0].extent.width == before.width);
  }
}

TEST_CASE("update") {
  Scenario s = eotest::truncated(default_scenario(), 1);
  TrackerConfig cfg;
  cfg.method = Method::GeoExtended;
  Rng rng(321);

  SUBCASE("empty frame leaves weights untouched") {
    MeasurementFrame frame;
    frame.step = 1;
    frame.active.resize(s.anchors.size());
    ParticleSet ps = uniform_set({state_at(0, 0), state_at(1, 1), state_at(2, 0)});
    ps.weights = {0.5, 0.3, 0.2};
    update(ps, frame, s, cfg, rng);
    CHECK(ps.weights[0] == doctest::Approx(0.5));
    CHECK(ps.weights[1] == doctest::Approx(0.3));
    CHECK(ps.weights[2] == doctest::Approx(0.2));
  }

  SUBCASE("a single particle keeps weight one") {
    MeasurementFrame frame;
    frame.step = 1;
    frame.active.resize(s.anchors.size());
    frame.active[0].push_back({5.0, 3.0});
    frame.passive.push_back({0, 1, {{9.5, 2.5}}});
    ParticleSet ps = uniform_set({state_at(0, 0)});
    update(ps, frame, s, cfg, rng);
    CHECK(ps.weights[0] == doctest::Approx(1.0));
  }

  SUBCASE("weights stay a probability vector across sequential updates") {
    const Scenario small = eotest::truncated(default_scenario(), 15);
    const Dataset ds = simulate(small, 9);

    Rng frng = make_rng(7, "filter");
    TrackerConfig tc;
    tc.method = Method::GeoExtended;
    tc.particle_count = 300;
    ParticleSet ps = init_particles(ds.truth.steps.front().kin.position,
                                    small.prior, tc, frng);
    MotionParams motion = small.motion;
    for (const auto& frame : ds.frames) {
      predict(ps, motion, tc, frng);
      update(ps, frame, small, tc, frng);
      CHECK(weight_sum(ps) == doctest::Approx(1.0).epsilon(1e-9));
      for (double w : ps.weights) CHECK(w >= 0.0);
      maybe_resample(ps, tc.ess_threshold, frng);
      CHECK(weight_sum(ps) == doctest::Approx(1.0).epsilon(1e-9));
    }
  }

  SUBCASE("out-of-support measurements are rejected") {
    MeasurementFrame frame;
    frame.step = 1;
    frame.active.resize(s.anchors.size());
    frame.active[0].push_back({s.constants.max_distance + 1.0, 3.0});
    ParticleSet ps = uniform_set({state_at(0, 0)});
    CHECK_THROWS_AS(update(ps, frame, s, cfg, rng), std::invalid_argument);
  }

  SUBCASE("posterior mean matches a dense-grid Bayes oracle on a 1-D problem") {
    // One passive pair, one measurement, everything but p_x fixed.
    Scenario toy = default_scenario();
    toy.anchors = {{1, Vec2(6.0, 0.0)}, {2, Vec2(2.0, 3.0)}};
    toy.blockage.clear();
    toy.num_steps = 1;
    toy.constants.max_distance = 40.0;
    toy.constants.detection_threshold = 0.5;

    const double y0 = 0.8;
    const double prior_mean = 0.0;
    const double prior_std = 0.3;
    const double true_x = 0.05;
    const BiasState bias(0.0, 0.0);
    const ExtentGeo extent{0.3, 0.1};

    auto make_state = [&](double x) {
      AugmentedState y;
      y.kin.position = Vec2(x, y0);
      y.bias = bias;
      y.extent = extent;
      return y;
    };

    // Broad ranging density (low amplitude) for a well-behaved posterior.
    const double amplitude = 1.0;
    const Anchor& rx = toy.anchors[1];
    const Anchor& tx = toy.anchors[0];
    const ScatterEllipse e_true = build_ellipse(
        Vec2(true_x, y0), extent, rx, toy.constants.opening_angle);
    const double z_d =
        bistatic_distance(e_true.center, tx.position, rx.position) + 0.1;
    const Measurement z{z_d, amplitude};

    MeasurementFrame frame;
    frame.step = 1;
    frame.active.resize(2);
    frame.passive.push_back({0, 1, {}});
    frame.passive.push_back({1, 0, {z}});

    auto ratio_at = [&](double x) {
      const AugmentedState y = make_state(x);
      return passive_pseudo_lr(z, y, tx, rx, toy.constants, UtParams{},
                               toy.aspect_sign);
    };

    // Dense-grid posterior over p_x.
    const int grid_n = 40001;
    const double lo = prior_mean - 8.0 * prior_std;
    const double hi = prior_mean + 8.0 * prior_std;
    double norm = 0.0, mean_acc = 0.0;
    std::vector<double> xs(grid_n), post(grid_n);
    for (int i = 0; i < grid_n; ++i) {
      const double x = lo + (hi - lo) * i / (grid_n - 1);
      const double prior =
          std::exp(-0.5 * std::pow((x - prior_mean) / prior_std, 2));
      const double p = prior * (1.0 + ratio_at(x));
      xs[i] = x;
      post[i] = p;
      norm += p;
      mean_acc += x * p;
    }
    const double grid_mean = mean_acc / norm;
    double var_acc = 0.0;
    for (int i = 0; i < grid_n; ++i) {
      var_acc += post[i] * (xs[i] - grid_mean) * (xs[i] - grid_mean);
    }
    const double grid_std = std::sqrt(var_acc / norm);

    for (std::uint64_t seed : {11u, 12u, 13u}) {
      Rng prng(seed);
      std::vector<AugmentedState> states;
      const int count = 20000;
      states.reserve(count);
      for (int i = 0; i < count; ++i) {
        states.push_back(make_state(prior_mean + draw_normal(prng, prior_std)));
      }
      ParticleSet ps = uniform_set(std::move(states));
      TrackerConfig tc;
      tc.method = Method::GeoExtended;
      update(ps, frame, toy, tc, prng);

      double pf_mean = 0.0;
      for (std::size_t i = 0; i < ps.size(); ++i) {
        pf_mean += ps.weights[i] * ps.states[i].kin.position.x();
      }
      CHECK(std::abs(pf_mean - grid_mean) < 0.02 * grid_std);
    }
  }
}

TEST_CASE("systematic_resample") {
  Rng rng(77);

  SUBCASE("uniform weights are left alone by the ESS gate") {
    ParticleSet ps = uniform_set({state_at(0, 0), state_at(1, 0), state_at(2, 0)});
    const std::vector<AugmentedState> before = ps.states;
    CHECK(!maybe_resample(ps, 0.5, rng));
    CHECK(ps.states.size() == before.size());
    for (std::size_t i = 0; i < before.size(); ++i) {
      CHECK(ps.states[i].kin.position == before[i].kin.position);
    }
  }

  SUBCASE("a single surviving weight clones that particle") {
    ParticleSet ps = uniform_set({state_at(0, 0), state_at(1, 0), state_at(2, 0)});
    ps.weights = {0.0, 1.0, 0.0};
    CHECK(maybe_resample(ps, 0.5, rng));
    for (const auto& st : ps.states) {
      CHECK(st.kin.position.x() == doctest::Approx(1.0));
    }
    CHECK(weight_sum(ps) == doctest::Approx(1.0));
  }

  SUBCASE("expected offspring counts are proportional to the weights") {
    const std::vector<double> weights = {0.5, 0.2, 0.15, 0.1, 0.05};
    std::vector<double> offspring(weights.size(), 0.0);
    const int trials = 10000;
    for (int t = 0; t < trials; ++t) {
      ParticleSet ps = uniform_set({state_at(0, 0), state_at(1, 0),
                                    state_at(2, 0), state_at(3, 0),
                                    state_at(4, 0)});
      ps.weights = weights;
      systematic_resample(ps, rng);
      for (const auto& st : ps.states) {
        offspring[static_cast<int>(st.kin.position.x() + 0.5)] += 1.0;
      }
    }
    for (std::size_t j = 0; j < weights.size(); ++j) {
      const double expected = weights[j] * weights.size();
      CHECK(offspring[j] / trials == doctest::Approx(expected).epsilon(0.03));
    }
  }
}

TEST_CASE("mmse_estimate") {
  SUBCASE("identical particles return that state") {
    const AugmentedState y = state_at(3.0, -2.0);
    ParticleSet ps = uniform_set({y, y, y});
    const AugmentedState est = mmse_estimate(ps);
    CHECK(est.kin.position.x() == doctest::Approx(3.0));
    CHECK(est.bias.range == doctest::Approx(0.2));
    CHECK(est.bias.angle == doctest::Approx(0.5));
    CHECK(est.extent.radius == doctest::Approx(0.3));
  }

  SUBCASE("circular mean crosses the branch cut correctly") {
    AugmentedState a = state_at(0, 0);
    a.bias = BiasState(0.3, kPi - 0.1);
    AugmentedState b = state_at(0, 0);
    b.bias = BiasState(0.3, -kPi + 0.1);
    ParticleSet ps = uniform_set({a, b});
    const AugmentedState est = mmse_estimate(ps);
    CHECK(std::abs(wrap_angle(est.bias.angle - kPi)) < 1e-12);
  }

  SUBCASE("matches a brute-force weighted average") {
    Rng rng(404);
    ParticleSet ps;
    double wsum = 0.0;
    for (int i = 0; i < 200; ++i) {
      AugmentedState y;
      y.kin.position = Vec2(draw_uniform(rng, -5, 5), draw_uniform(rng, -5, 5));
      y.kin.velocity = Vec2(draw_uniform(rng, -2, 2), draw_uniform(rng, -2, 2));
      y.bias = BiasState(draw_uniform(rng, 0, 1), draw_uniform(rng, -1.2, 1.2));
      y.extent = ExtentGeo{draw_uniform(rng, 0.1, 0.5), draw_uniform(rng, 0.05, 0.2)};
      ps.states.push_back(y);
      const double w = draw_uniform(rng, 0.01, 1.0);
      ps.weights.push_back(w);
      wsum += w;
    }
    for (double& w : ps.weights) w /= wsum;

    double px = 0.0, vy = 0.0, rr = 0.0;
    for (std::size_t i = 0; i < ps.size(); ++i) {
      px += ps.weights[i] * ps.states[i].kin.position.x();
      vy += ps.weights[i] * ps.states[i].kin.velocity.y();
      rr += ps.weights[i] * ps.states[i].extent.radius;
    }
    const AugmentedState est = mmse_estimate(ps);
    CHECK(std::abs(est.kin.position.x() - px) < 1e-12);
    CHECK(std::abs(est.kin.velocity.y() - vy) < 1e-12);
    CHECK(std::abs(est.extent.radius - rr) < 1e-12);
    // Bias angles here stay inside (-pi/2, pi/2), so the circular mean
    // coincides with the atan2 of the averaged components by construction.
  }
}

TEST_CASE("run_filter") {
  SUBCASE("empty dataset yields empty output") {
    Scenario s = eotest::truncated(default_scenario(), 0);
    const Dataset ds = simulate(s, 1);
    TrackerConfig cfg;
    const TrackOutput out = run_filter(ds, s, cfg);
    CHECK(out.steps.empty());
  }

  SUBCASE("deterministic given the seed") {
    Scenario s = eotest::truncated(default_scenario(), 12);
    const Dataset ds = simulate(s, 21);
    TrackerConfig cfg;
    cfg.method = Method::GeoExtended;
    cfg.particle_count = 150;
    cfg.seed = 99;
    const TrackOutput a = run_filter(ds, s, cfg);
    const TrackOutput b = run_filter(ds, s, cfg);
    REQUIRE(a.steps.size() == b.steps.size());
    for (std::size_t n = 0; n < a.steps.size(); ++n) {
      CHECK(a.steps[n].device == b.steps[n].device);
      CHECK(a.steps[n].state.kin.position == b.steps[n].state.kin.position);
      CHECK(a.steps[n].ess == b.steps[n].ess);
    }
  }

  SUBCASE("clutter-free high-SNR run converges") {
    Scenario s = eotest::truncated(default_scenario(), 120);
    s.blockage.clear();
    s.constants.mean_clutter_rate = 1e-9;
    s.ref_amplitude_db = 40.0;
    const Dataset ds = simulate(s, 5);

    TrackerConfig cfg;
    cfg.method = Method::GeoExtended;
    cfg.particle_count = 2000;
    cfg.seed = 6;
    const TrackOutput out = run_filter(ds, s, cfg);
    REQUIRE(out.steps.size() == 120);
    const double final_error =
        (out.steps.back().device - ds.truth.steps.back().device).norm();
    CHECK(final_error < 0.1);
    CHECK(out.degeneracy_steps.empty());
  }

  SUBCASE("active-only output ignores passive corruption") {
    Scenario s = eotest::truncated(default_scenario(), 25);
    const Dataset ds = simulate(s, 31);
    Dataset corrupted = ds;
    for (auto& frame : corrupted.frames) {
      for (auto& bucket : frame.passive) {
        for (auto& z : bucket.items) {
          z.distance = 0.37 * s.constants.max_distance;
          z.amplitude = 7.7;
        }
        std::reverse(bucket.items.begin(), bucket.items.end());
      }
    }

    TrackerConfig cfg;
    cfg.method = Method::ActiveOnly;
    cfg.particle_count = 200;
    cfg.seed = 15;
    const TrackOutput a = run_filter(ds, s, cfg);
    const TrackOutput b = run_filter(corrupted, s, cfg);
    REQUIRE(a.steps.size() == b.steps.size());
    for (std::size_t n = 0; n < a.steps.size(); ++n) {
      CHECK(a.steps[n].device == b.steps[n].device);
      CHECK(a.steps[n].ess == b.steps[n].ess);
    }
  }

  SUBCASE("geo update is cheaper per step than the sampled boundary model") {
    Scenario s = eotest::truncated(default_scenario(), 30);
    const Dataset ds = simulate(s, 8);

    auto mean_seconds = [&](Method m) {
      TrackerConfig cfg;
      cfg.method = m;
      cfg.particle_count = 400;
      cfg.ideal_samples = 50;
      cfg.seed = 77;
      const TrackOutput out = run_filter(ds, s, cfg);
      double acc = 0.0;
      for (const auto& st : out.steps) acc += st.seconds;
      return acc / out.steps.size();
    };
    const double geo = mean_seconds(Method::GeoExtended);
    const double ideal = mean_seconds(Method::IdealExtended);
    CHECK(geo < ideal);
  }
}
