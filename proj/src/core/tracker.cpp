#include "core/tracker.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace eotrack {

const char* method_name(Method m) {
  switch (m) {
    case Method::GeoExtended: return "geo";
    case Method::IdealExtended: return "ideal";
    case Method::ActiveOnly: return "active-only";
    case Method::PointTarget: return "point";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
  if (name == "geo") return Method::GeoExtended;
  if (name == "ideal") return Method::IdealExtended;
  if (name == "active-only") return Method::ActiveOnly;
  if (name == "point") return Method::PointTarget;
  return std::nullopt;
}

std::vector<Method> parse_method_list(std::string_view csv) {
  std::vector<Method> out;
  std::string token;
  std::stringstream ss{std::string(csv)};
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    const auto m = parse_method(token);
    if (!m) {
      throw std::invalid_argument(
          "unknown variant '" + token +
          "' (expected geo, ideal, active-only or point)");
    }
    if (std::find(out.begin(), out.end(), *m) == out.end()) out.push_back(*m);
  }
  if (out.empty()) throw std::invalid_argument("no variants given");
  return out;
}

double effective_sample_size(const ParticleSet& ps) {
  double sum_sq = 0.0;
  for (double w : ps.weights) sum_sq += w * w;
  return sum_sq > 0.0 ? 1.0 / sum_sq : 0.0;
}

ParticleSet init_particles(const Vec2& position_hint, const PriorParams& prior,
                           const TrackerConfig& cfg, Rng& rng) {
  if (cfg.particle_count < 1) {
    throw std::invalid_argument("tracker: particle_count must be >= 1");
  }
  ParticleSet ps;
  ps.states.reserve(cfg.particle_count);
  for (int i = 0; i < cfg.particle_count; ++i) {
    ps.states.push_back(sample_prior(position_hint, prior, rng));
  }
  if (cfg.method == Method::PointTarget) {
    // Point assumption: extent plays no role in the likelihood; freeze it at
    // the prior mean so the reported estimate stays defined.
    const ExtentGeo frozen{0.5 * (prior.radius_min + prior.radius_max),
                           0.5 * (prior.width_min + prior.width_max)};
    for (auto& y : ps.states) y.extent = frozen;
  }
  ps.weights.assign(cfg.particle_count, 1.0 / cfg.particle_count);
  return ps;
}

void predict(ParticleSet& ps, const MotionParams& motion,
             const TrackerConfig& cfg, Rng& rng) {
  for (auto& y : ps.states) {
    y.kin = sample_kinematic(y.kin, motion, rng);
    y.bias = sample_bias(y.bias, motion, rng);
    if (cfg.method != Method::PointTarget) {
      y.extent = sample_extent(y.extent, motion, rng);
    }
  }
}

namespace {

constexpr double kCoincidentSq = 1e-18;

void check_frame_support(const MeasurementFrame& frame, const Scenario& s) {
  auto check = [&](const Measurement& z) {
    if (clutter_density(z, s.constants) <= 0.0) {
      throw std::invalid_argument(
          "update: step " + std::to_string(frame.step) +
          " has a measurement outside the clutter support");
    }
  };
  for (const auto& list : frame.active)
    for (const auto& z : list) check(z);
  for (const auto& bucket : frame.passive)
    for (const auto& z : bucket.items) check(z);
}

/// Per-particle log weight increment: sum over measurements of
/// log(1 + ratio), with the passive ratio picked by the method.
class UpdateKernel {
 public:
  UpdateKernel(const MeasurementFrame& frame, const Scenario& s,
               const TrackerConfig& cfg)
      : frame_(frame), scen_(s), cfg_(cfg),
        clutter_(1.0 / s.constants.max_distance),
        ellipses_(s.anchors.size()),
        have_ellipse_(s.anchors.size(), 0) {}

  double log_increment(const AugmentedState& y, Rng& rng) {
    const auto& c = scen_.constants;
    double acc = 0.0;

    const Vec2 device = device_position(y.kin, y.bias);
    for (std::size_t k = 0; k < frame_.active.size(); ++k) {
      const auto& list = frame_.active[k];
      if (list.empty()) continue;
      const double mean = (device - scen_.anchors[k].position).norm();
      for (const auto& z : list) {
        const double f = gaussian_pdf(
            z.distance, mean,
            ranging_variance(z.amplitude, c.rms_bandwidth, c.propagation_speed));
        acc += std::log1p(cfg_.mu_los * f / (c.mean_clutter_rate * clutter_));
      }
    }

    if (cfg_.method == Method::ActiveOnly) return acc;

    std::fill(have_ellipse_.begin(), have_ellipse_.end(), 0);
    for (const auto& bucket : frame_.passive) {
      if (bucket.items.empty()) continue;
      switch (cfg_.method) {
        case Method::GeoExtended:
          acc += geo_bucket(y, bucket);
          break;
        case Method::IdealExtended:
          acc += ideal_bucket(y, bucket, rng);
          break;
        case Method::PointTarget:
          acc += point_bucket(device, bucket);
          break;
        case Method::ActiveOnly:
          break;
      }
    }
    return acc;
  }

 private:
  double object_log_factor(const std::vector<Measurement>& items, double mean,
                           double extra_var) const {
    const auto& c = scen_.constants;
    double acc = 0.0;
    for (const auto& z : items) {
      const double var = ranging_variance(z.amplitude, c.rms_bandwidth,
                                          c.propagation_speed) +
                         extra_var;
      const double f = gaussian_pdf(z.distance, mean, var);
      acc += std::log1p(c.mean_object_rate * f / (c.mean_clutter_rate * clutter_));
    }
    return acc;
  }

  double geo_bucket(const AugmentedState& y, const PassiveBucket& bucket) {
    const Anchor& rx = scen_.anchors[bucket.rx];
    const Anchor& tx = scen_.anchors[bucket.tx];
    if ((y.kin.position - rx.position).squaredNorm() < kCoincidentSq) {
      return 0.0;  // degenerate particle, all factors collapse to clutter
    }
    if (!have_ellipse_[bucket.rx]) {
      ellipses_[bucket.rx] = build_ellipse(y.kin.position, y.extent, rx,
                                           scen_.constants.opening_angle,
                                           scen_.aspect_sign);
      have_ellipse_[bucket.rx] = 1;
    }
    const ScatterEllipse& e = ellipses_[bucket.rx];
    if ((e.center - tx.position).squaredNorm() < kCoincidentSq ||
        (e.center - rx.position).squaredNorm() < kCoincidentSq) {
      return 0.0;
    }
    const double mean = bistatic_distance(e.center, tx.position, rx.position);
    const double s_lambda2 = ut_delay_variance(e, tx, rx, ut_);
    return object_log_factor(bucket.items, mean, s_lambda2);
  }

  double ideal_bucket(const AugmentedState& y, const PassiveBucket& bucket,
                      Rng& rng) {
    const Anchor& rx = scen_.anchors[bucket.rx];
    const Anchor& tx = scen_.anchors[bucket.tx];
    if ((y.kin.position - rx.position).squaredNorm() < kCoincidentSq) {
      return 0.0;
    }
    const auto& c = scen_.constants;
    // The filter's object model is a circle; the boundary-arc samples use
    // the particle radius on both axes.
    const ExtentIdeal extent{y.extent.radius, y.extent.radius, y.extent.width};
    const double aspect =
        aspect_angle(y.kin.position, rx, scen_.aspect_sign);

    const int count = cfg_.ideal_samples;
    bistatic_.resize(count);
    for (int i = 0; i < count; ++i) {
      const Vec2 q = sample_ideal_scatterer(y.kin.position, extent, aspect,
                                            c.opening_angle, rng);
      bistatic_[i] = bistatic_distance(q, tx.position, rx.position);
    }

    double acc = 0.0;
    for (const auto& z : bucket.items) {
      const double var = ranging_variance(z.amplitude, c.rms_bandwidth,
                                          c.propagation_speed);
      double f = 0.0;
      for (int i = 0; i < count; ++i) {
        f += gaussian_pdf(z.distance, bistatic_[i], var);
      }
      f /= count;
      acc += std::log1p(c.mean_object_rate * f / (c.mean_clutter_rate * clutter_));
    }
    return acc;
  }

  double point_bucket(const Vec2& device, const PassiveBucket& bucket) const {
    const Anchor& rx = scen_.anchors[bucket.rx];
    const Anchor& tx = scen_.anchors[bucket.tx];
    const double mean = bistatic_distance(device, tx.position, rx.position);
    return object_log_factor(bucket.items, mean, 0.0);
  }

  const MeasurementFrame& frame_;
  const Scenario& scen_;
  const TrackerConfig& cfg_;
  const UtParams ut_{};
  double clutter_;
  std::vector<ScatterEllipse> ellipses_;
  std::vector<char> have_ellipse_;
  std::vector<double> bistatic_;
};

}  // namespace

bool update(ParticleSet& ps, const MeasurementFrame& frame, const Scenario& s,
            const TrackerConfig& cfg, Rng& rng) {
  if (ps.size() == 0) throw std::invalid_argument("update: empty particle set");
  if (frame.empty()) return true;
  check_frame_support(frame, s);

  UpdateKernel kernel(frame, s, cfg);

  std::vector<double> logw(ps.size());
  double max_logw = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const double prev =
        ps.weights[i] > 0.0 ? std::log(ps.weights[i])
                            : -std::numeric_limits<double>::infinity();
    logw[i] = prev + kernel.log_increment(ps.states[i], rng);
    max_logw = std::max(max_logw, logw[i]);
  }

  double sum = 0.0;
  if (std::isfinite(max_logw)) {
    for (std::size_t i = 0; i < ps.size(); ++i) {
      logw[i] = std::exp(logw[i] - max_logw);
      sum += logw[i];
    }
  }

  if (!(sum > 0.0) || !std::isfinite(sum)) {
    // Degenerate update: keep the filter alive with uniform weights.
    std::fill(ps.weights.begin(), ps.weights.end(), 1.0 / ps.size());
    return false;
  }

  for (std::size_t i = 0; i < ps.size(); ++i) ps.weights[i] = logw[i] / sum;
  return true;
}

void systematic_resample(ParticleSet& ps, Rng& rng) {
  const std::size_t count = ps.size();
  const double step = 1.0 / count;
  const double start = draw_uniform(rng, 0.0, step);

  std::vector<AugmentedState> out;
  out.reserve(count);
  double cumulative = 0.0;
  std::size_t j = 0;
  for (std::size_t k = 0; k < count; ++k) {
    const double target = start + k * step;
    while (j + 1 < count && cumulative + ps.weights[j] < target) {
      cumulative += ps.weights[j];
      ++j;
    }
    out.push_back(ps.states[j]);
  }
  ps.states = std::move(out);
  std::fill(ps.weights.begin(), ps.weights.end(), step);
}

bool maybe_resample(ParticleSet& ps, double ess_threshold, Rng& rng) {
  if (effective_sample_size(ps) >= ess_threshold * ps.size()) return false;
  systematic_resample(ps, rng);
  return true;
}

AugmentedState mmse_estimate(const ParticleSet& ps) {
  if (ps.size() == 0) throw std::invalid_argument("mmse_estimate: empty particle set");

  Vec2 pos = Vec2::Zero();
  Vec2 vel = Vec2::Zero();
  double range = 0.0, radius = 0.0, width = 0.0;
  double angle_cos = 0.0, angle_sin = 0.0;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const double w = ps.weights[i];
    const auto& y = ps.states[i];
    pos += w * y.kin.position;
    vel += w * y.kin.velocity;
    range += w * y.bias.range;
    angle_cos += w * std::cos(y.bias.angle);
    angle_sin += w * std::sin(y.bias.angle);
    radius += w * y.extent.radius;
    width += w * y.extent.width;
  }

  AugmentedState est;
  est.kin.position = pos;
  est.kin.velocity = vel;
  est.bias = BiasState(range, std::atan2(angle_sin, angle_cos));
  est.extent = ExtentGeo{radius, width};
  return est;
}

TrackOutput run_filter(const Dataset& ds, const Scenario& s,
                       const TrackerConfig& cfg) {
  TrackOutput out;
  if (ds.frames.empty()) return out;
  if (ds.truth.steps.size() != ds.frames.size()) {
    throw std::invalid_argument("run_filter: truth and frames disagree on step count");
  }

  Rng rng = make_rng(cfg.seed, "filter");
  ParticleSet ps =
      init_particles(ds.truth.steps.front().kin.position, s.prior, cfg, rng);

  MotionParams motion = s.motion;
  motion.dt = s.dt;

  out.steps.reserve(ds.frames.size());
  for (const auto& frame : ds.frames) {
    const auto t0 = std::chrono::steady_clock::now();

    predict(ps, motion, cfg, rng);
    const bool ok = update(ps, frame, s, cfg, rng);
    if (!ok) out.degeneracy_steps.push_back(frame.step);

    StepEstimate est;
    est.step = frame.step;
    est.ess = effective_sample_size(ps);
    est.state = mmse_estimate(ps);
    est.device = device_position(est.state.kin, est.state.bias);

    maybe_resample(ps, cfg.ess_threshold, rng);

    const auto t1 = std::chrono::steady_clock::now();
    est.seconds = std::max(
        1e-9, std::chrono::duration<double>(t1 - t0).count());
    out.steps.push_back(est);
  }
  return out;
}

}  // namespace eotrack
