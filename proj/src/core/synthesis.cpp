#include "core/synthesis.hpp"

#include <algorithm>
#include <stdexcept>

#include "core/likelihoods.hpp"

namespace eotrack {

GroundTruth generate_trajectory(const TrajectorySpec& spec, int num_steps,
                                double dt) {
  if (num_steps < 0) throw std::invalid_argument("trajectory: num_steps must be >= 0");
  if (!(dt > 0.0)) throw std::invalid_argument("trajectory: dt must be positive");
  if (!(spec.speed > 0.0)) throw std::invalid_argument("trajectory: speed must be positive");
  for (const auto& seg : spec.segments) {
    if (seg.steps < 1) throw std::invalid_argument("trajectory: segment steps must be >= 1");
  }

  GroundTruth gt;
  gt.steps.reserve(num_steps);

  Vec2 pos = spec.start;
  double heading = spec.heading;
  std::size_t seg_idx = 0;
  int left_in_segment =
      spec.segments.empty() ? 0 : spec.segments.front().steps;

  for (int n = 1; n <= num_steps; ++n) {
    // Past the declared segments the path continues straight.
    double rate = 0.0;
    if (seg_idx < spec.segments.size()) {
      const auto& seg = spec.segments[seg_idx];
      if (seg.kind == TrajectorySegment::Kind::Turn) {
        rate = seg.turn_angle / (seg.steps * dt);
      }
    }

    if (std::abs(rate) < 1e-12) {
      pos += spec.speed * dt * Vec2(std::cos(heading), std::sin(heading));
    } else {
      const double radius = spec.speed / rate;
      const double next = heading + rate * dt;
      pos += radius * Vec2(std::sin(next) - std::sin(heading),
                           std::cos(heading) - std::cos(next));
      heading = next;
    }

    TruthStep st;
    st.kin.position = pos;
    st.kin.velocity = spec.speed * Vec2(std::cos(heading), std::sin(heading));
    gt.steps.push_back(st);

    if (seg_idx < spec.segments.size() && --left_in_segment == 0) {
      ++seg_idx;
      if (seg_idx < spec.segments.size()) {
        left_in_segment = spec.segments[seg_idx].steps;
      }
    }
  }
  return gt;
}

GroundTruth generate_ground_truth(const Scenario& s) {
  GroundTruth gt = generate_trajectory(s.trajectory, s.num_steps, s.dt);
  for (auto& st : gt.steps) {
    st.device = device_position(st.kin, s.truth.bias);
  }
  return gt;
}

double amplitude_from_path(double path_length, double ref_db) {
  if (!(path_length > 0.0)) {
    throw std::invalid_argument("amplitude_from_path: path length must be positive");
  }
  const double db = ref_db - 20.0 * std::log10(path_length);
  return std::pow(10.0, db / 20.0);
}

namespace {

/// Applies ranging noise and the support/threshold gates, then appends.
void emit(std::vector<Measurement>& out, double path_length, double amplitude,
          const SceneConstants& c, Rng& rng) {
  const double sd = std::sqrt(
      ranging_variance(amplitude, c.rms_bandwidth, c.propagation_speed));
  const double d = path_length + draw_normal(rng, sd);
  if (amplitude < c.detection_threshold) return;
  if (d < 0.0 || d > c.max_distance) return;
  out.push_back(Measurement{d, amplitude});
}

void emit_clutter(std::vector<Measurement>& out, const SceneConstants& c,
                  double ref_db, Rng& rng) {
  const double d = draw_uniform(rng, 0.0, c.max_distance);
  // Clutter amplitudes are uniform in dB between the detection threshold and
  // the 1 m reference, so the threshold never thins the Poisson count.
  const double lo_db = 20.0 * std::log10(c.detection_threshold);
  const double u = std::pow(10.0, draw_uniform(rng, lo_db, std::max(lo_db, ref_db)) / 20.0);
  out.push_back(Measurement{d, u});
}

}  // namespace

std::vector<std::vector<Measurement>> generate_active_frame(
    const TruthStep& truth, int step, const Scenario& s, Rng& rng) {
  const auto& c = s.constants;
  std::vector<std::vector<Measurement>> out(s.anchors.size());

  for (std::size_t k = 0; k < s.anchors.size(); ++k) {
    const Anchor& anchor = s.anchors[k];
    const bool blocked = s.anchor_blocked(step, anchor.id);
    if (blocked && s.blockage_mode == BlockageMode::Full) continue;

    auto& list = out[k];
    if (!blocked) {
      const double los = (truth.device - anchor.position).norm();
      emit(list, los, amplitude_from_path(los, s.ref_amplitude_db), c, rng);
    }

    const double aspect =
        aspect_angle(truth.kin.position, anchor, s.aspect_sign);
    const int n_obj = draw_poisson(rng, c.mean_object_rate);
    for (int i = 0; i < n_obj; ++i) {
      const Vec2 q = sample_ideal_scatterer(truth.kin.position, s.truth.extent,
                                            aspect, c.opening_angle, rng);
      const double path = (truth.device - q).norm() + (q - anchor.position).norm();
      emit(list, path, amplitude_from_path(path, s.ref_amplitude_db), c, rng);
    }

    const int n_clut = draw_poisson(rng, c.mean_clutter_rate);
    for (int i = 0; i < n_clut; ++i) emit_clutter(list, c, s.ref_amplitude_db, rng);

    std::shuffle(list.begin(), list.end(), rng);
  }
  return out;
}

std::vector<PassiveBucket> generate_passive_frame(const TruthStep& truth,
                                                  const Scenario& s,
                                                  Rng& rng) {
  const auto& c = s.constants;
  std::vector<PassiveBucket> out;

  for (const auto& [rx, tx] : s.passive_pairs()) {
    PassiveBucket bucket;
    bucket.rx = rx;
    bucket.tx = tx;
    const Anchor& rx_anchor = s.anchors[rx];
    const Anchor& tx_anchor = s.anchors[tx];

    const double aspect =
        aspect_angle(truth.kin.position, rx_anchor, s.aspect_sign);
    const int n_obj = draw_poisson(rng, c.mean_object_rate);
    for (int i = 0; i < n_obj; ++i) {
      const Vec2 q = sample_ideal_scatterer(truth.kin.position, s.truth.extent,
                                            aspect, c.opening_angle, rng);
      const double path = bistatic_distance(q, tx_anchor.position, rx_anchor.position);
      emit(bucket.items, path, amplitude_from_path(path, s.ref_amplitude_db), c, rng);
    }

    const int n_clut = draw_poisson(rng, c.mean_clutter_rate);
    for (int i = 0; i < n_clut; ++i) {
      emit_clutter(bucket.items, c, s.ref_amplitude_db, rng);
    }

    std::shuffle(bucket.items.begin(), bucket.items.end(), rng);
    out.push_back(std::move(bucket));
  }
  return out;
}

std::size_t Dataset::measurement_count() const {
  std::size_t n = 0;
  for (const auto& f : frames) {
    for (const auto& a : f.active) n += a.size();
    for (const auto& b : f.passive) n += b.items.size();
  }
  return n;
}

Dataset simulate(const Scenario& s) { return simulate(s, s.seed); }

Dataset simulate(const Scenario& s, std::uint64_t seed) {
  validate_scenario(s);

  Dataset ds;
  ds.truth = generate_ground_truth(s);
  ds.frames.resize(s.num_steps);
  for (int n = 1; n <= s.num_steps; ++n) {
    Rng rng = make_rng(seed, "frame", static_cast<std::uint64_t>(n));
    MeasurementFrame& frame = ds.frames[n - 1];
    frame.step = n;
    frame.active = generate_active_frame(ds.truth.steps[n - 1], n, s, rng);
    frame.passive = generate_passive_frame(ds.truth.steps[n - 1], s, rng);
  }
  return ds;
}

}  // namespace eotrack
