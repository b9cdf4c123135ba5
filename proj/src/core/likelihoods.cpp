#include "core/likelihoods.hpp"

#include <array>
#include <stdexcept>

namespace eotrack {

namespace {
constexpr double kCoincidentSq = 1e-24;
}

double ranging_variance(double amplitude, double rms_bandwidth,
                        double propagation_speed) {
  if (!(amplitude > 0.0) || !(rms_bandwidth > 0.0)) {
    throw std::invalid_argument("ranging_variance: amplitude and bandwidth must be positive");
  }
  const double denom =
      8.0 * kPi * kPi * rms_bandwidth * rms_bandwidth * amplitude * amplitude;
  return propagation_speed * propagation_speed / denom;
}

double gaussian_pdf(double x, double mean, double variance) {
  const double d = x - mean;
  return std::exp(-0.5 * d * d / variance) / std::sqrt(kTwoPi * variance);
}

double bistatic_distance(const Vec2& point, const Vec2& tx, const Vec2& rx) {
  return (point - tx).norm() + (point - rx).norm();
}

double los_likelihood(const Measurement& z, const KinematicState& kin,
                      const BiasState& bias, const Anchor& anchor,
                      const SceneConstants& consts) {
  const Vec2 device = device_position(kin, bias);
  const double mean = (device - anchor.position).norm();
  const double var = ranging_variance(z.amplitude, consts.rms_bandwidth,
                                      consts.propagation_speed);
  return gaussian_pdf(z.distance, mean, var);
}

double ut_delay_variance(const ScatterEllipse& ellipse, const Anchor& tx,
                         const Anchor& rx, const UtParams& ut) {
  if ((ellipse.center - tx.position).squaredNorm() < kCoincidentSq ||
      (ellipse.center - rx.position).squaredNorm() < kCoincidentSq) {
    throw std::invalid_argument(
        "degenerate geometry: scattering center coincides with an anchor");
  }

  constexpr int kDim = 2;
  const double lam = ut.alpha * ut.alpha * (kDim + ut.kappa) - kDim;
  const double scale = std::sqrt(kDim + lam);
  const double w_mean0 = lam / (kDim + lam);
  const double w_cov0 = w_mean0 + (1.0 - ut.alpha * ut.alpha + ut.beta);
  const double w_i = 0.5 / (kDim + lam);

  const double c = std::cos(ellipse.orientation);
  const double s = std::sin(ellipse.orientation);
  const Vec2 major = scale * 0.5 * ellipse.semi_major * Vec2(c, s);
  const Vec2 minor = scale * 0.5 * ellipse.semi_minor * Vec2(-s, c);

  const std::array<Vec2, 5> points = {
      ellipse.center,         ellipse.center + major, ellipse.center - major,
      ellipse.center + minor, ellipse.center - minor};

  std::array<double, 5> delay{};
  for (std::size_t i = 0; i < points.size(); ++i) {
    delay[i] = bistatic_distance(points[i], tx.position, rx.position);
  }

  double mean = w_mean0 * delay[0];
  for (std::size_t i = 1; i < delay.size(); ++i) mean += w_i * delay[i];

  double var = w_cov0 * (delay[0] - mean) * (delay[0] - mean);
  for (std::size_t i = 1; i < delay.size(); ++i) {
    var += w_i * (delay[i] - mean) * (delay[i] - mean);
  }
  return var;
}

double geo_scatter_likelihood(const Measurement& z, const KinematicState& kin,
                              const ExtentGeo& extent, const Anchor& tx,
                              const Anchor& rx, const SceneConstants& consts,
                              const UtParams& ut, AspectSign sign) {
  const ScatterEllipse e =
      build_ellipse(kin.position, extent, rx, consts.opening_angle, sign);
  const double mean = bistatic_distance(e.center, tx.position, rx.position);
  const double var = ranging_variance(z.amplitude, consts.rms_bandwidth,
                                      consts.propagation_speed) +
                     ut_delay_variance(e, tx, rx, ut);
  return gaussian_pdf(z.distance, mean, var);
}

double ideal_scatter_likelihood(const Measurement& z,
                                const KinematicState& kin,
                                const ExtentIdeal& extent, const Anchor& tx,
                                const Anchor& rx, const SceneConstants& consts,
                                int sample_count, Rng& rng, AspectSign sign) {
  if (sample_count < 1) {
    throw std::invalid_argument("ideal_scatter_likelihood: sample_count must be >= 1");
  }
  const double aspect = aspect_angle(kin.position, rx, sign);
  const double var = ranging_variance(z.amplitude, consts.rms_bandwidth,
                                      consts.propagation_speed);
  double acc = 0.0;
  for (int i = 0; i < sample_count; ++i) {
    const Vec2 q = sample_ideal_scatterer(kin.position, extent, aspect,
                                          consts.opening_angle, rng);
    acc += gaussian_pdf(z.distance, bistatic_distance(q, tx.position, rx.position), var);
  }
  return acc / sample_count;
}

double clutter_density(const Measurement& z, const SceneConstants& consts) {
  if (z.distance < 0.0 || z.distance > consts.max_distance ||
      z.amplitude < consts.detection_threshold) {
    return 0.0;
  }
  return 1.0 / consts.max_distance;
}

double pseudo_likelihood_ratio(double object_density, double object_mean,
                               double clutter_density_value,
                               double clutter_mean) {
  if (!(clutter_density_value > 0.0)) {
    throw std::invalid_argument(
        "pseudo_likelihood_ratio: measurement outside the clutter support");
  }
  return object_mean * object_density / (clutter_mean * clutter_density_value);
}

double passive_pseudo_lr(const Measurement& z, const AugmentedState& state,
                         const Anchor& tx, const Anchor& rx,
                         const SceneConstants& consts, const UtParams& ut,
                         AspectSign sign) {
  return pseudo_likelihood_ratio(
      geo_scatter_likelihood(z, state.kin, state.extent, tx, rx, consts, ut, sign),
      consts.mean_object_rate, clutter_density(z, consts),
      consts.mean_clutter_rate);
}

double active_pseudo_lr(const Measurement& z, const AugmentedState& state,
                        const Anchor& anchor, const SceneConstants& consts,
                        double mu_los) {
  return pseudo_likelihood_ratio(
      los_likelihood(z, state.kin, state.bias, anchor, consts), mu_los,
      clutter_density(z, consts), consts.mean_clutter_rate);
}

double marginal_assoc_factor(double ratio) {
  if (!(ratio >= 0.0)) {
    throw std::invalid_argument("marginal_assoc_factor: ratio must be nonnegative");
  }
  return 1.0 + ratio;
}

}  // namespace eotrack
