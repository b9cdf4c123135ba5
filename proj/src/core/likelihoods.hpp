#pragma once

#include "core/geometry.hpp"

namespace eotrack {

/// Scaled unscented-transform spread parameters. The default (1, 2, 0)
/// yields five sigma points in 2-D whose mean weights sum to 1.
struct UtParams {
  double alpha = 1.0;
  double beta = 2.0;
  double kappa = 0.0;
};

/// Distance variance from the Fisher information of a signal with linear
/// amplitude u (u^2 is the SNR): c^2 / (8 pi^2 beta_bw^2 u^2).
double ranging_variance(double amplitude, double rms_bandwidth,
                        double propagation_speed);

double gaussian_pdf(double x, double mean, double variance);

/// Sum of distances transmitter -> point -> receiver.
double bistatic_distance(const Vec2& point, const Vec2& tx, const Vec2& rx);

/// Gaussian density of the measured distance about the direct
/// device-to-anchor distance, variance from the measured amplitude.
double los_likelihood(const Measurement& z, const KinematicState& kin,
                      const BiasState& bias, const Anchor& anchor,
                      const SceneConstants& consts);

/// Variance of the bistatic distance through the scattering ellipse,
/// propagated with the scaled unscented transform.
double ut_delay_variance(const ScatterEllipse& ellipse, const Anchor& tx,
                         const Anchor& rx, const UtParams& ut = {});

/// Scattering likelihood of the circle/ellipse model: Gaussian about the
/// bistatic distance through the ellipse center with the UT delay variance
/// added to the ranging variance.
double geo_scatter_likelihood(const Measurement& z, const KinematicState& kin,
                              const ExtentGeo& extent, const Anchor& tx,
                              const Anchor& rx, const SceneConstants& consts,
                              const UtParams& ut = {},
                              AspectSign sign = AspectSign::Facing);

/// Monte-Carlo scattering likelihood of the boundary-arc model:
/// mean over `sample_count` boundary draws of the Gaussian ranging density
/// at each draw's bistatic distance.
double ideal_scatter_likelihood(const Measurement& z,
                                const KinematicState& kin,
                                const ExtentIdeal& extent, const Anchor& tx,
                                const Anchor& rx, const SceneConstants& consts,
                                int sample_count, Rng& rng,
                                AspectSign sign = AspectSign::Facing);

/// Uniform clutter density over [0, d_max]; zero outside the measurement
/// support (the amplitude dimension cancels between object and clutter
/// hypotheses and carries no density of its own).
double clutter_density(const Measurement& z, const SceneConstants& consts);

/// mu_obj * f_obj / (mu_clutter * f_clutter). Throws when the clutter
/// density is not positive (measurement outside the support).
double pseudo_likelihood_ratio(double object_density, double object_mean,
                               double clutter_density_value,
                               double clutter_mean);

/// Object-vs-clutter ratio of one passive measurement under the
/// circle/ellipse scattering model.
double passive_pseudo_lr(const Measurement& z, const AugmentedState& state,
                         const Anchor& tx, const Anchor& rx,
                         const SceneConstants& consts, const UtParams& ut = {},
                         AspectSign sign = AspectSign::Facing);

/// LOS-vs-clutter ratio of one active measurement; `mu_los` plays the role
/// of the object mean for the single direct path.
double active_pseudo_lr(const Measurement& z, const AugmentedState& state,
                        const Anchor& anchor, const SceneConstants& consts,
                        double mu_los = 1.0);

/// Per-measurement association factor after summing the binary association
/// variable: 1 + ratio.
double marginal_assoc_factor(double ratio);

}  // namespace eotrack
