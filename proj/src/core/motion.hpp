#pragma once

#include "core/rng.hpp"
#include "core/types.hpp"

namespace eotrack {

/// State-transition noise parameters: constant-velocity kinematics with
/// stochastic acceleration, independent Gaussian walks for bias and extent.
struct MotionParams {
  double dt = 0.1;                   // [s]
  double accel_std = 2.0;            // sigma_a [m/s^2]
  double bias_range_walk_std = 0.1;  // [m]
  double bias_angle_walk_std = 0.5;  // [rad]
  double radius_walk_std = 0.05;     // [m]
  double width_walk_std = 0.05;      // [m]
};

/// Floor below which positive-valued walk states are reflected back.
inline constexpr double kPositiveFloor = 1e-3;

inline double reflect_at_floor(double value, double floor = kPositiveFloor) {
  return value >= floor ? value : 2.0 * floor - value;
}

KinematicState sample_kinematic(const KinematicState& x,
                                const MotionParams& params, Rng& rng);

BiasState sample_bias(const BiasState& b, const MotionParams& params,
                      Rng& rng);

ExtentGeo sample_extent(const ExtentGeo& x, const MotionParams& params,
                        Rng& rng);

/// Initial-state distribution: position uniform in a box around the hint,
/// Gaussian velocity, uniform bias and extent supports.
struct PriorParams {
  double position_halfwidth = 1.0;  // [m]
  double velocity_std = 1.0;        // [m/s]
  double bias_range_max = 0.5;      // b_rho ~ U[0, max]
  double radius_min = 0.1;
  double radius_max = 0.5;
  double width_min = 0.02;
  double width_max = 0.2;
};

AugmentedState sample_prior(const Vec2& position_hint,
                            const PriorParams& params, Rng& rng);

}  // namespace eotrack
