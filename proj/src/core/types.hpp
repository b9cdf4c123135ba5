#pragma once

#include <Eigen/Core>
#include <cmath>
#include <vector>

#include "core/angles.hpp"

namespace eotrack {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

/// Kinematic state of the extended object's center.
struct KinematicState {
  Vec2 position{0.0, 0.0};  // [m]
  Vec2 velocity{0.0, 0.0};  // [m/s]
};

/// Rigid polar offset between the object center and the mounted radio
/// device. The angle is normalized to (-pi, pi] on construction.
struct BiasState {
  double range = 0.0;  // [m], >= 0
  double angle = 0.0;  // [rad]

  BiasState() = default;
  BiasState(double range_m, double angle_rad)
      : range(range_m), angle(wrap_angle(angle_rad)) {}
};

/// Extent of the circular object model tracked by the filter: circle radius
/// and the unified semi-minor axis of all scattering ellipses.
struct ExtentGeo {
  double radius = 0.1;  // r [m], > 0
  double width = 0.1;   // w [m], > 0
};

/// Extent of the elliptical generative object model plus the perpendicular
/// scattering width about its boundary.
struct ExtentIdeal {
  double semi_major = 0.3;  // a [m], a >= b > 0
  double semi_minor = 0.2;  // b [m]
  double width = 0.1;       // w [m], > 0
};

struct AugmentedState {
  KinematicState kin;
  BiasState bias;
  ExtentGeo extent;
};

struct Anchor {
  int id = 0;  // 1-based
  Vec2 position{0.0, 0.0};
};

/// One distance/amplitude measurement. Amplitudes are linear scale
/// throughout the core (u^2 is the SNR); dB only appears at I/O boundaries.
struct Measurement {
  double distance = 0.0;   // [m]
  double amplitude = 1.0;  // linear
};

/// Passive measurements of one ordered anchor pair: `tx` transmits, `rx`
/// receives. Indices are 0-based into the scenario anchor list.
struct PassiveBucket {
  int rx = 0;
  int tx = 0;
  std::vector<Measurement> items;
};

/// All measurements of one time step; `active[k]` holds what anchor k
/// received from the device.
struct MeasurementFrame {
  int step = 0;  // 1-based time index
  std::vector<std::vector<Measurement>> active;
  std::vector<PassiveBucket> passive;

  bool empty() const {
    for (const auto& a : active)
      if (!a.empty()) return false;
    for (const auto& b : passive)
      if (!b.items.empty()) return false;
    return true;
  }
};

/// Scene-level constants shared by measurement synthesis and the
/// likelihood functions.
struct SceneConstants {
  double max_distance = 18.6;              // d_max [m]
  double detection_threshold = 2.0;        // gamma, linear amplitude
  double rms_bandwidth = 1.0e8;            // beta_bw [Hz]
  double propagation_speed = 299792458.0;  // c [m/s]
  double opening_angle = 2.0 * kPi / 3.0;  // omega [rad], in (0, pi]
  double mean_object_rate = 5.0;           // mu_m
  double mean_clutter_rate = 5.0;          // mu_c
};

/// Position of the radio device given the object center and polar bias.
inline Vec2 device_position(const KinematicState& kin, const BiasState& bias) {
  return kin.position +
         bias.range * Vec2(std::cos(bias.angle), std::sin(bias.angle));
}

}  // namespace eotrack
